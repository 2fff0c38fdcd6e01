"""ISO/IEC 18004 constants for versions 1-10.

Block structures are stored as ``(groups, ec_codewords_per_block)`` where each
group is ``(block_count, data_codewords_per_block)``.  The table is checked
against the total codeword capacity at import time.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import UnsupportedVersion

MIN_VERSION = 1
MAX_VERSION = 10


class EcLevel(Enum):
    L = 0b01
    M = 0b00
    Q = 0b11
    H = 0b10

    @property
    def format_bits(self):
        return self.value

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls[str(text).upper()]
        except KeyError:
            raise ValueError(f"unknown error correction level {text!r}") from None

    @classmethod
    def from_format_bits(cls, bits):
        for level in cls:
            if level.value == bits:
                return level
        raise ValueError(bits)


@dataclass(frozen=True)
class BlockStructure:
    groups: tuple
    ec_codewords_per_block: int

    @property
    def block_count(self):
        return sum(n for n, _ in self.groups)

    @property
    def data_codewords(self):
        return sum(n * k for n, k in self.groups)

    @property
    def total_codewords(self):
        return self.data_codewords + self.block_count * self.ec_codewords_per_block

    def data_lengths(self):
        """Data codeword count of each block, in interleave order."""
        return [k for n, k in self.groups for _ in range(n)]

    @property
    def correction_budget(self):
        return self.ec_codewords_per_block // 2


# Total codewords (data + EC) per version.
TOTAL_CODEWORDS = {1: 26, 2: 44, 3: 70, 4: 100, 5: 134, 6: 172, 7: 196, 8: 242, 9: 292, 10: 346}

# Bits left over after the last codeword, filled with light modules before masking.
REMAINDER_BITS = {1: 0, 2: 7, 3: 7, 4: 7, 5: 7, 6: 7, 7: 0, 8: 0, 9: 0, 10: 0}

_L, _M, _Q, _H = EcLevel.L, EcLevel.M, EcLevel.Q, EcLevel.H

BLOCKS = {
    (1, _L): (((1, 19),), 7),
    (1, _M): (((1, 16),), 10),
    (1, _Q): (((1, 13),), 13),
    (1, _H): (((1, 9),), 17),
    (2, _L): (((1, 34),), 10),
    (2, _M): (((1, 28),), 16),
    (2, _Q): (((1, 22),), 22),
    (2, _H): (((1, 16),), 28),
    (3, _L): (((1, 55),), 15),
    (3, _M): (((1, 44),), 26),
    (3, _Q): (((2, 17),), 18),
    (3, _H): (((2, 13),), 22),
    (4, _L): (((1, 80),), 20),
    (4, _M): (((2, 32),), 18),
    (4, _Q): (((2, 24),), 26),
    (4, _H): (((4, 9),), 16),
    (5, _L): (((1, 108),), 26),
    (5, _M): (((2, 43),), 24),
    (5, _Q): (((2, 15), (2, 16)), 18),
    (5, _H): (((2, 11), (2, 12)), 22),
    (6, _L): (((2, 68),), 18),
    (6, _M): (((4, 27),), 16),
    (6, _Q): (((4, 19),), 24),
    (6, _H): (((4, 15),), 28),
    (7, _L): (((2, 78),), 20),
    (7, _M): (((4, 31),), 18),
    (7, _Q): (((2, 14), (4, 15)), 18),
    (7, _H): (((4, 13), (1, 14)), 26),
    (8, _L): (((2, 97),), 24),
    (8, _M): (((2, 38), (2, 39)), 22),
    (8, _Q): (((4, 18), (2, 19)), 22),
    (8, _H): (((4, 14), (2, 15)), 26),
    (9, _L): (((2, 116),), 30),
    (9, _M): (((3, 36), (2, 37)), 22),
    (9, _Q): (((4, 16), (4, 17)), 20),
    (9, _H): (((4, 12), (4, 13)), 24),
    (10, _L): (((2, 68), (2, 69)), 18),
    (10, _M): (((4, 43), (1, 44)), 26),
    (10, _Q): (((6, 19), (2, 20)), 24),
    (10, _H): (((6, 15), (2, 16)), 28),
}

ALIGNMENT_CENTERS = {
    1: (),
    2: (6, 18),
    3: (6, 22),
    4: (6, 26),
    5: (6, 30),
    6: (6, 34),
    7: (6, 22, 38),
    8: (6, 24, 42),
    9: (6, 26, 46),
    10: (6, 28, 50),
}


def check_version(version):
    if not isinstance(version, int) or not MIN_VERSION <= version <= MAX_VERSION:
        raise UnsupportedVersion(f"version {version!r} outside supported range {MIN_VERSION}-{MAX_VERSION}")
    return version


def side_length(version):
    return 17 + 4 * version


def version_for_size(size):
    if (size - 17) % 4:
        raise UnsupportedVersion(f"grid side {size} is not 17 + 4*version")
    return check_version((size - 17) // 4)


def block_structure(version, ec):
    check_version(version)
    groups, ec_len = BLOCKS[version, EcLevel.parse(ec)]
    return BlockStructure(groups, ec_len)


def data_capacity(version, ec):
    """Data codewords available at (version, ec)."""
    return block_structure(version, ec).data_codewords


def _validate():
    for (version, ec), (groups, ec_len) in BLOCKS.items():
        bs = BlockStructure(groups, ec_len)
        if bs.total_codewords != TOTAL_CODEWORDS[version]:
            raise AssertionError(f"block table inconsistent at v{version}-{ec.name}")


_validate()
