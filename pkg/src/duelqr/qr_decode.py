"""Matrix-level QR decoder.

Takes an already-sampled module grid (no image processing) and runs the
standard chain: format information, unmasking, codeword extraction,
per-block Reed-Solomon correction and payload parsing.
"""

from dataclasses import dataclass

import numpy as np

from . import tables
from .errors import FormatUnreadable, MalformedPayload, TooManyErrors
from .qr_core import (
    ALPHANUMERIC_CHARSET, MODE_ALPHANUMERIC, MODE_BYTE, MODE_TERMINATOR,
    QrMatrix, char_count_bits, data_cell_order, format_bits, format_positions,
    function_template, mask_grid, version_bits, version_positions,
)
from .reed_solomon import rs_decode
from .tables import EcLevel

__all__ = ["DecodeOutcome", "decode", "extract_codewords", "read_format", "read_version", "rs_decode"]

_FORMAT_CODEWORDS = [(format_bits(ec, mask), ec, mask) for ec in EcLevel for mask in range(8)]


@dataclass(frozen=True)
class DecodeOutcome:
    message: bytes
    corrections: tuple
    format_bit_errors: int
    ec: EcLevel
    mask: int
    version: int

    @property
    def total_corrections(self):
        return sum(self.corrections)


def _grid(matrix):
    if isinstance(matrix, QrMatrix):
        return matrix.modules
    grid = np.asarray(matrix, dtype=bool)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise ValueError(f"module grid must be square, got shape {grid.shape}")
    return grid


def _read_word(grid, positions):
    return sum(int(grid[y, x]) << i for i, (y, x) in enumerate(positions))


def read_format(matrix):
    """Return ``(ec, mask, bit_errors)`` from the better of the two format copies."""
    grid = _grid(matrix)
    tables.version_for_size(grid.shape[0])
    best = None
    for positions in format_positions(grid.shape[0]):
        word = _read_word(grid, positions)
        for codeword, ec, mask in _FORMAT_CODEWORDS:
            dist = bin(word ^ codeword).count("1")
            if best is None or dist < best[0]:
                best = (dist, ec, mask)
    dist, ec, mask = best
    if dist > 3:
        raise FormatUnreadable(f"both format copies are {dist} or more bits from any codeword")
    return ec, mask, dist


def read_version(matrix):
    """Version from the version-information blocks, or None below version 7.

    Used only as a cross-check; the decoder takes the version from grid size.
    """
    grid = _grid(matrix)
    size = grid.shape[0]
    if size < tables.side_length(7):
        return None
    best = None
    for positions in version_positions(size):
        word = _read_word(grid, positions)
        for v in range(7, tables.MAX_VERSION + 1):
            dist = bin(word ^ version_bits(v)).count("1")
            if best is None or dist < best[0]:
                best = (dist, v)
    return best[1] if best[0] <= 3 else None


def extract_codewords(matrix, mask, version, ec):
    """De-interleaved codeword blocks (data followed by parity) read from the grid."""
    grid = _grid(matrix)
    ec = EcLevel.parse(ec)
    size = grid.shape[0]
    func = function_template(version)[1]
    unmasked = grid ^ (mask_grid(mask, size) & ~func)
    rows, cols = data_cell_order(version)
    bs = tables.block_structure(version, ec)
    nbits = 8 * bs.total_codewords
    codewords = np.packbits(unmasked[rows[:nbits], cols[:nbits]]).tolist()

    lengths = bs.data_lengths()
    blocks = [[] for _ in lengths]
    it = iter(codewords)
    for i in range(max(lengths)):
        for b, length in enumerate(lengths):
            if i < length:
                blocks[b].append(next(it))
    for _ in range(bs.ec_codewords_per_block):
        for block in blocks:
            block.append(next(it))
    return blocks


class _BitReader:
    def __init__(self, data):
        self.bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
        self.pos = 0

    @property
    def remaining(self):
        return self.bits.size - self.pos

    def read(self, n):
        if n > self.remaining:
            raise MalformedPayload(f"needed {n} bits, {self.remaining} left")
        value = 0
        for b in self.bits[self.pos:self.pos + n]:
            value = (value << 1) | int(b)
        self.pos += n
        return value


def parse_payload(data, version):
    """Concatenated payload of the byte and alphanumeric segments in ``data``."""
    reader = _BitReader(data)
    out = bytearray()
    while reader.remaining >= 4:
        mode = reader.read(4)
        if mode == MODE_TERMINATOR:
            break
        if mode not in (MODE_BYTE, MODE_ALPHANUMERIC):
            raise MalformedPayload(f"unsupported mode indicator {mode:04b}")
        count = reader.read(char_count_bits(mode, version))
        if mode == MODE_BYTE:
            if 8 * count > reader.remaining:
                raise MalformedPayload(f"byte count {count} exceeds remaining {reader.remaining} bits")
            out.extend(reader.read(8) for _ in range(count))
        else:
            if 11 * (count // 2) + 6 * (count % 2) > reader.remaining:
                raise MalformedPayload(f"character count {count} exceeds remaining bits")
            for _ in range(count // 2):
                pair = reader.read(11)
                if pair >= 45 * 45:
                    raise MalformedPayload(f"alphanumeric pair value {pair} out of range")
                out += bytes((ALPHANUMERIC_CHARSET[pair // 45], ALPHANUMERIC_CHARSET[pair % 45]))
            if count % 2:
                single = reader.read(6)
                if single >= 45:
                    raise MalformedPayload(f"alphanumeric value {single} out of range")
                out.append(ALPHANUMERIC_CHARSET[single])
    return bytes(out)


def decode(matrix):
    """Decode a module grid (or :class:`QrMatrix`) into a :class:`DecodeOutcome`."""
    grid = _grid(matrix)
    version = tables.version_for_size(grid.shape[0])
    ec, mask, format_errors = read_format(grid)
    bs = tables.block_structure(version, ec)
    data = []
    corrections = []
    for block in extract_codewords(grid, mask, version, ec):
        try:
            fixed, count = rs_decode(block, bs.ec_codewords_per_block, return_count=True)
        except TooManyErrors as exc:
            raise TooManyErrors(f"block {len(corrections)}: {exc}") from None
        data.extend(fixed)
        corrections.append(count)
    message = parse_payload(data, version)
    return DecodeOutcome(message, tuple(corrections), format_errors, ec, mask, version)
