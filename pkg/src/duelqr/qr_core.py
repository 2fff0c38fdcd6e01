"""Deterministic QR Code Model 2 encoder for versions 1-10.

The encoder emits a :class:`QrMatrix`: dark/light modules plus the map of
function modules.  The mask may be forced, which is what lets a second code
share the first code's format information.
"""

from dataclasses import dataclass
from functools import lru_cache
import itertools

import numpy as np

from . import tables
from .errors import CapacityExceeded, InvalidMaskOverride, UnsupportedVersion
from .reed_solomon import rs_encode
from .tables import EcLevel

FORMAT_GENERATOR = 0x537
FORMAT_XOR = 0x5412
VERSION_GENERATOR = 0x1F25

MODE_BYTE = 0b0100
MODE_ALPHANUMERIC = 0b0010
MODE_TERMINATOR = 0b0000

ALPHANUMERIC_CHARSET = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:"
_ALNUM_INDEX = {c: i for i, c in enumerate(ALPHANUMERIC_CHARSET)}

PAD_CODEWORDS = (0xEC, 0x11)


# ---- bit buffer and payload segmentation ----

class BitBuffer(list):
    """A list of 0/1 ints with helpers for fixed-width appends."""

    def append_bits(self, value, width):
        if width < 0 or value >> width:
            raise ValueError("value does not fit in width")
        self.extend((value >> i) & 1 for i in reversed(range(width)))

    def to_bytes(self):
        if len(self) % 8:
            raise ValueError("bit buffer is not byte aligned")
        out = bytearray()
        for i in range(0, len(self), 8):
            byte = 0
            for bit in self[i:i + 8]:
                byte = (byte << 1) | bit
            out.append(byte)
        return bytes(out)

    def __str__(self):
        return "".join(map(str, self))


def char_count_bits(mode, version):
    tables.check_version(version)
    if mode == MODE_BYTE:
        return 8 if version <= 9 else 16
    if mode == MODE_ALPHANUMERIC:
        return 9 if version <= 9 else 11
    raise ValueError(f"unsupported mode {mode:#06b}")


def _segment_bits(mode, length, version):
    head = 4 + char_count_bits(mode, version)
    if mode == MODE_BYTE:
        return head + 8 * length
    return head + 11 * (length // 2) + 6 * (length % 2)


def segment_message(message, version):
    """Split ``message`` into byte/alphanumeric runs minimising total bit length.

    Returns a list of ``(mode, bytes)``.  Costs are tracked in sixths of a bit
    so the 5.5-bit alphanumeric rate stays integral.
    """
    n = len(message)
    if n == 0:
        return [(MODE_BYTE, b"")]
    modes = (MODE_BYTE, MODE_ALPHANUMERIC)
    head = {m: 6 * (4 + char_count_bits(m, version)) for m in modes}
    per_char = {MODE_BYTE: 48, MODE_ALPHANUMERIC: 33}
    inf = float("inf")
    cost = [[inf, inf] for _ in range(n + 1)]
    back = [[None, None] for _ in range(n + 1)]
    cost[0] = [0, 0]
    for i, c in enumerate(message):
        best_prev = min(range(2), key=lambda k: cost[i][k])
        for k, m in enumerate(modes):
            if m == MODE_ALPHANUMERIC and c not in _ALNUM_INDEX:
                continue
            stay = cost[i][k] + per_char[m] if i else inf
            switch = cost[i][best_prev] + head[m] + per_char[m]
            if stay <= switch:
                cost[i + 1][k], back[i + 1][k] = stay, k
            else:
                cost[i + 1][k], back[i + 1][k] = switch, -1 - best_prev
    # walk back, collecting the mode of each character
    k = min(range(2), key=lambda j: cost[n][j])
    char_modes = []
    for i in range(n, 0, -1):
        char_modes.append(modes[k])
        prev = back[i][k]
        k = prev if prev >= 0 else -1 - prev
    char_modes.reverse()
    segments = []
    for mode, group in itertools.groupby(zip(char_modes, message), key=lambda t: t[0]):
        segments.append((mode, bytes(c for _, c in group)))
    return segments


def _append_segment(bb, mode, data, version):
    bb.append_bits(mode, 4)
    bb.append_bits(len(data), char_count_bits(mode, version))
    if mode == MODE_BYTE:
        for b in data:
            bb.append_bits(b, 8)
    else:
        values = [_ALNUM_INDEX[c] for c in data]
        for i in range(0, len(values) - 1, 2):
            bb.append_bits(values[i] * 45 + values[i + 1], 11)
        if len(values) % 2:
            bb.append_bits(values[-1], 6)


def encode_payload(message, version=7, ec=EcLevel.H):
    """Build the padded data bit stream for ``message``.

    Byte mode is used whenever the whole message fits in a single byte segment.
    Longer messages fall back to the cheapest byte/alphanumeric segmentation.
    """
    message = bytes(message)
    ec = EcLevel.parse(ec)
    capacity = tables.data_capacity(version, ec) * 8
    segments = [(MODE_BYTE, message)]
    if _segment_bits(MODE_BYTE, len(message), version) > capacity:
        segments = segment_message(message, version)
    used = sum(_segment_bits(m, len(d), version) for m, d in segments)
    if used > capacity or any(len(d) >> char_count_bits(m, version) for m, d in segments):
        raise CapacityExceeded(
            f"{len(message)}-byte message needs {used} bits; v{version}-{ec.name} holds {capacity}")

    bb = BitBuffer()
    for mode, data in segments:
        _append_segment(bb, mode, data, version)
    bb.append_bits(0, min(4, capacity - len(bb)))
    bb.append_bits(0, -len(bb) % 8)
    for pad in itertools.cycle(PAD_CODEWORDS):
        if len(bb) >= capacity:
            break
        bb.append_bits(pad, 8)
    return bb


def max_byte_message(version=7, ec=EcLevel.H):
    """Longest message that fits in a single byte-mode segment."""
    capacity = tables.data_capacity(version, ec) * 8
    return (capacity - 4 - char_count_bits(MODE_BYTE, version)) // 8


# ---- error correction and interleaving ----

def split_blocks(data_codewords, version, ec):
    bs = tables.block_structure(version, ec)
    blocks, pos = [], 0
    for length in bs.data_lengths():
        blocks.append(list(data_codewords[pos:pos + length]))
        pos += length
    return blocks


def add_error_correction(data_codewords, version, ec):
    """Return ``(blocks, interleaved)`` where each block is data + parity."""
    bs = tables.block_structure(version, ec)
    blocks = [d + rs_encode(d, bs.ec_codewords_per_block)
              for d in split_blocks(data_codewords, version, ec)]
    return blocks, interleave(blocks, bs)


def interleave(blocks, bs):
    lengths = bs.data_lengths()
    out = []
    for i in range(max(lengths)):
        for block, length in zip(blocks, lengths):
            if i < length:
                out.append(block[i])
    for i in range(bs.ec_codewords_per_block):
        for block, length in zip(blocks, lengths):
            out.append(block[length + i])
    return out


@lru_cache(maxsize=None)
def codeword_origin(version, ec):
    """For each interleaved codeword index, the ``(block, index_in_block)`` it came from."""
    bs = tables.block_structure(version, ec)
    lengths = bs.data_lengths()
    origin = []
    for i in range(max(lengths)):
        for b, length in enumerate(lengths):
            if i < length:
                origin.append((b, i))
    for i in range(bs.ec_codewords_per_block):
        for b, length in enumerate(lengths):
            origin.append((b, length + i))
    return tuple(origin)


# ---- BCH-protected side information ----

def _bch_remainder(value, generator, degree):
    rem = value << degree
    top = generator.bit_length() - 1
    for shift in reversed(range(rem.bit_length() - top)):
        if rem >> (shift + top) & 1:
            rem ^= generator << shift
    return rem


def format_bits(ec, mask):
    """15-bit format word: (ec bits, mask id), BCH(15,5) remainder, XOR 0x5412."""
    ec = EcLevel.parse(ec)
    if not 0 <= mask <= 7:
        raise InvalidMaskOverride(f"mask id {mask} outside 0-7")
    data = ec.format_bits << 3 | mask
    return ((data << 10) | _bch_remainder(data, FORMAT_GENERATOR, 10)) ^ FORMAT_XOR


def version_bits(version):
    tables.check_version(version)
    return (version << 12) | _bch_remainder(version, VERSION_GENERATOR, 12)


def format_positions(size):
    """(row, col) of format bit i, for both copies; index i = bit weight."""
    first = [(i, 8) for i in range(6)] + [(7, 8), (8, 8), (8, 7)] + [(8, 14 - i) for i in range(9, 15)]
    second = [(8, size - 1 - i) for i in range(8)] + [(size - 15 + i, 8) for i in range(8, 15)]
    return first, second


def version_positions(size):
    """(row, col) of version bit i for the top-right and bottom-left blocks."""
    top_right = [(i // 3, size - 11 + i % 3) for i in range(18)]
    bottom_left = [(size - 11 + i % 3, i // 3) for i in range(18)]
    return top_right, bottom_left


def dark_module(size):
    return size - 8, 8


# ---- function patterns and placement ----

@lru_cache(maxsize=None)
def function_template(version):
    """(modules, is_function) with every function pattern drawn; format cells light."""
    size = tables.side_length(version)
    modules = np.zeros((size, size), dtype=bool)
    func = np.zeros((size, size), dtype=bool)

    idx = np.arange(size)
    modules[6, :] = idx % 2 == 0
    modules[:, 6] = idx % 2 == 0
    func[6, :] = True
    func[:, 6] = True

    for cy, cx in ((3, 3), (3, size - 4), (size - 4, 3)):
        for dy in range(-4, 5):
            for dx in range(-4, 5):
                y, x = cy + dy, cx + dx
                if 0 <= y < size and 0 <= x < size:
                    modules[y, x] = max(abs(dx), abs(dy)) not in (2, 4)
                    func[y, x] = True

    for cy, cx in alignment_pattern_centers(version):
        for dy in range(-2, 3):
            for dx in range(-2, 3):
                modules[cy + dy, cx + dx] = max(abs(dx), abs(dy)) != 1
                func[cy + dy, cx + dx] = True

    first, second = format_positions(size)
    for y, x in first + second:
        func[y, x] = True
    modules[dark_module(size)] = True
    func[dark_module(size)] = True

    if version >= 7:
        bits = version_bits(version)
        for copy in version_positions(size):
            for i, (y, x) in enumerate(copy):
                modules[y, x] = (bits >> i) & 1
                func[y, x] = True

    modules.flags.writeable = False
    func.flags.writeable = False
    return modules, func


def alignment_pattern_centers(version):
    """(row, col) centres of the alignment patterns that do not overlap finders."""
    centers = tables.ALIGNMENT_CENTERS[tables.check_version(version)]
    last = len(centers) - 1
    skip = {(0, 0), (0, last), (last, 0)}
    return [(centers[i], centers[j])
            for i in range(len(centers)) for j in range(len(centers))
            if (i, j) not in skip]


@lru_cache(maxsize=None)
def data_cell_order(version):
    """Row and column arrays of non-function cells in codeword placement order."""
    _, func = function_template(version)
    size = func.shape[0]
    rows, cols = [], []
    for right in range(size - 1, 0, -2):
        if right <= 6:
            right -= 1
        upward = (right + 1) & 2 == 0
        for vert in range(size):
            y = size - 1 - vert if upward else vert
            for x in (right, right - 1):
                if not func[y, x]:
                    rows.append(y)
                    cols.append(x)
    rows, cols = np.array(rows), np.array(cols)
    rows.flags.writeable = False
    cols.flags.writeable = False
    return rows, cols


def codewords_to_bits(codewords):
    return np.unpackbits(np.asarray(codewords, dtype=np.uint8)).astype(bool)


# ---- masks and penalty ----

def mask_grid(mask, size):
    """Boolean grid that is True where mask ``mask`` inverts a data module."""
    grid = _mask_grid(mask, size)
    grid.flags.writeable = False
    return grid


@lru_cache(maxsize=None)
def _mask_grid(mask, size):
    i, j = np.indices((size, size))
    if mask == 0:
        return (i + j) % 2 == 0
    if mask == 1:
        return i % 2 == 0
    if mask == 2:
        return j % 3 == 0
    if mask == 3:
        return (i + j) % 3 == 0
    if mask == 4:
        return (i // 2 + j // 3) % 2 == 0
    if mask == 5:
        return (i * j) % 2 + (i * j) % 3 == 0
    if mask == 6:
        return ((i * j) % 2 + (i * j) % 3) % 2 == 0
    if mask == 7:
        return ((i + j) % 2 + (i * j) % 3) % 2 == 0
    raise InvalidMaskOverride(f"mask id {mask} outside 0-7")


_FINDER_LIKE = (
    np.array([1, 0, 1, 1, 1, 0, 1, 0, 0, 0, 0], dtype=bool),
    np.array([0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 1], dtype=bool),
)


def _run_penalty(grid):
    size = grid.shape[1]
    seq = np.full((grid.shape[0], size + 1), 2, dtype=np.int8)
    seq[:, :size] = grid
    seq = seq.ravel()
    change = np.empty(seq.size, dtype=bool)
    change[0] = True
    np.not_equal(seq[1:], seq[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    lengths = np.diff(starts, append=seq.size)
    values = seq[starts]
    long_runs = lengths[(values != 2) & (lengths >= 5)]
    return int(np.sum(long_runs - 2))


def _finder_penalty(grid):
    padded = np.zeros((grid.shape[0], grid.shape[1] + 8), dtype=bool)
    padded[:, 4:-4] = grid
    width = padded.shape[1] - 10
    hits = 0
    for pat in _FINDER_LIKE:
        match = np.ones((grid.shape[0], width), dtype=bool)
        for i, bit in enumerate(pat):
            cells = padded[:, i:i + width]
            match &= cells if bit else ~cells
        hits += int(match.sum())
    return 40 * hits


def penalty_score(modules):
    """Total ISO penalty N1 + N2 + N3 + N4 of a finished (masked) symbol."""
    m = np.asarray(modules, dtype=bool)
    n1 = _run_penalty(m) + _run_penalty(m.T)
    same = (m[:-1, :-1] == m[1:, :-1]) & (m[:-1, :-1] == m[:-1, 1:]) & (m[:-1, :-1] == m[1:, 1:])
    n2 = 3 * int(same.sum())
    n3 = _finder_penalty(m) + _finder_penalty(m.T)
    total = m.size
    dark = int(m.sum())
    n4 = 10 * ((abs(dark * 20 - total * 10) + total - 1) // total - 1)
    return n1 + n2 + n3 + n4


# ---- the matrix type ----

@dataclass(frozen=True, eq=False)
class QrMatrix:
    version: int
    modules: np.ndarray
    is_function: np.ndarray
    mask: int
    ec: EcLevel

    @property
    def size(self):
        return self.modules.shape[0]

    def __eq__(self, other):
        if not isinstance(other, QrMatrix):
            return NotImplemented
        return (self.version == other.version and self.mask == other.mask and self.ec == other.ec
                and np.array_equal(self.modules, other.modules)
                and np.array_equal(self.is_function, other.is_function))

    def __hash__(self):
        return hash((self.version, self.mask, self.ec, self.modules.tobytes()))

    def to_text(self):
        lines = [f"version {self.version} ec {self.ec.name} mask {self.mask}"]
        lines += ["".join("1" if v else "0" for v in row) for row in self.modules]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty matrix text")
        head = lines[0].split()
        if len(head) != 6 or head[0::2] != ["version", "ec", "mask"]:
            raise ValueError(f"bad matrix header {lines[0]!r}")
        version, ec, mask = int(head[1]), EcLevel.parse(head[3]), int(head[5])
        size = tables.side_length(version)
        rows = lines[1:1 + size]
        if len(rows) != size or any(len(r) != size or set(r) - set("01") for r in rows):
            raise ValueError(f"expected {size} rows of {size} '0'/'1' characters")
        modules = np.array([[c == "1" for c in r] for r in rows], dtype=bool)
        return cls(version, modules, function_template(version)[1], mask, ec)


def _draw_format(modules, ec, mask):
    bits = format_bits(ec, mask)
    for copy in format_positions(modules.shape[0]):
        for i, (y, x) in enumerate(copy):
            modules[y, x] = (bits >> i) & 1


def place_codewords(version, codewords):
    """Unmasked modules with function patterns and the given codewords placed."""
    template, _ = function_template(version)
    modules = template.copy()
    rows, cols = data_cell_order(version)
    bits = codewords_to_bits(codewords)
    modules[rows[:bits.size], cols[:bits.size]] = bits
    return modules


def apply_mask(modules, is_function, mask):
    return modules ^ (mask_grid(mask, modules.shape[0]) & ~is_function)


def choose_mask(matrix):
    """Mask id with the lowest penalty for an unmasked ``matrix``; ties go to the lower id."""
    best, best_score = None, None
    for mask in range(8):
        candidate = apply_mask(matrix.modules, matrix.is_function, mask)
        _draw_format(candidate, matrix.ec, mask)
        score = penalty_score(candidate)
        if best_score is None or score < best_score:
            best, best_score = mask, score
    return best


def encode(message, version=7, ec=EcLevel.H, mask_override=None):
    """Encode ``message`` bytes into a finished symbol."""
    ec = EcLevel.parse(ec)
    if isinstance(message, str):
        message = message.encode("utf-8")
    if mask_override is not None and (not isinstance(mask_override, int) or not 0 <= mask_override <= 7):
        raise InvalidMaskOverride(f"mask override {mask_override!r} outside 0-7")
    tables.check_version(version)
    data = encode_payload(message, version, ec).to_bytes()
    _, codewords = add_error_correction(list(data), version, ec)
    modules = place_codewords(version, codewords)
    func = function_template(version)[1]
    if mask_override is None:
        mask = choose_mask(QrMatrix(version, modules, func, -1, ec))
    else:
        mask = mask_override
    modules = apply_mask(modules, func, mask)
    _draw_format(modules, ec, mask)
    modules.flags.writeable = False
    return QrMatrix(version, modules, func, mask, ec)


def unmasked_data(matrix):
    """Data-region modules with the mask removed (function cells as drawn)."""
    return apply_mask(matrix.modules, matrix.is_function, matrix.mask)


__all__ = [
    "BitBuffer", "EcLevel", "QrMatrix", "UnsupportedVersion", "add_error_correction",
    "alignment_pattern_centers", "choose_mask", "codeword_origin", "data_cell_order", "encode",
    "encode_payload", "format_bits", "format_positions", "function_template", "interleave",
    "mask_grid", "max_byte_message", "penalty_score", "place_codewords", "version_bits",
]
