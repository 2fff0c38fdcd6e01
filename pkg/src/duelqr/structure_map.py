"""Which modules the composer copies verbatim from the first code.

Two classifiers are provided.  ``BOXES`` follows the generator's literal
recipe: generous 16x16 boxes around each finder anchor (clamped to the grid),
the timing row/column, format and version areas, and alignment patterns.
``TIGHT`` is the exact function-module map produced by the encoder.

Coordinates are ``(x, y)`` = (column, row) throughout this module.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import tables
from .qr_core import (
    alignment_pattern_centers, codeword_origin, data_cell_order, dark_module,
    format_positions, function_template, version_positions,
)


class StructureMode(Enum):
    BOXES = "boxes"
    TIGHT = "tight"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        aliases = {"boxes": cls.BOXES, "tight": cls.TIGHT}
        try:
            return aliases[str(text).lower()]
        except KeyError:
            raise ValueError(f"unknown structure mode {text!r}") from None


def finder_anchors(size):
    return [(0, 0), (0, size - 7), (size - 7, 0)]


def is_in_finder(x, y, size):
    """True when (x, y) is within [f-4, f+11] of a finder anchor on both axes."""
    for fx, fy in finder_anchors(size):
        if fx - 4 <= x <= fx + 11 and fy - 4 <= y <= fy + 11:
            return True
    return False


def alignment_centers(version):
    return list(tables.ALIGNMENT_CENTERS[tables.check_version(version)])


def _in_format_area(x, y, size):
    first, second = format_positions(size)
    return (y, x) in first or (y, x) in second or (y, x) == dark_module(size)


def _in_version_area(x, y, size):
    if size < tables.side_length(7):
        return False
    top_right, bottom_left = version_positions(size)
    return (y, x) in top_right or (y, x) in bottom_left


def _in_alignment(x, y, version):
    return any(abs(x - cx) <= 2 and abs(y - cy) <= 2
               for cy, cx in alignment_pattern_centers(version))


def is_structural(x, y, version, mode=StructureMode.BOXES):
    mode = StructureMode.parse(mode)
    size = tables.side_length(tables.check_version(version))
    if not (0 <= x < size and 0 <= y < size):
        raise IndexError(f"({x}, {y}) outside a {size}x{size} grid")
    if mode is StructureMode.TIGHT:
        return bool(function_template(version)[1][y, x])
    return (is_in_finder(x, y, size)
            or x == 6 or y == 6
            or _in_format_area(x, y, size)
            or _in_version_area(x, y, size)
            or _in_alignment(x, y, version))


@lru_cache(maxsize=None)
def structural_map(version, mode=StructureMode.BOXES):
    """Boolean grid indexed ``[row, col]``, True on structural cells."""
    mode = StructureMode.parse(mode)
    if mode is StructureMode.TIGHT:
        return function_template(version)[1]
    size = tables.side_length(tables.check_version(version))
    grid = np.zeros((size, size), dtype=bool)
    for y in range(size):
        for x in range(size):
            grid[y, x] = is_structural(x, y, version, mode)
    grid.flags.writeable = False
    return grid


@dataclass(frozen=True)
class Census:
    version: int
    ec: tables.EcLevel
    mode: StructureMode
    stolen_modules: int
    worst_block_codeword_overlap: int
    block_overlaps: tuple
    correction_budget: int

    @property
    def within_budget(self):
        return self.worst_block_codeword_overlap <= self.correction_budget

    def to_text(self):
        return (f"census v={self.version} ec={self.ec.name} mode={self.mode.value} "
                f"stolen_modules={self.stolen_modules} "
                f"worst_block_codeword_overlap={self.worst_block_codeword_overlap} "
                f"budget={self.correction_budget} "
                f"blocks={','.join(map(str, self.block_overlaps))}")


def stolen_cells(version, mode=StructureMode.BOXES):
    """Grid of cells structural under ``mode`` but carrying data bits in the symbol."""
    return structural_map(version, mode) & ~function_template(version)[1]


def stolen_data_census(version, ec, mode=StructureMode.BOXES):
    """Count stolen data cells and the codewords per RS block they touch."""
    ec = tables.EcLevel.parse(ec)
    mode = StructureMode.parse(mode)
    bs = tables.block_structure(version, ec)
    stolen = stolen_cells(version, mode)
    rows, cols = data_cell_order(version)
    origin = codeword_origin(version, ec)
    hit = set()
    for bit, (y, x) in enumerate(zip(rows, cols)):
        codeword = bit // 8
        if codeword < len(origin) and stolen[y, x]:
            hit.add(origin[codeword])
    per_block = [0] * bs.block_count
    for block, _ in hit:
        per_block[block] += 1
    return Census(version, ec, mode, int(stolen.sum()), max(per_block),
                  tuple(per_block), bs.correction_budget)
