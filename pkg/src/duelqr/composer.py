"""Half-module composition of two equal-geometry QR symbols into one raster."""

from dataclasses import dataclass, field
from enum import Enum
import math
from typing import Optional

import numpy as np

from . import tables
from .errors import BudgetExceeded, ScaleTooSmall
from .qr_core import QrMatrix, encode
from .structure_map import StructureMode, stolen_data_census, structural_map
from .tables import EcLevel


class SplitOrientation(Enum):
    VERTICAL = "V"
    HORIZONTAL = "H"
    DIAGONAL = "D"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().upper()[:1]
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown split orientation {text!r}")

    @property
    def axis(self):
        """Unit sampling direction ``(dx, dy)`` that moves from the QR1 half to the QR2 half."""
        return {"V": (1.0, 0.0), "H": (0.0, 1.0), "D": (1.0, 1.0)}[self.value]


@dataclass(frozen=True)
class ComposeConfig:
    scale: int = 9
    orientation: SplitOrientation = SplitOrientation.VERTICAL
    structure_mode: StructureMode = StructureMode.BOXES
    quiet_zone: int = 4

    def __post_init__(self):
        object.__setattr__(self, "orientation", SplitOrientation.parse(self.orientation))
        object.__setattr__(self, "structure_mode", StructureMode.parse(self.structure_mode))
        if self.scale < 2:
            raise ScaleTooSmall(f"scale {self.scale} cannot be split into two halves")
        if self.quiet_zone < 0:
            raise ValueError("quiet zone must be non-negative")


@dataclass(frozen=True)
class Provenance:
    version: int
    ec: EcLevel
    mask: int


@dataclass(frozen=True, eq=False)
class CompositeRaster:
    """Binary pixel image, ``pixels[row, col]`` True for dark.

    ``orientation`` and ``structure_mode`` are None for single-code renders.
    """

    pixels: np.ndarray
    scale: int
    quiet_zone: int
    provenance: Optional[Provenance] = None
    orientation: Optional[SplitOrientation] = None
    structure_mode: Optional[StructureMode] = None
    # source symbols, kept in memory only; never serialised
    sources: tuple = field(default=(), repr=False)

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def grid_size(self):
        return self.width // self.scale - 2 * self.quiet_zone

    @property
    def config(self):
        if self.orientation is None:
            return None
        return ComposeConfig(self.scale, self.orientation, self.structure_mode, self.quiet_zone)

    def __eq__(self, other):
        if not isinstance(other, CompositeRaster):
            return NotImplemented
        return (np.array_equal(self.pixels, other.pixels) and self.scale == other.scale
                and self.quiet_zone == other.quiet_zone and self.provenance == other.provenance
                and self.orientation == other.orientation
                and self.structure_mode == other.structure_mode)

    __hash__ = None


def first_half_mask(scale, orientation):
    """scale x scale boolean tile, True on pixels that carry the first code."""
    if scale < 2:
        raise ScaleTooSmall(f"scale {scale} cannot be split into two halves")
    orientation = SplitOrientation.parse(orientation)
    py, px = np.indices((scale, scale))
    cut = math.ceil(scale / 2)
    if orientation is SplitOrientation.VERTICAL:
        return px < cut
    if orientation is SplitOrientation.HORIZONTAL:
        return py < cut
    return px + py < scale


def split_module(v1, v2, scale, orientation):
    """One data module tile: first-code half from ``v1``, the rest from ``v2``."""
    return np.where(first_half_mask(scale, orientation), bool(v1), bool(v2))


def _upscale(grid, scale, quiet_zone):
    padded = np.pad(np.asarray(grid, dtype=bool), quiet_zone, constant_values=False)
    return np.repeat(np.repeat(padded, scale, axis=0), scale, axis=1)


def render_single(matrix, scale=9, quiet_zone=4):
    """Uniform scale x scale tiles per module, light quiet zone."""
    if scale < 1:
        raise ScaleTooSmall(f"scale {scale} must be at least 1")
    pixels = _upscale(matrix.modules, scale, quiet_zone)
    pixels.flags.writeable = False
    return CompositeRaster(pixels, scale, quiet_zone,
                           Provenance(matrix.version, matrix.ec, matrix.mask), sources=(matrix,))


def compose_matrices(qr1, qr2, config):
    """Compose two finished symbols; ``qr2`` must already share ``qr1``'s mask."""
    if qr1.size != qr2.size or qr1.version != qr2.version:
        raise ValueError(f"symbols differ in size: {qr1.size} vs {qr2.size}")
    scale, qz = config.scale, config.quiet_zone
    n = qr1.size + 2 * qz
    structural = np.pad(structural_map(qr1.version, config.structure_mode), qz, constant_values=True)
    uniform = np.repeat(np.repeat(structural, scale, axis=0), scale, axis=1)
    half = np.tile(first_half_mask(scale, config.orientation), (n, n))
    first = _upscale(qr1.modules, scale, qz)
    second = _upscale(qr2.modules, scale, qz)
    pixels = np.where(uniform | half, first, second)
    pixels.flags.writeable = False
    return CompositeRaster(pixels, scale, qz, Provenance(qr1.version, qr1.ec, qr1.mask),
                           config.orientation, config.structure_mode, sources=(qr1, qr2))


def compose(message1, message2, version=7, ec=EcLevel.H, config=None):
    """Dual-message raster: structure from the first code, data modules split.

    The second code is forced onto the first code's mask so the shared format
    information is valid for both reads.  In BOXES mode the call refuses to
    build a raster whose stolen cells would exceed any block's RS budget.
    """
    config = config or ComposeConfig()
    ec = EcLevel.parse(ec)
    tables.check_version(version)
    if config.structure_mode is StructureMode.BOXES:
        census = stolen_data_census(version, ec, StructureMode.BOXES)
        if not census.within_budget:
            raise BudgetExceeded(
                f"structural boxes touch {census.worst_block_codeword_overlap} codewords in one block; "
                f"v{version}-{ec.name} corrects {census.correction_budget}. Use tight mode.")
    qr1 = encode(message1, version, ec)
    qr2 = encode(message2, version, ec, mask_override=qr1.mask)
    return compose_matrices(qr1, qr2, config)


__all__ = [
    "ComposeConfig", "CompositeRaster", "Provenance", "QrMatrix", "SplitOrientation",
    "compose", "compose_matrices", "first_half_mask", "render_single", "split_module",
]
