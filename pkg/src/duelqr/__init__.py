"""Angle-dependent dual-message QR codes by half-module splitting.

Typical use::

    from duelqr import compose, ComposeConfig, verify_dual
    raster = compose(b"https://www.nsa.gov/", b"https://www.nasa.gov/",
                     config=ComposeConfig(scale=9, orientation="V"))
    assert verify_dual(raster).passed
"""

from .composer import (
    ComposeConfig, CompositeRaster, Provenance, SplitOrientation, compose, compose_matrices,
    render_single, split_module,
)
from .errors import (
    BudgetExceeded, CapacityExceeded, DecodeError, DegenerateGeometry, DuelQRError,
    FormatUnreadable, GeometryMismatch, InvalidMaskOverride, MalformedHeader, MalformedPayload,
    ScaleTooSmall, TooManyErrors, TruncatedBody, UnsupportedVersion,
)
from .qr_core import QrMatrix, choose_mask, encode, encode_payload, format_bits
from .qr_decode import DecodeOutcome, decode, extract_codewords, read_format
from .reed_solomon import rs_decode, rs_encode
from .scan_sim import (
    OffsetField, SampleGeometry, ScanReport, ambiguity_probe, sample, tilt_offsets, verify_dual,
)
from .structure_map import (
    StructureMode, alignment_centers, is_in_finder, is_structural, stolen_data_census,
)
from .tables import EcLevel

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CapacityExceeded", "ComposeConfig", "CompositeRaster", "DecodeError",
    "DecodeOutcome", "DegenerateGeometry", "DuelQRError", "EcLevel", "FormatUnreadable",
    "GeometryMismatch", "InvalidMaskOverride", "MalformedHeader", "MalformedPayload", "OffsetField",
    "Provenance", "QrMatrix", "SampleGeometry", "ScaleTooSmall", "ScanReport", "SplitOrientation",
    "StructureMode", "TooManyErrors", "TruncatedBody", "UnsupportedVersion", "alignment_centers",
    "ambiguity_probe", "choose_mask", "compose", "compose_matrices", "decode", "encode",
    "encode_payload", "extract_codewords", "format_bits", "is_in_finder", "is_structural",
    "read_format", "render_single", "rs_decode", "rs_encode", "sample", "split_module",
    "stolen_data_census", "tilt_offsets", "verify_dual",
]
