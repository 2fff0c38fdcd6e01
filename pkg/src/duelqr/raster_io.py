"""Bit-exact raster serialisation: plain PBM (P1), binary PGM (P5), PNG (write only).

The netpbm writers are canonical: magic number, one optional provenance
comment line, ``width height`` on one line, maxval for PGM, then the body.
P1 bodies put each image row on its own line(s), digits separated by single
spaces and wrapped so no line exceeds 70 characters.
"""

from enum import Enum
import struct
import zlib

import numpy as np

from .composer import CompositeRaster, Provenance, SplitOrientation
from .errors import MalformedHeader, TruncatedBody
from .structure_map import StructureMode
from .tables import EcLevel, side_length

PROVENANCE_TAG = "duelqr"
P1_LINE_LIMIT = 70
_DIGITS_PER_LINE = (P1_LINE_LIMIT + 1) // 2


class RasterFormat(Enum):
    PBM_P1 = "pbm"
    PGM_P5 = "pgm"
    PNG = "png"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower().lstrip("."))
        except ValueError:
            raise ValueError(f"unknown raster format {text!r}") from None

    @classmethod
    def for_path(cls, path, default="pbm"):
        suffix = str(path).rsplit(".", 1)[-1] if "." in str(path) else default
        try:
            return cls.parse(suffix)
        except ValueError:
            return cls.parse(default)


# ---- provenance comment ----

def provenance_comment(raster):
    p = raster.provenance
    if p is None:
        return None
    parts = [f"v={p.version}", f"ec={p.ec.name}", f"mask={p.mask}"]
    if raster.orientation is not None:
        parts.append(f"orient={raster.orientation.value}")
    parts.append(f"scale={raster.scale}")
    if raster.structure_mode is not None:
        parts.append(f"mode={raster.structure_mode.value}")
    return f"# {PROVENANCE_TAG} " + " ".join(parts)


def parse_comment(comment):
    """Key/value pairs of a provenance comment, or {} for foreign comments."""
    words = comment.lstrip("#").split()
    if not words or words[0] != PROVENANCE_TAG:
        return {}
    fields = {}
    for word in words[1:]:
        key, sep, value = word.partition("=")
        if not sep:
            raise MalformedHeader(f"bad provenance field {word!r}")
        fields[key] = value
    return fields


def _raster_from_fields(pixels, fields):
    if "scale" not in fields or "v" not in fields:
        return CompositeRaster(pixels, 1, 0)
    try:
        scale = int(fields["scale"])
        version = int(fields["v"])
        provenance = Provenance(version, EcLevel.parse(fields["ec"]), int(fields["mask"]))
        orientation = SplitOrientation.parse(fields["orient"]) if "orient" in fields else None
        mode = StructureMode.parse(fields["mode"]) if "mode" in fields else None
    except (KeyError, ValueError) as exc:
        raise MalformedHeader(f"bad provenance comment: {exc}") from None
    width = pixels.shape[1]
    modules, rem = divmod(width, scale)
    border = modules - side_length(version)
    if rem or border < 0 or border % 2 or pixels.shape[0] != width:
        raise MalformedHeader(f"{width}x{pixels.shape[0]} raster does not fit v{version} at scale {scale}")
    return CompositeRaster(pixels, scale, border // 2, provenance, orientation, mode)


# ---- writers ----

def _header(magic, raster, extra=()):
    lines = [magic]
    comment = provenance_comment(raster)
    if comment:
        lines.append(comment)
    lines.append(f"{raster.width} {raster.height}")
    lines.extend(extra)
    return ("\n".join(lines) + "\n").encode("ascii")


def _p1_body(pixels):
    out = []
    for row in pixels:
        digits = ["1" if v else "0" for v in row]
        for i in range(0, len(digits), _DIGITS_PER_LINE):
            out.append(" ".join(digits[i:i + _DIGITS_PER_LINE]))
    return ("\n".join(out) + "\n").encode("ascii")


def _png_chunk(kind, data):
    body = kind + data
    return struct.pack(">I", len(data)) + body + struct.pack(">I", zlib.crc32(body) & 0xFFFFFFFF)


def encode_png(gray, text=None):
    """8-bit grayscale, non-interlaced PNG with a single IDAT chunk."""
    gray = np.asarray(gray, dtype=np.uint8)
    h, w = gray.shape
    raw = np.zeros((h, w + 1), dtype=np.uint8)
    raw[:, 1:] = gray  # filter type 0 on every scanline
    out = b"\x89PNG\r\n\x1a\n"
    out += _png_chunk(b"IHDR", struct.pack(">IIBBBBB", w, h, 8, 0, 0, 0, 0))
    if text:
        out += _png_chunk(b"tEXt", b"Comment\x00" + text.encode("latin-1"))
    out += _png_chunk(b"IDAT", zlib.compress(raw.tobytes(), 9))
    out += _png_chunk(b"IEND", b"")
    return out


def write(raster, fmt=RasterFormat.PBM_P1):
    """Serialise ``raster`` to bytes.  Dark pixels: P1 '1', P5/PNG value 0."""
    fmt = RasterFormat.parse(fmt)
    pixels = np.asarray(raster.pixels, dtype=bool)
    if pixels.size == 0:
        raise ValueError("cannot write an empty raster")
    if fmt is RasterFormat.PBM_P1:
        return _header("P1", raster) + _p1_body(pixels)
    gray = np.where(pixels, 0, 255).astype(np.uint8)
    if fmt is RasterFormat.PGM_P5:
        return _header("P5", raster, ["255"]) + gray.tobytes()
    comment = provenance_comment(raster)
    return encode_png(gray, comment[2:] if comment else None)


# ---- readers ----

class _Tokens:
    """Netpbm header tokenizer that skips whitespace and '#' comments."""

    def __init__(self, data):
        self.data = data
        self.pos = 0
        self.comments = []

    def next(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in b" \t\r\n\v\f":
                self.pos += 1
            elif c == ord("#"):
                end = data.find(b"\n", self.pos)
                end = n if end < 0 else end
                self.comments.append(data[self.pos:end].decode("latin-1").rstrip("\r"))
                self.pos = end
            else:
                break
        start = self.pos
        while self.pos < n and data[self.pos] not in b" \t\r\n\v\f#":
            self.pos += 1
        if start == self.pos:
            raise MalformedHeader("unexpected end of header")
        return data[start:self.pos].decode("latin-1")

    def integer(self, what):
        tok = self.next()
        if not tok.isdigit():
            raise MalformedHeader(f"expected {what}, got {tok!r}")
        return int(tok)


def _provenance_fields(comments):
    for comment in comments:
        fields = parse_comment(comment)
        if fields:
            return fields
    return {}


def read(data):
    """Parse a P1 or P5 file.  P5 samples below half of maxval are dark."""
    data = bytes(data)
    tokens = _Tokens(data)
    try:
        magic = tokens.next()
    except MalformedHeader:
        raise MalformedHeader("empty input") from None
    if magic not in ("P1", "P5"):
        raise MalformedHeader(f"unsupported magic number {magic!r}")
    width = tokens.integer("width")
    height = tokens.integer("height")
    if width == 0 or height == 0:
        raise MalformedHeader("zero-sized raster")

    if magic == "P1":
        body = data[tokens.pos:]
        stripped = body.translate(None, b" \t\r\n\v\f")
        if stripped.translate(None, b"01"):
            raise MalformedHeader("P1 body contains characters other than 0, 1 and whitespace")
        if len(stripped) < width * height:
            raise TruncatedBody(f"P1 body has {len(stripped)} of {width * height} pixels")
        pixels = np.frombuffer(stripped[:width * height], dtype=np.uint8).reshape(height, width) == ord("1")
    else:
        maxval = tokens.integer("maxval")
        if not 0 < maxval < 256:
            raise MalformedHeader(f"maxval {maxval} unsupported (8-bit only)")
        start = tokens.pos + 1  # exactly one whitespace byte after maxval
        body = data[start:start + width * height]
        if len(body) < width * height:
            raise TruncatedBody(f"P5 body has {len(body)} of {width * height} bytes")
        pixels = np.frombuffer(body, dtype=np.uint8).reshape(height, width) < (maxval + 1) / 2
    pixels = np.ascontiguousarray(pixels)
    pixels.flags.writeable = False
    return _raster_from_fields(pixels, _provenance_fields(tokens.comments))


def save(raster, path, fmt=None):
    fmt = RasterFormat.parse(fmt) if fmt else RasterFormat.for_path(path)
    with open(path, "wb") as f:
        f.write(write(raster, fmt))
    return fmt


def load(path):
    with open(path, "rb") as f:
        return read(f.read())
