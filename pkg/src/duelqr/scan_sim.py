"""Reader-side sampling model for composite rasters.

A reader that has registered its grid samples one pixel per module near the
module centre.  Viewing angle is modelled as a displacement of those sampling
points, in module units, which decides which half of a split module is read.
"""

from collections import Counter
from dataclasses import dataclass, field
import math
from typing import Optional

import numpy as np

from . import tables
from .composer import SplitOrientation
from .errors import DecodeError, DegenerateGeometry, GeometryMismatch
from .qr_decode import decode

PROBE_OFFSETS = (-0.4, -0.3, -0.2, -0.1, 0.1, 0.2, 0.3, 0.4)
PASS_THRESHOLD = 0.15
SELECT_OFFSET = 0.25
JITTER_CLAMP = 0.49


@dataclass(frozen=True)
class SampleGeometry:
    scale: int
    quiet_zone: int
    grid_size: int

    @classmethod
    def of(cls, raster):
        return cls(raster.scale, raster.quiet_zone, raster.grid_size)

    @property
    def pixels(self):
        return (self.grid_size + 2 * self.quiet_zone) * self.scale


@dataclass(frozen=True, eq=False)
class OffsetField:
    """Per-module displacement ``dx[row, col]``, ``dy[row, col]`` in module units."""

    dx: np.ndarray
    dy: np.ndarray

    def __post_init__(self):
        dx = np.asarray(self.dx, dtype=float)
        dy = np.asarray(self.dy, dtype=float)
        if dx.shape != dy.shape or dx.ndim != 2:
            raise ValueError("dx and dy must be equal-shaped 2-D arrays")
        if np.any(np.abs(dx) >= 0.5) or np.any(np.abs(dy) >= 0.5):
            raise DegenerateGeometry("sampling displacement must stay below half a module")
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "dy", dy)

    @classmethod
    def uniform(cls, grid_size, dx=0.0, dy=0.0):
        return cls(np.full((grid_size, grid_size), float(dx)), np.full((grid_size, grid_size), float(dy)))

    @classmethod
    def jittered(cls, grid_size, sigma, seed=None, rng=None):
        """I.i.d. zero-mean normal displacements clamped to +/-0.49.

        Pass ``rng`` to draw from an existing generator instead of seeding a new one.
        """
        rng = rng if rng is not None else np.random.default_rng(seed)
        d = rng.normal(0.0, sigma, size=(2, grid_size, grid_size))
        d = np.clip(d, -JITTER_CLAMP, JITTER_CLAMP)
        return cls(d[0], d[1])

    def __add__(self, other):
        return OffsetField(self.dx + other.dx, self.dy + other.dy)

    def __neg__(self):
        return OffsetField(-self.dx, -self.dy)

    def __eq__(self, other):
        if not isinstance(other, OffsetField):
            return NotImplemented
        return np.array_equal(self.dx, other.dx) and np.array_equal(self.dy, other.dy)

    __hash__ = None


def _pixel_index(base, offset, scale):
    # round away float noise so exact half-way landings stay deterministic
    return np.floor(np.round((base + 0.5 + offset) * scale, 9)).astype(int)


def sample(raster, geometry=None, offsets=None):
    """Module grid read by sampling one pixel per module at the displaced centre."""
    geometry = geometry or SampleGeometry.of(raster)
    n = geometry.grid_size
    if raster.width != geometry.pixels or raster.height != geometry.pixels:
        raise GeometryMismatch(
            f"raster is {raster.width}x{raster.height}, geometry implies {geometry.pixels} square")
    offsets = offsets if offsets is not None else OffsetField.uniform(n)
    if offsets.dx.shape != (n, n):
        raise GeometryMismatch(f"offset field is {offsets.dx.shape}, grid is {n}x{n}")
    rows, cols = np.indices((n, n)) + geometry.quiet_zone
    px = _pixel_index(cols, offsets.dx, geometry.scale)
    py = _pixel_index(rows, offsets.dy, geometry.scale)
    return np.asarray(raster.pixels)[py, px]


class TiltAxis:
    LEFT_RIGHT = "LeftRight"
    TOP_BOTTOM = "TopBottom"
    DIAGONAL = "Diagonal"

    ALL = (LEFT_RIGHT, TOP_BOTTOM, DIAGONAL)

    @classmethod
    def for_orientation(cls, orientation):
        return {SplitOrientation.VERTICAL: cls.LEFT_RIGHT,
                SplitOrientation.HORIZONTAL: cls.TOP_BOTTOM,
                SplitOrientation.DIAGONAL: cls.DIAGONAL}[SplitOrientation.parse(orientation)]


def tilt_offsets(theta_degrees, axis, geometry, camera_distance_modules):
    """First-order sampling displacement for a code plane tilted by ``theta``.

    A module ``u`` modules from the grid centre along the tilt axis lands at
    ``u * tan(theta) / camera_distance`` modules from where a fronto-parallel
    reader expects it.  The field is linear, zero at the centre and odd in
    both ``u`` and ``theta``.
    """
    if not abs(theta_degrees) < 45:
        raise DegenerateGeometry(f"tilt {theta_degrees} deg outside (-45, 45)")
    n = geometry.grid_size
    if not camera_distance_modules > n:
        raise DegenerateGeometry("camera must sit farther than one grid width from the code")
    if axis not in TiltAxis.ALL:
        raise ValueError(f"unknown tilt axis {axis!r}")
    rows, cols = np.indices((n, n)) - (n - 1) / 2
    gain = math.tan(math.radians(theta_degrees)) / camera_distance_modules
    if axis == TiltAxis.LEFT_RIGHT:
        dx, dy = cols * gain, np.zeros((n, n))
    elif axis == TiltAxis.TOP_BOTTOM:
        dx, dy = np.zeros((n, n)), rows * gain
    else:
        dx = dy = (rows + cols) / 2 * gain
    if np.any(np.abs(dx) >= 0.5) or np.any(np.abs(dy) >= 0.5):
        raise DegenerateGeometry("tilt displaces some module by half a module or more")
    return OffsetField(dx, dy)


@dataclass(frozen=True)
class ScanEntry:
    dx: float
    dy: float
    message: Optional[bytes] = None
    reason: Optional[str] = None
    corrections: tuple = ()

    @property
    def ok(self):
        return self.message is not None

    def to_text(self):
        head = f"offset {self.dx:+.3f} {self.dy:+.3f} -> "
        return head + (f"OK {self.message.hex()}" if self.ok else f"FAIL {self.reason}")


@dataclass
class ScanReport:
    m1: Optional[bytes]
    m2: Optional[bytes]
    entries: list = field(default_factory=list)
    passed: bool = False

    @property
    def summary(self):
        """Counts per distinct decoded message; failures under the key None."""
        return Counter(e.message for e in self.entries)

    def counts(self):
        m1 = sum(1 for e in self.entries if e.ok and e.message == self.m1)
        m2 = sum(1 for e in self.entries if e.ok and e.message == self.m2 and self.m2 != self.m1)
        fail = sum(1 for e in self.entries if not e.ok)
        return m1, m2, fail, len(self.entries) - m1 - m2 - fail

    def to_text(self):
        lines = [e.to_text() for e in self.entries]
        m1, m2, fail, other = self.counts()
        tail = f"summary m1={m1} m2={m2} fail={fail}"
        if other:
            tail += f" other={other}"
        lines.append(tail)
        return "\n".join(lines) + "\n"


def _read(raster, geometry, offsets):
    try:
        outcome = decode(sample(raster, geometry, offsets))
    except DecodeError as exc:
        return None, f"{type(exc).__name__}: {exc}", ()
    return outcome.message, None, outcome.corrections


def probe(raster, dx, dy, geometry=None):
    """Decode the raster under a uniform displacement and return a :class:`ScanEntry`."""
    geometry = geometry or SampleGeometry.of(raster)
    message, reason, corrections = _read(raster, geometry, OffsetField.uniform(geometry.grid_size, dx, dy))
    return ScanEntry(dx, dy, message, reason, corrections)


def _orientation(raster):
    if raster.orientation is None:
        return SplitOrientation.VERTICAL
    return raster.orientation


def _along(delta, component):
    return round(delta * component, 6) + 0.0  # no negative zeros in reports


def selected_messages(raster):
    """Messages read at -0.25 and +0.25 along the split axis (None on failure)."""
    ax, ay = _orientation(raster).axis
    left = probe(raster, _along(-SELECT_OFFSET, ax), _along(-SELECT_OFFSET, ay))
    right = probe(raster, _along(SELECT_OFFSET, ax), _along(SELECT_OFFSET, ay))
    return left.message, right.message


def verify_dual(raster, m1=None, m2=None, offsets=PROBE_OFFSETS):
    """Sweep uniform offsets along the split axis and check message selection.

    Without explicit messages the expected pair is whatever the reader sees at
    -0.25 / +0.25.  PASS requires every probe at ``|delta| >= 0.15`` to read
    the message on its side.
    """
    if m1 is None or m2 is None:
        left, right = selected_messages(raster)
        m1 = left if m1 is None else m1
        m2 = right if m2 is None else m2
    ax, ay = _orientation(raster).axis
    geometry = SampleGeometry.of(raster)
    report = ScanReport(m1, m2)
    ok = m1 is not None and m2 is not None
    for delta in offsets:
        entry = probe(raster, _along(delta, ax), _along(delta, ay), geometry)
        report.entries.append(entry)
        if abs(delta) >= PASS_THRESHOLD:
            expected = m1 if delta < 0 else m2
            ok = ok and entry.ok and entry.message == expected
    report.passed = ok
    return report


@dataclass(frozen=True)
class AmbiguityTally:
    success_m1: int
    success_m2: int
    failures: int
    other: int = 0

    @property
    def trials(self):
        return self.success_m1 + self.success_m2 + self.failures + self.other

    @property
    def minority(self):
        return min(self.success_m1, self.success_m2)

    @property
    def unreliable(self):
        return self.failures + self.other + self.minority

    def to_text(self):
        return (f"ambiguity m1={self.success_m1} m2={self.success_m2} "
                f"fail={self.failures} other={self.other}")


def ambiguity_probe(raster, sigma, trials, seed, m1=None, m2=None):
    """Head-on reads with i.i.d. jitter on every sampling point, tallied by outcome."""
    if not 0 < sigma < 0.5:
        raise ValueError(f"sigma {sigma} outside (0, 0.5)")
    if trials < 1:
        raise ValueError("trials must be positive")
    if m1 is None or m2 is None:
        left, right = selected_messages(raster)
        m1 = left if m1 is None else m1
        m2 = right if m2 is None else m2
    geometry = SampleGeometry.of(raster)
    rng = np.random.default_rng(seed)
    tally = Counter()
    for _ in range(trials):
        jitter = OffsetField.jittered(geometry.grid_size, sigma, rng=rng)
        message, _, _ = _read(raster, geometry, jitter)
        if message is None:
            tally["fail"] += 1
        elif message == m1:
            tally["m1"] += 1
        elif message == m2:
            tally["m2"] += 1
        else:
            tally["other"] += 1
    return AmbiguityTally(tally["m1"], tally["m2"], tally["fail"], tally["other"])


def raster_geometry(raster):
    """Geometry with the version implied by the grid size validated."""
    geometry = SampleGeometry.of(raster)
    tables.version_for_size(geometry.grid_size)
    return geometry
