"""Vectoring CORDIC: integer gradient pair to (magnitude, orientation).

The conversion mirrors a hardware vectoring CORDIC. The input vector is
mapped into the first quadrant (negating both components leaves the folded
orientation unchanged, mirroring x does so up to a 180-t reflection), then
left-justified so the larger component sits at bit 20. Sixteen shift-add
iterations drive y to zero while accumulating the rotation angle from a
table of arctan(2^-i) values held in ANG raw units (degrees, 13 fractional
bits). Shifts truncate (arithmetic right shift) exactly as hardware shifters
do; intermediates stay inside a 24-bit signed range.

The iterated x converges to gain * sqrt(gx^2 + gy^2) with gain ~1.64676.
Multiplying by the pre-quantized reciprocal (16 fractional bits) compensates
the gain; the compensated value is rounded to nearest even only at the final
U10.6 interface quantization. Orientation is folded to [0, 180) degrees:
negative angles gain 180, and 180 itself is 0.

The scalar and array code paths perform identical integer operations and
are exhaustively asserted equal; a PolarTable memoizes the full 511x511
input grid for the per-pixel streaming model.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fixq import ANG, MAG, quantize, rne_shift
from .gradient import GradientPair

RAW_180 = 180 * ANG.scale

# Inputs are left-justified so max(|gx|, |gy|) occupies bit 20; with the
# CORDIC gain the iterated x stays below 2^23 (24-bit signed headroom).
_NORM_BIT = 20

_BITLEN = tuple(v.bit_length() for v in range(256))
_BITLEN_NP = np.array(_BITLEN, dtype=np.int64)


@dataclass(frozen=True)
class CordicConfig:
    """Iteration count plus the derived angle table and gain reciprocal.

    angle_table[i] is arctan(2^-i) in degrees quantized to ANG; the
    reciprocal is 1/gain at 16 fractional bits, with the gain taken over
    the configured number of iterations.
    """

    iterations: int = 16
    angle_table: tuple[int, ...] = ()
    gain_reciprocal: int = 0

    def __post_init__(self) -> None:
        if self.iterations < 14:
            raise ValueError("need at least 14 iterations for the accuracy targets")
        if not self.angle_table:
            table = tuple(
                quantize(math.degrees(math.atan(2.0**-i)), ANG).raw
                for i in range(self.iterations)
            )
            object.__setattr__(self, "angle_table", table)
        if len(self.angle_table) != self.iterations:
            raise ValueError("angle table length must equal the iteration count")
        if not self.gain_reciprocal:
            gain = 1.0
            for i in range(self.iterations):
                gain *= math.sqrt(1.0 + 2.0 ** (-2 * i))
            object.__setattr__(self, "gain_reciprocal", round((1.0 / gain) * 65536))


@dataclass(frozen=True)
class PolarGradient:
    magnitude: int  # MAG raw (U10.6)
    orientation: int  # ANG raw (U8.13), degrees in [0, 180)
    row: int
    col: int

    @property
    def magnitude_value(self) -> float:
        return self.magnitude / MAG.scale

    @property
    def orientation_deg(self) -> float:
        return self.orientation / ANG.scale


def fold_unsigned(angle_deg: float) -> float:
    """Fold an angle from (-180, 180] into [0, 180): add 180 when negative,
    and map exactly 180 to 0."""
    if angle_deg < 0.0:
        angle_deg += 180.0
    if angle_deg == 180.0:
        angle_deg = 0.0
    return angle_deg


def polar_raw(gx: int, gy: int, cfg: CordicConfig) -> tuple[int, int, float]:
    """Scalar CORDIC core on one gradient pair.

    Returns (magnitude raw U10.6, orientation raw ANG, precise compensated
    magnitude before the U10.6 rounding). (0, 0) maps to (0, 0) by
    convention.
    """
    if gx == 0 and gy == 0:
        return 0, 0, 0.0
    # negating both components changes nothing after the fold; use that to
    # put gy > 0, or gy == 0 with gx > 0, so symmetry is exact by routing
    if gy < 0 or (gy == 0 and gx < 0):
        gx, gy = -gx, -gy
    mirror = gx < 0
    if mirror:
        gx = -gx
    shift = _NORM_BIT + 1 - _BITLEN[max(gx, gy)]
    x = gx << shift
    y = gy << shift
    z = 0
    for i, step in enumerate(cfg.angle_table):
        xs = x >> i
        ys = y >> i
        if y < 0:
            x -= ys
            y += xs
            z -= step
        else:
            x += ys
            y -= xs
            z += step
    if mirror:
        z = RAW_180 - z
    ang = z % RAW_180
    comp = x * cfg.gain_reciprocal
    precise = comp / 2.0 ** (shift + 16)
    mag = rne_shift(comp, shift + 16 - MAG.frac_bits)
    return mag, ang, precise


def polar_raw_arrays(
    gx: np.ndarray, gy: np.ndarray, cfg: CordicConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized CORDIC core, integer-for-integer identical to polar_raw.

    Inputs are int arrays in [-255, 255]; outputs are int64 magnitude raw,
    int64 orientation raw, and float64 precise compensated magnitude.
    """
    gx = gx.astype(np.int64)
    gy = gy.astype(np.int64)
    zero = (gx == 0) & (gy == 0)
    flip = (gy < 0) | ((gy == 0) & (gx < 0))
    gx = np.where(flip, -gx, gx)
    gy = np.where(flip, -gy, gy)
    mirror = gx < 0
    gx = np.where(mirror, -gx, gx)
    m = np.maximum(np.maximum(gx, gy), 1)
    shift = _NORM_BIT + 1 - _BITLEN_NP[m]
    x = gx << shift
    y = gy << shift
    z = np.zeros_like(x)
    for i, step in enumerate(cfg.angle_table):
        xs = x >> i
        ys = y >> i
        neg = y < 0
        x = np.where(neg, x - ys, x + ys)
        y = np.where(neg, y + xs, y - xs)
        z = np.where(neg, z - step, z + step)
    z = np.where(mirror, RAW_180 - z, z)
    ang = np.where(zero, 0, z % RAW_180)
    comp = x * np.int64(cfg.gain_reciprocal)
    precise = np.where(zero, 0.0, comp / np.exp2((shift + 16).astype(np.float64)))
    mag = np.where(zero, 0, _rne_shift_vec(comp, shift + 16 - MAG.frac_bits))
    return mag, ang, precise


def _rne_shift_vec(x: np.ndarray, s: np.ndarray) -> np.ndarray:
    """rne_shift with a per-element shift amount (always positive here)."""
    q = x >> s
    r = x & ((np.int64(1) << s) - 1)
    half = np.int64(1) << (s - 1)
    inc = (r > half) | ((r == half) & ((q & 1) == 1))
    return q + inc


def vector_translate(g: GradientPair, cfg: CordicConfig) -> PolarGradient:
    """Convert one gradient pair to its polar form at the pipeline widths."""
    mag, ang, _ = polar_raw(g.gx, g.gy, cfg)
    return PolarGradient(mag, ang, g.row, g.col)


class PolarTable:
    """Memoized CORDIC over the full [-255, 255]^2 input grid.

    Pure-function memoization: lookups are exhaustively identical to the
    scalar core. Constant data, not pipeline buffer state.
    """

    def __init__(self, cfg: CordicConfig):
        side = np.arange(-255, 256, dtype=np.int64)
        gx = np.repeat(side, 511)
        gy = np.tile(side, 511)
        mag, ang, _ = polar_raw_arrays(gx, gy, cfg)
        self.mag_raw = mag.astype(np.int64)
        self.ang_raw = ang.astype(np.int64)

    def lookup(self, gx: int, gy: int) -> tuple[int, int]:
        i = (gx + 255) * 511 + (gy + 255)
        return int(self.mag_raw[i]), int(self.ang_raw[i])


@lru_cache(maxsize=4)
def polar_table(cfg: CordicConfig) -> PolarTable:
    return PolarTable(cfg)
