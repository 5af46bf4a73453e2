"""Q-format fixed-point arithmetic with explicit widths and saturation.

A QFormat describes a two's complement register: `int_bits` magnitude bits,
`frac_bits` fractional bits, plus a sign bit when `signed`. The represented
value of a raw integer is raw / 2**frac_bits. All operations saturate at the
format limits instead of wrapping; saturation is reported on the result, not
raised.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import FormatMismatch


class Rounding(Enum):
    TRUNCATE = "truncate"
    NEAREST_EVEN = "nearest-even"


@dataclass(frozen=True)
class QFormat:
    signed: bool
    int_bits: int
    frac_bits: int

    def __post_init__(self) -> None:
        if self.int_bits < 0 or self.frac_bits < 0:
            raise ValueError("bit counts must be non-negative")
        if self.int_bits + self.frac_bits == 0:
            raise ValueError("format must have at least one value bit")
        if self.payload_bits > 32:
            raise ValueError("format wider than 32 bits")

    @property
    def payload_bits(self) -> int:
        return self.int_bits + self.frac_bits + (1 if self.signed else 0)

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits

    @property
    def raw_min(self) -> int:
        return -(1 << (self.int_bits + self.frac_bits)) if self.signed else 0

    @property
    def raw_max(self) -> int:
        return (1 << (self.int_bits + self.frac_bits)) - 1

    def clamp(self, raw: int) -> tuple[int, bool]:
        """Saturate raw to the representable range. Returns (raw, saturated)."""
        if raw < self.raw_min:
            return self.raw_min, True
        if raw > self.raw_max:
            return self.raw_max, True
        return raw, False


@dataclass(frozen=True)
class QValue:
    format: QFormat
    raw: int
    saturated: bool = field(default=False, compare=False)

    @property
    def value(self) -> float:
        return self.raw / self.format.scale


# Pipeline register formats. GRAD is a 9-bit signed integer (sign plus 8
# magnitude bits, so raw range [-256, 255]); pixel differences never exceed
# +-255. MAG leaves headroom for the uncompensated CORDIC gain, ANG holds
# degrees in [0, 180) at 13 fractional bits, CELL_ACC holds 64 magnitude
# votes per bin without overflow (64 * 594 * 64 < 2**22).
GRAD = QFormat(signed=True, int_bits=8, frac_bits=0)
MAG = QFormat(signed=False, int_bits=10, frac_bits=6)
ANG = QFormat(signed=False, int_bits=8, frac_bits=13)
CELL_ACC = QFormat(signed=False, int_bits=16, frac_bits=6)


def rne_shift(x, s: int):
    """Arithmetic right shift by s with round-half-to-even.

    Works on Python ints and numpy integer arrays alike; s <= 0 is a plain
    left shift. The remainder is taken non-negative (two's complement), so
    rounding is around floor in all cases.
    """
    if s <= 0:
        return x << (-s)
    q = x >> s
    r = x & ((1 << s) - 1)
    half = 1 << (s - 1)
    inc = (r > half) | ((r == half) & ((q & 1) == 1))
    return q + inc


def quantize(x: float, fmt: QFormat, mode: Rounding = Rounding.NEAREST_EVEN) -> QValue:
    """Convert a real value to the nearest representable QValue.

    NEAREST_EVEN uses banker's rounding on x * 2**frac_bits; TRUNCATE floors,
    matching a hardware shifter. Out-of-range values saturate and flag it.
    """
    scaled = x * fmt.scale
    if mode is Rounding.TRUNCATE:
        raw = math.floor(scaled)
    else:
        raw = round(scaled)
    raw, sat = fmt.clamp(raw)
    return QValue(fmt, raw, sat)


def dequantize(v: QValue) -> float:
    return v.raw / v.format.scale


def _binop_format(a: QValue, b: QValue) -> QFormat:
    if a.format.frac_bits != b.format.frac_bits:
        raise FormatMismatch(
            f"frac bits differ: {a.format.frac_bits} vs {b.format.frac_bits}"
        )
    return QFormat(
        signed=a.format.signed or b.format.signed,
        int_bits=max(a.format.int_bits, b.format.int_bits),
        frac_bits=a.format.frac_bits,
    )


def q_add(a: QValue, b: QValue) -> QValue:
    """Saturating add. Operands must share frac_bits; the result keeps the
    wider integer range of the two."""
    fmt = _binop_format(a, b)
    raw, sat = fmt.clamp(a.raw + b.raw)
    return QValue(fmt, raw, sat)


def q_sub(a: QValue, b: QValue) -> QValue:
    fmt = _binop_format(a, b)
    raw, sat = fmt.clamp(a.raw - b.raw)
    return QValue(fmt, raw, sat)


def q_mul(a: QValue, b: QValue) -> QValue:
    """Full-precision product: frac bits add, integer bits add. The only
    overflow case is -max * -max on signed operands, which saturates."""
    fmt = QFormat(
        signed=a.format.signed or b.format.signed,
        int_bits=a.format.int_bits + b.format.int_bits,
        frac_bits=a.format.frac_bits + b.format.frac_bits,
    )
    raw, sat = fmt.clamp(a.raw * b.raw)
    return QValue(fmt, raw, sat)


def q_shift(a: QValue, k: int) -> QValue:
    """Shift by k bit positions (positive = left), saturating, format kept.

    Right shifts are arithmetic (floor), the behaviour of a hardware barrel
    shifter on two's complement.
    """
    raw = a.raw << k if k >= 0 else a.raw >> (-k)
    raw, sat = a.format.clamp(raw)
    return QValue(a.format, raw, sat)
