"""Streaming central-difference gradient stage.

Models the first hardware stage: pixels arrive one per step in row-major
order and pass through two row buffers plus a 3x3 window, realized here as
a single ring holding the last 2*width + 3 pixels (the same storage, one
array). After a warm-up of one full row plus two pixels the stage emits
exactly one gradient pair per step; the emitted pair belongs to the pixel
one row and two columns behind the stream head, so every neighbor it needs
(including the pixel directly below) is already buffered.

Differences are gx = I(r, c+1) - I(r, c-1) and gy = I(r+1, c) - I(r-1, c)
with coordinates clamped to the frame (replicate-edge border policy). After
the last pixel of a frame, drain() runs the remaining warm-up's worth of
steps to flush the tail; a W x H frame yields exactly W*H pairs over
W*H + latency steps.
"""

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import DimensionError


@dataclass(frozen=True)
class GradientPair:
    gx: int
    gy: int
    row: int
    col: int


class GradientStage:
    def __init__(self, width: int, height: int):
        if width < 3 or height < 3:
            raise DimensionError("gradient window needs a frame of at least 3x3")
        self.width = width
        self.height = height
        self._cap = 2 * width + 3
        self._ring = [0] * self._cap
        self._pushed = 0
        self._emitted = 0

    def latency_pixels(self) -> int:
        """Warm-up steps before the first emission: one row plus two pixels."""
        return self.width + 2

    @property
    def buffered_pixels(self) -> int:
        """Live pixels held: at most two rows plus the window constant."""
        return min(self._pushed, self._cap)

    def _at(self, index: int) -> int:
        return self._ring[index % self._cap]

    def _emit(self) -> GradientPair:
        w, h = self.width, self.height
        m = self._emitted
        r, c = divmod(m, w)
        left = self._at(m - 1) if c > 0 else self._at(m)
        right = self._at(m + 1) if c < w - 1 else self._at(m)
        up = self._at(m - w) if r > 0 else self._at(m)
        down = self._at(m + w) if r < h - 1 else self._at(m)
        self._emitted += 1
        return GradientPair(right - left, down - up, r, c)

    def push_pixel(self, luma: int) -> Optional[GradientPair]:
        """One stream step. Returns a pair once warm-up has passed, else None."""
        self._ring[self._pushed % self._cap] = luma
        self._pushed += 1
        if self._pushed > self.latency_pixels():
            return self._emit()
        return None

    def drain(self) -> Iterator[GradientPair]:
        """Flush steps after the frame's last pixel; one emission per step."""
        total = self.width * self.height
        if self._pushed != total:
            raise DimensionError(
                f"drain after {self._pushed} pixels, frame has {total}"
            )
        while self._emitted < total:
            yield self._emit()
