"""One-pixel-per-step feature pipeline.

Wires gradient extraction, polar conversion, orientation voting, cell
accumulation and block assembly into a single streaming extractor. One
step ingests one pixel; all stages advance synchronously on it, so the
step ledger mirrors a single-clock-domain datapath. After the last pixel
the gradient stage drains its latency tail, each flushed pixel costing
one further step. pixels_per_step therefore lands just under 1.0: the
frame's pixel count divided by pixel count plus warm-up.

run_frame is the instrumented streaming path. run_frame_fast computes
the identical HogFrame with whole-frame array arithmetic (memoized polar
table, bincount histograms); every stage of it is integer-identical to
the scalar datapath, so the two outputs match element-exactly.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .blocks import BLOCK_EPSILON, BLOCK_VALUES, BlockAssembler, HogFrame
from .cells import CellAccumulator, cells_per_frame
from .cordic import CordicConfig, polar_raw, PolarGradient
from .errors import DimensionError, TapNotEnabled
from .gradient import GradientStage
from .voting import BIN_COUNT, vote, vote_table


class Tap(Enum):
    """Debug capture points, in stage order."""

    GRADIENTS = "gradients"
    POLAR = "polar"
    VOTES = "votes"
    CELLS = "cells"
    BLOCKS = "blocks"


@dataclass(frozen=True)
class PipelineConfig:
    width: int
    height: int
    cordic: CordicConfig = field(default_factory=CordicConfig)
    epsilon: float = BLOCK_EPSILON
    taps: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.width % 8 or self.height % 8:
            raise DimensionError(
                f"{self.width}x{self.height} is not a multiple of the cell size"
            )
        if self.width < 16 or self.height < 16:
            raise DimensionError("need at least a 2x2 cell grid, so 16x16 pixels")
        object.__setattr__(self, "taps", frozenset(self.taps))


@dataclass(frozen=True)
class RunStats:
    pixels_in: int
    steps: int
    warmup_steps: int
    cells_out: int
    blocks_out: int

    @property
    def pixels_per_step(self) -> float:
        return self.pixels_in / self.steps


class StreamingPipeline:
    """Single-frame pipeline instance with step and buffer accounting.

    Call step() once per pixel in row-major order, then finish(). Peak
    buffer occupancy is tracked per step for the memory-bound check; the
    memoized polar table is constant data and deliberately not counted.
    """

    def __init__(self, cfg: PipelineConfig):
        self.cfg = cfg
        cc, cr = cells_per_frame(cfg.width, cfg.height)
        self.cell_cols = cc
        self.cell_rows = cr
        self._grad = GradientStage(cfg.width, cfg.height)
        self._cells = CellAccumulator(cfg.width, cfg.height)
        self._blocks = BlockAssembler(cc, cfg.epsilon)
        self._cell_grid = np.zeros((cr, cc, BIN_COUNT), dtype=np.int64)
        self._block_grid = np.zeros((cr - 1, cc - 1, BLOCK_VALUES))
        self._captures = {t: [] for t in cfg.taps}
        self.pixels_in = 0
        self.steps = 0
        self.cells_out = 0
        self.blocks_out = 0
        self.peak_pixel_buffer = 0
        self.peak_cell_row_buffer = 0
        self._done = False

    @property
    def cell_partials(self) -> int:
        # fixed-size ring, one partial histogram per cell column
        return self._cells.partial_count

    def captures(self, tap: Tap) -> list:
        if tap not in self._captures:
            raise TapNotEnabled(f"tap {tap.value} was not requested in the config")
        return self._captures[tap]

    def step(self, luma: int) -> None:
        self.pixels_in += 1
        self.steps += 1
        g = self._grad.push_pixel(luma)
        if self._grad.buffered_pixels > self.peak_pixel_buffer:
            self.peak_pixel_buffer = self._grad.buffered_pixels
        if g is not None:
            self._advance(g)

    def finish(self) -> tuple[HogFrame, RunStats]:
        if not self._done:
            for g in self._grad.drain():
                self.steps += 1
                self._advance(g)
            self._done = True
        return self._result()

    def _advance(self, g) -> None:
        cap = self._captures
        if cap and Tap.GRADIENTS in cap:
            cap[Tap.GRADIENTS].append(g)
        mag, ang, _ = polar_raw(g.gx, g.gy, self.cfg.cordic)
        p = PolarGradient(mag, ang, g.row, g.col)
        if cap and Tap.POLAR in cap:
            cap[Tap.POLAR].append(p)
        v = vote(p)
        if cap and Tap.VOTES in cap:
            cap[Tap.VOTES].append(v)
        h = self._cells.accumulate(v)
        if h is None:
            return
        self.cells_out += 1
        self._cell_grid[h.cell_row, h.cell_col] = h.bins
        if cap and Tap.CELLS in cap:
            cap[Tap.CELLS].append(h)
        b = self._blocks.add(h)
        if self._blocks.buffered_cells > self.peak_cell_row_buffer:
            self.peak_cell_row_buffer = self._blocks.buffered_cells
        if b is not None:
            self.blocks_out += 1
            self._block_grid[b.block_row, b.block_col] = b.values
            if cap and Tap.BLOCKS in cap:
                cap[Tap.BLOCKS].append(b)

    def _result(self) -> tuple[HogFrame, RunStats]:
        stats = RunStats(
            pixels_in=self.pixels_in,
            steps=self.steps,
            warmup_steps=self.steps - self.pixels_in,
            cells_out=self.cells_out,
            blocks_out=self.blocks_out,
        )
        return HogFrame(cells=self._cell_grid, blocks=self._block_grid), stats


def _as_luma(frame, cfg: PipelineConfig) -> np.ndarray:
    luma = getattr(frame, "luma", frame)
    luma = np.asarray(luma)
    if luma.shape != (cfg.height, cfg.width):
        raise DimensionError(
            f"frame is {luma.shape}, config wants {(cfg.height, cfg.width)}"
        )
    return luma


def run_frame(frame, cfg: PipelineConfig) -> tuple[HogFrame, RunStats]:
    """Stream a whole frame through a fresh pipeline instance."""
    luma = _as_luma(frame, cfg)
    pipe = StreamingPipeline(cfg)
    for px in luma.ravel().tolist():
        pipe.step(px)
    return pipe.finish()


def run_frame_fast(frame, cfg: PipelineConfig) -> tuple[HogFrame, RunStats]:
    """Whole-frame vectorized twin of run_frame, bit-identical output.

    Taps are a streaming facility; requesting them here is an error
    rather than a silent no-op.
    """
    if cfg.taps:
        raise TapNotEnabled("stage taps require the streaming path")
    luma = _as_luma(frame, cfg)
    h, w = luma.shape
    cc, cr = cells_per_frame(w, h)

    p = np.pad(luma.astype(np.int16), 1, mode="edge")
    gx = (p[1:-1, 2:] - p[1:-1, :-2]).astype(np.int32).ravel()
    gy = (p[2:, 1:-1] - p[:-2, 1:-1]).astype(np.int32).ravel()

    votes = vote_table(cfg.cordic)
    flat = (gx + 255) * 511 + (gy + 255)

    base = (
        np.repeat(np.arange(h, dtype=np.int32) // 8, w) * cc
        + np.tile(np.arange(w, dtype=np.int32) // 8, h)
    ) * BIN_COUNT
    # weights are integers well under 2^53, so float64 bincount is exact
    counts = np.bincount(
        base + votes.lo_bin[flat], weights=votes.lo_weight[flat],
        minlength=cr * cc * BIN_COUNT,
    )
    counts += np.bincount(
        base + votes.hi_bin[flat], weights=votes.hi_weight[flat],
        minlength=cr * cc * BIN_COUNT,
    )
    cells = counts.astype(np.int64).reshape(cr, cc, BIN_COUNT)

    v = cells.astype(np.float64) / 64.0  # MAG has 6 fractional bits
    quads = np.concatenate(
        [v[:-1, :-1], v[:-1, 1:], v[1:, :-1], v[1:, 1:]], axis=2
    )
    denom = np.sqrt(
        np.sum(np.square(quads), axis=2) + cfg.epsilon * cfg.epsilon
    )
    blocks = quads / denom[..., None]

    stats = RunStats(
        pixels_in=h * w,
        steps=h * w + w + 2,
        warmup_steps=w + 2,
        cells_out=cr * cc,
        blocks_out=(cr - 1) * (cc - 1),
    )
    return HogFrame(cells=cells, blocks=blocks), stats
