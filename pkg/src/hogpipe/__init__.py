"""Streaming fixed-point HOG feature extractor and its floating-point golden model."""

from .blocks import BlockDescriptor, HogFrame, normalize_block
from .cells import CellHistogram, cells_per_frame
from .cordic import CordicConfig, PolarGradient, vector_translate
from .detector import Detection, SvmModel, detect, load_model, save_model, score_window
from .errors import (
    CountMismatch,
    DimensionError,
    FormatError,
    FormatMismatch,
    LayoutError,
    OrderError,
    OutOfBoundsError,
    ShapeMismatch,
    TapNotEnabled,
)
from .fixq import ANG, CELL_ACC, GRAD, MAG, QFormat, QValue, Rounding
from .golden import DiffReport, GoldenHog, compare, golden_hog
from .ingest import GrayFrame, decode_image, load_luma
from .pipeline import (
    PipelineConfig,
    RunStats,
    StreamingPipeline,
    Tap,
    run_frame,
    run_frame_fast,
)

__all__ = [
    "ANG",
    "BlockDescriptor",
    "CELL_ACC",
    "CellHistogram",
    "CordicConfig",
    "CountMismatch",
    "Detection",
    "DiffReport",
    "DimensionError",
    "FormatError",
    "FormatMismatch",
    "GRAD",
    "GoldenHog",
    "GrayFrame",
    "HogFrame",
    "LayoutError",
    "MAG",
    "OrderError",
    "OutOfBoundsError",
    "PipelineConfig",
    "PolarGradient",
    "QFormat",
    "QValue",
    "Rounding",
    "RunStats",
    "ShapeMismatch",
    "StreamingPipeline",
    "SvmModel",
    "Tap",
    "TapNotEnabled",
    "cells_per_frame",
    "compare",
    "decode_image",
    "detect",
    "golden_hog",
    "load_luma",
    "load_model",
    "normalize_block",
    "run_frame",
    "run_frame_fast",
    "save_model",
    "score_window",
    "vector_translate",
]
