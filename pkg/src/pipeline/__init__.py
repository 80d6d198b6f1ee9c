"""Problem loading, sharpening drivers, reports and the CLI."""

from src.pipeline.drivers import SharpeningStep, SharpeningTrace, choose_route, sharpen, sharpen_no_h3, sharpening_step
from src.pipeline.problem import ProblemInstance, load
from src.pipeline.reports import (
    AnalysisReport,
    OracleReport,
    ReplayReport,
    TraceRecord,
    analyze,
    oracle,
    replay,
    trace_from_json,
    trace_to_json,
)

__all__ = [
    "AnalysisReport",
    "OracleReport",
    "ProblemInstance",
    "ReplayReport",
    "SharpeningStep",
    "SharpeningTrace",
    "TraceRecord",
    "analyze",
    "choose_route",
    "load",
    "oracle",
    "replay",
    "sharpen",
    "sharpen_no_h3",
    "sharpening_step",
    "trace_from_json",
    "trace_to_json",
]
