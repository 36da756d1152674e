"""Python bindings for the framelift C++ core."""

import json as _json

from ._framelift import (
    ConfigError,
    GeometryError,
    PreconditionError,
    christoffel,
    classify,
    dilatation,
    fiber_mean_curvature,
    ids,
    info,
    jacobian,
    map,
    metric,
    sample,
    sectional_curvature,
    suites,
    tension,
)
from ._framelift import verify as _verify

__version__ = "0.1.0"


def verify(examples="all", suites="all", samples=10, seed=42, timing=False):
    """Run check suites; returns (exit_code, report dict)."""
    if isinstance(examples, str):
        examples = [examples]
    if isinstance(suites, str):
        suites = [suites]
    code, text = _verify(list(examples), list(suites), samples, seed, timing)
    return code, _json.loads(text)


__all__ = [
    "ConfigError",
    "GeometryError",
    "PreconditionError",
    "christoffel",
    "classify",
    "dilatation",
    "fiber_mean_curvature",
    "ids",
    "info",
    "jacobian",
    "map",
    "metric",
    "sample",
    "sectional_curvature",
    "suites",
    "tension",
    "verify",
]
