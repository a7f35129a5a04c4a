"""Accelerated p-max / p-min stable distributions for competing-risk extremes."""

from ._kernels import BACKEND
from .distributions import (
    AccLMin,
    Accelerated,
    Gev,
    LeftTruncated,
    LogGev,
    MinDual,
    PStable,
    dual_min,
    frechet,
    from_dict,
    gumbel,
    to_dict,
    weibull_max,
)

__all__ = [
    "BACKEND",
    "AccLMin",
    "Accelerated",
    "Gev",
    "LeftTruncated",
    "LogGev",
    "MinDual",
    "PStable",
    "dual_min",
    "frechet",
    "from_dict",
    "gumbel",
    "to_dict",
    "weibull_max",
]

__version__ = "0.1.0"
