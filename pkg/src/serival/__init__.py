"""Exact truncated power series, the blow-up completion, and experiments on
approximation exponents of algebraic power series."""

from .fields import BaseField, RatFunc, ratfunc_normalize
from .series import OrderValue, Series, exact_divide, random_series
from .completion import CompletedElement, SeriesFraction, distance, embed_blowup

__version__ = "0.1.0"

__all__ = [
    "BaseField",
    "CompletedElement",
    "OrderValue",
    "RatFunc",
    "Series",
    "SeriesFraction",
    "distance",
    "embed_blowup",
    "exact_divide",
    "random_series",
    "ratfunc_normalize",
]
