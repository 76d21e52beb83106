"""Brauer-Manin obstruction for products of three binary norm forms over Q, with
the G-lattice cohomology behind it."""

from .errors import (
    DomainError,
    EvaluationError,
    InconsistencyError,
    ObstructorError,
    ResourceError,
    UsageError,
)
from .localarith import Place, Z2Value, factor, hilbert, hilbert_all, is_local_square
from .obstruction import analyze, normalize, search_counterexamples

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EvaluationError",
    "InconsistencyError",
    "ObstructorError",
    "Place",
    "ResourceError",
    "UsageError",
    "Z2Value",
    "analyze",
    "factor",
    "hilbert",
    "hilbert_all",
    "is_local_square",
    "normalize",
    "search_counterexamples",
]
