"""Elliptic variational inequality toolkit."""
from ._vilab import (  # noqa: F401
    Problem,
    ValidationError,
    classify_sequence,
    epsilon_residual,
    load_problem,
    scalar_projection_problem,
    solve,
)

__all__ = [
    "Problem",
    "ValidationError",
    "classify_sequence",
    "epsilon_residual",
    "load_problem",
    "scalar_projection_problem",
    "solve",
]
