"""Jacobi-taping algorithmic differentiation with a Burgers benchmark."""

from ._jtape import (
    __version__,
    benchmark_csv,
    burgers_fd_check,
    burgers_gradient,
    burgers_gradient_forward,
    burgers_objective,
    operation_catalog,
    variants,
)

__all__ = [
    "__version__",
    "benchmark_csv",
    "burgers_fd_check",
    "burgers_gradient",
    "burgers_gradient_forward",
    "burgers_objective",
    "operation_catalog",
    "variants",
]
