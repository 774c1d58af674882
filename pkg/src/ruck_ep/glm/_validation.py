"""Small input-validation helpers shared by the fitting routines."""

from __future__ import annotations

import numpy as np


def as_float_array(a, name: str, ndim: int | None = None) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_lengths(n: int, **named) -> None:
    for name, arr in named.items():
        if len(arr) != n:
            raise ValueError(f"{name} has length {len(arr)}, expected {n}")


def check_proportions(y: np.ndarray) -> None:
    if np.any((y < 0.0) | (y > 1.0)):
        raise ValueError("success proportions must lie in [0, 1]")
