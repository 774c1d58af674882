"""B-spline bases via the Cox-de Boor recurrence.

Bases are built on clamped (open) knot vectors, so every basis row over the
interior span sums to one. Evaluation is vectorized over query points; the
recurrence is unrolled iteratively rather than recursively.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from ._validation import as_float_array


def clamped_uniform_knots(lo: float, hi: float, n_basis: int, degree: int = 3) -> np.ndarray:
    """Clamped knot vector with equally spaced interior knots.

    Produces ``n_basis + degree + 1`` knots supporting ``n_basis`` functions
    of the given degree over ``[lo, hi]``.
    """
    if hi <= lo:
        raise ValueError(f"empty span [{lo}, {hi}]")
    if n_basis < degree + 1:
        raise ValueError(f"need at least {degree + 1} basis functions for degree {degree}")
    interior = np.linspace(lo, hi, n_basis - degree + 1)
    return np.concatenate([np.full(degree, lo), interior, np.full(degree, hi)])


def bspline_basis(knots, degree: int, x, deriv: int = 0) -> np.ndarray:
    """Evaluate all B-spline basis functions (or a derivative) at the points x.

    Returns an array of shape ``(len(x), n_basis)`` with
    ``n_basis = len(knots) - degree - 1``. Points must lie within the knot
    span ``[knots[degree], knots[n_basis]]``; the right endpoint is included.
    """
    t = as_float_array(knots, "knots", ndim=1)
    if np.any(np.diff(t) < 0):
        raise ValueError("knot vector must be non-decreasing")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    n_basis = len(t) - degree - 1
    if n_basis < 1:
        raise ValueError("knot vector too short for the requested degree")
    if deriv < 0 or deriv > degree:
        raise ValueError(f"deriv={deriv} outside 0..{degree}")

    x = np.atleast_1d(as_float_array(x, "x"))
    lo, hi = t[degree], t[n_basis]
    if np.any(x < lo) or np.any(x > hi):
        raise DomainError(f"query outside knot span [{lo}, {hi}]")

    if deriv > 0:
        # d/dx B_{i,k} = k * (B_{i,k-1}/(t[i+k]-t[i]) - B_{i+1,k-1}/(t[i+k+1]-t[i+1]))
        lower = bspline_basis(t, degree - 1, x, deriv - 1)
        out = np.zeros((len(x), n_basis))
        for i in range(n_basis):
            den1 = t[i + degree] - t[i]
            den2 = t[i + degree + 1] - t[i + 1]
            if den1 > 0:
                out[:, i] += degree * lower[:, i] / den1
            if den2 > 0 and i + 1 < lower.shape[1]:
                out[:, i] -= degree * lower[:, i + 1] / den2
        return out

    # Degree-0 seed: indicator of the containing half-open interval, with
    # points at the right end of the span assigned to the last interval.
    n0 = len(t) - 1
    basis = np.zeros((len(x), n0))
    for i in range(n0):
        if t[i + 1] > t[i]:
            basis[:, i] = (x >= t[i]) & (x < t[i + 1])
    at_end = x == hi
    if np.any(at_end):
        last = max(i for i in range(n0) if t[i + 1] > t[i] and t[i + 1] >= hi and t[i] < hi)
        basis[at_end, :] = 0.0
        basis[at_end, last] = 1.0

    for k in range(1, degree + 1):
        nk = len(t) - k - 1
        nxt = np.zeros((len(x), nk))
        for i in range(nk):
            den1 = t[i + k] - t[i]
            den2 = t[i + k + 1] - t[i + 1]
            term = 0.0
            if den1 > 0:
                term = (x - t[i]) / den1 * basis[:, i]
            if den2 > 0:
                term = term + (t[i + k + 1] - x) / den2 * basis[:, i + 1]
            nxt[:, i] = term
        basis = nxt
    return basis
