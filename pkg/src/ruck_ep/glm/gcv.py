"""Smoothing-parameter selection by generalized cross-validation grid search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NonConvergenceError, SelectionError
from .irls import IrlsFit, irls_logistic

DEFAULT_LAMBDA_GRID = tuple(10.0 ** k for k in range(-4, 5))


@dataclass(frozen=True)
class LambdaChoice:
    lam_d: float
    lam_theta: float
    score: float
    n_evaluated: int
    n_failed: int


def gcv_score(fit: IrlsFit, n: int) -> float:
    """n * deviance / (n - edf)^2, the usual GCV criterion for a smooth fit."""
    denom = n - fit.edf
    if denom <= 0:
        return float("inf")
    return n * fit.deviance / denom**2


def select_lambda(
    X,
    penalties: tuple[np.ndarray, np.ndarray],
    successes,
    weights=None,
    grid=None,
    max_iter: int = 100,
    tol: float = 1e-8,
) -> LambdaChoice:
    """Pick the per-margin smoothing weights minimizing the GCV score.

    Candidates are evaluated over the Cartesian product of ``grid`` (one
    shared axis for both margins, log-spaced 1e-4..1e4 by default). Ties
    break toward the larger pair so the smoother surface wins; the outcome
    is independent of evaluation order.
    """
    s_d, s_t = penalties
    axis = tuple(grid) if grid is not None else DEFAULT_LAMBDA_GRID
    if not axis:
        raise ValueError("lambda grid is empty")

    candidates = sorted(
        ((ld, lt) for ld in axis for lt in axis), reverse=True
    )
    n = X.shape[0] if weights is None else int(np.sum(np.asarray(weights) > 0))
    best: LambdaChoice | None = None
    failed = 0
    for ld, lt in candidates:
        try:
            fit = irls_logistic(
                X,
                successes,
                weights=weights,
                penalties=((ld, s_d), (lt, s_t)),
                max_iter=max_iter,
                tol=tol,
            )
        except NonConvergenceError:
            failed += 1
            continue
        score = gcv_score(fit, n)
        if best is None or score < best.score:
            best = LambdaChoice(ld, lt, score, len(candidates), failed)
    if best is None:
        raise SelectionError("no smoothing-parameter candidate converged")
    return LambdaChoice(best.lam_d, best.lam_theta, best.score, len(candidates), failed)
