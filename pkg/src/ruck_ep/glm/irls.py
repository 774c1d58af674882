"""Penalized logistic regression via iteratively reweighted least squares.

Accepts binomial data as success proportions with trial-count weights, so
gridded inputs (cell proportion + attempts) fit without expansion. The
optimized objective is the binomial deviance plus quadratic penalties; a
quasi-binomial dispersion is estimated from Pearson residuals afterwards and
never feeds back into the point estimates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from ..errors import NonConvergenceError
from ._validation import as_float_array, check_lengths, check_proportions

MAX_ITER_DEFAULT = 100
TOL_DEFAULT = 1e-8
_MU_FLOOR = 1e-10
_HALVING_LIMIT = 30


@dataclass
class ConvergenceRecord:
    """Per-iteration penalized deviance and the stopping condition."""

    iterations: int = 0
    deviance_path: list[float] = field(default_factory=list)
    converged: bool = False
    reason: str = ""

    @property
    def final_deviance(self) -> float:
        return self.deviance_path[-1] if self.deviance_path else float("nan")

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "reason": self.reason,
            "final_deviance": self.final_deviance,
        }


@dataclass
class IrlsFit:
    coefficients: np.ndarray
    record: ConvergenceRecord
    dispersion: float
    edf: float
    deviance: float

    def linear_predictor(self, X) -> np.ndarray:
        return as_float_array(X, "X", ndim=2) @ self.coefficients


def binomial_deviance(y: np.ndarray, mu: np.ndarray, m: np.ndarray) -> float:
    """Deviance for proportion data y with trial counts m."""
    mu = np.clip(mu, _MU_FLOOR, 1.0 - _MU_FLOOR)
    with np.errstate(divide="ignore", invalid="ignore"):
        term1 = np.where(y > 0, y * np.log(y / mu), 0.0)
        term0 = np.where(y < 1, (1.0 - y) * np.log((1.0 - y) / (1.0 - mu)), 0.0)
    return float(2.0 * np.sum(m * (term1 + term0)))


def _combine_penalty(p: int, penalties) -> np.ndarray:
    total = np.zeros((p, p))
    for lam, s in penalties:
        if lam < 0:
            raise ValueError("penalty weight must be >= 0")
        s = as_float_array(s, "penalty", ndim=2)
        if s.shape != (p, p):
            raise ValueError(f"penalty shape {s.shape} does not match p={p}")
        total += lam * s
    return total


def irls_logistic(
    X,
    successes,
    weights=None,
    penalties=(),
    max_iter: int = MAX_ITER_DEFAULT,
    tol: float = TOL_DEFAULT,
) -> IrlsFit:
    """Maximize the (penalized) binomial quasi-likelihood for a logit model.

    ``successes`` are per-row success proportions in [0, 1]; ``weights`` are
    the corresponding trial counts (default 1). ``penalties`` is a sequence
    of ``(lam, S)`` pairs adding ``lam * b' S b`` to the deviance. The
    recorded penalized deviance is non-increasing across iterations
    (step-halving enforces this); convergence is a relative deviance change
    below ``tol``. Divergence and perfect separation raise
    ``NonConvergenceError`` carrying the last iterate.
    """
    X = as_float_array(X, "X", ndim=2)
    y = as_float_array(successes, "successes", ndim=1)
    check_proportions(y)
    n, p = X.shape
    check_lengths(n, successes=y)
    if weights is None:
        m = np.ones(n)
    else:
        m = as_float_array(weights, "weights", ndim=1)
        check_lengths(n, weights=m)
        if np.any(m < 0):
            raise ValueError("trial counts must be >= 0")
    if not np.any(m > 0):
        raise ValueError("at least one positive weight is required")

    pen = _combine_penalty(p, penalties)
    penalized = bool(penalties) and np.any(pen != 0.0)

    def pdev(beta: np.ndarray) -> float:
        mu = expit(X @ beta)
        return binomial_deviance(y, mu, m) + float(beta @ pen @ beta)

    # Standard GLM starting values: shrink proportions away from 0/1.
    mu = (m * y + 0.5) / (m + 1.0)
    eta = np.log(mu / (1.0 - mu))
    beta = np.zeros(p)
    record = ConvergenceRecord()
    dev = None

    for it in range(1, max_iter + 1):
        mu = np.clip(expit(eta), _MU_FLOOR, 1.0 - _MU_FLOOR)
        w = m * mu * (1.0 - mu)
        z = eta + (y - mu) / (mu * (1.0 - mu))
        lhs = X.T @ (w[:, None] * X) + pen
        rhs = X.T @ (w * z)
        try:
            proposal = np.linalg.solve(lhs, rhs)
        except np.linalg.LinAlgError:
            proposal, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)

        if not np.all(np.isfinite(proposal)):
            raise NonConvergenceError(
                "diverged: non-finite update", coefficients=beta, record=record
            )

        new_dev = pdev(proposal)
        if dev is not None and new_dev > dev:
            # Halve back toward the previous iterate until the penalized
            # deviance stops increasing; the objective is concave so a
            # non-worsening step always exists short of roundoff.
            step = proposal - beta
            for _ in range(_HALVING_LIMIT):
                step *= 0.5
                proposal = beta + step
                new_dev = pdev(proposal)
                if new_dev <= dev:
                    break
            if new_dev > dev:
                proposal = beta
                new_dev = dev
                record.iterations = it
                record.deviance_path.append(new_dev)
                record.converged = True
                record.reason = "no improving step"
                break

        beta = proposal
        eta = X @ beta
        record.iterations = it
        record.deviance_path.append(new_dev)
        if dev is not None and abs(dev - new_dev) < tol * (abs(new_dev) + 0.1):
            record.converged = True
            record.reason = "deviance"
            dev = new_dev
            break
        dev = new_dev

    eta = X @ beta
    mu = expit(eta)
    if not record.converged:
        record.reason = "max_iter"
        raise NonConvergenceError(
            f"IRLS did not converge in {max_iter} iterations",
            coefficients=beta,
            record=record,
        )

    if not penalized:
        pos = m > 0
        hugging = (mu[pos] < _MU_FLOOR) | (mu[pos] > 1.0 - _MU_FLOOR)
        mixed = np.any(y[pos] > 0) and np.any(y[pos] < 1)
        if mixed and np.any(hugging):
            record.converged = False
            record.reason = "separation"
            raise NonConvergenceError(
                "perfect separation: fitted probabilities pinned at 0/1",
                coefficients=beta,
                record=record,
            )

    w = m * np.clip(mu * (1.0 - mu), _MU_FLOOR, None)
    xtwx = X.T @ (w[:, None] * X)
    try:
        influence = np.linalg.solve(xtwx + pen, xtwx)
    except np.linalg.LinAlgError:
        influence = np.linalg.lstsq(xtwx + pen, xtwx, rcond=None)[0]
    edf = float(np.trace(influence))

    pos = m > 0
    pearson = (y[pos] - mu[pos]) * np.sqrt(m[pos]) / np.sqrt(
        np.clip(mu[pos] * (1.0 - mu[pos]), _MU_FLOOR, None)
    )
    dof = max(pos.sum() - edf, 1.0)
    dispersion = float(pearson @ pearson / dof)

    return IrlsFit(
        coefficients=beta,
        record=record,
        dispersion=dispersion,
        edf=edf,
        deviance=binomial_deviance(y, mu, m),
    )
