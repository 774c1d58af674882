"""Ordinary least squares with inference, solved by QR decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ..errors import SingularDesignError
from ._validation import as_float_array, check_lengths


@dataclass(frozen=True)
class DesignMatrix:
    """An n x p predictor matrix with column labels."""

    values: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = as_float_array(self.values, "design matrix", ndim=2)
        object.__setattr__(self, "values", values)
        labels = tuple(self.labels) or tuple(f"x{j}" for j in range(values.shape[1]))
        if len(labels) != values.shape[1]:
            raise ValueError(f"{len(labels)} labels for {values.shape[1]} columns")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class OlsFit:
    """Coefficients and classical inference for a least-squares fit."""

    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    residual_variance: float
    n: int
    p: int
    labels: tuple[str, ...]

    def predict(self, X) -> np.ndarray:
        return as_float_array(X, "X", ndim=2) @ self.coefficients


def ols_fit(X, y, labels=None) -> OlsFit:
    """Fit y on the columns of X by least squares.

    Coefficients come from a thin QR factorization rather than the normal
    equations. Standard errors use the unbiased residual variance and
    p-values are two-sided under the t distribution with n - p degrees of
    freedom. Rank deficiency raises ``SingularDesignError`` naming the first
    dependent column.
    """
    if isinstance(X, DesignMatrix):
        labels = X.labels if labels is None else tuple(labels)
        X = X.values
    X = as_float_array(X, "X", ndim=2)
    y = as_float_array(y, "y", ndim=1)
    n, p = X.shape
    check_lengths(n, y=y)
    if n < p:
        raise ValueError(f"need n >= p for an unpenalized fit, got n={n}, p={p}")
    labels = tuple(labels) if labels is not None else tuple(f"x{j}" for j in range(p))

    q, r = np.linalg.qr(X)
    diag = np.abs(np.diag(r))
    tol = max(n, p) * np.finfo(float).eps * (diag.max() if diag.size else 0.0)
    deficient = np.nonzero(diag <= tol)[0]
    if deficient.size:
        j = int(deficient[0])
        raise SingularDesignError(j, labels[j] if j < len(labels) else None)

    from scipy.linalg import solve_triangular

    coef = solve_triangular(r, q.T @ y)
    residuals = y - X @ coef
    dof = n - p
    rss = float(residuals @ residuals)
    sigma2 = rss / dof if dof > 0 else 0.0

    r_inv = solve_triangular(r, np.eye(p))
    cov = sigma2 * (r_inv @ r_inv.T)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t_vals = np.where(se > 0, coef / se, np.inf * np.sign(coef))
    p_vals = 2.0 * stats.t.sf(np.abs(t_vals), dof) if dof > 0 else np.zeros(p)

    return OlsFit(
        coefficients=coef,
        std_errors=se,
        t_values=t_vals,
        p_values=p_vals,
        residual_variance=sigma2,
        n=n,
        p=p,
        labels=labels,
    )
