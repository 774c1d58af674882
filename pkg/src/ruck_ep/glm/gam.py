"""Two-dimensional penalized logistic smooth with an estimator-style API.

``PenalizedLogisticGAM`` follows the familiar fit/predict pattern: construct
with hyperparameters, ``fit(X, y, sample_weight)`` on an (n, 2) array of
(distance, angle) points with success proportions, then ``predict_proba``.
Smoothing weights per margin are chosen by GCV grid search unless fixed.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..errors import DomainError
from ._validation import as_float_array, check_lengths, check_proportions
from .gcv import select_lambda
from .irls import irls_logistic
from .splines import bspline_basis, clamped_uniform_knots
from .tensor import marginal_penalties, tensor_product_design

SCHEMA_VERSION = 1
_PROB_FLOOR = 1e-15


class PenalizedLogisticGAM:
    """Tensor-product B-spline logistic smooth of two covariates.

    Parameters
    ----------
    n_basis : (int, int)
        Marginal basis sizes for the two covariates.
    degree : int
        B-spline degree for both margins.
    span : ((lo, hi), (lo, hi)) or None
        Minimum covariate spans; each margin expands to cover the training
        hull, so fitted surfaces always evaluate their own training data.
    lambdas : (float, float) or None
        Fixed per-margin smoothing weights; when None they are selected by
        GCV over ``lambda_grid``.
    """

    def __init__(
        self,
        n_basis=(8, 6),
        degree=3,
        span=((5.0, 65.0), (0.0, 1.2)),
        lambdas=None,
        lambda_grid=None,
        max_iter=100,
        tol=1e-8,
    ):
        self.n_basis = n_basis
        self.degree = degree
        self.span = span
        self.lambdas = lambdas
        self.lambda_grid = lambda_grid
        self.max_iter = max_iter
        self.tol = tol

    # -- sklearn-style parameter plumbing ---------------------------------
    _param_names = ("n_basis", "degree", "span", "lambdas", "lambda_grid", "max_iter", "tol")

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names}

    def set_params(self, **params) -> "PenalizedLogisticGAM":
        for name, value in params.items():
            if name not in self._param_names:
                raise ValueError(f"unknown parameter {name!r}")
            setattr(self, name, value)
        return self

    # -- fitting -----------------------------------------------------------
    def _spans_for(self, X: np.ndarray) -> list[tuple[float, float]]:
        spans = []
        for axis in range(2):
            lo, hi = (self.span[axis] if self.span is not None else (np.inf, -np.inf))
            lo = min(lo, float(X[:, axis].min()))
            hi = max(hi, float(X[:, axis].max()))
            spans.append((lo, hi))
        return spans

    def _design(self, X: np.ndarray) -> np.ndarray:
        b_d = bspline_basis(self.knots_d_, self.degree, X[:, 0])
        b_t = bspline_basis(self.knots_t_, self.degree, X[:, 1])
        return tensor_product_design(b_d, b_t)

    def fit(self, X, y, sample_weight=None) -> "PenalizedLogisticGAM":
        X = as_float_array(X, "X", ndim=2)
        if X.shape[1] != 2:
            raise ValueError(f"X must have 2 columns, got {X.shape[1]}")
        y = as_float_array(y, "y", ndim=1)
        check_proportions(y)
        check_lengths(X.shape[0], y=y)

        (lo_d, hi_d), (lo_t, hi_t) = self._spans_for(X)
        k_d, k_t = self.n_basis
        self.knots_d_ = clamped_uniform_knots(lo_d, hi_d, k_d, self.degree)
        self.knots_t_ = clamped_uniform_knots(lo_t, hi_t, k_t, self.degree)

        design = self._design(X)
        s_d, s_t = marginal_penalties(k_d, k_t)

        if self.lambdas is not None:
            lam_d, lam_t = self.lambdas
        else:
            choice = select_lambda(
                design,
                (s_d, s_t),
                y,
                weights=sample_weight,
                grid=self.lambda_grid,
                max_iter=self.max_iter,
                tol=self.tol,
            )
            lam_d, lam_t = choice.lam_d, choice.lam_theta

        fit = irls_logistic(
            design,
            y,
            weights=sample_weight,
            penalties=((lam_d, s_d), (lam_t, s_t)),
            max_iter=self.max_iter,
            tol=self.tol,
        )
        self.coef_ = fit.coefficients
        self.lambdas_ = (lam_d, lam_t)
        self.dispersion_ = fit.dispersion
        self.edf_ = fit.edf
        self.record_ = fit.record
        return self

    # -- evaluation --------------------------------------------------------
    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise DomainError("model is not fitted")

    def clamp(self, X) -> tuple[np.ndarray, np.ndarray]:
        """Clamp query points onto the fitted spans; flags which rows moved."""
        self._check_fitted()
        X = np.array(as_float_array(X, "X", ndim=2), copy=True)
        lo_d, hi_d = self.knots_d_[0], self.knots_d_[-1]
        lo_t, hi_t = self.knots_t_[0], self.knots_t_[-1]
        clamped = (
            (X[:, 0] < lo_d) | (X[:, 0] > hi_d) | (X[:, 1] < lo_t) | (X[:, 1] > hi_t)
        )
        X[:, 0] = np.clip(X[:, 0], lo_d, hi_d)
        X[:, 1] = np.clip(X[:, 1], lo_t, hi_t)
        return X, clamped

    def decision_function(self, X) -> np.ndarray:
        """Linear predictor at the query points (clamped to the fit domain)."""
        Xc, _ = self.clamp(X)
        return self._design(Xc) @ self.coef_

    def predict_proba(self, X) -> np.ndarray:
        """Success probability at the query points, strictly inside (0, 1)."""
        return np.clip(expit(self.decision_function(X)), _PROB_FLOOR, 1.0 - _PROB_FLOOR)

    def gradient(self, X) -> np.ndarray:
        """Analytic gradient of the linear predictor, shape (n, 2)."""
        Xc, _ = self.clamp(X)
        b_d = bspline_basis(self.knots_d_, self.degree, Xc[:, 0])
        b_t = bspline_basis(self.knots_t_, self.degree, Xc[:, 1])
        db_d = bspline_basis(self.knots_d_, self.degree, Xc[:, 0], deriv=1)
        db_t = bspline_basis(self.knots_t_, self.degree, Xc[:, 1], deriv=1)
        g_d = tensor_product_design(db_d, b_t) @ self.coef_
        g_t = tensor_product_design(b_d, db_t) @ self.coef_
        return np.column_stack([g_d, g_t])

    def shift_intercept(self, delta: float) -> "PenalizedLogisticGAM":
        """Add a constant to the linear predictor everywhere.

        Both marginal bases are partitions of unity, so adding ``delta`` to
        every coefficient shifts the surface uniformly without changing its
        shape or its smoothness penalty.
        """
        self._check_fitted()
        self.coef_ = self.coef_ + delta
        return self

    # -- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        self._check_fitted()
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "penalized-logistic-gam",
            "basis": {
                "degree": self.degree,
                "n_basis": list(self.n_basis),
                "knots_d": self.knots_d_.tolist(),
                "knots_theta": self.knots_t_.tolist(),
            },
            "coefficients": self.coef_.tolist(),
            "lambdas": list(self.lambdas_),
            "dispersion": self.dispersion_,
            "edf": self.edf_,
            "convergence": self.record_.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PenalizedLogisticGAM":
        if doc.get("kind") != "penalized-logistic-gam":
            raise ValueError(f"not a GAM document: kind={doc.get('kind')!r}")
        basis = doc["basis"]
        model = cls(n_basis=tuple(basis["n_basis"]), degree=basis["degree"])
        model.knots_d_ = np.asarray(basis["knots_d"], dtype=float)
        model.knots_t_ = np.asarray(basis["knots_theta"], dtype=float)
        model.coef_ = np.asarray(doc["coefficients"], dtype=float)
        model.lambdas_ = tuple(doc["lambdas"])
        model.dispersion_ = doc["dispersion"]
        model.edf_ = doc.get("edf", float("nan"))
        conv = doc.get("convergence", {})
        from .irls import ConvergenceRecord

        model.record_ = ConvergenceRecord(
            iterations=conv.get("iterations", 0),
            deviance_path=[conv.get("final_deviance", float("nan"))],
            converged=conv.get("converged", True),
            reason=conv.get("reason", "loaded"),
        )
        return model
