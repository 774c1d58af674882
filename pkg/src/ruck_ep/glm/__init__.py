"""Regression numerics: OLS with inference, penalized logistic IRLS,
B-spline bases, tensor-product smooths, and GCV smoothing selection."""

from .gam import PenalizedLogisticGAM
from .gcv import DEFAULT_LAMBDA_GRID, LambdaChoice, gcv_score, select_lambda
from .irls import ConvergenceRecord, IrlsFit, binomial_deviance, irls_logistic
from .ols import DesignMatrix, OlsFit, ols_fit
from .splines import bspline_basis, clamped_uniform_knots
from .tensor import marginal_penalties, second_difference_matrix, tensor_product_design

__all__ = [
    "PenalizedLogisticGAM",
    "DEFAULT_LAMBDA_GRID",
    "LambdaChoice",
    "gcv_score",
    "select_lambda",
    "ConvergenceRecord",
    "IrlsFit",
    "binomial_deviance",
    "irls_logistic",
    "DesignMatrix",
    "OlsFit",
    "ols_fit",
    "bspline_basis",
    "clamped_uniform_knots",
    "marginal_penalties",
    "second_difference_matrix",
    "tensor_product_design",
]
