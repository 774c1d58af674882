"""Tensor-product designs and second-difference smoothness penalties."""

from __future__ import annotations

import numpy as np


def tensor_product_design(basis_a: np.ndarray, basis_b: np.ndarray) -> np.ndarray:
    """Row-wise Kronecker product of two marginal basis matrices.

    Column ``a * Kb + b`` of the result is the elementwise product of
    column ``a`` of the first margin and column ``b`` of the second, so
    coefficient vectors index the first margin as the major axis.
    """
    if basis_a.shape[0] != basis_b.shape[0]:
        raise ValueError(
            f"row mismatch: {basis_a.shape[0]} vs {basis_b.shape[0]}"
        )
    return (basis_a[:, :, None] * basis_b[:, None, :]).reshape(basis_a.shape[0], -1)


def second_difference_matrix(k: int) -> np.ndarray:
    """The (k-2) x k operator taking coefficients to their second differences."""
    if k < 3:
        raise ValueError("need at least 3 coefficients for second differences")
    return np.diff(np.eye(k), n=2, axis=0)


def marginal_penalties(k_a: int, k_b: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadratic-form penalty matrices for each margin of a tensor product.

    Returns ``(S_a kron I, I kron S_b)`` where ``S = D'D`` squares the
    second-difference operator along the corresponding margin.
    """
    d_a = second_difference_matrix(k_a)
    d_b = second_difference_matrix(k_b)
    s_a = d_a.T @ d_a
    s_b = d_b.T @ d_b
    return np.kron(s_a, np.eye(k_b)), np.kron(np.eye(k_a), s_b)
