"""Lineout expected-points model: a linear regression on field position,
card advantage, and team-strength differential."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .glm import DesignMatrix, OlsFit, ols_fit

SCHEMA_VERSION = 1
MIN_ENTRIES = 50
MIN_LINEOUT_X = 5.0
COVARIATES = ("intercept", "meter_line", "card_diff", "winpct_diff")


@dataclass(frozen=True)
class GameContext:
    """Score-independent game state entering the lineout model."""

    card_diff: int = 0
    winpct_diff: float = 0.0

    def __post_init__(self):
        if not (-3 <= self.card_diff <= 3):
            raise DomainError(f"card_diff {self.card_diff} outside [-3, 3]")
        if not (-1.0 <= self.winpct_diff <= 1.0):
            raise DomainError(f"winpct_diff {self.winpct_diff} outside [-1, 1]")


@dataclass(frozen=True)
class LineoutCoefficients:
    """Linear EP model: intercept, per-meter, per-card, per-win-pct terms."""

    beta0: float
    beta1: float
    beta2: float
    beta3: float
    std_errors: tuple[float, ...] | None = None
    t_values: tuple[float, ...] | None = None
    p_values: tuple[float, ...] | None = None
    model_id: str = "lineout-linear"

    def __post_init__(self):
        for name in ("beta0", "beta1", "beta2", "beta3"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "lineout-linear",
            "model_id": self.model_id,
            "coefficients": {
                "intercept": self.beta0,
                "meter_line": self.beta1,
                "card_diff": self.beta2,
                "winpct_diff": self.beta3,
            },
        }
        if self.std_errors is not None:
            doc["inference"] = {
                "std_errors": list(self.std_errors),
                "t_values": list(self.t_values),
                "p_values": list(self.p_values),
            }
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "LineoutCoefficients":
        if doc.get("kind") != "lineout-linear":
            raise ValueError(f"not a lineout model document: kind={doc.get('kind')!r}")
        c = doc["coefficients"]
        inference = doc.get("inference")
        return cls(
            beta0=c["intercept"],
            beta1=c["meter_line"],
            beta2=c["card_diff"],
            beta3=c["winpct_diff"],
            std_errors=tuple(inference["std_errors"]) if inference else None,
            t_values=tuple(inference["t_values"]) if inference else None,
            p_values=tuple(inference["p_values"]) if inference else None,
            model_id=doc.get("model_id", "lineout-linear"),
        )


def fit_lineout_model(entries, model_id: str = "lineout-fitted") -> tuple[LineoutCoefficients, OlsFit]:
    """OLS of the next-score outcome on position and context covariates.

    Entries must already be deduplicated to one per run id. Returns the
    coefficient set together with the full regression summary.
    """
    if len(entries) < MIN_ENTRIES:
        raise ValueError(f"need at least {MIN_ENTRIES} entries, got {len(entries)}")
    run_ids = [e.run_id for e in entries]
    if len(set(run_ids)) != len(run_ids):
        raise ValueError("entries contain duplicate run ids; sample one per run first")

    X = DesignMatrix(
        np.column_stack(
            [
                np.ones(len(entries)),
                [e.meter_line for e in entries],
                [float(e.card_diff) for e in entries],
                [e.winpct_diff for e in entries],
            ]
        ),
        labels=COVARIATES,
    )
    y = np.array([float(e.points_next) for e in entries])
    fit = ols_fit(X, y)
    coeffs = LineoutCoefficients(
        beta0=float(fit.coefficients[0]),
        beta1=float(fit.coefficients[1]),
        beta2=float(fit.coefficients[2]),
        beta3=float(fit.coefficients[3]),
        std_errors=tuple(float(v) for v in fit.std_errors),
        t_values=tuple(float(v) for v in fit.t_values),
        p_values=tuple(float(v) for v in fit.p_values),
        model_id=model_id,
    )
    return coeffs, fit


def ep_lineout(coeffs: LineoutCoefficients, x_lo: float, ctx: GameContext) -> float:
    """Expected next-score value of a lineout ``x_lo`` meters from the
    opposition try line under the given game context."""
    if not (MIN_LINEOUT_X <= x_lo <= 100.0):
        raise DomainError(f"x_lo={x_lo} outside [{MIN_LINEOUT_X}, 100]")
    return (
        coeffs.beta0
        + coeffs.beta1 * x_lo
        + coeffs.beta2 * ctx.card_diff
        + coeffs.beta3 * ctx.winpct_diff
    )
