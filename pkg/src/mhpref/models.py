"""Preference oracles and contract valuation.

Three model families share one record:

* ``moral_hazard``:   value(w) = max_p [ -c(p) + <u(w), p> ]
* ``malevolent``:     value(w) = min_p [  c(p) + <u(w), p> ]
* ``income_effects``: value(w) = max_p V(p, <u(w), p>),
                      V(p, t) = t - c(p) * (1 + lam * exp(-t))

For grid costs the inner optimisation over the lower convex envelope is
exact when restricted to the generating points, because the objective is
linear in p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from . import kernels
from .config import DEFAULT, DimensionMismatchError
from .core import (
    Contract,
    CostFunction,
    Lottery,
    OutputSpace,
    SimplexPoint,
    UtilityFunction,
    cost_at,
    simplex_grid,
    utility_vector,
)

INCOME_GRID_RESOLUTION = 96  # inner-search resolution for income effects, n > 2


class Comparison(str, Enum):
    STRICTLY_PREFERS = "strictly_prefers"
    INDIFFERENT = "indifferent"
    STRICTLY_DISPREFERRED = "strictly_dispreferred"


@dataclass(frozen=True)
class PreferenceOracle:
    """Tagged preference model exposing value and compare."""

    kind: str
    space: OutputSpace
    cost: CostFunction
    utility: UtilityFunction
    income_slope: float | None = None

    def __post_init__(self):
        if self.kind not in ("moral_hazard", "malevolent", "income_effects"):
            raise ValueError(f"unknown oracle kind {self.kind!r}")
        if self.cost.n != self.space.n:
            raise DimensionMismatchError(
                f"cost has dimension {self.cost.n}, output space has {self.space.n}"
            )
        if self.kind == "income_effects":
            if self.income_slope is None or self.income_slope <= 0:
                raise ValueError("income_effects oracle needs a positive slope parameter")
            self._assert_income_shape()

    def _assert_income_shape(self):
        """Spot-check, on a few samples, that the income-effects objective is
        strictly increasing in the income level and that its supremum over
        distributions equals that level (both follow from groundedness and a
        positive slope)."""
        lam = self.income_slope
        if self.cost.form == "quadratic1d":
            worst = self.cost.alpha * max(self.cost.beta, 1.0 - self.cost.beta) ** 2
        else:
            worst = max(v for _, v in self.cost.points if v < math.inf)
        prev = None
        for t in (-2.0, 0.0, 2.0):
            v = t - worst * (1.0 + lam * math.exp(-t))
            if prev is not None and not v > prev:
                raise ValueError("income-effects objective is not increasing in income")
            prev = v
            F = np.full((1, self.space.n), t)
            top = float(value_batch(self, F)[0])
            if abs(top - t) > 1e-6:
                raise ValueError(
                    f"income-effects supremum over distributions is {top}, expected {t}"
                )

    @classmethod
    def moral_hazard(cls, space, cost, utility) -> "PreferenceOracle":
        return cls("moral_hazard", space, cost, utility)

    @classmethod
    def malevolent(cls, space, cost, utility) -> "PreferenceOracle":
        return cls("malevolent", space, cost, utility)

    @classmethod
    def income_effects(cls, space, cost, utility, lam: float) -> "PreferenceOracle":
        return cls("income_effects", space, cost, utility, income_slope=float(lam))

    # dense caches for the inner search --------------------------------------

    @cached_property
    def _income_grid(self) -> tuple[np.ndarray, np.ndarray]:
        pts = simplex_grid(self.space.n, INCOME_GRID_RESOLUTION)
        P = np.array([p.as_array() for p in pts])
        cv = np.array([cost_at(self.cost, p) for p in pts])
        keep = np.isfinite(cv)
        return P[keep], cv[keep]

    def value(self, w: Contract) -> float:
        return value(self, w)

    def compare(self, w: Contract, wp: Contract) -> Comparison:
        return compare(self, w, wp)


# ---------------------------------------------------------------------------
# valuation
# ---------------------------------------------------------------------------


def conjugate_batch(c: CostFunction, F: np.ndarray) -> np.ndarray:
    """max_p <f, p> - c(p) for each row f of F."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if F.shape[1] != c.n:
        raise DimensionMismatchError(f"vectors of length {F.shape[1]} against cost of dimension {c.n}")
    if c.form == "quadratic1d":
        return kernels.quad_conj(F, c.alpha, c.beta)
    P, v = c._finite_arrays
    return kernels.grid_conj(F, P, v)


def conjugate(c: CostFunction, f) -> float:
    """Convex conjugate of the cost at a statewise utility vector."""
    return float(conjugate_batch(c, np.asarray(f, dtype=float)[None, :])[0])


def value_batch(o: PreferenceOracle, F: np.ndarray) -> np.ndarray:
    """Oracle value for each statewise utility vector (row of F)."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if o.kind == "moral_hazard":
        return conjugate_batch(o.cost, F)
    if o.kind == "malevolent":
        return -conjugate_batch(o.cost, -F)
    lam = o.income_slope
    if o.space.n == 2:
        if o.cost.form == "quadratic1d":
            return kernels.income2_value_quad(F, lam, o.cost.alpha, o.cost.beta)
        kt, kc = o.cost._hull1d
        return kernels.income2_value_pwl(F, lam, kt, kc)
    P, cv = o._income_grid
    out = np.empty(F.shape[0])
    step = max(1, 2_000_000 // max(P.shape[0], 1))
    for start in range(0, F.shape[0], step):
        T = F[start : start + step] @ P.T
        e = np.exp(np.clip(-T, None, 700.0))
        out[start : start + step] = (T - cv[None, :] * (1.0 + lam * e)).max(axis=1)
    return out


def value(o: PreferenceOracle, w: Contract) -> float:
    """Value of a contract under the oracle's inner optimisation."""
    if w.space != o.space:
        raise DimensionMismatchError("contract is on a different output space")
    f = utility_vector(o.utility, w)
    return float(value_batch(o, f[None, :])[0])


def compare(
    o: PreferenceOracle,
    w: Contract,
    wp: Contract,
    band: float = DEFAULT.optimization,
) -> Comparison:
    """Preference between two contracts, with an indifference band."""
    d = value(o, w) - value(o, wp)
    if d > band:
        return Comparison.STRICTLY_PREFERS
    if d < -band:
        return Comparison.STRICTLY_DISPREFERRED
    return Comparison.INDIFFERENT


def argmax_efforts(
    o: PreferenceOracle, w: Contract, tol: float = DEFAULT.optimization
) -> set[SimplexPoint]:
    """Output distributions attaining the moral-hazard maximum, within tol.

    Grid costs: the generating points within tol of the best score.
    Quadratic costs: the clamped stationary point.
    """
    if o.kind != "moral_hazard":
        raise ValueError("argmax_efforts is defined for moral-hazard oracles only")
    f = utility_vector(o.utility, w)
    if o.cost.form == "quadratic1d":
        t = float(kernels.quad_conj_arg(f[None, :], o.cost.alpha, o.cost.beta)[0])
        return {SimplexPoint((1.0 - t, t))}
    P, v = o.cost._finite_arrays
    scores = P @ f - v
    best = scores.max()
    return {
        SimplexPoint.from_array(P[i]) for i in np.flatnonzero(scores >= best - tol)
    }


def certainty_equivalent(o: PreferenceOracle, w: Contract) -> float:
    """The sure prize whose constant contract is indifferent to w."""
    return o.utility.inverse(value(o, w))


def contract_from_utility_vector(
    u: UtilityFunction, f, space: OutputSpace
) -> Contract:
    """Degenerate-payoff contract whose statewise utilities equal f."""
    f = np.asarray(f, dtype=float)
    if f.shape != (space.n,):
        raise DimensionMismatchError(
            f"utility vector of length {f.shape} for {space.n} output levels"
        )
    prizes = u.inverse_array(f)
    return Contract(space, tuple(Lottery.degenerate(float(p)) for p in prizes))
