"""Reduction of a standard effort-choice model to its output-distribution cost.

A standard model lists efforts with their costs and induced output
distributions.  The reduced cost of a distribution p is the cheapest
expected cost over effort mixtures whose mean belief equals p; each grid
evaluation is one small equality-form LP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _lp
from .config import DEFAULT, DimensionMismatchError
from .core import CostFunction, SimplexPoint

INF = math.inf


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x  subject to  lhs @ x = rhs,  x >= 0."""

    objective: tuple[float, ...]
    lhs: tuple[tuple[float, ...], ...]
    rhs: tuple[float, ...]

    def __post_init__(self):
        obj = tuple(float(x) for x in self.objective)
        lhs = tuple(tuple(float(x) for x in row) for row in self.lhs)
        rhs = tuple(float(x) for x in self.rhs)
        if len(lhs) != len(rhs):
            raise DimensionMismatchError(
                f"{len(lhs)} constraint rows but {len(rhs)} right-hand sides"
            )
        if any(len(row) != len(obj) for row in lhs):
            raise DimensionMismatchError("constraint row length differs from objective")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class LPResult:
    status: str  # optimal | infeasible | unbounded
    value: float | None = None
    solution: tuple[float, ...] | None = None


def solve_lp(lp: LinearProgram, tol: float = DEFAULT.optimization) -> LPResult:
    """Two-phase dense simplex with Bland's anti-cycling rule."""
    status, value, x = _lp.simplex_solve(
        np.asarray(lp.objective), np.asarray(lp.lhs), np.asarray(lp.rhs), tol=tol
    )
    if status != "optimal":
        return LPResult(status)
    return LPResult("optimal", value, tuple(float(t) for t in x))


@dataclass(frozen=True)
class StandardModel:
    """Finite effort set with per-effort cost and induced output distribution."""

    efforts: tuple[str, ...]
    costs: tuple[float, ...]
    beliefs: tuple[SimplexPoint, ...]

    def __post_init__(self):
        efforts = tuple(str(e) for e in self.efforts)
        costs = tuple(float(c) for c in self.costs)
        if not efforts:
            raise ValueError("need at least one effort")
        if not len(efforts) == len(costs) == len(self.beliefs):
            raise DimensionMismatchError("efforts, costs and beliefs must align")
        if any(c < -DEFAULT.equality for c in costs):
            raise ValueError("effort costs must be nonnegative")
        if abs(min(costs)) > DEFAULT.equality:
            raise ValueError(f"cost function is not grounded: min cost {min(costs)}")
        n = self.beliefs[0].n
        if any(b.n != n for b in self.beliefs):
            raise DimensionMismatchError("beliefs of mixed dimension")
        object.__setattr__(self, "efforts", efforts)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "beliefs", tuple(self.beliefs))

    @property
    def n(self) -> int:
        return self.beliefs[0].n


def least_cost_of(m: StandardModel, p: SimplexPoint, tol: float = DEFAULT.optimization) -> float:
    """Cheapest expected effort cost that induces output distribution p.

    +inf when p is not a mixture of the model's beliefs.
    """
    if p.n != m.n:
        raise DimensionMismatchError(f"point has dimension {p.n}, model has {m.n}")
    B = np.array([b.as_array() for b in m.beliefs])
    status, val, _ = _lp.simplex_solve(np.asarray(m.costs), B.T, p.as_array(), tol=tol)
    if status == "infeasible":
        return INF
    if status != "optimal":
        raise RuntimeError(f"reduction LP returned {status}")
    return max(val, 0.0)


def reduce_standard(
    m: StandardModel,
    grid: Sequence[SimplexPoint],
    tol: float = DEFAULT.optimization,
) -> CostFunction:
    """Grid cost of the least-cost reduction, evaluated on grid plus the
    model's own belief points.

    Including the beliefs guarantees the result is grounded (the zero-cost
    effort's belief costs zero) and makes valuation of the reduced cost
    agree exactly with mixed-effort valuation of the standard model.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("empty evaluation grid")
    seen = {pt.probs for pt in grid}
    for b in m.beliefs:
        if b.probs not in seen:
            grid.append(b)
            seen.add(b.probs)
    points = []
    for p in grid:
        c = least_cost_of(m, p, tol=tol)
        if c is not INF and abs(c) <= DEFAULT.equality:
            c = 0.0
        points.append((p, c))
    return CostFunction.grid(points)
