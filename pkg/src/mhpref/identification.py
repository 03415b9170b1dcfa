"""Recovery of the cost/utility pair from a preference oracle.

The utility is recovered from choices among constant contracts by bisecting
mixture weights of the two reference prizes; the cost is recovered from the
conjugate formula, sweeping a finite family of statewise utility vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

import numpy as np

from .config import DEFAULT, IdentificationError, RangeError, SizeLimitError
from .core import Contract, CostFunction, Lottery, SimplexPoint, UtilityFunction, simplex_grid
from .models import Comparison, PreferenceOracle, compare, value_batch

_F_LATTICE_CAP = 400_000


@dataclass
class IdentificationConfig:
    """Grids and tolerances controlling recovery.

    prize_grid    -- prizes at which the utility is calibrated; should span
                     the reference interval and reach beyond it
    f_grid        -- statewise utility vectors swept by the cost recovery
    bisection_tol -- mixture-weight resolution of the utility bisection
    ce_tol        -- slack allowed in the recovered cost (finite f-grid)
    p_grid        -- output distributions at which the cost is estimated
                     (derived from the oracle's space when omitted)
    """

    prize_grid: np.ndarray
    f_grid: np.ndarray
    bisection_tol: float = 1e-10
    ce_tol: float = 1e-2
    p_grid: list[SimplexPoint] | None = None

    def __post_init__(self):
        self.prize_grid = np.sort(np.asarray(self.prize_grid, dtype=float))
        self.f_grid = np.atleast_2d(np.asarray(self.f_grid, dtype=float))
        if self.prize_grid.size == 0 or self.f_grid.size == 0:
            raise ValueError("identification grids must be non-empty")
        if self.bisection_tol <= 0 or self.ce_tol <= 0:
            raise ValueError("tolerances must be positive")

    @classmethod
    def default(
        cls,
        n: int,
        reference: tuple[float, float] = (0.0, 1.0),
        n_prizes: int = 21,
        reach: float = 8.0,
        coarse_step: float = 1.0,
        fine_step: float = 0.25,
        p_resolution: int = 20,
    ) -> "IdentificationConfig":
        ref0, ref1 = reference
        span = ref1 - ref0
        prize_grid = np.linspace(ref0 - span, ref1 + span, n_prizes)
        return cls(
            prize_grid=prize_grid,
            f_grid=default_f_grid(n, reach, coarse_step, fine_step),
            p_grid=simplex_grid(n, p_resolution),
        )


def default_f_grid(
    n: int, reach: float = 8.0, coarse_step: float = 1.0, fine_step: float = 0.25
) -> np.ndarray:
    """Coarse full lattice on [-reach, reach]^n plus a refined lattice of
    nondecreasing vectors (the slope directions carry the information).

    Halving the steps yields a superset, so refining the grid can only
    raise the recovered cost.
    """
    coarse = _lattice_axis(reach, coarse_step)
    if len(coarse) ** n > _F_LATTICE_CAP:
        raise SizeLimitError("default f-grid too large; supply a custom grid")
    rows = [np.array(v) for v in product(coarse, repeat=n)]
    fine = _lattice_axis(reach, fine_step)
    n_incr = math.comb(len(fine) + n - 1, n)
    if n_incr > _F_LATTICE_CAP:
        raise SizeLimitError("default f-grid too large; supply a custom grid")
    rows += [np.array(v) for v in combinations_with_replacement(fine, n)]
    return np.unique(np.array(rows), axis=0)


def _lattice_axis(reach: float, step: float) -> list[float]:
    k = int(round(reach / step))
    return [i * step for i in range(-k, k + 1)]


# ---------------------------------------------------------------------------
# utility recovery
# ---------------------------------------------------------------------------


def recover_u(o: PreferenceOracle, cfg: IdentificationConfig) -> UtilityFunction:
    """Recover the normalised utility from choices among constant contracts.

    Each grid prize is matched against mixtures of the two reference prizes
    by bisection on the oracle's compare; prizes outside the reference
    interval are placed by the usual rescaling trick.  The result is the
    piecewise-linear interpolation through the calibrated points.
    """
    ref0, ref1 = o.utility.reference
    space = o.space
    grid = np.unique(np.concatenate([cfg.prize_grid, [ref0, ref1]]))
    _check_monotone(o, grid)

    knots: list[tuple[float, float]] = []
    for prize in grid:
        if prize == ref0:
            knots.append((prize, 0.0))
        elif prize == ref1:
            knots.append((prize, 1.0))
        elif ref0 < prize < ref1:
            lam = _indifference_weight(o, space, prize, ref1, ref0, cfg.bisection_tol)
            knots.append((prize, lam))
        elif prize > ref1:
            lam = _indifference_weight(o, space, ref1, prize, ref0, cfg.bisection_tol)
            knots.append((prize, 1.0 / lam))
        else:
            lam = _indifference_weight(o, space, ref0, ref1, prize, cfg.bisection_tol)
            knots.append((prize, -lam / (1.0 - lam)))

    try:
        return UtilityFunction.piecewise_linear(knots, reference=(ref0, ref1))
    except ValueError as exc:
        raise IdentificationError(f"recovered utility is not increasing: {exc}", knots)


def _check_monotone(o: PreferenceOracle, grid: np.ndarray):
    for lo, hi in zip(grid, grid[1:]):
        v = _constant_values(o, np.array([lo, hi]))
        if not v[1] - v[0] > DEFAULT.optimization:
            raise IdentificationError(
                f"oracle is not monotone between prizes {lo} and {hi}",
                {"lo": lo, "hi": hi, "value_lo": v[0], "value_hi": v[1]},
            )


def _constant_values(o: PreferenceOracle, prizes: np.ndarray) -> np.ndarray:
    g = o.utility.eval_array(prizes)
    F = np.repeat(g[:, None], o.space.n, axis=1)
    return value_batch(o, F)


def _indifference_weight(
    o: PreferenceOracle,
    space,
    target: float,
    better: float,
    worse: float,
    tol: float,
) -> float:
    """The lam with delta_target ~ lam*delta_better + (1-lam)*delta_worse."""
    w_target = Contract.constant(space, target)

    def cmp_at(lam: float) -> Comparison:
        if lam <= 0.0:
            mix = Lottery.degenerate(worse)
        elif lam >= 1.0:
            mix = Lottery.degenerate(better)
        else:
            mix = Lottery(((better, lam), (worse, 1.0 - lam)))
        return compare(o, w_target, Contract.constant(space, mix))

    if cmp_at(0.0) != Comparison.STRICTLY_PREFERS or cmp_at(1.0) != Comparison.STRICTLY_DISPREFERRED:
        raise IdentificationError(
            "oracle ranks the calibration endpoints inconsistently",
            {"target": target, "better": better, "worse": worse},
        )
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        verdict = cmp_at(mid)
        if verdict == Comparison.STRICTLY_PREFERS:
            lo = mid
        elif verdict == Comparison.STRICTLY_DISPREFERRED:
            hi = mid
        else:
            return mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# cost recovery
# ---------------------------------------------------------------------------


def recover_c(
    o: PreferenceOracle, u: UtilityFunction, cfg: IdentificationConfig
) -> CostFunction:
    """Recover the output-distribution cost by the conjugate formula.

    For each p in the grid, the estimate is the largest value of
    <f, p> - u(x_w) over the f-grid, where w is a contract with statewise
    utilities f and x_w its certainty equivalent.  The sweep is finite, so
    the estimate under-approximates the true cost; refining the f-grid can
    only raise it.
    """
    if not (u.unbounded_above and u.unbounded_below):
        raise RangeError(
            "cost recovery needs a utility unbounded above and below; "
            f"got {u.kind} with flags ({u.unbounded_above}, {u.unbounded_below})"
        )
    p_grid = cfg.p_grid if cfg.p_grid is not None else simplex_grid(o.space.n, 20)
    F = cfg.f_grid
    if F.shape[1] != o.space.n:
        raise ValueError(
            f"f-grid vectors have length {F.shape[1]}, output space has {o.space.n}"
        )

    # value of the oracle on the contract realising each f (u(x_w) = value)
    prizes = u.inverse_array(F)
    F_oracle = o.utility.eval_array(prizes)
    vals = value_batch(o, F_oracle)

    P = np.array([p.as_array() for p in p_grid])
    estimates = (F @ P.T - vals[:, None]).max(axis=0)
    estimates = np.maximum(estimates, 0.0)  # the true cost is nonnegative

    m = estimates.min()
    if m > cfg.ce_tol:
        raise IdentificationError(
            f"recovered cost is nowhere near zero (min {m}); oracle inconsistent "
            "with a grounded cost at this tolerance"
        )
    if m > DEFAULT.equality:
        # re-ground within the estimate's slack so the grid invariant holds
        estimates = estimates - m
    estimates = np.where(np.abs(estimates) <= DEFAULT.equality, 0.0, estimates)
    return CostFunction.grid(tuple(zip(p_grid, estimates)))
