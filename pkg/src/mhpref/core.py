"""Domain types and simplex primitives shared by the whole package.

Output spaces, finite-support money lotteries, contracts, points of the
output-distribution simplex, normalised utility functions and grounded
convex cost functions, together with the basic operations on them
(expected utility, statewise mixtures, first-order stochastic dominance,
simplex grids, cost evaluation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _lp
from .config import (
    DEFAULT,
    DimensionMismatchError,
    DomainError,
    RangeError,
    SizeLimitError,
)

INF = math.inf

_GRID_CAP = 2_000_000  # refuse simplex grids larger than this


# ---------------------------------------------------------------------------
# output space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OutputSpace:
    """Finite, strictly increasing list of output levels."""

    levels: tuple[float, ...]

    def __post_init__(self):
        levels = tuple(float(s) for s in self.levels)
        if len(levels) < 1:
            raise ValueError("output space needs at least one level")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError(f"output levels must be strictly increasing: {levels}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return len(self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def index(self, level: float) -> int:
        return self.levels.index(level)


# ---------------------------------------------------------------------------
# lotteries and contracts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lottery:
    """Finite-support probability distribution over monetary prizes.

    The support is stored canonically: sorted by prize, duplicate prizes
    merged, zero-probability atoms dropped.
    """

    support: tuple[tuple[float, float], ...]

    def __post_init__(self):
        merged: dict[float, float] = {}
        for prize, prob in self.support:
            prize = float(prize)
            prob = float(prob)
            if prob < -DEFAULT.equality:
                raise ValueError(f"negative probability {prob}")
            if prob <= 0.0:
                continue
            merged[prize] = merged.get(prize, 0.0) + prob
        if not merged:
            raise ValueError("lottery support is empty")
        total = sum(merged.values())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"lottery probabilities sum to {total!r}, not 1")
        object.__setattr__(
            self, "support", tuple(sorted((p, q) for p, q in merged.items()))
        )

    @classmethod
    def degenerate(cls, prize: float) -> "Lottery":
        return cls(((float(prize), 1.0),))

    @property
    def is_degenerate(self) -> bool:
        return len(self.support) == 1

    def prizes(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.support)

    def mean(self) -> float:
        return sum(p * q for p, q in self.support)

    def approx_eq(self, other: "Lottery", tol: float = DEFAULT.equality) -> bool:
        if len(self.support) != len(other.support):
            return False
        return all(
            abs(p1 - p2) <= tol and abs(q1 - q2) <= tol
            for (p1, q1), (p2, q2) in zip(self.support, other.support)
        )


def mix_lotteries(alpha: float, x: Lottery, y: Lottery) -> Lottery:
    """Probability mixture ``alpha * x + (1 - alpha) * y``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixture weight {alpha} outside [0, 1]")
    if alpha == 1.0:
        return x
    if alpha == 0.0:
        return y
    pairs = [(p, alpha * q) for p, q in x.support]
    pairs += [(p, (1.0 - alpha) * q) for p, q in y.support]
    return Lottery(tuple(pairs))


@dataclass(frozen=True)
class Contract:
    """Map from output levels to money lotteries."""

    space: OutputSpace
    payoffs: tuple[Lottery, ...]

    def __post_init__(self):
        object.__setattr__(self, "payoffs", tuple(self.payoffs))
        if len(self.payoffs) != self.space.n:
            raise DimensionMismatchError(
                f"{len(self.payoffs)} payoffs for {self.space.n} output levels"
            )

    @classmethod
    def constant(cls, space: OutputSpace, pay) -> "Contract":
        lot = pay if isinstance(pay, Lottery) else Lottery.degenerate(pay)
        return cls(space, (lot,) * space.n)

    @classmethod
    def from_prizes(cls, space: OutputSpace, prizes: Sequence[float]) -> "Contract":
        return cls(space, tuple(Lottery.degenerate(p) for p in prizes))

    @property
    def is_constant(self) -> bool:
        return all(lot == self.payoffs[0] for lot in self.payoffs[1:])


def mix_contracts(alpha: float, w: Contract, wp: Contract) -> Contract:
    """Statewise mixture ``[alpha*w + (1-alpha)*w'](s) = alpha*w(s) + (1-alpha)*w'(s)``."""
    if w.space != wp.space:
        raise DimensionMismatchError("contracts live on different output spaces")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixture weight {alpha} outside [0, 1]")
    if alpha == 1.0:
        return w
    if alpha == 0.0:
        return wp
    return Contract(
        w.space,
        tuple(mix_lotteries(alpha, a, b) for a, b in zip(w.payoffs, wp.payoffs)),
    )


# ---------------------------------------------------------------------------
# simplex points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplexPoint:
    """Probability distribution over the output levels."""

    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probs)
        if not probs:
            raise ValueError("empty probability vector")
        if any(x < -DEFAULT.equality for x in probs):
            raise ValueError(f"negative probability in {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_array(cls, arr: Iterable[float]) -> "SimplexPoint":
        return cls(tuple(0.0 if -DEFAULT.equality < x < 0.0 else float(x) for x in arr))

    @property
    def n(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


def fosd(p: SimplexPoint, q: SimplexPoint, tol: float = DEFAULT.equality) -> bool:
    """First-order stochastic dominance of ``p`` over ``q``.

    Cumulative-mass criterion on the ordered output levels: the cdf of
    ``p`` lies weakly below the cdf of ``q``.
    """
    if p.n != q.n:
        raise DimensionMismatchError(f"dimension mismatch: {p.n} vs {q.n}")
    cp = 0.0
    cq = 0.0
    for a, b in zip(p.probs[:-1], q.probs[:-1]):
        cp += a
        cq += b
        if cp > cq + tol:
            return False
    return True


def fosd_matrix(points: np.ndarray, tol: float = DEFAULT.equality) -> np.ndarray:
    """Boolean matrix D with D[i, j] = (points[i] FOSD points[j])."""
    cum = np.cumsum(points[:, :-1], axis=1)
    return np.all(cum[:, None, :] <= cum[None, :, :] + tol, axis=2)


def simplex_grid(n: int, m: int) -> list[SimplexPoint]:
    """All points of the simplex with coordinates k/m, in lexicographic order.

    There are C(m+n-1, n-1) of them; raises SizeLimitError past a cap.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    count = math.comb(m + n - 1, n - 1)
    if count > _GRID_CAP:
        raise SizeLimitError(f"simplex grid would have {count} points (cap {_GRID_CAP})")
    out: list[SimplexPoint] = []
    comp = [0] * n

    def rec(pos: int, remaining: int):
        if pos == n - 1:
            comp[pos] = remaining
            out.append(SimplexPoint(tuple(k / m for k in comp)))
            return
        for k in range(remaining + 1):
            comp[pos] = k
            rec(pos + 1, remaining - k)

    rec(0, m)
    return out


# ---------------------------------------------------------------------------
# utility functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UtilityFunction:
    """Strictly increasing Bernoulli utility, normalised to 0 and 1 at the
    reference prizes.

    kinds:
        linear            u(x) = (x - ref0) / (ref1 - ref0)
        cara              u(x) = (1 - exp(-a (x - ref0))) / (1 - exp(-a (ref1 - ref0)))
        piecewise_linear  interpolation between knots, extrapolated with the
                          end-segment slopes
    """

    kind: str
    reference: tuple[float, float]
    a: float | None = None
    knots: tuple[tuple[float, float], ...] | None = None
    domain: tuple[float, float] = (-INF, INF)

    def __post_init__(self):
        ref0, ref1 = (float(self.reference[0]), float(self.reference[1]))
        if not ref0 < ref1:
            raise ValueError("reference prizes must satisfy ref0 < ref1")
        object.__setattr__(self, "reference", (ref0, ref1))
        if self.kind == "linear":
            pass
        elif self.kind == "cara":
            if self.a is None or self.a == 0.0:
                raise ValueError("cara utility needs a nonzero risk parameter")
        elif self.kind == "piecewise_linear":
            ks = self.knots
            if ks is None or len(ks) < 2:
                raise ValueError("piecewise-linear utility needs at least two knots")
            ks = tuple((float(x), float(y)) for x, y in ks)
            for (x0, y0), (x1, y1) in zip(ks, ks[1:]):
                if x1 <= x0 or y1 <= y0:
                    raise ValueError("knots must be strictly increasing in both coordinates")
            object.__setattr__(self, "knots", ks)
        else:
            raise ValueError(f"unknown utility kind {self.kind!r}")
        for ref, target in zip(self.reference, (0.0, 1.0)):
            got = self(ref)
            if abs(got - target) > 1e-12:
                raise ValueError(
                    f"utility not normalised: u({ref}) = {got}, expected {target}"
                )

    # constructors ---------------------------------------------------------

    @classmethod
    def linear(cls, reference=(0.0, 1.0)) -> "UtilityFunction":
        return cls("linear", tuple(reference))

    @classmethod
    def cara(cls, a: float, reference=(0.0, 1.0)) -> "UtilityFunction":
        return cls("cara", tuple(reference), a=float(a))

    @classmethod
    def piecewise_linear(cls, knots, reference=(0.0, 1.0)) -> "UtilityFunction":
        return cls("piecewise_linear", tuple(reference), knots=tuple(knots))

    # evaluation -----------------------------------------------------------

    def __call__(self, prize: float) -> float:
        return float(self.eval_array(np.asarray([prize], dtype=float))[0])

    def eval_array(self, prizes: np.ndarray) -> np.ndarray:
        prizes = np.asarray(prizes, dtype=float)
        lo, hi = self.domain
        if np.any(prizes < lo) or np.any(prizes > hi):
            raise DomainError("prize outside the utility domain")
        ref0, ref1 = self.reference
        if self.kind == "linear":
            return (prizes - ref0) / (ref1 - ref0)
        if self.kind == "cara":
            a = self.a
            return (1.0 - np.exp(-a * (prizes - ref0))) / (
                1.0 - np.exp(-a * (ref1 - ref0))
            )
        xs = np.array([x for x, _ in self.knots])
        ys = np.array([y for _, y in self.knots])
        out = np.interp(prizes, xs, ys)
        slope_lo = (ys[1] - ys[0]) / (xs[1] - xs[0])
        slope_hi = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        below = prizes < xs[0]
        above = prizes > xs[-1]
        out = np.where(below, ys[0] + slope_lo * (prizes - xs[0]), out)
        out = np.where(above, ys[-1] + slope_hi * (prizes - xs[-1]), out)
        return out

    def inverse(self, value: float) -> float:
        return float(self.inverse_array(np.asarray([value], dtype=float))[0])

    def inverse_array(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        ref0, ref1 = self.reference
        if self.kind == "linear":
            return ref0 + values * (ref1 - ref0)
        if self.kind == "cara":
            a = self.a
            denom = 1.0 - math.exp(-a * (ref1 - ref0))
            inner = 1.0 - values * denom
            if np.any(inner <= 0.0):
                raise RangeError("value outside the range of the cara utility")
            return ref0 - np.log(inner) / a
        xs = np.array([x for x, _ in self.knots])
        ys = np.array([y for _, y in self.knots])
        out = np.interp(values, ys, xs)
        slope_lo = (xs[1] - xs[0]) / (ys[1] - ys[0])
        slope_hi = (xs[-1] - xs[-2]) / (ys[-1] - ys[-2])
        below = values < ys[0]
        above = values > ys[-1]
        out = np.where(below, xs[0] + slope_lo * (values - ys[0]), out)
        out = np.where(above, xs[-1] + slope_hi * (values - ys[-1]), out)
        return out

    # range ----------------------------------------------------------------

    @property
    def unbounded_above(self) -> bool:
        if self.kind == "linear" or self.kind == "piecewise_linear":
            return self.domain[1] == INF
        return self.a < 0 and self.domain[1] == INF

    @property
    def unbounded_below(self) -> bool:
        if self.kind == "linear" or self.kind == "piecewise_linear":
            return self.domain[0] == -INF
        return self.a > 0 and self.domain[0] == -INF

    @property
    def range_bounds(self) -> tuple[float, float]:
        """Attainable utility values; cara asymptotes are excluded endpoints."""
        lo, hi = -INF, INF
        if self.kind == "cara":
            ref0, ref1 = self.reference
            denom = 1.0 - math.exp(-self.a * (ref1 - ref0))
            if self.a > 0:
                hi = 1.0 / denom
            else:
                lo = 1.0 / denom
        if self.domain[0] != -INF:
            lo = max(lo, self(self.domain[0]))
        if self.domain[1] != INF:
            hi = min(hi, self(self.domain[1]))
        return lo, hi


def expected_utility(u: UtilityFunction, x: Lottery) -> float:
    """Expected utility of a money lottery."""
    prizes = np.array([p for p, _ in x.support])
    probs = np.array([q for _, q in x.support])
    return float(np.dot(u.eval_array(prizes), probs))


def utility_vector(u: UtilityFunction, w: Contract) -> np.ndarray:
    """Statewise expected utilities of a contract's payoffs."""
    return np.array([expected_utility(u, lot) for lot in w.payoffs])


# ---------------------------------------------------------------------------
# cost functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CostFunction:
    """Grounded convex lsc cost over the output-distribution simplex.

    Two forms:

    * ``quadratic1d`` (binary output only): c(p) = alpha * (p_hi - beta)^2
      where p_hi is the probability of the high output level.
    * ``grid``: a finite graph of (point, value) pairs; the effective
      function is the lower convex envelope of the finite-valued pairs,
      +inf outside their convex hull.
    """

    form: str
    alpha: float | None = None
    beta: float | None = None
    points: tuple[tuple[SimplexPoint, float], ...] | None = None

    def __post_init__(self):
        if self.form == "quadratic1d":
            if self.alpha is None or self.beta is None:
                raise ValueError("quadratic1d cost needs alpha and beta")
            if self.alpha < 0:
                raise ValueError("alpha must be nonnegative")
            if not 0.0 <= self.beta <= 1.0:
                raise ValueError("beta must lie in [0, 1]")
        elif self.form == "grid":
            pts = self.points
            if not pts:
                raise ValueError("grid cost needs at least one point")
            pts = tuple((pt, float(v)) for pt, v in pts)
            n = pts[0][0].n
            finite = [v for _, v in pts if v < INF]
            if not finite:
                raise ValueError("grid cost needs at least one finite value")
            if any(pt.n != n for pt, _ in pts):
                raise DimensionMismatchError("grid points of mixed dimension")
            if any(v < -DEFAULT.equality for v in finite):
                raise ValueError("cost values must be nonnegative")
            if min(finite) > DEFAULT.equality:
                raise ValueError(
                    f"cost is not grounded: minimum finite value {min(finite)}"
                )
            object.__setattr__(self, "points", pts)
        else:
            raise ValueError(f"unknown cost form {self.form!r}")

    @classmethod
    def quadratic1d(cls, alpha: float, beta: float) -> "CostFunction":
        return cls("quadratic1d", alpha=float(alpha), beta=float(beta))

    @classmethod
    def grid(cls, points) -> "CostFunction":
        return cls("grid", points=tuple(points))

    @property
    def n(self) -> int:
        if self.form == "quadratic1d":
            return 2
        return self.points[0][0].n

    # cached dense views of the finite part of the graph --------------------

    @cached_property
    def _finite_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        pts = [(pt.as_array(), v) for pt, v in self.points if v < INF]
        P = np.array([a for a, _ in pts])
        v = np.array([v for _, v in pts])
        return P, v

    @cached_property
    def _hull1d(self) -> tuple[np.ndarray, np.ndarray]:
        """Knots of the 1-d lower convex hull (grid form, n == 2 only)."""
        P, v = self._finite_arrays
        t = P[:, 1]
        order = np.argsort(t, kind="stable")
        best: dict[float, float] = {}
        for i in order:
            ti = float(t[i])
            if ti not in best or v[i] < best[ti]:
                best[ti] = float(v[i])
        pts = sorted(best.items())
        hull: list[tuple[float, float]] = []
        for x, y in pts:
            while len(hull) >= 2:
                (x0, y0), (x1, y1) = hull[-2], hull[-1]
                # pop the middle point when it lies on or above segment (x0,y0)-(x,y)
                if (y1 - y0) * (x - x0) >= (y - y0) * (x1 - x0):
                    hull.pop()
                else:
                    break
            hull.append((x, y))
        ts = np.array([x for x, _ in hull])
        vs = np.array([y for _, y in hull])
        return ts, vs

    def finite_part(self) -> tuple[np.ndarray, np.ndarray]:
        """Matrix of finite-valued grid points and their values."""
        if self.form != "grid":
            raise ValueError("finite_part is defined for grid costs only")
        P, v = self._finite_arrays
        return P.copy(), v.copy()


def cost_at(c: CostFunction, p: SimplexPoint, tol: float = DEFAULT.optimization) -> float:
    """Evaluate the effective cost at a simplex point (may be +inf).

    For grid costs this is the lower convex envelope of the stored graph:
    the least convex combination of finite values whose barycentre is p.
    """
    if c.form == "quadratic1d":
        if p.n != 2:
            raise DimensionMismatchError("quadratic1d cost needs a binary output space")
        return c.alpha * (p.probs[1] - c.beta) ** 2
    if p.n != c.n:
        raise DimensionMismatchError(f"point has dimension {p.n}, cost has {c.n}")
    if c.n == 2:
        ts, vs = c._hull1d
        t = p.probs[1]
        if t < ts[0] - 1e-12 or t > ts[-1] + 1e-12:
            return INF
        return float(np.interp(min(max(t, ts[0]), ts[-1]), ts, vs))
    return _envelope_lp(c, p.as_array(), tol)


def _envelope_lp(c: CostFunction, p: np.ndarray, tol: float) -> float:
    P, v = c._finite_arrays
    status, value, _ = _lp.simplex_solve(v, P.T, p, tol=tol)
    if status == "infeasible":
        return INF
    if status != "optimal":  # can't happen: objective bounded below by 0
        raise RuntimeError(f"envelope LP returned {status}")
    return max(value, 0.0)
