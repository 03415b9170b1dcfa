"""Behavioral and parametric deciders for relative confidence and optimism.

Confidence compares appetite for non-constant contracts against constant
ones; optimism compares appetite for steeper contracts.  Each relation has
a behavioral falsifier (seeded sampling with robust margins) and a
parametric decider on the cost/utility pair: pointwise cost dominance for
confidence, up-shiftedness for optimism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .axioms import (
    SamplerConfig,
    Witness,
    _contract_at,
    _draw_payoffs,
    _lottery_at,
    _payoff_utilities,
    _reachable,
    _scan,
    _shift_to_value,
)
from .config import DEFAULT, DimensionMismatchError
from .core import (
    Contract,
    CostFunction,
    Lottery,
    SimplexPoint,
    UtilityFunction,
    cost_at,
    fosd_matrix,
    mix_lotteries,
    utility_vector,
)
from .models import (
    Comparison,
    PreferenceOracle,
    compare,
    conjugate,
    conjugate_batch,
    contract_from_utility_vector,
    value,
    value_batch,
)

INF = math.inf

MIN_HYPOTHESIS = 100  # behavioral passes need at least this many live samples
_VECTOR_REACH = 8.0  # sampling range for raw utility vectors


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a comparative check.

    holds is None when a behavioral falsifier saw too few
    hypothesis-satisfying samples to declare a pass.
    """

    holds: bool | None
    n_samples: int = 0
    n_hypothesis: int = 0
    witness: Witness | None = None
    note: str = ""


@dataclass(frozen=True)
class LevelSet:
    threshold: float
    points: tuple[SimplexPoint, ...]

    @classmethod
    def of(cls, c: CostFunction, k: float, grid) -> "LevelSet":
        if k < 0:
            raise ValueError("level-set threshold must be nonnegative")
        pts = tuple(p for p in grid if cost_at(c, p) <= k + DEFAULT.equality)
        return cls(float(k), pts)


@dataclass(frozen=True)
class AbsoluteAssessment:
    overconfident: bool
    optimistic: bool
    confidence_witness: Witness | None = None
    optimism_witness: Witness | None = None


# ---------------------------------------------------------------------------
# steepness
# ---------------------------------------------------------------------------


def is_steeper(o: PreferenceOracle, w: Contract, wp: Contract) -> bool:
    """Whether w is steeper than w' under the oracle's preference.

    Two routes are computed and cross-checked: the half-half statewise swap
    comparisons, and monotonicity of the statewise utility difference.
    """
    eps = DEFAULT.optimization
    f = utility_vector(o.utility, w)
    fp = utility_vector(o.utility, wp)
    diff = f - fp
    by_vector = all(
        diff[s] - diff[sp] >= -2.0 * eps for s in range(len(diff)) for sp in range(s)
    )

    by_swaps = True
    sp_space = o.space
    for s in range(sp_space.n):
        for t in range(s):
            left = Contract.constant(
                sp_space, mix_lotteries(0.5, w.payoffs[s], wp.payoffs[t])
            )
            right = Contract.constant(
                sp_space, mix_lotteries(0.5, w.payoffs[t], wp.payoffs[s])
            )
            # half-half mixtures halve the utility difference, so the band
            # eps here matches the -2*eps threshold of the vector route
            if compare(o, left, right, band=eps) == Comparison.STRICTLY_DISPREFERRED:
                by_swaps = False
                break
        if not by_swaps:
            break

    if by_swaps != by_vector:
        raise RuntimeError(
            "steepness routes disagree: swap comparisons vs utility differences"
        )
    return by_vector


def _increasing_increments(rng, size, n, base_span=2.0, step_span=1.5):
    base = rng.uniform(-base_span, base_span, size=size)
    steps = rng.uniform(0.0, step_span, size=(size, n - 1)) if n > 1 else np.zeros((size, 0))
    steps *= rng.random(size=steps.shape) < 0.8  # keep some flat stretches
    return base[:, None] + np.concatenate(
        [np.zeros((size, 1)), np.cumsum(steps, axis=1)], axis=1
    )


def _clip_into_range(u: UtilityFunction, F: np.ndarray) -> np.ndarray:
    """Clamp utility targets strictly inside u's attainable range so the
    inverse is defined; rows that needed clamping are filtered out by a
    _reachable mask at the call sites."""
    lo, hi = u.range_bounds
    lo = lo + 1e-9 if lo > -INF else -INF
    hi = hi - 1e-9 if hi < INF else INF
    return np.clip(F, lo, hi)


# ---------------------------------------------------------------------------
# confidence
# ---------------------------------------------------------------------------


def more_confident_behavioral(
    a: PreferenceOracle, b: PreferenceOracle, cfg: SamplerConfig, jobs: int = 1
) -> OrderVerdict:
    """Falsifier for "a is more confident than b".

    Samples (contract, constant) pairs, including the b-certainty-equivalent
    of each sampled contract as a constant probe, and looks for a preference
    of b over constants that a fails to share.
    """
    if a.space != b.space:
        raise DimensionMismatchError("oracles live on different output spaces")
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    n = a.space.n
    hyp_count = [0]

    def const_vals(o, g):
        return value_batch(o, np.repeat(g[:, None], n, axis=1))

    def worker(rng, size):
        d_w = _draw_payoffs(rng, cfg, (size, n))
        F_a = _payoff_utilities(a.utility, *d_w)
        F_b = _payoff_utilities(b.utility, *d_w)
        va_w = value_batch(a, F_a)
        vb_w = value_batch(b, F_b)

        d_x = _draw_payoffs(rng, cfg, (size,))
        gx_a = _payoff_utilities(a.utility, *d_x)
        gx_b = _payoff_utilities(b.utility, *d_x)
        vx_a = const_vals(a, gx_a)
        vx_b = const_vals(b, gx_b)

        ce_b = b.utility.inverse_array(_clip_into_range(b.utility, vb_w))
        vce_a = const_vals(a, a.utility.eval_array(ce_b))
        vce_b = const_vals(b, b.utility.eval_array(ce_b))

        weak = (vb_w - vx_b >= -eps) & (vx_a - va_w > delta)
        strict = (vb_w - vx_b > delta) & (va_w - vx_a <= eps)
        probe = (vb_w - vce_b >= -eps) & (vce_a - va_w > delta)
        hyp_count[0] += int((vb_w - vx_b >= -eps).sum() + (vb_w - vce_b >= -eps).sum())
        bad = weak | strict | probe
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        if weak[i] or strict[i]:
            x_lot = _lottery_at(*(np.atleast_1d(t)[i] for t in d_x))
            vals = (vb_w[i], vx_b[i], va_w[i], vx_a[i])
            form = "weak" if weak[i] else "strict"
        else:
            x_lot = Lottery.degenerate(float(ce_b[i]))
            vals = (vb_w[i], vce_b[i], va_w[i], vce_a[i])
            form = "weak"
        return {"w": tuple(x[i] for x in d_w), "x": x_lot, "vals": vals, "form": form}

    payload, scanned = _scan(cfg, 101, worker, jobs)
    if payload is None:
        if hyp_count[0] < MIN_HYPOTHESIS:
            return OrderVerdict(None, scanned, hyp_count[0], note="too few hypothesis-satisfying samples")
        return OrderVerdict(True, scanned, hyp_count[0])
    w = _contract_at(a.space, payload["w"])
    vb_w, vb_x, va_w, va_x = (float(t) for t in payload["vals"])
    wit = Witness(
        kind="confidence",
        contracts={"w": w},
        lotteries={"x": payload["x"]},
        values={
            "value_b_w": vb_w,
            "value_b_x": vb_x,
            "value_a_w": va_w,
            "value_a_x": va_x,
        },
        margin=float(va_x - va_w) if payload["form"] == "weak" else float(vb_w - vb_x),
        detail=f"{payload['form']}-form confidence implication violated",
    )
    return OrderVerdict(False, scanned, hyp_count[0], wit)


def more_confident_parametric(
    cA: CostFunction,
    uA: UtilityFunction,
    cB: CostFunction,
    uB: UtilityFunction,
    grid,
    tol: float = DEFAULT.optimization,
    prize_grid=None,
) -> OrderVerdict:
    """Parametric test: identical utilities and pointwise-lower cost."""
    if prize_grid is None:
        ref0, ref1 = uA.reference
        span = ref1 - ref0
        prize_grid = np.linspace(ref0 - span, ref1 + span, 21)
    ua = uA.eval_array(np.asarray(prize_grid, dtype=float))
    ub = uB.eval_array(np.asarray(prize_grid, dtype=float))
    gap = np.abs(ua - ub)
    if gap.max() > tol:
        i = int(gap.argmax())
        wit = Witness(
            kind="confidence_parametric",
            values={
                "prize": float(np.asarray(prize_grid)[i]),
                "u_a": float(ua[i]),
                "u_b": float(ub[i]),
            },
            margin=float(gap[i]),
            detail="utilities differ at a grid prize",
        )
        return OrderVerdict(False, witness=wit)
    for p in grid:
        ca = cost_at(cA, p)
        cb = cost_at(cB, p)
        if cb == INF:
            continue  # anything is <= +inf
        if ca > cb + tol:
            wit = Witness(
                kind="confidence_parametric",
                vectors={"p": p.probs},
                values={"cost_a": ca, "cost_b": cb},
                margin=float(ca - cb),
                detail="cost of a exceeds cost of b at a grid point",
            )
            return OrderVerdict(False, witness=wit)
    return OrderVerdict(True)


# ---------------------------------------------------------------------------
# up-shift machinery
# ---------------------------------------------------------------------------


def _cost_curve(c: CostFunction):
    """1-d view of a binary-output cost: (evaluator over p_hi, lo, hi)."""
    if c.form == "quadratic1d":
        return (lambda t: c.alpha * (np.asarray(t) - c.beta) ** 2), 0.0, 1.0
    kt, kc = c._hull1d
    return (lambda t: np.interp(t, kt, kc)), float(kt[0]), float(kt[-1])


def _golden_min(fn, lo: float, hi: float, tol: float = 1e-10):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fn(x2)
    mid = 0.5 * (a + b)
    return mid, fn(mid)


@dataclass(frozen=True)
class UpshiftPairResult:
    holds: bool
    q: SimplexPoint | None
    q_prime: SimplexPoint | None
    total: float
    reference: float
    gap: float


def _fosd_join_meet(p: np.ndarray, pp: np.ndarray):
    """cdf-wise meet/join: q dominates both marginals, q' is dominated."""
    cp = np.cumsum(p)
    cpp = np.cumsum(pp)
    cq = np.minimum(cp, cpp)
    cqp = np.maximum(cp, cpp)
    q = np.diff(np.concatenate([[0.0], cq]))
    qp = np.diff(np.concatenate([[0.0], cqp]))
    return np.maximum(q, 0.0), np.maximum(qp, 0.0)


def upshift_pair(
    c: CostFunction,
    cp: CostFunction,
    p: SimplexPoint,
    p_prime: SimplexPoint,
    tol: float = DEFAULT.optimization,
    subgrid_resolution: int = 16,
) -> UpshiftPairResult:
    """Search for a mean-preserving rearrangement (q, q') with p FOSD q',
    q FOSD p', and c(q) + c'(q') <= c(p) + c'(p').

    Binary output: exact 1-d convex minimisation (closed form for a pair of
    quadratics, golden section otherwise) plus the max/min candidate.
    Larger spaces: sub-grid search at the stated resolution, plus the
    cdf join/meet candidate; a "holds" is certified by the returned pair,
    a "fails" is grid-relative.
    """
    if c.n != cp.n or p.n != c.n or p_prime.n != c.n:
        raise DimensionMismatchError("cost functions and points must share one dimension")
    ref = cost_at(c, p) + cost_at(cp, p_prime)

    if c.n == 2:
        return _upshift_pair_1d(c, cp, p, p_prime, ref, tol)

    parr = p.as_array()
    pparr = p_prime.as_array()
    jq, jqp = _fosd_join_meet(parr, pparr)
    candidates = []
    if abs(jq.sum() - 1.0) < 1e-9 and abs(jqp.sum() - 1.0) < 1e-9:
        candidates.append((SimplexPoint.from_array(jq), SimplexPoint.from_array(jqp)))
    cum_p = np.cumsum(parr[:-1])
    cum_pp = np.cumsum(pparr[:-1])
    from .core import simplex_grid

    for q in simplex_grid(c.n, subgrid_resolution):
        qarr = q.as_array()
        qparr = parr + pparr - qarr
        if qparr.min() < -1e-12 or abs(qparr.sum() - 1.0) > 1e-9:
            continue
        cum_q = np.cumsum(qarr[:-1])
        cum_qp = np.cumsum(qparr[:-1])
        if np.any(cum_p > cum_qp + 1e-12) or np.any(cum_q > cum_pp + 1e-12):
            continue
        candidates.append((q, SimplexPoint.from_array(np.maximum(qparr, 0.0))))

    if ref == INF:
        q, qp = candidates[0] if candidates else (p, p_prime)
        return UpshiftPairResult(True, q, qp, cost_at(c, q) + cost_at(cp, qp), ref, -INF)

    best = (INF, None, None)
    for q, qp in candidates:
        total = cost_at(c, q) + cost_at(cp, qp)
        if total < best[0]:
            best = (total, q, qp)
    total, q, qp = best
    holds = total <= ref + tol
    return UpshiftPairResult(holds, q, qp, total, ref, total - ref)


def _upshift_pair_1d(c, cp, p, p_prime, ref, tol) -> UpshiftPairResult:
    a = p.probs[1]
    ap = p_prime.probs[1]
    s = a + ap
    f_c, lo_c, hi_c = _cost_curve(c)
    f_cp, lo_cp, hi_cp = _cost_curve(cp)

    lo = max(ap, s - 1.0, 0.0)
    hi = min(1.0, s)
    join_t = max(a, ap)  # the max/min candidate is always feasible

    if ref == INF:
        q = SimplexPoint((1.0 - join_t, join_t))
        qp = SimplexPoint((1.0 - (s - join_t), s - join_t))
        return UpshiftPairResult(
            True, q, qp, float(f_c(join_t)) + float(f_cp(s - join_t)), ref, -INF
        )

    # restrict to the finite hulls of both curves
    flo = max(lo, lo_c, s - hi_cp)
    fhi = min(hi, hi_c, s - lo_cp)
    if flo > fhi + 1e-12:
        return UpshiftPairResult(False, None, None, INF, ref, INF)
    flo = min(flo, fhi)

    def g(t):
        return float(f_c(t)) + float(f_cp(s - t))

    cands = [flo, fhi]
    if flo <= join_t <= fhi:
        cands.append(join_t)
    if c.form == "quadratic1d" and cp.form == "quadratic1d":
        denom = c.alpha + cp.alpha
        if denom > 0.0:
            t_star = (c.alpha * c.beta + cp.alpha * (s - cp.beta)) / denom
            cands.append(min(max(t_star, flo), fhi))
    else:
        t_g, _ = _golden_min(g, flo, fhi)
        cands.append(t_g)

    best_t = min(cands, key=g)
    total = g(best_t)
    holds = total <= ref + tol
    q = SimplexPoint.from_array(np.array([1.0 - best_t, best_t]))
    qp_t = s - best_t
    qp = SimplexPoint.from_array(np.array([1.0 - qp_t, qp_t]))
    return UpshiftPairResult(holds, q, qp, total, ref, total - ref)


def is_upshifted(
    c: CostFunction,
    cp: CostFunction,
    grid,
    tol: float = DEFAULT.optimization,
) -> OrderVerdict:
    """Whether c is up-shifted from c': the pairwise rearrangement check
    over all ordered grid pairs."""
    grid = list(grid)
    if c.form == "quadratic1d" and cp.form == "quadratic1d":
        t = np.array([pt.probs[1] for pt in grid])
        A, Ap = np.meshgrid(t, t, indexing="ij")
        s = A + Ap
        lo = np.maximum(Ap, s - 1.0)
        hi = np.minimum(1.0, s)
        denom = c.alpha + cp.alpha
        if denom > 0.0:
            t_star = (c.alpha * c.beta + cp.alpha * (s - cp.beta)) / denom
        else:
            t_star = lo
        t_star = np.clip(t_star, lo, hi)
        join = np.clip(np.maximum(A, Ap), lo, hi)

        def g(tt):
            return c.alpha * (tt - c.beta) ** 2 + cp.alpha * (s - tt - cp.beta) ** 2

        best = np.minimum(np.minimum(g(t_star), g(join)), np.minimum(g(lo), g(hi)))
        ref = c.alpha * (A - c.beta) ** 2 + cp.alpha * (Ap - cp.beta) ** 2
        bad = best > ref + tol
        if not bad.any():
            return OrderVerdict(True, n_samples=len(grid) ** 2)
        i, j = np.argwhere(bad)[0]
        res = upshift_pair(c, cp, grid[i], grid[j], tol)
        wit = _upshift_witness(grid[i], grid[j], res)
        return OrderVerdict(False, n_samples=len(grid) ** 2, witness=wit)

    for p in grid:
        for pp in grid:
            res = upshift_pair(c, cp, p, pp, tol)
            if not res.holds:
                return OrderVerdict(
                    False, n_samples=len(grid) ** 2, witness=_upshift_witness(p, pp, res)
                )
    return OrderVerdict(True, n_samples=len(grid) ** 2)


def _upshift_witness(p, pp, res: UpshiftPairResult) -> Witness:
    return Witness(
        kind="upshift",
        vectors={"p": p.probs, "p_prime": pp.probs},
        values={"best_total": res.total, "reference_total": res.reference},
        margin=float(res.gap),
        detail="no feasible rearrangement weakly cheaper than the original pair",
    )


def level_set_weak_order(
    c: CostFunction, cp: CostFunction, k: float, grid
) -> bool:
    """Weak set order (FOSD) between the two k-level sets on the grid."""
    if k < 0:
        raise ValueError("threshold must be nonnegative")
    grid = list(grid)
    P = np.array([pt.as_array() for pt in grid])
    in_L = np.array([cost_at(c, pt) <= k + DEFAULT.equality for pt in grid])
    in_Lp = np.array([cost_at(cp, pt) <= k + DEFAULT.equality for pt in grid])
    if not in_L.any() and not in_Lp.any():
        return True
    if not in_L.any() or not in_Lp.any():
        return False
    D = fosd_matrix(P)
    sub = D[np.ix_(in_L, in_Lp)]
    return bool(sub.any(axis=1).all() and sub.any(axis=0).all())


# ---------------------------------------------------------------------------
# optimism
# ---------------------------------------------------------------------------


def more_optimistic_behavioral(
    a: PreferenceOracle, b: PreferenceOracle, cfg: SamplerConfig, jobs: int = 1
) -> OrderVerdict:
    """Falsifier for "a is more optimistic than b".

    Samples pairs where w is steeper than w' under a (built constructively
    from nondecreasing statewise utility increments, plus b-indifference
    probes) and looks for preferences of b for the steeper contract that a
    fails to share.
    """
    if a.space != b.space:
        raise DimensionMismatchError("oracles live on different output spaces")
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    n = a.space.n
    hyp_count = [0]
    note = ""
    if not (
        a.utility.unbounded_above
        and a.utility.unbounded_below
        and b.utility.unbounded_above
        and b.utility.unbounded_below
    ):
        note = "bounded utility: the optimism characterisation needs unboundedness"

    def worker(rng, size):
        d_wp = _draw_payoffs(rng, cfg, (size, n))
        Fa_wp = _payoff_utilities(a.utility, *d_wp)
        Fb_wp = _payoff_utilities(b.utility, *d_wp)
        inc = _increasing_increments(rng, size, n)
        Fa_w = Fa_wp + inc
        live = _reachable(a.utility, Fa_w)
        X_w = a.utility.inverse_array(_clip_into_range(a.utility, Fa_w))
        Fb_w = b.utility.eval_array(X_w)

        va_w = value_batch(a, Fa_w)
        va_wp = value_batch(a, Fa_wp)
        vb_w = value_batch(b, Fb_w)
        vb_wp = value_batch(b, Fb_wp)

        weak_hyp = live & (vb_w - vb_wp >= -eps)
        strict_hyp = live & (vb_w - vb_wp > delta)
        weak = weak_hyp & (va_wp - va_w > delta)
        strict = strict_hyp & (va_w - va_wp <= eps)

        k = _shift_to_value(b, Fb_wp, vb_w)
        Fb_w2 = Fb_wp + k[:, None]
        live2 = live & _reachable(b.utility, Fb_w2)
        X_w2 = b.utility.inverse_array(_clip_into_range(b.utility, Fb_w2))
        Fa_w2 = a.utility.eval_array(X_w2)
        d2 = Fa_w - Fa_w2
        steep2 = live2 & np.all(d2[:, 1:] >= d2[:, :-1] - 2.0 * eps, axis=1)
        va_w2 = value_batch(a, Fa_w2)
        probe = steep2 & (va_w2 - va_w > delta)

        hyp_count[0] += int(weak_hyp.sum() + steep2.sum())
        bad = weak | strict | probe
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        if weak[i] or strict[i]:
            form = "weak" if weak[i] else "strict"
            return {
                "f_w": Fa_w[i],
                "wp": tuple(x[i] for x in d_wp),
                "f_wp_b": None,
                "vals": (vb_w[i], vb_wp[i], va_w[i], va_wp[i]),
                "form": form,
            }
        return {
            "f_w": Fa_w[i],
            "wp": None,
            "f_wp_b": Fb_w2[i],
            "vals": (vb_w[i], float(value_batch(b, Fb_w2[i][None, :])[0]), va_w[i], va_w2[i]),
            "form": "weak",
        }

    payload, scanned = _scan(cfg, 102, worker, jobs)
    if payload is None:
        if hyp_count[0] < MIN_HYPOTHESIS:
            return OrderVerdict(
                None, scanned, hyp_count[0], note=(note + "; " if note else "") + "too few hypothesis-satisfying samples"
            )
        return OrderVerdict(True, scanned, hyp_count[0], note=note)
    w = contract_from_utility_vector(a.utility, payload["f_w"], a.space)
    if payload["wp"] is not None:
        wp = _contract_at(a.space, payload["wp"])
    else:
        wp = contract_from_utility_vector(b.utility, payload["f_wp_b"], b.space)
    vb_w, vb_wp, va_w, va_wp = (float(t) for t in payload["vals"])
    wit = Witness(
        kind="optimism",
        contracts={"w": w, "w_prime": wp},
        values={
            "value_b_w": vb_w,
            "value_b_w_prime": vb_wp,
            "value_a_w": va_w,
            "value_a_w_prime": va_wp,
        },
        margin=float(va_wp - va_w) if payload["form"] == "weak" else float(vb_w - vb_wp),
        detail=f"{payload['form']}-form optimism implication violated on a steeper pair",
    )
    return OrderVerdict(False, scanned, hyp_count[0], wit, note=note)


def lemma_b_check(
    c: CostFunction, cp: CostFunction, cfg: SamplerConfig, jobs: int = 1
) -> OrderVerdict:
    """Conjugate-order check: for utility vectors with increasing difference,
    the ordering of conjugates under c' must be preserved under c.

    Equivalent to up-shiftedness of c from c'; used as a cross-check.
    """
    if c.n != cp.n:
        raise DimensionMismatchError("cost functions of different dimension")
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    n = c.n
    hyp_count = [0]

    def worker(rng, size):
        fp = rng.uniform(-_VECTOR_REACH, _VECTOR_REACH, size=(size, n))
        inc = _increasing_increments(rng, size, n, base_span=3.0)
        f = fp + inc
        phi_cp_f = conjugate_batch(cp, f)
        phi_cp_fp = conjugate_batch(cp, fp)
        phi_c_f = conjugate_batch(c, f)
        phi_c_fp = conjugate_batch(c, fp)

        weak_hyp = phi_cp_f - phi_cp_fp >= -eps
        weak = weak_hyp & (phi_c_fp - phi_c_f > delta)
        strict = (phi_cp_f - phi_cp_fp > delta) & (phi_c_f - phi_c_fp <= eps)

        k = phi_cp_f - phi_cp_fp
        f2 = fp + k[:, None]
        phi_c_f2 = conjugate_batch(c, f2)
        probe = phi_c_f2 - phi_c_f > delta

        hyp_count[0] += int(weak_hyp.sum()) + size
        bad = weak | strict | probe
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        if weak[i] or strict[i]:
            return {
                "f": f[i],
                "fp": fp[i],
                "form": "weak" if weak[i] else "strict",
                "vals": (phi_cp_f[i], phi_cp_fp[i], phi_c_f[i], phi_c_fp[i]),
            }
        return {
            "f": f[i],
            "fp": f2[i],
            "form": "weak",
            "vals": (phi_cp_f[i], float(conjugate_batch(cp, f2[i][None, :])[0]), phi_c_f[i], phi_c_f2[i]),
        }

    payload, scanned = _scan(cfg, 103, worker, jobs)
    if payload is None:
        if hyp_count[0] < MIN_HYPOTHESIS:
            return OrderVerdict(None, scanned, hyp_count[0], note="too few hypothesis-satisfying samples")
        return OrderVerdict(True, scanned, hyp_count[0])
    v = tuple(float(t) for t in payload["vals"])
    wit = Witness(
        kind="conjugate_order",
        vectors={"f": tuple(payload["f"]), "f_prime": tuple(payload["fp"])},
        values={
            "conj_cp_f": v[0],
            "conj_cp_fp": v[1],
            "conj_c_f": v[2],
            "conj_c_fp": v[3],
        },
        margin=float(v[3] - v[2]),
        detail=f"{payload['form']}-form conjugate-order implication violated",
    )
    return OrderVerdict(False, scanned, hyp_count[0], wit)


# ---------------------------------------------------------------------------
# absolute assessment
# ---------------------------------------------------------------------------


def absolute_assess(
    c: CostFunction,
    c_star: CostFunction,
    grid,
    tol: float = DEFAULT.optimization,
) -> AbsoluteAssessment:
    """Overconfidence (c <= c* pointwise) and optimism (c up-shifted from c*)
    relative to an objective output-distribution cost."""
    if c.n != c_star.n:
        raise DimensionMismatchError("cost functions of different dimension")
    conf_wit = None
    overconf = True
    for p in grid:
        ca = cost_at(c, p)
        cs = cost_at(c_star, p)
        if cs == INF:
            continue
        if ca > cs + tol:
            overconf = False
            conf_wit = Witness(
                kind="confidence_parametric",
                vectors={"p": p.probs},
                values={"cost_a": ca, "cost_b": cs},
                margin=float(ca - cs),
                detail="subjective cost exceeds the objective cost",
            )
            break
    up = is_upshifted(c, c_star, grid, tol)
    return AbsoluteAssessment(overconf, bool(up.holds), conf_wit, up.witness)


# ---------------------------------------------------------------------------
# witness re-verification for the comparator family
# ---------------------------------------------------------------------------


def reverify_order_witness(
    wit: Witness,
    a: PreferenceOracle | None = None,
    b: PreferenceOracle | None = None,
    c: CostFunction | None = None,
    cp: CostFunction | None = None,
) -> tuple[bool, float]:
    """Re-evaluate a comparator witness from its stored objects."""
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    if wit.kind == "confidence":
        w = wit.contracts["w"]
        x = Contract.constant(a.space, wit.lotteries["x"])
        vb_w, vb_x = value(b, w), value(b, x)
        va_w, va_x = value(a, w), value(a, x)
        weak = (vb_w - vb_x >= -eps) and (va_x - va_w > delta)
        strict = (vb_w - vb_x > delta) and (va_w - va_x <= eps)
        return weak or strict, va_x - va_w
    if wit.kind == "optimism":
        w, wp = wit.contracts["w"], wit.contracts["w_prime"]
        if not is_steeper(a, w, wp):
            return False, 0.0
        vb_w, vb_wp = value(b, w), value(b, wp)
        va_w, va_wp = value(a, w), value(a, wp)
        weak = (vb_w - vb_wp >= -eps) and (va_wp - va_w > delta)
        strict = (vb_w - vb_wp > delta) and (va_w - va_wp <= eps)
        return weak or strict, va_wp - va_w
    if wit.kind == "conjugate_order":
        f = np.asarray(wit.vectors["f"], dtype=float)
        fp = np.asarray(wit.vectors["f_prime"], dtype=float)
        d = f - fp
        if not np.all(d[1:] >= d[:-1] - 2.0 * eps):
            return False, 0.0
        pcf, pcfp = conjugate(cp, f), conjugate(cp, fp)
        ccf, ccfp = conjugate(c, f), conjugate(c, fp)
        weak = (pcf - pcfp >= -eps) and (ccfp - ccf > delta)
        strict = (pcf - pcfp > delta) and (ccf - ccfp <= eps)
        return weak or strict, ccfp - ccf
    if wit.kind == "upshift":
        p = SimplexPoint(tuple(wit.vectors["p"]))
        pp = SimplexPoint(tuple(wit.vectors["p_prime"]))
        res = upshift_pair(c, cp, p, pp)
        return not res.holds, res.gap
    if wit.kind == "confidence_parametric":
        if "p" in wit.vectors:
            p = SimplexPoint(tuple(wit.vectors["p"]))
            ca = cost_at(c, p)
            cb = cost_at(cp, p)
            return ca > cb + eps, ca - cb
        return True, wit.margin
    raise ValueError(f"unknown witness kind {wit.kind!r}")
