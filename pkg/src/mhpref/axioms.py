"""Sampling-based falsifiers for the choice axioms, plus exact consistency
checks on finite choice datasets.

Every checker is a falsifier: it searches seeded samples for a violation
and returns either pass(n_samples) or a witness that re-verifies from its
stored contracts alone.  Violations are only declared with a strict margin
(config ``strict``, default 1e-6) so that a well-behaved oracle can never
fail through rounding, and every witness is robust to re-evaluation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .config import DEFAULT
from .core import (
    Contract,
    Lottery,
    OutputSpace,
    UtilityFunction,
    mix_contracts,
    utility_vector,
)
from .models import Comparison, PreferenceOracle, compare, value, value_batch

_TWO_POINT_PROB = 0.3  # chance that a sampled payoff is a 2-point lottery
_BATCH = 4096


class Axiom(str, Enum):
    WEAK_ORDER = "weak_order"
    MONOTONICITY = "monotonicity"
    DOMINANCE = "dominance"
    CONTINUITY_SURROGATE = "continuity_surrogate"
    QUASICONVEXITY = "quasiconvexity"
    VNM_INDEPENDENCE = "vnm_independence"
    MMR_INDEPENDENCE = "mmr_independence"


@dataclass(frozen=True)
class SamplerConfig:
    """Seeded sampling plan shared by the axiom checkers and comparators."""

    seed: int
    n_samples: int = 10_000
    prize_range: tuple[float, float] = (-2.0, 3.0)
    support_size_max: int = 2
    mixture_grid: tuple[float, ...] = tuple(i / 20 for i in range(21))

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        lo, hi = self.prize_range
        if not lo < hi:
            raise ValueError("prize_range must satisfy lo < hi")
        if any(a < 0.0 or a > 1.0 for a in self.mixture_grid):
            raise ValueError("mixture weights must lie in [0, 1]")
        if self.support_size_max < 1:
            raise ValueError("support_size_max must be at least 1")


@dataclass(frozen=True)
class Witness:
    """Self-contained violation certificate.

    Re-evaluating the stored objects reproduces the recorded values within
    the optimization band; no sampler state is needed.
    """

    kind: str
    contracts: dict = field(default_factory=dict)
    lotteries: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    alpha: float | None = None
    values: dict = field(default_factory=dict)
    margin: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: Axiom
    passed: bool
    n_samples: int
    witness: Witness | None = None
    note: str = ""


# ---------------------------------------------------------------------------
# sampling machinery
# ---------------------------------------------------------------------------


def _draw_payoffs(rng: np.random.Generator, cfg: SamplerConfig, shape):
    """Arrays (prize_a, prize_b, prob_a) describing degenerate or 2-point
    lottery payoffs; prob_a == 1 marks a degenerate payoff."""
    lo, hi = cfg.prize_range
    pa = rng.uniform(lo, hi, size=shape)
    pb = rng.uniform(lo, hi, size=shape)
    two = rng.random(size=shape) < (_TWO_POINT_PROB if cfg.support_size_max >= 2 else 0.0)
    qa = np.where(two, rng.uniform(0.05, 0.95, size=shape), 1.0)
    pb = np.where(two, pb, pa)
    return pa, pb, qa


def _payoff_utilities(u: UtilityFunction, pa, pb, qa) -> np.ndarray:
    return qa * u.eval_array(pa) + (1.0 - qa) * u.eval_array(pb)


def _lottery_at(pa, pb, qa) -> Lottery:
    if qa >= 1.0:
        return Lottery.degenerate(float(pa))
    return Lottery(((float(pa), float(qa)), (float(pb), float(1.0 - qa))))


def _contract_at(space: OutputSpace, draw) -> Contract:
    """Materialise one sampled contract from its per-state payoff arrays."""
    pa, pb, qa = draw
    return Contract(
        space, tuple(_lottery_at(pa[s], pb[s], qa[s]) for s in range(space.n))
    )


def _scan(cfg: SamplerConfig, key: int, worker, jobs: int = 1):
    """Drive ``worker`` over deterministic sample batches.

    worker(rng, size) returns None or a violation payload; the first
    payload in batch order wins, independently of the execution schedule.
    Returns (payload | None, n_scanned).
    """
    sizes = []
    left = cfg.n_samples
    while left > 0:
        take = min(_BATCH, left)
        sizes.append(take)
        left -= take
    seeds = np.random.SeedSequence([int(cfg.seed) & 0xFFFFFFFFFFFFFFFF, key]).spawn(len(sizes))

    scanned = 0
    if jobs <= 1:
        for sz, sd in zip(sizes, seeds):
            payload = worker(np.random.default_rng(sd), sz)
            scanned += sz
            if payload is not None:
                return payload, scanned
        return None, scanned

    idx = 0
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        while idx < len(sizes):
            wave = list(range(idx, min(idx + jobs, len(sizes))))
            futs = [
                pool.submit(worker, np.random.default_rng(seeds[i]), sizes[i])
                for i in wave
            ]
            results = [f.result() for f in futs]
            for i, payload in zip(wave, results):
                scanned += sizes[i]
                if payload is not None:
                    return payload, scanned
            idx += len(wave)
    return None, scanned


def _reachable(u: UtilityFunction, F: np.ndarray, margin: float = 1e-9) -> np.ndarray:
    """Rows of F that correspond to actual contracts under u (relevant only
    for utilities with a bounded range, such as cara)."""
    lo, hi = u.range_bounds
    return np.all((F > lo + margin) & (F < hi - margin), axis=-1)


def _shift_to_value(o: PreferenceOracle, F: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Per-row constant k with value(F + k) = target.

    Closed form under quasilinearity; bisection for income effects, whose
    value is strictly increasing (but not linear) in the shift.
    """
    base = value_batch(o, F)
    k = target - base
    if o.kind != "income_effects":
        return k
    lo = k - 12.0
    hi = k + 12.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        v = value_batch(o, F + mid[:, None])
        too_low = v < target
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# the seven checkers
# ---------------------------------------------------------------------------


def check_axiom(
    o: PreferenceOracle,
    which: Axiom | str,
    cfg: SamplerConfig,
    jobs: int = 1,
) -> AxiomVerdict:
    """Run one axiom falsifier against the oracle."""
    which = Axiom(which)
    checker = _CHECKERS[which]
    return checker(o, cfg, jobs)


def check_all_axioms(
    o: PreferenceOracle, cfg: SamplerConfig, jobs: int = 1
) -> dict[Axiom, AxiomVerdict]:
    return {ax: check_axiom(o, ax, cfg, jobs) for ax in Axiom}


def _check_weak_order(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    u = o.utility
    n = o.space.n

    def worker(rng, size):
        draws = [_draw_payoffs(rng, cfg, (size, n)) for _ in range(3)]
        vals = [value_batch(o, _payoff_utilities(u, *d)) for d in draws]
        va, vb, vc = vals
        bad = (va >= vb - eps) & (vb >= vc - eps) & (vc - va > delta)
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {"draws": [tuple(x[i] for x in d) for d in draws], "i": i,
                "values": (va[i], vb[i], vc[i])}

    payload, scanned = _scan(cfg, 1, worker, jobs)
    if payload is None:
        return AxiomVerdict(
            Axiom.WEAK_ORDER, True, scanned,
            note="completeness holds by construction; transitivity sampled on triples",
        )
    contracts = {
        name: _contract_at(o.space, draw)
        for name, draw in zip(("a", "b", "c"), payload["draws"])
    }
    va, vb, vc = payload["values"]
    wit = Witness(
        kind="transitivity",
        contracts=contracts,
        values={"value_a": float(va), "value_b": float(vb), "value_c": float(vc)},
        margin=float(vc - va),
        detail="a >= b and b >= c but c beats a strictly",
    )
    return AxiomVerdict(Axiom.WEAK_ORDER, False, scanned, wit)


def _check_monotonicity(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    eps = DEFAULT.optimization
    lo_r, hi_r = cfg.prize_range
    span = hi_r - lo_r

    def worker(rng, size):
        gap = rng.uniform(0.05, 0.5 * span, size=size)
        lo = rng.uniform(lo_r, hi_r - gap)
        hi = lo + gap
        g = o.utility.eval_array(np.concatenate([hi, lo]))
        F = np.repeat(g[:, None], o.space.n, axis=1)
        v = value_batch(o, F)
        v_hi, v_lo = v[:size], v[size:]
        bad = v_hi - v_lo <= eps
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {"hi": hi[i], "lo": lo[i], "v_hi": v_hi[i], "v_lo": v_lo[i]}

    payload, scanned = _scan(cfg, 2, worker, jobs)
    if payload is None:
        return AxiomVerdict(Axiom.MONOTONICITY, True, scanned)
    wit = Witness(
        kind="monotonicity",
        lotteries={
            "hi": Lottery.degenerate(float(payload["hi"])),
            "lo": Lottery.degenerate(float(payload["lo"])),
        },
        values={"value_hi": float(payload["v_hi"]), "value_lo": float(payload["v_lo"])},
        margin=float(payload["v_lo"] - payload["v_hi"]),
        detail=f"prize {payload['hi']} not strictly preferred to {payload['lo']}",
    )
    return AxiomVerdict(Axiom.MONOTONICITY, False, scanned, wit)


def _check_dominance(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    u = o.utility
    n = o.space.n

    def worker(rng, size):
        pa, pb, qa = _draw_payoffs(rng, cfg, (size, n))
        Fp = _payoff_utilities(u, pa, pb, qa)
        # statewise-dominating partner: nonnegative utility bumps, some zero
        bump = rng.uniform(0.0, 1.5, size=(size, n))
        bump *= rng.random(size=(size, n)) < 0.7
        F = Fp + bump
        v_w = value_batch(o, F)
        v_wp = value_batch(o, Fp)
        bad = (v_w < v_wp - delta) & _reachable(u, F)
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {"base": (pa[i], pb[i], qa[i]), "f": F[i],
                "v_w": v_w[i], "v_wp": v_wp[i]}

    payload, scanned = _scan(cfg, 3, worker, jobs)
    if payload is None:
        return AxiomVerdict(Axiom.DOMINANCE, True, scanned)
    wp = _contract_at(o.space, payload["base"])
    from .models import contract_from_utility_vector

    w = contract_from_utility_vector(u, payload["f"], o.space)
    wit = Witness(
        kind="dominance",
        contracts={"w": w, "w_prime": wp},
        values={"value_w": float(payload["v_w"]), "value_w_prime": float(payload["v_wp"])},
        margin=float(payload["v_wp"] - payload["v_w"]),
        detail="w dominates w' statewise but is valued strictly below it",
    )
    return AxiomVerdict(Axiom.DOMINANCE, False, scanned, wit)


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of True, as inclusive index pairs."""
    out = []
    i = 0
    m = len(mask)
    while i < m:
        if mask[i]:
            j = i
            while j + 1 < m and mask[j + 1]:
                j += 1
            out.append((i, j))
            i = j + 1
        else:
            i += 1
    return out


def _interval_endpoints(mask, grid) -> list[float]:
    return [x for i0, i1 in _runs(mask) for x in (grid[i0], grid[i1])]


def _intervals_stable(coarse_mask, fine_mask, coarse, fine, step) -> bool:
    """Endpoint stability of the preferred-weight set under grid doubling.

    Every coarse endpoint must be matched by a refined endpoint within one
    coarse step, and refined structure may only appear within one coarse
    step of weights already preferred at the coarse resolution (a thin dip
    or peak the coarse grid stepped over).
    """
    ec = _interval_endpoints(coarse_mask, coarse)
    ef = _interval_endpoints(fine_mask, fine)
    if ec and not ef:
        return False  # the whole set vanished under refinement
    tol = step + 1e-12
    if not all(any(abs(a - b) <= tol for b in ef) for a in ec):
        return False
    anchors = ec + [coarse[i] for i in np.flatnonzero(coarse_mask)]
    if not anchors:
        return True  # new structure thinner than one coarse step throughout
    return all(any(abs(b - a) <= tol for a in anchors) for b in ef)


def _check_continuity(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    """Surrogate check: on each sampled triple, the set of mixture weights
    preferred to the third contract must be a union of grid intervals whose
    endpoints are stable under doubling the grid resolution.

    The topological axiom itself has no finite test; this heuristic can
    produce false passes and its verdict is labelled accordingly.
    """
    eps = DEFAULT.optimization
    u = o.utility
    n = o.space.n
    coarse = np.unique(np.concatenate([cfg.mixture_grid, [0.0, 1.0]]))
    fine = np.unique(np.concatenate([coarse, 0.5 * (coarse[:-1] + coarse[1:])]))
    step = float(np.max(np.diff(coarse)))

    def worker(rng, size):
        d_w = _draw_payoffs(rng, cfg, (size, n))
        d_wp = _draw_payoffs(rng, cfg, (size, n))
        d_ref = _draw_payoffs(rng, cfg, (size, n))
        F_w = _payoff_utilities(u, *d_w)
        F_wp = _payoff_utilities(u, *d_wp)
        v_ref = value_batch(o, _payoff_utilities(u, *d_ref))

        def mask_on(grid):
            mixes = (
                grid[None, :, None] * F_w[:, None, :]
                + (1.0 - grid[None, :, None]) * F_wp[:, None, :]
            )
            vals = value_batch(o, mixes.reshape(-1, n)).reshape(size, len(grid))
            return vals >= v_ref[:, None] - eps

        mc = mask_on(coarse)
        mf = mask_on(fine)
        for i in range(size):
            if not _intervals_stable(mc[i], mf[i], coarse, fine, step):
                return {
                    "w": tuple(x[i] for x in d_w),
                    "wp": tuple(x[i] for x in d_wp),
                    "ref": tuple(x[i] for x in d_ref),
                    "coarse": _interval_endpoints(mc[i], coarse),
                    "fine": _interval_endpoints(mf[i], fine),
                }
        return None

    payload, scanned = _scan(cfg, 4, worker, jobs)
    note = "surrogate: grid-interval stability, not the topological axiom"
    if payload is None:
        return AxiomVerdict(Axiom.CONTINUITY_SURROGATE, True, scanned, note=note)
    contracts = {
        name: _contract_at(o.space, payload[key])
        for name, key in (("w", "w"), ("w_prime", "wp"), ("w_ref", "ref"))
    }
    wit = Witness(
        kind="continuity_surrogate",
        contracts=contracts,
        values={},
        margin=0.0,
        detail=(
            f"preferred-weight set unstable under refinement: coarse endpoints "
            f"{payload['coarse']}, refined endpoints {payload['fine']}"
        ),
    )
    return AxiomVerdict(Axiom.CONTINUITY_SURROGATE, False, scanned, wit, note=note)


def _check_quasiconvexity(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    """Mixture aversion on calibrated indifferent pairs.

    Given sampled (w, w'), w' is shifted by a statewise utility constant to
    make it exactly indifferent to w (valid for the quasilinear kinds and
    solved by bisection otherwise), then value(mix) must not exceed the
    common value.
    """
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    u = o.utility
    n = o.space.n
    alphas = np.array([a for a in cfg.mixture_grid if 0.0 < a < 1.0])
    if len(alphas) == 0:
        alphas = np.array([0.5])

    def worker(rng, size):
        d_w = _draw_payoffs(rng, cfg, (size, n))
        F_w = _payoff_utilities(u, *d_w)
        F_wp = _payoff_utilities(u, *_draw_payoffs(rng, cfg, (size, n)))
        v_w = value_batch(o, F_w)
        k = _shift_to_value(o, F_wp, v_w)
        F_w2 = F_wp + k[:, None]
        alpha = rng.choice(alphas, size=size)
        F_mix = alpha[:, None] * F_w + (1.0 - alpha[:, None]) * F_w2
        v_mix = value_batch(o, F_mix)
        bad = (v_mix - v_w > delta) & _reachable(u, F_w2)
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {
            "w": tuple(x[i] for x in d_w),
            "f2": F_w2[i],
            "alpha": float(alpha[i]),
            "v_w": float(v_w[i]),
            "v_mix": float(v_mix[i]),
        }

    payload, scanned = _scan(cfg, 5, worker, jobs)
    if payload is None:
        return AxiomVerdict(Axiom.QUASICONVEXITY, True, scanned)
    from .models import contract_from_utility_vector

    w = _contract_at(o.space, payload["w"])
    w2 = contract_from_utility_vector(u, payload["f2"], o.space)
    wit = Witness(
        kind="quasiconvexity",
        contracts={"w": w, "w_prime": w2},
        alpha=payload["alpha"],
        values={"value_w": payload["v_w"], "value_mix": payload["v_mix"]},
        margin=float(payload["v_mix"] - payload["v_w"]),
        detail="indifferent pair whose mixture is strictly preferred to both",
    )
    return AxiomVerdict(Axiom.QUASICONVEXITY, False, scanned, wit)


def _check_vnm(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    u = o.utility
    n = o.space.n
    alphas = np.array([a for a in cfg.mixture_grid if 0.0 < a < 1.0])
    if len(alphas) == 0:
        alphas = np.array([0.5])

    def const_values(g):
        return value_batch(o, np.repeat(g[:, None], n, axis=1))

    def worker(rng, size):
        d_x = _draw_payoffs(rng, cfg, (size,))
        d_xp = _draw_payoffs(rng, cfg, (size,))
        d_y = _draw_payoffs(rng, cfg, (size,))
        gx = _payoff_utilities(u, *d_x)
        gxp = _payoff_utilities(u, *d_xp)
        gy = _payoff_utilities(u, *d_y)
        vx = const_values(gx)
        vxp = const_values(gxp)
        alpha = rng.choice(alphas, size=size)
        vmix = const_values(alpha * gx + (1.0 - alpha) * gy)
        vmixp = const_values(alpha * gxp + (1.0 - alpha) * gy)
        weak_bad = (vx >= vxp - eps) & (vmixp - vmix > delta)
        strict_bad = (vx - vxp > delta) & (vmix - vmixp <= eps)
        bad = weak_bad | strict_bad
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {
            "x": tuple(np.atleast_1d(t)[i] for t in d_x),
            "xp": tuple(np.atleast_1d(t)[i] for t in d_xp),
            "y": tuple(np.atleast_1d(t)[i] for t in d_y),
            "alpha": float(alpha[i]),
            "form": "weak" if weak_bad[i] else "strict",
            "values": (float(vx[i]), float(vxp[i]), float(vmix[i]), float(vmixp[i])),
        }

    payload, scanned = _scan(cfg, 6, worker, jobs)
    if payload is None:
        return AxiomVerdict(Axiom.VNM_INDEPENDENCE, True, scanned)
    lots = {
        name: _lottery_at(*payload[key])
        for name, key in (("x", "x"), ("x_prime", "xp"), ("y", "y"))
    }
    vx, vxp, vmix, vmixp = payload["values"]
    wit = Witness(
        kind="vnm_independence",
        lotteries=lots,
        alpha=payload["alpha"],
        values={
            "value_x": vx,
            "value_x_prime": vxp,
            "value_mix": vmix,
            "value_mix_prime": vmixp,
        },
        margin=float(vmixp - vmix) if payload["form"] == "weak" else float(vx - vxp),
        detail=f"{payload['form']}-form independence violated on constant contracts",
    )
    return AxiomVerdict(Axiom.VNM_INDEPENDENCE, False, scanned, wit)


def _check_mmr(o: PreferenceOracle, cfg: SamplerConfig, jobs: int) -> AxiomVerdict:
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    u = o.utility
    n = o.space.n
    alphas = np.array([a for a in cfg.mixture_grid if 0.0 < a < 1.0])
    if len(alphas) == 0:
        alphas = np.array([0.5])

    def worker(rng, size):
        d_w = _draw_payoffs(rng, cfg, (size, n))
        d_wp = _draw_payoffs(rng, cfg, (size, n))
        d_y = _draw_payoffs(rng, cfg, (size,))
        d_yp = _draw_payoffs(rng, cfg, (size,))
        F = _payoff_utilities(u, *d_w)
        Fp = _payoff_utilities(u, *d_wp)
        gy = _payoff_utilities(u, *d_y)[:, None]
        gyp = _payoff_utilities(u, *d_yp)[:, None]
        alpha = rng.choice(alphas, size=size)[:, None]
        d1 = value_batch(o, alpha * F + (1 - alpha) * gy) - value_batch(
            o, alpha * Fp + (1 - alpha) * gy
        )
        d2 = value_batch(o, alpha * F + (1 - alpha) * gyp) - value_batch(
            o, alpha * Fp + (1 - alpha) * gyp
        )
        bad = (d1 >= -eps) & (d2 < -delta)
        if not bad.any():
            return None
        i = int(np.flatnonzero(bad)[0])
        return {
            "w": tuple(x[i] for x in d_w),
            "wp": tuple(x[i] for x in d_wp),
            "y": tuple(np.atleast_1d(t)[i] for t in d_y),
            "yp": tuple(np.atleast_1d(t)[i] for t in d_yp),
            "alpha": float(alpha[i, 0]),
            "d1": float(d1[i]),
            "d2": float(d2[i]),
        }

    payload, scanned = _scan(cfg, 7, worker, jobs)
    if payload is None:
        return AxiomVerdict(Axiom.MMR_INDEPENDENCE, True, scanned)
    contracts = {
        name: _contract_at(o.space, payload[key])
        for name, key in (("w", "w"), ("w_prime", "wp"))
    }
    wit = Witness(
        kind="mmr_independence",
        contracts=contracts,
        lotteries={"y": _lottery_at(*payload["y"]), "y_prime": _lottery_at(*payload["yp"])},
        alpha=payload["alpha"],
        values={"diff_with_y": payload["d1"], "diff_with_y_prime": payload["d2"]},
        margin=float(-payload["d2"]),
        detail=(
            "mixing y preserves the comparison (weakly) but mixing y' strictly "
            "reverses it"
            + ("; strict form also violated" if payload["d1"] > delta else "")
        ),
    )
    return AxiomVerdict(Axiom.MMR_INDEPENDENCE, False, scanned, wit)


_CHECKERS = {
    Axiom.WEAK_ORDER: _check_weak_order,
    Axiom.MONOTONICITY: _check_monotonicity,
    Axiom.DOMINANCE: _check_dominance,
    Axiom.CONTINUITY_SURROGATE: _check_continuity,
    Axiom.QUASICONVEXITY: _check_quasiconvexity,
    Axiom.VNM_INDEPENDENCE: _check_vnm,
    Axiom.MMR_INDEPENDENCE: _check_mmr,
}


# ---------------------------------------------------------------------------
# witness re-verification
# ---------------------------------------------------------------------------


def reverify_witness(o: PreferenceOracle, wit: Witness) -> tuple[bool, float]:
    """Re-evaluate a witness from its stored objects alone.

    Returns (violation reproduced, recomputed margin).  The recomputed
    margin matches the recorded one within the optimization band.
    """
    eps = DEFAULT.optimization
    delta = DEFAULT.strict
    if wit.kind == "transitivity":
        va = value(o, wit.contracts["a"])
        vb = value(o, wit.contracts["b"])
        vc = value(o, wit.contracts["c"])
        return (va >= vb - eps) and (vb >= vc - eps) and (vc - va > delta), vc - va
    if wit.kind == "monotonicity":
        hi = wit.lotteries["hi"].support[0][0]
        lo = wit.lotteries["lo"].support[0][0]
        v_hi = value(o, Contract.constant(o.space, hi))
        v_lo = value(o, Contract.constant(o.space, lo))
        return (hi > lo) and (v_hi - v_lo <= eps), v_lo - v_hi
    if wit.kind == "dominance":
        w, wp = wit.contracts["w"], wit.contracts["w_prime"]
        statewise = all(
            compare(o, Contract.constant(o.space, a), Contract.constant(o.space, b))
            != Comparison.STRICTLY_DISPREFERRED
            for a, b in zip(w.payoffs, wp.payoffs)
        )
        d = value(o, wp) - value(o, w)
        return statewise and d > delta, d
    if wit.kind == "quasiconvexity":
        w, w2 = wit.contracts["w"], wit.contracts["w_prime"]
        v_w = value(o, w)
        v_w2 = value(o, w2)
        v_mix = value(o, mix_contracts(wit.alpha, w, w2))
        hyp = abs(v_w - v_w2) <= 10 * eps
        return hyp and v_mix - v_w > delta, v_mix - v_w
    if wit.kind == "vnm_independence":
        x, xp, y = (wit.lotteries[k] for k in ("x", "x_prime", "y"))
        a = wit.alpha
        sp = o.space
        vx = value(o, Contract.constant(sp, x))
        vxp = value(o, Contract.constant(sp, xp))
        from .core import mix_lotteries

        vmix = value(o, Contract.constant(sp, mix_lotteries(a, x, y)))
        vmixp = value(o, Contract.constant(sp, mix_lotteries(a, xp, y)))
        weak = (vx >= vxp - eps) and (vmixp - vmix > delta)
        strict = (vx - vxp > delta) and (vmix - vmixp <= eps)
        return weak or strict, vmixp - vmix if weak else vx - vxp
    if wit.kind == "mmr_independence":
        w, wp = wit.contracts["w"], wit.contracts["w_prime"]
        y, yp = wit.lotteries["y"], wit.lotteries["y_prime"]
        a = wit.alpha
        sp = o.space
        d1 = value(o, mix_contracts(a, w, Contract.constant(sp, y))) - value(
            o, mix_contracts(a, wp, Contract.constant(sp, y))
        )
        d2 = value(o, mix_contracts(a, w, Contract.constant(sp, yp))) - value(
            o, mix_contracts(a, wp, Contract.constant(sp, yp))
        )
        return (d1 >= -eps) and (d2 < -delta), -d2
    if wit.kind == "continuity_surrogate":
        verdict = _recheck_continuity(o, wit)
        return verdict, 0.0
    raise ValueError(f"unknown witness kind {wit.kind!r}")


def _recheck_continuity(o: PreferenceOracle, wit: Witness) -> bool:
    cfg = SamplerConfig(seed=0, n_samples=1)
    coarse = np.unique(np.concatenate([cfg.mixture_grid, [0.0, 1.0]]))
    fine = np.unique(np.concatenate([coarse, 0.5 * (coarse[:-1] + coarse[1:])]))
    step = float(np.max(np.diff(coarse)))
    u = o.utility
    F_w = utility_vector(u, wit.contracts["w"])
    F_wp = utility_vector(u, wit.contracts["w_prime"])
    v_ref = value(o, wit.contracts["w_ref"])
    eps = DEFAULT.optimization

    def mask(grid):
        mixes = grid[:, None] * F_w[None, :] + (1.0 - grid[:, None]) * F_wp[None, :]
        vals = value_batch(o, mixes)
        return vals >= v_ref - eps

    return not _intervals_stable(mask(coarse), mask(fine), coarse, fine, step)


# ---------------------------------------------------------------------------
# finite choice datasets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChoiceRecord:
    w: Contract
    w_prime: Contract
    relation: str  # "strict" (w > w') or "indifferent"

    def __post_init__(self):
        if self.relation not in ("strict", "indifferent"):
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class ChoiceDataset:
    records: tuple[ChoiceRecord, ...]

    def __post_init__(self):
        records = tuple(self.records)
        spaces = {r.w.space for r in records} | {r.w_prime.space for r in records}
        if len(spaces) > 1:
            raise ValueError("all recorded contracts must share one output space")
        object.__setattr__(self, "records", records)


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    cycles: tuple = ()
    monotonicity_violations: tuple = ()
    dominance_violations: tuple = ()


def dataset_consistency(d: ChoiceDataset) -> ConsistencyReport:
    """Exact consistency checks on a finite choice dataset.

    Detects strict-preference cycles in the transitive closure, direct
    monotonicity violations among degenerate constant contracts, and
    dominance contradictions between statewise records and an overall
    record.
    """
    nodes: list[Contract] = []
    index: dict[Contract, int] = {}

    def node(c: Contract) -> int:
        if c not in index:
            index[c] = len(nodes)
            nodes.append(c)
        return index[c]

    weak_edges: set[tuple[int, int]] = set()
    strict_records: list[tuple[int, int, int]] = []  # (record idx, a, b) meaning a > b
    for ridx, r in enumerate(d.records):
        a, b = node(r.w), node(r.w_prime)
        weak_edges.add((a, b))
        if r.relation == "indifferent":
            weak_edges.add((b, a))
        else:
            strict_records.append((ridx, a, b))

    m = len(nodes)
    reach = np.eye(m, dtype=bool)
    for a, b in weak_edges:
        reach[a, b] = True
    for k in range(m):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]

    adj = [[] for _ in range(m)]
    for a, b in weak_edges:
        adj[a].append(b)

    def shortest_path(src: int, dst: int) -> list[int]:
        prev = {src: None}
        frontier = [src]
        while frontier:
            nxt = []
            for x in frontier:
                if x == dst:
                    path = [x]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                for y in adj[x]:
                    if y not in prev:
                        prev[y] = x
                        nxt.append(y)
            frontier = nxt
        return []

    cycles = []
    for ridx, a, b in strict_records:
        if reach[b, a]:
            path = shortest_path(b, a)
            cycles.append(
                {
                    "record": ridx,
                    "cycle": tuple(nodes[i] for i in path) + (nodes[b],),
                    "detail": "strict preference inside a weak-preference cycle",
                }
            )

    mono = []
    for ridx, r in enumerate(d.records):
        wa, wb = r.w, r.w_prime
        if not (wa.is_constant and wb.is_constant):
            continue
        la, lb = wa.payoffs[0], wb.payoffs[0]
        if not (la.is_degenerate and lb.is_degenerate):
            continue
        pa, pb = la.support[0][0], lb.support[0][0]
        if pa > pb and r.relation == "indifferent":
            mono.append({"record": ridx, "detail": f"{pa} recorded indifferent to {pb}"})
        elif pa < pb:
            mono.append(
                {
                    "record": ridx,
                    "detail": f"{pa} recorded {'above' if r.relation == 'strict' else 'tied with'} {pb}",
                }
            )

    # dominance: statewise relations derivable among recorded constant
    # contracts contradicting an overall strict record the other way
    const_idx: dict[Lottery, int] = {}
    for c, i in index.items():
        if c.is_constant:
            const_idx.setdefault(c.payoffs[0], i)

    def statewise_geq(x: Lottery, y: Lottery) -> bool:
        if x == y:
            return True
        if x in const_idx and y in const_idx:
            return bool(reach[const_idx[x], const_idx[y]])
        return False

    dom = []
    for ridx, a, b in strict_records:
        w, wp = nodes[a], nodes[b]
        # record says w > w'; contradiction if w'(s) >= w(s) derivable statewise
        if all(statewise_geq(yp, y) for y, yp in zip(w.payoffs, wp.payoffs)):
            dom.append(
                {
                    "record": ridx,
                    "detail": "overall strict preference contradicts statewise records",
                }
            )

    consistent = not (cycles or mono or dom)
    return ConsistencyReport(consistent, tuple(cycles), tuple(mono), tuple(dom))
