"""Acceptance suite: eight property-based criteria run at desk scale.

Each criterion function returns a CriterionResult with one line per
sub-check; run_all prints one pass/fail line per criterion.  The pytest
acceptance module drives exactly these functions, so the CLI `certify`
subcommand and the test suite agree by construction.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import comparators as cmp
from .axioms import Axiom, SamplerConfig, check_axiom, reverify_witness
from .core import (
    CostFunction,
    OutputSpace,
    SimplexPoint,
    UtilityFunction,
    cost_at,
    simplex_grid,
)
from .identification import IdentificationConfig, recover_c, recover_u
from .models import PreferenceOracle, conjugate_batch
from .reduction import LinearProgram, StandardModel, reduce_standard, solve_lp

INF = math.inf

_SPACE2 = OutputSpace((0.0, 1.0))
_LINEAR = UtilityFunction.linear()


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    elapsed: float = 0.0


class _Log:
    def __init__(self):
        self.lines: list[str] = []
        self.ok = True

    def check(self, cond: bool, msg: str):
        cond = bool(cond)
        self.lines.append(("[ok]   " if cond else "[FAIL] ") + msg)
        self.ok &= cond
        return cond


def figure_family(
    alphas=None, betas=None, alpha: float = 1.0, beta: float = 0.5, n_points: int = 101
):
    """Cost-curve families for the vertical (alpha sweep) and horizontal
    (beta sweep) shift figures.  Returns (header, rows)."""
    ps = np.linspace(0.0, 1.0, n_points)
    if alphas is not None:
        header = ["p"] + [f"alpha={a:g}" for a in alphas]
        cols = [a * (ps - beta) ** 2 for a in alphas]
    elif betas is not None:
        header = ["p"] + [f"beta={b:g}" for b in betas]
        cols = [alpha * (ps - b) ** 2 for b in betas]
    else:
        raise ValueError("need an alpha sweep or a beta sweep")
    rows = [[float(ps[i])] + [float(c[i]) for c in cols] for i in range(n_points)]
    return header, rows


# ---------------------------------------------------------------------------
# criterion 1: one-parameter cost family, confidence and optimism shifts
# ---------------------------------------------------------------------------


def criterion_1(jobs: int = 1) -> CriterionResult:
    log = _Log()
    alphas = (1.0, 0.8, 0.6, 0.4, 0.2)
    beta = 0.45
    _, rows = figure_family(alphas=alphas, beta=beta)
    err = max(
        abs(row[1 + j] - a * (row[0] - beta) ** 2)
        for row in rows
        for j, a in enumerate(alphas)
    )
    log.check(err <= 1e-12, f"alpha-sweep curves match the closed form (max err {err:.2e})")

    betas = (0.3, 0.5, 0.7)
    _, rows = figure_family(betas=betas, alpha=1.0)
    err = max(
        abs(row[1 + j] - (row[0] - b) ** 2) for row in rows for j, b in enumerate(betas)
    )
    log.check(err <= 1e-12, f"beta-sweep curves match the closed form (max err {err:.2e})")

    grid = simplex_grid(2, 20)
    a = PreferenceOracle.moral_hazard(_SPACE2, CostFunction.quadratic1d(0.4, beta), _LINEAR)
    b = PreferenceOracle.moral_hazard(_SPACE2, CostFunction.quadratic1d(1.0, beta), _LINEAR)
    par = cmp.more_confident_parametric(a.cost, a.utility, b.cost, b.utility, grid)
    log.check(par.holds is True, "alpha decrease: parametric confidence holds")
    beh = cmp.more_confident_behavioral(a, b, SamplerConfig(seed=101, n_samples=10_000), jobs)
    log.check(beh.holds is True, f"alpha decrease: behavioral confidence passes ({beh.n_samples} samples)")

    c_hi = CostFunction.quadratic1d(1.0, 0.7)
    c_lo = CostFunction.quadratic1d(1.0, 0.3)
    up = cmp.is_upshifted(c_hi, c_lo, grid)
    log.check(up.holds is True, "beta increase: up-shift holds on the pair grid")
    o_hi = PreferenceOracle.moral_hazard(_SPACE2, c_hi, _LINEAR)
    o_lo = PreferenceOracle.moral_hazard(_SPACE2, c_lo, _LINEAR)
    beh = cmp.more_optimistic_behavioral(o_hi, o_lo, SamplerConfig(seed=102, n_samples=10_000), jobs)
    log.check(beh.holds is True, f"beta increase: behavioral optimism passes ({beh.n_samples} samples)")

    return CriterionResult(1, "one-parameter family: shifts, confidence, optimism", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 2: axiom checkers in both directions
# ---------------------------------------------------------------------------


def _grid_cost_3() -> CostFunction:
    pts = [
        (SimplexPoint((1.0, 0.0, 0.0)), 0.6),
        (SimplexPoint((0.0, 1.0, 0.0)), 0.3),
        (SimplexPoint((0.0, 0.0, 1.0)), 0.8),
        (SimplexPoint((1 / 3, 1 / 3, 1 / 3)), 0.0),
    ]
    return CostFunction.grid(pts)


def criterion_2(jobs: int = 1) -> CriterionResult:
    log = _Log()
    space3 = OutputSpace((0.0, 1.0, 2.0))
    fixtures = [
        ("quad/linear", PreferenceOracle.moral_hazard(_SPACE2, CostFunction.quadratic1d(1.0, 0.5), _LINEAR)),
        ("quad/cara", PreferenceOracle.moral_hazard(_SPACE2, CostFunction.quadratic1d(2.0, 0.25), UtilityFunction.cara(1.0))),
        ("grid/linear", PreferenceOracle.moral_hazard(space3, _grid_cost_3(), _LINEAR)),
    ]
    for name, oracle in fixtures:
        cfg = SamplerConfig(seed=211, n_samples=10_000)
        bad = [
            ax.value
            for ax in Axiom
            if not check_axiom(oracle, ax, cfg, jobs).passed
        ]
        log.check(not bad, f"moral-hazard fixture {name}: all seven checkers pass at 10^4 samples"
                  + (f" (failed: {bad})" if bad else ""))

    mal = PreferenceOracle.malevolent(_SPACE2, CostFunction.quadratic1d(1.0, 0.5), _LINEAR)
    v = check_axiom(mal, Axiom.QUASICONVEXITY, SamplerConfig(seed=212, n_samples=100_000), jobs)
    ok = (not v.passed) and v.witness is not None and v.witness.margin >= 1e-6
    if ok:
        rev, margin = reverify_witness(mal, v.witness)
        ok = rev and abs(margin - v.witness.margin) <= 1e-9
    log.check(ok, f"malevolent fixture fails quasiconvexity with a re-verifying witness "
                  f"(margin {v.witness.margin:.3g})" if v.witness else
                  "malevolent fixture fails quasiconvexity")

    inc = PreferenceOracle.income_effects(_SPACE2, CostFunction.quadratic1d(1.0, 0.5), _LINEAR, 5.0)
    v = check_axiom(inc, Axiom.MMR_INDEPENDENCE, SamplerConfig(seed=213, n_samples=100_000), jobs)
    ok = (not v.passed) and v.witness is not None and v.witness.margin >= 1e-6
    if ok:
        rev, margin = reverify_witness(inc, v.witness)
        ok = rev and abs(margin - v.witness.margin) <= 1e-9
    log.check(ok, f"income-effects fixture (lambda=5) fails MMR independence with a "
                  f"re-verifying witness (margin {v.witness.margin:.3g})" if v.witness else
                  "income-effects fixture fails MMR independence")

    return CriterionResult(2, "axiomatisation directions", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 3: identification
# ---------------------------------------------------------------------------


def criterion_3(jobs: int = 1) -> CriterionResult:
    log = _Log()
    prize_grid = np.linspace(-1.0, 2.0, 21)
    cost = CostFunction.quadratic1d(1.0, 0.3)

    for name, u in (("linear", _LINEAR), ("cara", UtilityFunction.cara(1.0))):
        oracle = PreferenceOracle.moral_hazard(_SPACE2, cost, u)
        cfg = IdentificationConfig(prize_grid=prize_grid, f_grid=np.zeros((1, 2)))
        rec = recover_u(oracle, cfg)
        errs = np.abs(rec.eval_array(prize_grid) - u.eval_array(prize_grid))
        log.check(errs.max() <= 1e-3, f"recovered {name} utility within 1e-3 sup-norm "
                                      f"on 21 prizes (max err {errs.max():.2e})")

    oracle = PreferenceOracle.moral_hazard(_SPACE2, CostFunction.quadratic1d(1.0, 0.0), _LINEAR)
    p_grid = simplex_grid(2, 20)
    f_coarse = np.array([[0.0, t] for t in np.arange(-4.0, 4.0 + 1e-9, 0.1)])
    cfg = IdentificationConfig(prize_grid=prize_grid, f_grid=f_coarse, p_grid=p_grid)
    chat = recover_c(oracle, _LINEAR, cfg)
    mid = SimplexPoint((0.5, 0.5))
    got = cost_at(chat, mid)
    log.check(abs(got - 0.25) <= 1e-2, f"recovered cost at the midpoint: {got:.6f} (target 0.25 +- 1e-2)")

    f_fine = np.array([[0.0, t] for t in np.arange(-4.0, 4.0 + 1e-9, 0.05)])
    cfg_fine = IdentificationConfig(prize_grid=prize_grid, f_grid=f_fine, p_grid=p_grid)
    chat2 = recover_c(oracle, _LINEAR, cfg_fine)
    vals1 = np.array([v for _, v in chat.points])
    vals2 = np.array([v for _, v in chat2.points])
    worst = float((vals1 - vals2).max())
    log.check(worst <= 1e-12, f"doubling the f-grid never lowers the estimate (worst drop {worst:.2e})")

    return CriterionResult(3, "identification of utility and cost", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 4: reduction round trip and valuation equivalence
# ---------------------------------------------------------------------------


def criterion_4(jobs: int = 1) -> CriterionResult:
    log = _Log()

    grid = simplex_grid(2, 50)
    c = CostFunction.quadratic1d(1.0, 0.3)
    model = StandardModel(
        tuple(f"e{i}" for i in range(len(grid))),
        tuple(cost_at(c, p) for p in grid),
        tuple(grid),
    )
    red = reduce_standard(model, grid)
    err = max(abs(cost_at(red, p) - cost_at(c, p)) for p in grid)
    log.check(err <= 1e-9, f"direct-choice round trip (quadratic cost, 51 points): max err {err:.2e}")

    gcost = _grid_cost_3()
    pts3 = [pt for pt, _ in gcost.points]
    model3 = StandardModel(
        tuple(f"e{i}" for i in range(len(pts3))),
        tuple(cost_at(gcost, p) for p in pts3),
        tuple(pts3),
    )
    red3 = reduce_standard(model3, pts3)
    err3 = max(abs(cost_at(red3, p) - cost_at(gcost, p)) for p in pts3)
    log.check(err3 <= 1e-9, f"direct-choice round trip (grid cost, n=3): max err {err3:.2e}")

    rng = np.random.default_rng(4004)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 4))
        ne = int(rng.integers(2, 21))
        beliefs = rng.dirichlet(np.ones(n), size=ne)
        costs = rng.uniform(0.0, 1.0, size=ne)
        costs -= costs.min()
        model = StandardModel(
            tuple(f"e{i}" for i in range(ne)),
            tuple(costs),
            tuple(SimplexPoint.from_array(b) for b in beliefs),
        )
        f = rng.uniform(-3.0, 3.0, size=n)
        scores = beliefs @ f - costs
        lp = LinearProgram(tuple(-scores), ((1.0,) * ne,), (1.0,))
        res = solve_lp(lp)
        assert res.status == "optimal"
        lp_value = -res.value
        red = reduce_standard(model, simplex_grid(n, 12))
        oracle_value = float(conjugate_batch(red, f[None, :])[0])
        worst = max(worst, abs(lp_value - oracle_value))
    log.check(worst <= 1e-9, f"mixed-effort LP equals reduced-oracle value on 100 random "
                             f"instances (max err {worst:.2e})")

    return CriterionResult(4, "reduction round trip and valuation equivalence", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 5: confidence equivalence on random same-utility pairs
# ---------------------------------------------------------------------------


def _random_grid_cost(rng, n_knots: int = 11, high: float = 0.6) -> CostFunction:
    ts = np.linspace(0.0, 1.0, n_knots)
    vals = rng.uniform(0.0, high, size=n_knots)
    vals -= vals.min()
    return CostFunction.grid(
        tuple((SimplexPoint((1.0 - t, t)), float(v)) for t, v in zip(ts, vals))
    )


def criterion_5(jobs: int = 1) -> CriterionResult:
    log = _Log()
    rng = np.random.default_rng(5005)
    grid = simplex_grid(2, 20)
    alphas = (0.25, 0.5, 1.0, 1.5, 2.0)
    betas = (0.1, 0.3, 0.5, 0.7, 0.9)

    n_hold = n_gap = n_small = 0
    failures = []
    for idx in range(50):
        style = idx % 5
        if style < 2:  # nested pair: parametric holds by construction
            beta = float(rng.choice(betas))
            a_lo, a_hi = sorted(rng.choice(alphas, size=2, replace=True))
            ca = CostFunction.quadratic1d(a_lo, beta)
            cb = CostFunction.quadratic1d(a_hi, beta)
        elif style < 4:  # free quadratic pair
            ca = CostFunction.quadratic1d(float(rng.choice(alphas)), float(rng.choice(betas)))
            cb = CostFunction.quadratic1d(float(rng.choice(alphas)), float(rng.choice(betas)))
        else:  # grid-cost pair
            ca = _random_grid_cost(rng)
            cb = _random_grid_cost(rng)

        par = cmp.more_confident_parametric(ca, _LINEAR, cb, _LINEAR, grid)
        gap = max(
            (cost_at(ca, p) - cost_at(cb, p))
            for p in grid
            if cost_at(cb, p) < INF and cost_at(ca, p) < INF
        )
        a = PreferenceOracle.moral_hazard(_SPACE2, ca, _LINEAR)
        b = PreferenceOracle.moral_hazard(_SPACE2, cb, _LINEAR)
        if par.holds:
            n_hold += 1
            beh = cmp.more_confident_behavioral(a, b, SamplerConfig(seed=500 + idx, n_samples=10_000), jobs)
            if beh.holds is not True:
                failures.append(f"pair {idx}: parametric holds but behavioral {beh.holds}")
        elif gap >= 0.05:
            n_gap += 1
            beh = cmp.more_confident_behavioral(a, b, SamplerConfig(seed=500 + idx, n_samples=100_000), jobs)
            ok = beh.holds is False and beh.witness is not None
            if ok:
                rev, _ = cmp.reverify_order_witness(beh.witness, a=a, b=b)
                ok = rev
            if not ok:
                failures.append(f"pair {idx}: gap {gap:.3f} but no behavioral witness")
        else:
            n_small += 1

    log.check(not failures, f"50 random same-utility pairs: {n_hold} parametric-holds all pass "
                            f"behaviorally, {n_gap} gap>=0.05 all yield witnesses, "
                            f"{n_small} small-gap pairs exempt"
                            + (f"; failures: {failures}" if failures else ""))
    log.check(n_hold >= 10 and n_gap >= 10, f"pair generator covers both classes "
                                            f"(holds {n_hold}, gap {n_gap})")
    return CriterionResult(5, "confidence equivalence on random pairs", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 6: optimism equivalence on random quadratic pairs
# ---------------------------------------------------------------------------


def criterion_6(jobs: int = 1) -> CriterionResult:
    log = _Log()
    rng = np.random.default_rng(6006)
    grid = simplex_grid(2, 20)
    fine = simplex_grid(2, 100)
    alphas = (0.5, 1.0, 2.0)
    betas = (0.1, 0.25, 0.4, 0.55, 0.7, 0.85)

    failures = []
    n_hold = n_fail = 0
    for idx in range(50):
        if idx % 2 == 0:  # shared curvature, shifted location
            al = float(rng.choice(alphas))
            ca = CostFunction.quadratic1d(al, float(rng.choice(betas)))
            cb = CostFunction.quadratic1d(al, float(rng.choice(betas)))
        else:  # distinct curvature
            a_lo, a_hi = sorted(rng.choice(alphas, size=2, replace=False))
            ca = CostFunction.quadratic1d(a_lo, float(rng.choice(betas)))
            cb = CostFunction.quadratic1d(a_hi, float(rng.choice(betas)))

        up = cmp.is_upshifted(ca, cb, grid)
        n_samples = 10_000 if up.holds else 100_000
        a = PreferenceOracle.moral_hazard(_SPACE2, ca, _LINEAR)
        b = PreferenceOracle.moral_hazard(_SPACE2, cb, _LINEAR)
        beh = cmp.more_optimistic_behavioral(a, b, SamplerConfig(seed=600 + idx, n_samples=n_samples), jobs)
        lem = cmp.lemma_b_check(ca, cb, SamplerConfig(seed=650 + idx, n_samples=n_samples), jobs)

        if up.holds:
            n_hold += 1
            if beh.holds is not True:
                failures.append(f"pair {idx}: up-shift holds, behavioral {beh.holds}")
            if lem.holds is not True:
                failures.append(f"pair {idx}: up-shift holds, conjugate-order {lem.holds}")
            for k in (0.01, 0.04, 0.09, 0.25):
                if not cmp.level_set_weak_order(ca, cb, k, fine):
                    failures.append(f"pair {idx}: level sets not weakly ordered at k={k}")
        else:
            n_fail += 1
            if beh.holds is not False:
                failures.append(f"pair {idx}: up-shift fails (gap {up.witness.margin:.3g}), "
                                f"behavioral {beh.holds}")
            elif not cmp.reverify_order_witness(beh.witness, a=a, b=b)[0]:
                failures.append(f"pair {idx}: behavioral optimism witness does not re-verify")
            if lem.holds is not False:
                failures.append(f"pair {idx}: up-shift fails, conjugate-order {lem.holds}")
            elif not cmp.reverify_order_witness(lem.witness, c=ca, cp=cb)[0]:
                failures.append(f"pair {idx}: conjugate-order witness does not re-verify")

    log.check(not failures, f"50 random quadratic pairs: up-shift, behavioral optimism and "
                            f"conjugate-order agree everywhere ({n_hold} hold, {n_fail} fail)"
                            + (f"; failures: {failures}" if failures else ""))
    log.check(n_hold >= 10 and n_fail >= 10, f"pair generator covers both classes "
                                             f"(hold {n_hold}, fail {n_fail})")
    return CriterionResult(6, "optimism equivalence on random pairs", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 7: conjugate duality
# ---------------------------------------------------------------------------


def _max_affine_cost(rng, n: int) -> tuple[CostFunction, int]:
    """Random polyhedral cost sampled from a max of integer-slope planes;
    returns the cost and its slope scale (max abs gradient entry)."""
    n_planes = int(rng.integers(2, 6))
    G = rng.integers(-6, 7, size=(n_planes, n)).astype(float)
    b = np.round(rng.uniform(-2.0, 0.0, size=n_planes), 2)
    pts = simplex_grid(n, 8)
    P = np.array([p.as_array() for p in pts])
    vals = (P @ G.T + b).max(axis=1)
    vals -= vals.min()
    cost = CostFunction.grid(tuple(zip(pts, vals)))
    return cost, int(np.abs(G).max())


def criterion_7(jobs: int = 1) -> CriterionResult:
    log = _Log()
    rng = np.random.default_rng(7007)

    worst_biconj = 0.0
    worst_fenchel = INF
    for idx in range(20):
        n = 2 if idx < 10 else 3
        cost, scale = _max_affine_cost(rng, n)
        P, v = cost.finite_part()

        reach = scale + 1
        axis = np.arange(-reach, reach + 1, dtype=float)
        mesh = np.meshgrid(*([axis] * n), indexing="ij")
        F = np.stack([m.ravel() for m in mesh], axis=1)
        phi = conjugate_batch(cost, F)
        biconj = (F @ P.T - phi[:, None]).max(axis=0)
        envelope = np.array([cost_at(cost, SimplexPoint.from_array(p)) for p in P])
        worst_biconj = max(worst_biconj, float(np.abs(biconj - envelope).max()))

        Fr = rng.uniform(-8.0, 8.0, size=(500, n))
        phir = conjugate_batch(cost, Fr)
        slack = phir[:, None] - (Fr @ P.T - envelope[None, :])
        worst_fenchel = min(worst_fenchel, float(slack.min()))

    log.check(worst_biconj <= 1e-9, f"lattice biconjugate equals the envelope at every "
                                    f"generating point of 20 random costs (max err {worst_biconj:.2e})")
    log.check(worst_fenchel >= -1e-9, f"Fenchel inequality on 10^4 random (f, p) pairs "
                                      f"(min slack {worst_fenchel:.2e})")
    return CriterionResult(7, "conjugate duality", log.ok, log.lines)


# ---------------------------------------------------------------------------
# criterion 8: LP solver fixture suite
# ---------------------------------------------------------------------------

# (objective, equality rows, rhs, expected status, expected value)
# Reference values for the random entries were computed with an independent
# LP solver and frozen here.
_LP_FIXTURES = [
    ([1.0, 0.0], [[1.0, 1.0]], [1.0], "optimal", 0.0),
    ([1.0], [[1.0]], [-1.0], "infeasible", None),
    ([-1.0, 0.0], [[1.0, -1.0]], [0.0], "unbounded", None),
    # cycling fixture (Beale); Bland's rule must terminate at -0.05
    (
        [-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0],
        [
            [0.25, -60.0, -0.04, 9.0, 1.0, 0.0, 0.0],
            [0.5, -90.0, -0.02, 3.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        ],
        [0.0, 0.0, 1.0],
        "optimal",
        -0.05,
    ),
    ([1.0, 1.0], [[1.0, 1.0], [1.0, 1.0], [1.0, -1.0]], [1.0, 1.0, 1.0], "optimal", 1.0),
    ([1.0, 1.0], [[1.0, 1.0]], [1.0], "optimal", 1.0),
    ([0.0, 0.0], [[1.0, 1.0]], [1.0], "optimal", 0.0),
    ([2.0, 3.0], [[1.0, 0.0], [0.0, 1.0]], [0.5, 0.25], "optimal", 1.75),
    ([1.0, 2.0, 3.0], [[1.0, 1.0, 1.0], [0.0, 1.0, 1.0]], [1.0, 0.6], "optimal", 1.6),
    ([1.0, 0.0], [[-1.0, -1.0]], [-2.0], "optimal", 0.0),
    ([-1.0, -1.0, 0.0], [[1.0, 1.0, 1.0]], [1.0], "optimal", -1.0),
    ([-0.66, 2.56, 2.66, 0.16, -0.22, 0.05, 1.66],
     [[-1.48, -1.31, -1.35, 1.82, 2.16, 3.0, 1.54], [-2.46, -2.19, 1.86, 0.6, 0.04, -2.7, -1.42], [1.42, -2.89, 0.71, 0.07, -2.37, -2.84, -0.15], [0.33, 1.94, -1.1, -2.36, -0.46, 2.05, 1.19]],
     [1.95, 1.08, -0.25, 1.26], "optimal", 20.505594013407404),
    ([2.53, -0.29, 1.14, 2.26, 1.21, -1.81, 0.99],
     [[2.69, -2.32, -0.21, -1.53, 1.95, 2.96, 2.9], [-1.94, -1.71, -0.27, 2.39, -0.96, 2.32, 2.41], [-2.19, -1.49, 1.62, -1.73, -0.76, 0.31, 0.46], [1.35, 0.28, 2.64, -1.78, 1.34, -0.17, -1.58]],
     [1.89, 0.29, -1.29, 1.65], "optimal", -1.6562360142994053),
    ([2.5, 1.24, 1.27, 2.74, 2.72],
     [[-1.47, 2.31, -0.28, -0.82, -0.01], [0.6, 2.31, 0.07, -0.63, 1.24]],
     [-0.7991999999999999, 4.7600999999999996], "optimal", 8.404346357989835),
    ([-0.8, -1.22, 1.71, 2.58, 2.91, -1.88],
     [[0.6, -0.57, 2.18, -1.04, 0.93, -0.48], [-0.68, 2.93, -1.96, 1.17, -2.7, 1.49], [-2.95, 0.56, -1.72, 0.55, 2.12, 1.09]],
     [0.45, 1.69, 0.54], "optimal", -6.759200706961256),
    ([0.26, 0.46, 2.73, 0.2, 0.97, -0.99],
     [[2.77, 1.71, 2.21, -2.06, 0.92, 2.91], [0.08, -2.3, -0.57, -0.31, -2.76, 1.74]],
     [8.029, -5.184199999999999], "unbounded", None),
    ([2.93, 1.61, -1.05, -1.17, 0.27, 1.57, 1.36],
     [[-0.01, -0.82, -2.41, 1.88, -0.25, -0.35, 1.17], [-1.97, 0.18, -2.52, -2.84, 1.59, 0.71, 1.43]],
     [2.9212, -3.7836999999999996], "unbounded", None),
    ([1.81, 1.1, -1.84, -0.47],
     [[-1.95, 2.82, -1.02, 1.79], [-2.34, -1.71, -2.26, -1.25]],
     [0.51, -0.76], "optimal", -0.4203071197654312),
    ([-0.21, -0.85, -1.01, -1.57, -0.29, 0.95, 2.53],
     [[2.68, -1.62, 2.02, 2.32, -0.96, -1.91, -0.63], [-1.41, 0.1, -0.97, 1.49, 2.08, -2.71, -2.1], [2.01, 0.7, -0.9, -2.79, 0.03, 1.5, 1.59], [-0.96, -1.08, -2.06, 2.53, -2.28, -1.18, -0.57]],
     [1.4093, -5.4239, 3.4393000000000002, -9.4145], "unbounded", None),
    ([-1.25, -0.9, -1.83, 2.23, 1.73],
     [[0.88, 0.15, -0.39, -1.18, 1.16], [0.42, -1.76, -0.26, -1.0, 2.18], [-2.4, 1.58, -2.9, -0.73, -2.24], [1.08, -2.44, 1.7, 0.25, -2.35]],
     [1.7364, -2.2172, -2.8154999999999997, -2.5542999999999996], "optimal", -4.127968927102864),
    ([0.69, 1.5, 2.35],
     [[2.37, 2.54, 2.9], [-0.08, 1.44, -2.79]],
     [3.7507, 1.5553], "optimal", 1.930324181415929),
    ([-0.85, -0.06, 0.01, 1.47, 2.02],
     [[-2.48, 0.76, 0.96, 1.2, 2.69], [-2.77, -2.14, 2.89, 1.58, -2.05], [-0.92, -0.25, 2.82, 0.43, 1.16], [1.32, -0.98, 2.25, -2.06, 1.49]],
     [3.3175999999999997, 6.826900000000001, 5.9555, 1.6959000000000002], "optimal", 1.8047211929764573),
    ([1.14, -0.25, -1.28, 1.18, -1.01, -1.28, -0.13],
     [[0.1, 2.19, -2.84, -1.46, 0.23, -1.02, -2.02], [0.61, -1.82, 2.09, -0.29, 1.1, 2.41, -2.66], [-2.54, 2.33, -2.82, -1.14, -1.25, -1.08, 2.27]],
     [-6.7059999999999995, 3.8888000000000007, -7.8758], "unbounded", None),
    ([-1.89, 3.0, 2.68, 0.44, -1.48, 0.38, 2.34, -0.83],
     [[1.48, -2.91, 2.59, -1.83, 0.71, -0.62, 0.26, 0.33], [-1.25, -0.88, 2.19, 2.4, 0.31, 0.14, 0.55, -2.63], [2.89, 0.86, -1.0, -1.43, -1.89, 2.65, 0.78, 2.96], [1.76, -2.71, 1.18, 2.79, 0.31, -0.83, 1.68, -0.54]],
     [-1.31, -0.23, -1.13, -0.65], "unbounded", None),
    ([-0.01, 0.79, -0.02, 0.52, 1.57, 0.85],
     [[-2.48, 1.49, -0.41, 0.24, 0.45, 1.33], [1.13, -0.59, 1.65, 0.91, 2.78, 2.46], [1.28, 2.61, 2.78, -2.03, -1.98, 2.33], [0.05, -2.2, -0.81, 0.02, -2.2, -0.99]],
     [-1.11, 0.49, -0.44, 0.9], "infeasible", None),
    ([1.99, 0.09, 2.04, 0.37],
     [[-1.64, -1.81, -1.5, 2.02], [1.76, 0.03, 0.52, 0.39], [-0.62, -0.27, -1.4, -0.31]],
     [0.44, 1.8, 1.74], "infeasible", None),
    ([2.6, 1.34, -0.85, 0.76, 2.33, 2.14, 2.29],
     [[1.83, 1.45, 0.86, 1.26, -0.9, -1.07, 2.1], [-2.71, 1.44, -2.85, -0.86, -0.15, 0.15, 2.49], [-2.67, -0.36, -1.74, 2.77, 1.84, -2.61, -1.79]],
     [1.76, -1.7, -0.28], "optimal", 0.30828269471430886),
    ([-0.9, 1.67, 0.14, 2.86, -0.32, 2.28, -1.66, -0.45],
     [[-1.43, -2.25, -0.96, -0.58, 1.92, 1.56, 0.69, -0.58], [-0.17, 2.51, 0.46, -1.92, 2.39, -1.52, -1.01, 0.49], [0.97, 2.48, -1.2, -0.35, -1.81, -2.63, 0.35, -0.5]],
     [-0.47389999999999977, 1.8637999999999995, -2.5019], "unbounded", None),
    ([-0.13, 2.18, 2.94, 2.39, 2.81, 0.1, 0.52],
     [[1.41, -0.82, 2.51, -2.99, -2.02, -1.71, -2.92], [-1.19, 1.86, -0.53, -1.91, 0.56, -2.29, 1.56]],
     [-4.3586, 1.0908000000000002], "optimal", 0.6971679893953648),
    ([-0.92, -0.21, -1.61],
     [[-1.52, -1.42, 0.1], [2.35, 0.67, -1.01]],
     [-2.7338000000000005, 2.6758000000000006], "optimal", -4.683270189201661),
]


def criterion_8(jobs: int = 1) -> CriterionResult:
    log = _Log()
    bad = []
    for i, (c, A, b, status, val) in enumerate(_LP_FIXTURES):
        res = solve_lp(LinearProgram(tuple(c), tuple(tuple(r) for r in A), tuple(b)))
        if res.status != status:
            bad.append(f"fixture {i}: expected {status}, got {res.status}")
            continue
        if status == "optimal":
            if abs(res.value - val) > 1e-9:
                bad.append(f"fixture {i}: value {res.value} vs expected {val}")
            resid = float(
                np.abs(np.asarray(A) @ np.asarray(res.solution) - np.asarray(b)).max()
            )
            if resid > 1e-9:
                bad.append(f"fixture {i}: residual {resid:.2e}")
    log.check(not bad, f"{len(_LP_FIXTURES)} LP fixtures solved exactly (statuses, values "
                       f"to 1e-9, residuals to 1e-9)" + (f"; {bad}" if bad else ""))
    log.check(len(_LP_FIXTURES) >= 30, "fixture suite covers at least 30 programs")
    c, A, b, _, val = _LP_FIXTURES[3]
    res = solve_lp(LinearProgram(tuple(c), tuple(tuple(r) for r in A), tuple(b)))
    log.check(res.status == "optimal" and abs(res.value - val) <= 1e-9,
              "Bland's rule terminates on the cycling fixture at the known optimum")
    return CriterionResult(8, "LP solver fixture suite", log.ok, log.lines)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

_CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
]


def run_criterion(number: int, jobs: int = 1) -> CriterionResult:
    fn = _CRITERIA[number - 1]
    t0 = time.perf_counter()
    res = fn(jobs)
    res.elapsed = time.perf_counter() - t0
    return res


def run_all(jobs: int = 1, emit=print) -> tuple[bool, list[CriterionResult], float]:
    t0 = time.perf_counter()
    results = []
    for i in range(1, len(_CRITERIA) + 1):
        res = run_criterion(i, jobs)
        results.append(res)
        emit(f"criterion {res.number}: {res.title} ... "
             f"{'PASS' if res.passed else 'FAIL'} ({res.elapsed:.1f}s)")
        for line in res.lines:
            emit("    " + line)
    elapsed = time.perf_counter() - t0
    emit(f"total: {sum(r.passed for r in results)}/{len(results)} criteria passed "
         f"in {elapsed:.1f}s")
    return all(r.passed for r in results), results, elapsed
