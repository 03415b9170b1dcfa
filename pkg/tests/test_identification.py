import math

import numpy as np
import pytest

from mhpref import (
    CostFunction,
    PreferenceOracle,
    SimplexPoint,
    UtilityFunction,
    cost_at,
    simplex_grid,
)
from mhpref.config import IdentificationError, RangeError
from mhpref.identification import (
    IdentificationConfig,
    default_f_grid,
    recover_c,
    recover_u,
)


def make_cfg(**kw):
    kw.setdefault("prize_grid", np.linspace(-1.0, 2.0, 13))
    kw.setdefault("f_grid", np.zeros((1, 2)))
    return IdentificationConfig(**kw)


class TestRecoverU:
    def test_linear_oracle(self, space2, quad_cost, u_lin):
        o = PreferenceOracle.moral_hazard(space2, quad_cost, u_lin)
        rec = recover_u(o, make_cfg())
        grid = np.linspace(-1.0, 2.0, 13)
        assert np.abs(rec.eval_array(grid) - grid).max() <= 1e-3

    def test_reference_endpoints_exact(self, space2, quad_cost, u_cara):
        o = PreferenceOracle.moral_hazard(space2, quad_cost, u_cara)
        rec = recover_u(o, make_cfg())
        assert rec(0.0) == 0.0
        assert rec(1.0) == 1.0

    @pytest.mark.parametrize("a", [0.5, 1.0])
    def test_cara_oracle(self, space2, quad_cost, a):
        u = UtilityFunction.cara(a)
        o = PreferenceOracle.moral_hazard(space2, quad_cost, u)
        rec = recover_u(o, make_cfg())
        mid = rec(0.5)
        expected = (1 - math.exp(-0.5 * a)) / (1 - math.exp(-a))
        assert mid == pytest.approx(expected, abs=1e-3)

    def test_invariant_to_cost(self, space2, u_cara):
        cfg = make_cfg()
        o1 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.0), u_cara)
        o2 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(3.0, 0.9), u_cara)
        r1 = recover_u(o1, cfg)
        r2 = recover_u(o2, cfg)
        assert r1.knots == r2.knots  # constant contracts never engage the cost

    def test_works_for_malevolent_kind(self, space2, u_lin):
        o = PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)
        rec = recover_u(o, make_cfg())
        grid = np.linspace(-1.0, 2.0, 13)
        assert np.abs(rec.eval_array(grid) - grid).max() <= 1e-3


class TestRecoverC:
    def test_quadratic_midpoint(self, space2, u_lin):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.0), u_lin)
        f_grid = np.array([[0.0, t] for t in np.arange(-4.0, 4.0 + 1e-9, 0.1)])
        cfg = make_cfg(f_grid=f_grid, p_grid=simplex_grid(2, 20))
        chat = recover_c(o, u_lin, cfg)
        assert cost_at(chat, SimplexPoint((0.5, 0.5))) == pytest.approx(0.25, abs=1e-2)

    def test_zero_at_zero_cost_point(self, space2, u_lin):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.4), u_lin)
        cfg = make_cfg(f_grid=default_f_grid(2, reach=4.0), p_grid=simplex_grid(2, 10))
        chat = recover_c(o, u_lin, cfg)
        assert cost_at(chat, SimplexPoint((0.6, 0.4))) <= cfg.ce_tol

    def test_constant_vectors_carry_no_information(self, space2, u_lin):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)
        f_grid = np.array([[k, k] for k in np.linspace(-3, 3, 13)])
        cfg = make_cfg(f_grid=f_grid, p_grid=simplex_grid(2, 10))
        chat = recover_c(o, u_lin, cfg)
        assert all(v == pytest.approx(0.0, abs=1e-12) for _, v in chat.points)

    def test_under_approximates_true_cost(self, space2, u_lin):
        true_cost = CostFunction.quadratic1d(1.5, 0.3)
        o = PreferenceOracle.moral_hazard(space2, true_cost, u_lin)
        cfg = make_cfg(f_grid=default_f_grid(2, reach=6.0), p_grid=simplex_grid(2, 20))
        chat = recover_c(o, u_lin, cfg)
        for p, v in chat.points:
            assert v <= cost_at(true_cost, p) + cfg.ce_tol

    def test_refining_f_grid_is_monotone(self, space2, u_lin):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(2.0, 0.6), u_lin)
        p_grid = simplex_grid(2, 10)
        coarse = make_cfg(f_grid=default_f_grid(2, 4.0, 1.0, 1.0), p_grid=p_grid)
        fine = make_cfg(f_grid=default_f_grid(2, 4.0, 0.5, 0.5), p_grid=p_grid)
        c1 = recover_c(o, u_lin, coarse)
        c2 = recover_c(o, u_lin, fine)
        v1 = np.array([v for _, v in c1.points])
        v2 = np.array([v for _, v in c2.points])
        assert (v2 >= v1 - 1e-12).all()

    def test_bounded_utility_rejected(self, space2, quad_cost, u_cara):
        o = PreferenceOracle.moral_hazard(space2, quad_cost, u_cara)
        with pytest.raises(RangeError):
            recover_c(o, u_cara, make_cfg())

    def test_identical_oracles_recover_identically(self, space2, u_lin):
        cfg = make_cfg(f_grid=default_f_grid(2, 4.0), p_grid=simplex_grid(2, 10))
        o1 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)
        o2 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)
        c1 = recover_c(o1, u_lin, cfg)
        c2 = recover_c(o2, u_lin, cfg)
        assert all(v1 == v2 for (_, v1), (_, v2) in zip(c1.points, c2.points))

    def test_distinct_costs_recovered_distinct(self, space2, u_lin):
        # two oracles with different costs disagree on some comparison, and
        # the recovered costs separate them
        cfg = make_cfg(f_grid=default_f_grid(2, 6.0), p_grid=simplex_grid(2, 10))
        o1 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(0.5, 0.5), u_lin)
        o2 = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(2.0, 0.5), u_lin)
        c1 = recover_c(o1, u_lin, cfg)
        c2 = recover_c(o2, u_lin, cfg)
        gaps = [abs(v1 - v2) for (_, v1), (_, v2) in zip(c1.points, c2.points)]
        assert max(gaps) > 0.1


class TestDefaults:
    def test_default_f_grid_nests_under_refinement(self):
        coarse = default_f_grid(2, 4.0, 2.0, 1.0)
        fine = default_f_grid(2, 4.0, 1.0, 0.5)
        coarse_set = {tuple(r) for r in coarse}
        fine_set = {tuple(r) for r in fine}
        assert coarse_set <= fine_set

    def test_config_validation(self):
        with pytest.raises(ValueError):
            IdentificationConfig(prize_grid=np.array([]), f_grid=np.zeros((1, 2)))
        with pytest.raises(ValueError):
            IdentificationConfig(
                prize_grid=np.array([0.0]), f_grid=np.zeros((1, 2)), bisection_tol=0.0
            )

    def test_monotonicity_precheck_catches_decreasing_oracle(
        self, space2, quad_cost, u_lin, monkeypatch
    ):
        o = PreferenceOracle.moral_hazard(space2, quad_cost, u_lin)
        import mhpref.identification as ident

        monkeypatch.setattr(ident, "_constant_values", lambda o, prizes: -np.asarray(prizes))
        with pytest.raises(IdentificationError) as exc:
            recover_u(o, make_cfg())
        assert exc.value.witness is not None
