import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhpref import (
    Comparison,
    Contract,
    CostFunction,
    Lottery,
    PreferenceOracle,
    SimplexPoint,
    UtilityFunction,
    argmax_efforts,
    certainty_equivalent,
    compare,
    conjugate,
    contract_from_utility_vector,
    expected_utility,
    mix_contracts,
    simplex_grid,
    utility_vector,
    value,
)
from mhpref.models import value_batch

from helpers import brute_conjugate_1d, brute_min_1d


class TestValue:
    def test_steep_contract_quadratic(self, mh_oracle, steep):
        # stationary point at p_hi = 0.5; cross-checked by dense grid search
        brute = brute_conjugate_1d(lambda t: t * t, 0.0, 1.0)
        assert brute == pytest.approx(0.25, abs=1e-8)
        assert value(mh_oracle, steep) == pytest.approx(0.25, abs=1e-12)

    def test_clamped_stationary_point(self, space2, u_lin, steep):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 1.0), u_lin)
        brute = brute_conjugate_1d(lambda t: (t - 1.0) ** 2, 0.0, 1.0)
        assert brute == pytest.approx(1.0, abs=1e-8)
        assert value(o, steep) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kind", ["moral_hazard", "malevolent", "income_effects"])
    def test_constant_contract_is_expected_utility(self, space2, u_lin, kind):
        cost = CostFunction.quadratic1d(1.5, 0.4)
        lam = 5.0 if kind == "income_effects" else None
        o = PreferenceOracle(kind, space2, cost, u_lin, income_slope=lam)
        x = Lottery(((0.2, 0.5), (0.9, 0.5)))
        w = Contract.constant(space2, x)
        assert value(o, w) == pytest.approx(expected_utility(u_lin, x), abs=1e-9)

    def test_malevolent_min(self, space2, u_lin, steep):
        o = PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.0), u_lin)
        brute = brute_min_1d(lambda t: t * t, 0.0, 1.0)
        assert brute == pytest.approx(0.0, abs=1e-8)
        assert value(o, steep) == pytest.approx(0.0, abs=1e-12)

    def test_grid_cost_value_at_generating_points(self, space2, u_lin, steep):
        c = CostFunction.grid([
            (SimplexPoint((1.0, 0.0)), 0.0),
            (SimplexPoint((0.0, 1.0)), 0.5),
        ])
        o = PreferenceOracle.moral_hazard(space2, c, u_lin)
        # linear objective: the maximum over the envelope is attained at a
        # generating point: max(0 - 0, 1 - 0.5) = 0.5
        assert value(o, steep) == pytest.approx(0.5, abs=1e-12)

    def test_income_effects_against_dense_scan(self, space2, u_lin):
        o = PreferenceOracle.income_effects(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin, 5.0)
        w = Contract.from_prizes(space2, [-1.0, 2.0])
        ts = np.linspace(0.0, 1.0, 200_001)
        util = -1.0 + 3.0 * ts
        obj = util - (ts - 0.5) ** 2 * (1.0 + 5.0 * np.exp(-util))
        assert value(o, w) == pytest.approx(float(obj.max()), abs=1e-8)

    def test_income_three_states_matches_enumeration(self, space3, u_lin):
        pts = simplex_grid(3, 4)
        c = CostFunction.grid([(p, float(sum(p.probs[i] * i for i in range(3)) ** 2)) for p in pts])
        o = PreferenceOracle.income_effects(space3, c, u_lin, 2.0)
        w = Contract.from_prizes(space3, [0.0, 1.0, 2.0])
        f = utility_vector(u_lin, w)
        from mhpref.models import INCOME_GRID_RESOLUTION
        grid = simplex_grid(3, INCOME_GRID_RESOLUTION)
        from mhpref import cost_at
        best = max(
            (f @ p.as_array()) - cost_at(c, p) * (1.0 + 2.0 * math.exp(-(f @ p.as_array())))
            for p in grid
            if cost_at(c, p) < math.inf
        )
        assert value(o, w) == pytest.approx(best, abs=1e-9)


class TestCompare:
    def test_identity_indifferent(self, mh_oracle, steep):
        assert compare(mh_oracle, steep, steep) == Comparison.INDIFFERENT

    def test_monotone_prizes(self, mh_oracle, space2):
        hi = Contract.constant(space2, 1.0)
        lo = Contract.constant(space2, 0.0)
        assert compare(mh_oracle, hi, lo) == Comparison.STRICTLY_PREFERS

    def test_steep_vs_calibrated_constant(self, mh_oracle, space2, steep):
        const = Contract.constant(space2, 0.25)
        assert compare(mh_oracle, steep, const) == Comparison.INDIFFERENT


class TestArgmaxEfforts:
    def test_interior_stationary_point(self, mh_oracle, steep):
        assert argmax_efforts(mh_oracle, steep) == {SimplexPoint((0.5, 0.5))}

    def test_constant_contract_zero_cost_set(self, space2, u_lin):
        c = CostFunction.grid([
            (SimplexPoint((1.0, 0.0)), 0.0),
            (SimplexPoint((0.5, 0.5)), 0.0),
            (SimplexPoint((0.0, 1.0)), 0.7),
        ])
        o = PreferenceOracle.moral_hazard(space2, c, u_lin)
        got = argmax_efforts(o, Contract.constant(space2, 0.3))
        assert got == {SimplexPoint((1.0, 0.0)), SimplexPoint((0.5, 0.5))}

    def test_corner_solution(self, space2, u_lin):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.0), u_lin)
        w = Contract.from_prizes(space2, [1.0, 0.0])
        assert argmax_efforts(o, w) == {SimplexPoint((1.0, 0.0))}

    def test_requires_moral_hazard(self, space2, u_lin, steep):
        o = PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.0), u_lin)
        with pytest.raises(ValueError):
            argmax_efforts(o, steep)


class TestConjugate:
    def test_constant_vector(self, quad_cost):
        assert conjugate(quad_cost, [0.7, 0.7]) == pytest.approx(0.7, abs=1e-12)

    def test_quadratic_example(self, quad_cost):
        assert conjugate(quad_cost, [0.0, 1.0]) == pytest.approx(0.25, abs=1e-12)

    def test_single_finite_point(self):
        c = CostFunction.grid([
            (SimplexPoint((1.0, 0.0)), 0.0),
            (SimplexPoint((0.0, 1.0)), math.inf),
        ])
        assert conjugate(c, [0.0, 1.0]) == pytest.approx(0.0, abs=1e-12)

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_fenchel_inequality(self, seed):
        rng = np.random.default_rng(seed)
        c = CostFunction.quadratic1d(float(rng.uniform(0.1, 3.0)), float(rng.uniform(0, 1)))
        f = rng.uniform(-6, 6, size=2)
        t = float(rng.uniform(0, 1))
        p = SimplexPoint((1.0 - t, t))
        from mhpref import cost_at

        lhs = conjugate(c, f)
        rhs = f[0] * p.probs[0] + f[1] * p.probs[1] - cost_at(c, p)
        assert lhs >= rhs - 1e-9

    def test_monotone_in_f(self, quad_cost):
        rng = np.random.default_rng(3)
        for _ in range(50):
            f = rng.uniform(-4, 4, size=2)
            bump = rng.uniform(0, 2, size=2)
            assert conjugate(quad_cost, f + bump) >= conjugate(quad_cost, f) - 1e-12

    def test_convex_in_f(self, quad_cost):
        rng = np.random.default_rng(4)
        for _ in range(50):
            f1 = rng.uniform(-4, 4, size=2)
            f2 = rng.uniform(-4, 4, size=2)
            lam = rng.uniform()
            mid = conjugate(quad_cost, lam * f1 + (1 - lam) * f2)
            assert mid <= lam * conjugate(quad_cost, f1) + (1 - lam) * conjugate(quad_cost, f2) + 1e-12


class TestMixtureCurvature:
    def test_moral_hazard_value_convex_in_mixtures(self, mh_oracle, space2):
        rng = np.random.default_rng(5)
        for _ in range(40):
            w = Contract.from_prizes(space2, rng.uniform(-1, 2, size=2))
            wp = Contract.from_prizes(space2, rng.uniform(-1, 2, size=2))
            a = rng.uniform()
            mixed = value(mh_oracle, mix_contracts(a, w, wp))
            assert mixed <= a * value(mh_oracle, w) + (1 - a) * value(mh_oracle, wp) + 1e-9

    def test_malevolent_value_concave_in_mixtures(self, space2, u_lin):
        o = PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)
        rng = np.random.default_rng(6)
        for _ in range(40):
            w = Contract.from_prizes(space2, rng.uniform(-1, 2, size=2))
            wp = Contract.from_prizes(space2, rng.uniform(-1, 2, size=2))
            a = rng.uniform()
            mixed = value(o, mix_contracts(a, w, wp))
            assert mixed >= a * value(o, w) + (1 - a) * value(o, wp) - 1e-9

    def test_translation_property(self, mh_oracle, space2, u_lin):
        rng = np.random.default_rng(7)
        for _ in range(40):
            f = rng.uniform(-2, 2, size=2)
            k = float(rng.uniform(-3, 3))
            w = contract_from_utility_vector(u_lin, f, space2)
            wk = contract_from_utility_vector(u_lin, f + k, space2)
            assert value(mh_oracle, wk) == pytest.approx(value(mh_oracle, w) + k, abs=1e-9)


class TestCertaintyEquivalent:
    def test_constant_fixed_point(self, mh_oracle, space2):
        assert certainty_equivalent(mh_oracle, Contract.constant(space2, 0.7)) == pytest.approx(0.7, abs=1e-9)

    def test_identity_inverse(self, mh_oracle, steep):
        assert certainty_equivalent(mh_oracle, steep) == pytest.approx(0.25, abs=1e-12)

    def test_malevolent_example(self, space2, u_lin, steep):
        o = PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.0), u_lin)
        assert certainty_equivalent(o, steep) == pytest.approx(0.0, abs=1e-12)

    def test_ce_indifferent_to_contract(self, space2, u_cara, steep):
        o = PreferenceOracle.moral_hazard(space2, CostFunction.quadratic1d(1.0, 0.3), u_cara)
        ce = certainty_equivalent(o, steep)
        assert compare(o, steep, Contract.constant(space2, ce)) == Comparison.INDIFFERENT


class TestContractFromUtilityVector:
    def test_identity_inverse(self, u_lin, space2):
        w = contract_from_utility_vector(u_lin, [0.0, 1.0], space2)
        assert [lot.support[0][0] for lot in w.payoffs] == [0.0, 1.0]

    def test_constant_zero(self, u_lin, space2):
        w = contract_from_utility_vector(u_lin, [0.0, 0.0], space2)
        assert w.is_constant
        assert w.payoffs[0].support[0][0] == 0.0

    def test_cara_reference_endpoints(self, u_cara, space2):
        w = contract_from_utility_vector(u_cara, [0.0, 1.0], space2)
        prizes = [lot.support[0][0] for lot in w.payoffs]
        assert prizes == pytest.approx([0.0, 1.0], abs=1e-12)

    @pytest.mark.parametrize("u", [UtilityFunction.linear(), UtilityFunction.cara(0.8)])
    def test_round_trip(self, u, space3):
        rng = np.random.default_rng(8)
        for _ in range(20):
            f = rng.uniform(-2, 1.4, size=3)
            w = contract_from_utility_vector(u, f, space3)
            assert np.abs(utility_vector(u, w) - f).max() <= 1e-9


class TestOracleValidation:
    def test_dimension_mismatch(self, space3, u_lin):
        with pytest.raises(Exception):
            PreferenceOracle.moral_hazard(space3, CostFunction.quadratic1d(1.0, 0.5), u_lin)

    def test_income_needs_positive_slope(self, space2, quad_cost, u_lin):
        with pytest.raises(ValueError):
            PreferenceOracle.income_effects(space2, quad_cost, u_lin, 0.0)

    def test_value_batch_matches_value(self, mh_oracle, space2, u_lin):
        rng = np.random.default_rng(9)
        F = rng.uniform(-2, 2, size=(64, 2))
        batch = value_batch(mh_oracle, F)
        singles = [
            value(mh_oracle, contract_from_utility_vector(u_lin, f, space2)) for f in F
        ]
        assert np.abs(batch - np.array(singles)).max() <= 1e-12
