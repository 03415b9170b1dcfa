import numpy as np
import pytest

from mhpref.reduction import LinearProgram, solve_lp


def lp(c, A, b):
    return LinearProgram(tuple(c), tuple(tuple(r) for r in A), tuple(b))


class TestBasics:
    def test_corner_solution(self):
        res = solve_lp(lp([1.0, 0.0], [[1.0, 1.0]], [1.0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(0.0, abs=1e-12)
        assert res.solution == pytest.approx((0.0, 1.0), abs=1e-12)

    def test_sign_contradiction_infeasible(self):
        assert solve_lp(lp([1.0], [[1.0]], [-1.0])).status == "infeasible"

    def test_ray_unbounded(self):
        assert solve_lp(lp([-1.0, 0.0], [[1.0, -1.0]], [0.0])).status == "unbounded"

    def test_negative_rhs_normalised(self):
        res = solve_lp(lp([1.0, 0.0], [[-1.0, -1.0]], [-2.0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(0.0, abs=1e-12)

    def test_redundant_rows_dropped(self):
        res = solve_lp(lp([1.0, 1.0], [[1.0, 1.0], [1.0, 1.0], [1.0, -1.0]], [1.0, 1.0, 1.0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(Exception):
            lp([1.0, 2.0], [[1.0]], [1.0])


class TestCycling:
    def test_beale_terminates_at_optimum(self):
        c = [-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0]
        A = [
            [0.25, -60.0, -0.04, 9.0, 1.0, 0.0, 0.0],
            [0.5, -90.0, -0.02, 3.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        ]
        b = [0.0, 0.0, 1.0]
        res = solve_lp(lp(c, A, b))
        assert res.status == "optimal"
        assert res.value == pytest.approx(-0.05, abs=1e-9)


class TestRandomised:
    def test_feasible_solutions_satisfy_constraints(self):
        rng = np.random.default_rng(42)
        n_optimal = 0
        for _ in range(60):
            m = int(rng.integers(1, 4))
            nv = int(rng.integers(m + 1, 8))
            A = rng.uniform(-2, 2, size=(m, nv))
            x0 = rng.uniform(0, 1, size=nv)
            b = A @ x0  # feasible by construction
            c = rng.uniform(-1, 2, size=nv)
            res = solve_lp(lp(c, A, b))
            assert res.status in ("optimal", "unbounded")
            if res.status == "optimal":
                n_optimal += 1
                x = np.array(res.solution)
                assert x.min() >= -1e-12
                assert np.abs(A @ x - b).max() <= 1e-9
                assert res.value <= c @ x0 + 1e-9  # no worse than a feasible point
        assert n_optimal >= 20

    def test_lp_value_below_every_feasible_vertex_sample(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            nv = 5
            A = rng.uniform(0.2, 2, size=(1, nv))
            b = np.array([1.0])
            c = rng.uniform(-1, 1, size=nv)
            res = solve_lp(lp(c, A, b))
            assert res.status == "optimal"
            # single-constraint LP optimum is min over coordinate rays
            expected = min(c[i] / A[0, i] for i in range(nv))
            assert res.value == pytest.approx(expected, abs=1e-9)
