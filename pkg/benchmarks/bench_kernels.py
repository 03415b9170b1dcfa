"""Benchmark: compiled kernels vs the numpy fallback.

Times the batch valuation primitives on both backends and an end-to-end
axiom check, and prints a speedup table.  Run as

    python benchmarks/bench_kernels.py [--rows N]
"""

import argparse
import time

import numpy as np

from mhpref.kernels import _pykernels

try:
    from mhpref.kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=200_000)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    F2 = rng.uniform(-6, 6, size=(args.rows, 2))
    F3 = rng.uniform(-6, 6, size=(args.rows, 3))
    P = rng.dirichlet(np.ones(3), size=200)
    v = rng.uniform(0, 1, size=200)
    v -= v.min()
    kt = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    kc = np.array([0.4, 0.1, 0.0, 0.2, 0.5])

    cases = [
        ("quad_conj", lambda m: m.quad_conj(F2, 1.0, 0.4)),
        ("grid_conj (200 pts)", lambda m: m.grid_conj(F3, P, v)),
        ("income quad", lambda m: m.income2_value_quad(F2[: args.rows // 4], 5.0, 1.0, 0.5)),
        ("income pwl", lambda m: m.income2_value_pwl(F2[: args.rows // 4], 5.0, kt, kc)),
    ]

    print(f"rows = {args.rows} (income cases use rows/4)")
    print(f"{'kernel':22s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, call in cases:
        t_py = timeit(call, _pykernels)
        if _ckernels is None:
            print(f"{name:22s} {t_py * 1e3:9.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_c = timeit(call, _ckernels)
        a = call(_pykernels)
        b = call(_ckernels)
        assert np.abs(a - b).max() < 1e-9, f"{name}: backends disagree"
        print(f"{name:22s} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms {t_py / t_c:7.1f}x")

    # end to end: one axiom falsifier run on each backend
    import os
    import subprocess
    import sys

    code = (
        "import time; "
        "from mhpref import OutputSpace, UtilityFunction, CostFunction, PreferenceOracle; "
        "from mhpref.axioms import Axiom, SamplerConfig, check_axiom; "
        "o = PreferenceOracle.income_effects(OutputSpace((0.0, 1.0)), "
        "CostFunction.quadratic1d(1.0, 0.5), UtilityFunction.linear(), 5.0); "
        "cfg = SamplerConfig(seed=1, n_samples=50_000); "
        "t0 = time.perf_counter(); check_axiom(o, Axiom.CONTINUITY_SURROGATE, cfg); "
        "print(time.perf_counter() - t0)"
    )
    times = {}
    for label, env_extra in (("compiled", {}), ("numpy", {"MHPREF_PURE_PYTHON": "1"})):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        times[label] = float(out.stdout.strip())
    print(f"{'axiom check e2e':22s} {times['numpy'] * 1e3:9.1f}ms "
          f"{times['compiled'] * 1e3:9.1f}ms {times['numpy'] / times['compiled']:7.1f}x")


if __name__ == "__main__":
    main()
