"""Brute-force oracles used to derive expected values independently of the
library's own optimisation paths."""

import numpy as np

from mhpref import cost_at, simplex_grid


def brute_conjugate_1d(cost_fn, f0, f1, resolution=10_000):
    """max over a dense t-grid of f0*(1-t) + f1*t - cost(t)."""
    ts = np.linspace(0.0, 1.0, resolution + 1)
    vals = f0 * (1 - ts) + f1 * ts - np.array([cost_fn(t) for t in ts])
    return float(vals.max())


def brute_min_1d(cost_fn, f0, f1, resolution=10_000):
    """min over a dense t-grid of cost(t) + f0*(1-t) + f1*t."""
    ts = np.linspace(0.0, 1.0, resolution + 1)
    vals = np.array([cost_fn(t) for t in ts]) + f0 * (1 - ts) + f1 * ts
    return float(vals.min())


def brute_envelope(points, values, target, resolution=2000):
    """Lower convex envelope at a point by enumerating mixture weights of up
    to three finite-valued graph points (sufficient at these test sizes)."""
    pts = [np.asarray(p, dtype=float) for p in points]
    best = np.inf
    k = len(pts)
    lams = np.linspace(0.0, 1.0, resolution + 1)
    target = np.asarray(target, dtype=float)
    for i in range(k):
        if np.allclose(pts[i], target, atol=1e-12):
            best = min(best, values[i])
        for j in range(i + 1, k):
            for lam in lams:
                mix = lam * pts[i] + (1 - lam) * pts[j]
                if np.abs(mix - target).max() <= 1e-9:
                    best = min(best, lam * values[i] + (1 - lam) * values[j])
    return best


def brute_upshift_pair(cost_a, cost_b, a, ap, resolution=100_000):
    """Exhaustive scan of the rearrangement objective over the feasible
    high-state masses (binary output)."""
    s = a + ap
    lo = max(ap, s - 1.0, 0.0)
    hi = min(1.0, s)
    ts = np.linspace(lo, hi, resolution + 1)
    totals = np.array([cost_a(t) + cost_b(s - t) for t in ts])
    ref = cost_a(a) + cost_b(ap)
    return float(totals.min()), float(ref)


def cost_values_on_grid(cost, resolution=20):
    grid = simplex_grid(cost.n, resolution)
    return grid, np.array([cost_at(cost, p) for p in grid])
