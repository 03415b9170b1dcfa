"""Numpy implementations of the hot valuation kernels.

These are the reference semantics; the compiled extension in _ckernels.pyx
implements the same functions with identical algorithms.  All take a batch
of statewise utility vectors F (one row per contract) and return one value
per row.
"""

from __future__ import annotations

import numpy as np

IMPL = "python"

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def quad_conj(F: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """max over t in [0,1] of f0*(1-t) + f1*t - alpha*(t-beta)^2, per row."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    d = F[:, 1] - F[:, 0]
    t = quad_conj_arg(F, alpha, beta)
    return F[:, 0] + d * t - alpha * (t - beta) ** 2


def quad_conj_arg(F: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Maximiser of the quadratic objective, clamped to [0, 1]."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    d = F[:, 1] - F[:, 0]
    if alpha > 0.0:
        return np.clip(beta + d / (2.0 * alpha), 0.0, 1.0)
    # linear objective: pick an endpoint (high state on ties, matching the
    # convention that zero cost everywhere leaves the maximiser free)
    return np.where(d >= 0.0, 1.0, 0.0)


def grid_conj(F: np.ndarray, P: np.ndarray, v: np.ndarray) -> np.ndarray:
    """max over generating points j of <F_i, P_j> - v_j, per row i."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    scores = F @ np.asarray(P, dtype=float).T - np.asarray(v, dtype=float)
    return scores.max(axis=1)


def _income_objective(t, cost, lam):
    e = np.exp(np.clip(-t, None, 700.0))
    return t - cost * (1.0 + lam * e)


def _income_maximize(F, lam, cost_of, lo, hi, n_scan, n_iter):
    """Coarse scan then golden-section refinement, vectorised over rows.

    cost_of maps an array of high-state probabilities to cost values.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    f0 = F[:, 0]
    d = F[:, 1] - F[:, 0]
    ps = np.linspace(lo, hi, n_scan)
    cs = cost_of(ps)
    obj = _income_objective(f0[:, None] + np.outer(d, ps), cs[None, :], lam)
    best = np.argmax(obj, axis=1)
    a = ps[np.maximum(best - 1, 0)]
    b = ps[np.minimum(best + 1, n_scan - 1)]

    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    g1 = _income_objective(f0 + d * x1, cost_of(x1), lam)
    g2 = _income_objective(f0 + d * x2, cost_of(x2), lam)
    for _ in range(n_iter):
        take_left = g1 >= g2
        b = np.where(take_left, x2, b)
        a = np.where(take_left, a, x1)
        x1n = b - _INVPHI * (b - a)
        x2n = a + _INVPHI * (b - a)
        g1n = np.where(take_left, _income_objective(f0 + d * x1n, cost_of(x1n), lam), g2)
        g2n = np.where(take_left, g1, _income_objective(f0 + d * x2n, cost_of(x2n), lam))
        x1, x2, g1, g2 = x1n, x2n, g1n, g2n
    mid = 0.5 * (a + b)
    vals = _income_objective(f0 + d * mid, cost_of(mid), lam)
    return np.maximum(vals, np.maximum(g1, g2))


def income2_value_quad(
    F: np.ndarray,
    lam: float,
    alpha: float,
    beta: float,
    n_scan: int = 65,
    n_iter: int = 52,
) -> np.ndarray:
    """Income-effects value on a binary output space with quadratic cost."""
    return _income_maximize(
        F, lam, lambda t: alpha * (t - beta) ** 2, 0.0, 1.0, n_scan, n_iter
    )


def income2_value_pwl(
    F: np.ndarray,
    lam: float,
    knots_t: np.ndarray,
    knots_c: np.ndarray,
    n_scan: int = 65,
    n_iter: int = 52,
) -> np.ndarray:
    """Income-effects value on a binary output space with piecewise-linear
    (grid-envelope) cost; the search is restricted to the finite hull."""
    kt = np.asarray(knots_t, dtype=float)
    kc = np.asarray(knots_c, dtype=float)
    return _income_maximize(
        F, lam, lambda t: np.interp(t, kt, kc), kt[0], kt[-1], n_scan, n_iter
    )
