"""Dense two-phase simplex for small equality-form linear programs.

Solves  min c.x  subject to  A x = b,  x >= 0  on a plain numpy tableau.
Bland's rule (lowest-index entering column, lowest-index basic variable on
ratio ties) guards against cycling.  Everything here is desk scale: a few
dozen rows, up to a few thousand columns.
"""

from __future__ import annotations

import numpy as np

_PIVOT_TOL = 1e-10


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int):
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _run_simplex(T: np.ndarray, basis: list[int], cost: np.ndarray, max_iter: int):
    """Pivot until the reduced costs of ``cost`` are nonnegative.

    Returns "optimal" or "unbounded"; mutates T and basis in place.
    """
    m = T.shape[0]
    for _ in range(max_iter):
        y = cost[basis]  # basic costs
        reduced = cost - y @ T[:, :-1]
        entering = -1
        for j in np.flatnonzero(reduced < -_PIVOT_TOL):
            entering = int(j)
            break
        if entering < 0:
            return "optimal"
        col = T[:, entering]
        rows = np.flatnonzero(col > _PIVOT_TOL)
        if rows.size == 0:
            return "unbounded"
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        # Bland tie-break: smallest basic-variable index among minimal ratios
        tied = rows[ratios <= best + 1e-30]
        leave = min(tied, key=lambda r: basis[r])
        _pivot(T, basis, int(leave), entering)
    raise RuntimeError("simplex did not terminate (cycling guard exceeded)")


def simplex_solve(c, A, b, tol: float = 1e-9):
    """Solve min c.x s.t. A x = b, x >= 0.

    Returns (status, value, x) with status one of "optimal", "infeasible",
    "unbounded"; value and x are None unless optimal.
    """
    c = np.asarray(c, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    m, nv = A.shape
    if c.shape != (nv,) or b.shape != (m,):
        raise ValueError(
            f"inconsistent LP dimensions: A is {A.shape}, c is {c.shape}, b is {b.shape}"
        )

    A = A.copy()
    b = b.copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    max_iter = 10_000 + 200 * (m + nv)

    # phase 1: artificial basis
    T = np.hstack([A, np.eye(m), b[:, None]])
    basis = list(range(nv, nv + m))
    cost1 = np.concatenate([np.zeros(nv), np.ones(m)])
    status = _run_simplex(T, basis, cost1, max_iter)
    if status != "optimal":  # phase 1 is always bounded below by 0
        raise RuntimeError(f"phase 1 returned {status}")
    infeas = float(cost1[basis] @ T[:, -1])
    scale = 1.0 + float(np.abs(b).max(initial=0.0))
    if infeas > tol * scale:
        return "infeasible", None, None

    # drive artificial variables out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] < nv:
            keep.append(i)
            continue
        row = T[i, :nv]
        cand = np.flatnonzero(np.abs(row) > _PIVOT_TOL)
        if cand.size:
            _pivot(T, basis, i, int(cand[0]))
            keep.append(i)
        # else: redundant constraint, drop the row
    T = np.hstack([T[keep, :nv], T[keep, -1:]])
    basis = [basis[i] for i in keep]

    # phase 2
    status = _run_simplex(T, basis, c, max_iter)
    if status == "unbounded":
        return "unbounded", None, None

    x = np.zeros(nv)
    rhs = T[:, -1]
    rhs[np.abs(rhs) < 1e-13] = 0.0
    x[basis] = rhs
    return "optimal", float(c @ x), x
