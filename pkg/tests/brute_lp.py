"""Brute-force LP oracle: exhaustive vertex enumeration.

Only valid for LPs whose variables all carry finite lower AND upper bounds;
the feasible region is then a polytope, so if it is nonempty its optimum is
attained at a vertex, and every vertex solves some n-subset of the
constraint/bound hyperplanes.  We enumerate all subsets, batch-solve the
linear systems, filter by feasibility, and take the best objective.

Completely independent of the simplex implementation: only numpy.
"""

import itertools

import numpy as np

FEAS_TOL = 1e-7


def brute_solve(lp):
    """Return (status, objective, x) by enumerating candidate vertices."""
    n, m = lp.n, lp.m
    A = lp.A.toarray()
    if not (np.all(np.isfinite(lp.lo)) and np.all(np.isfinite(lp.hi))):
        raise ValueError("brute_solve needs finite box bounds on every variable")

    # candidate active hyperplanes: every row + both bounds of every variable
    planes = [(A[i], lp.b[i]) for i in range(m)]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        planes.append((e, lp.lo[j]))
        if lp.hi[j] != lp.lo[j]:
            planes.append((e.copy(), lp.hi[j]))

    M_all = np.array([p[0] for p in planes])
    q_all = np.array([p[1] for p in planes])
    combos = np.array(
        list(itertools.combinations(range(len(planes)), n)), dtype=int
    )
    if combos.size == 0:
        return "infeasible", np.nan, None

    Ms = M_all[combos]                      # (K, n, n)
    qs = q_all[combos]                      # (K, n)
    dets = np.linalg.det(Ms)
    ok = np.abs(dets) > 1e-10
    if not np.any(ok):
        return "infeasible", np.nan, None
    X = np.linalg.solve(Ms[ok], qs[ok][..., None])[..., 0]  # (K', n)

    # feasibility filter
    feas = np.ones(len(X), dtype=bool)
    feas &= np.all(X >= lp.lo - FEAS_TOL, axis=1)
    feas &= np.all(X <= lp.hi + FEAS_TOL, axis=1)
    if m:
        R = X @ A.T - lp.b                  # (K', m)
        row_scale = np.maximum(np.abs(A).max(axis=1), np.abs(lp.b))
        row_scale = np.maximum(row_scale, 1.0)
        for i, s in enumerate(lp.senses):
            if s == "<":
                feas &= R[:, i] <= FEAS_TOL * row_scale[i]
            elif s == ">":
                feas &= R[:, i] >= -FEAS_TOL * row_scale[i]
            else:
                feas &= np.abs(R[:, i]) <= FEAS_TOL * row_scale[i]
    if not np.any(feas):
        return "infeasible", np.nan, None

    objs = X[feas] @ lp.c
    k = int(np.argmin(objs))
    return "optimal", float(objs[k]), X[feas][k]


def random_box_lp(rng, max_vars=6, max_rows=6):
    """A random LP with finite box bounds (so brute_solve applies).

    Seventy percent of instances are feasible by construction (the rhs is
    generated from an interior point); the rest use a random rhs and may be
    infeasible, exercising both agreement branches.
    """
    from solarval.simplex import StandardFormLP

    n = int(rng.integers(1, max_vars + 1))
    m = int(rng.integers(1, max_rows + 1))
    c = rng.uniform(-5, 5, n)
    A = rng.uniform(-5, 5, (m, n))
    A[rng.random((m, n)) < 0.35] = 0.0
    # keep at least one nonzero per row so rows are meaningful
    for i in range(m):
        if not np.any(A[i]):
            A[i, int(rng.integers(0, n))] = rng.uniform(1.0, 5.0)
    senses = tuple(rng.choice(["<", ">", "="], m, p=[0.45, 0.35, 0.2]))
    lo = rng.uniform(-5.0, 1.0, n)
    hi = lo + rng.uniform(0.5, 8.0, n)

    if rng.random() < 0.7:
        x0 = rng.uniform(lo, hi)
        b = A @ x0
        for i, s in enumerate(senses):
            if s == "<":
                b[i] += rng.uniform(0.0, 4.0)
            elif s == ">":
                b[i] -= rng.uniform(0.0, 4.0)
    else:
        b = rng.uniform(-8.0, 8.0, m)

    return StandardFormLP(c=c, A=A, senses=senses, b=b, lo=lo, hi=hi)
