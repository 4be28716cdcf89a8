"""Bounded-variable primal simplex over sparse constraint matrices.

The expansion model produces LPs with a few thousand rows and columns, so
this is a revised simplex: the basis is held as a sparse LU factorization
(refreshed periodically) with product-form eta updates between
refactorizations.  Variables carry individual [lo, hi] bounds, constraint
rows carry a sense, and the solver works on the computational form
``A x + s = b`` where each row's slack is bounded by its sense.

Rows and columns are both max-equilibrated before the iteration starts;
without the column pass, reduced-cost magnitudes on investment and dispatch
variables differ by orders of magnitude and Dantzig pricing zigzags.
Feasibility is reached by adding artificial variables only to the rows the
slack-crash basis actually violates, and the phase-1 objective carries a
small real-cost tiebreak so feasibility lands near the optimum instead of
at an arbitrary vertex.  Pricing is Dantzig's rule with a permanent switch
to Bland's least-index rule after a long degenerate stall, so termination
is guaranteed.  Warm starts reuse a previous solve's basis when it is still
feasible; otherwise the solver silently falls back to a cold start.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as spla

SENSES = ("<", "=", ">")

_REFRESH_EVERY = 64          # eta updates between LU refactorizations
_STALL_LIMIT = 500           # degenerate pivots before switching to Bland
_PIVOT_TOL = 1e-9            # smallest acceptable pivot element
_FEAS_TOL = 1e-7             # absolute feasibility on normalized rows
# Real-cost tiebreak mixed into the phase-1 objective so feasibility lands
# near the optimum instead of at an arbitrary vertex; scaled so one unit of
# artificial infeasibility always dominates any real-cost saving.
_PHASE1_COST_MIX = 1e-4


class LPError(ValueError):
    """Malformed LP input."""


@dataclass(frozen=True)
class StandardFormLP:
    """min c.x  s.t.  A x (sense) b,  lo <= x <= hi.

    ``A`` may be dense or any scipy sparse type; it is stored as CSR.
    ``senses`` holds one of '<', '=', '>' per row (inequalities are
    inclusive).  Bounds may be ±inf, but every variable must either appear
    in a constraint or carry at least one finite bound.
    """

    c: np.ndarray
    A: sparse.csr_matrix
    senses: tuple[str, ...]
    b: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    var_names: tuple[str, ...] = ()
    row_names: tuple[str, ...] = ()
    name: str = "LP"

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        b = np.asarray(self.b, dtype=float)
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        A = sparse.csr_matrix(self.A, dtype=float) if not sparse.issparse(self.A) \
            else self.A.tocsr().astype(float)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "A", A)

        n = c.size
        m = b.size
        if A.shape != (m, n):
            raise LPError(f"A is {A.shape}, expected ({m}, {n})")
        if not np.all(np.isfinite(c)):
            raise LPError("cost vector must be finite")
        if not np.all(np.isfinite(b)):
            raise LPError("rhs must be finite")
        if not np.all(np.isfinite(A.data)):
            raise LPError("constraint coefficients must be finite")
        if lo.size != n or hi.size != n:
            raise LPError("bound vectors must match the variable count")
        if np.any(lo > hi):
            j = int(np.argmax(lo > hi))
            raise LPError(f"variable {j}: lower bound exceeds upper bound")
        if len(self.senses) != m:
            raise LPError("one sense per constraint row required")
        for s in self.senses:
            if s not in SENSES:
                raise LPError(f"unknown sense {s!r}")
        # every variable must be pinned down by something
        touched = np.zeros(n, dtype=bool)
        touched[np.unique(A.tocoo().col)] = True
        unpinned = ~touched & ~np.isfinite(lo) & ~np.isfinite(hi)
        if np.any(unpinned):
            j = int(np.argmax(unpinned))
            raise LPError(
                f"variable {j} has no constraint and no finite bound"
            )
        if self.var_names and len(self.var_names) != n:
            raise LPError("var_names length mismatch")
        if self.row_names and len(self.row_names) != m:
            raise LPError("row_names length mismatch")

    @property
    def n(self) -> int:
        return self.c.size

    @property
    def m(self) -> int:
        return self.b.size


@dataclass(frozen=True)
class WarmStart:
    """Restartable basis state from a previous solve on the same shapes."""

    basis: np.ndarray     # m column indices into [structural | slack]
    at_upper: np.ndarray  # n+m bools: nonbasic-at-upper-bound flags


@dataclass(frozen=True)
class LPResult:
    status: str                       # optimal|infeasible|unbounded|iteration_limit
    x: np.ndarray
    objective: float
    iterations: int
    duals: np.ndarray = field(default_factory=lambda: np.empty(0))
    warm: WarmStart | None = None
    # rows whose phase-1 artificials stayed positive (only set when infeasible)
    stuck_rows: tuple[int, ...] = ()


def _slack_bounds(senses) -> tuple[np.ndarray, np.ndarray]:
    """Slack bound intervals by row sense for A x + s = b."""
    m = len(senses)
    lo = np.zeros(m)
    hi = np.zeros(m)
    for i, s in enumerate(senses):
        if s == "<":
            lo[i], hi[i] = 0.0, np.inf
        elif s == "=":
            lo[i], hi[i] = 0.0, 0.0
        else:
            lo[i], hi[i] = -np.inf, 0.0
    return lo, hi


class _Basis:
    """LU factorization of the basis with product-form eta updates."""

    def __init__(self, W: sparse.csc_matrix, basis: np.ndarray):
        self.W = W
        self.basis = basis
        self._refactor()

    def _refactor(self):
        B = self.W[:, self.basis]
        self.lu = spla.splu(B.tocsc(), permc_spec="COLAMD")
        self.etas: list[tuple[int, np.ndarray, float]] = []

    def ftran(self, v: np.ndarray) -> np.ndarray:
        z = self.lu.solve(v)
        for r, w, wr in self.etas:
            zr = z[r] / wr
            z = z - w * zr
            z[r] = zr
        return z

    def btran(self, v: np.ndarray) -> np.ndarray:
        z = v.copy()
        for r, w, wr in reversed(self.etas):
            z[r] += (z[r] - w @ z) / wr
        return self.lu.solve(z, trans="T")

    def replace(self, leave_pos: int, enter_col: int, w: np.ndarray) -> bool:
        """Swap the basis column at ``leave_pos`` for ``enter_col``.

        ``w`` is the ftran'd entering column.  Returns False when the pivot
        element is too small to trust, in which case the caller should
        refactor and retry.
        """
        wr = w[leave_pos]
        if abs(wr) < _PIVOT_TOL:
            return False
        self.basis[leave_pos] = enter_col
        self.etas.append((leave_pos, w, wr))
        if len(self.etas) >= _REFRESH_EVERY:
            self._refactor()
        return True

    def force_refactor(self):
        self._refactor()


class _Solver:
    """One simplex run over the scaled computational form."""

    def __init__(self, lp: StandardFormLP, tol: float, max_iters: int):
        self.tol = tol
        self.max_iters = max_iters
        n, m = lp.n, lp.m

        # Row equilibration: scale every row (and its rhs) by its max-abs
        # entry so feasibility tolerances are meaningful across rows.
        A = lp.A.tocsr()
        row_max = np.zeros(m)
        for i in range(m):
            seg = A.data[A.indptr[i]:A.indptr[i + 1]]
            amax = np.max(np.abs(seg)) if seg.size else 0.0
            row_max[i] = max(amax, abs(lp.b[i]), 1e-12)
        self.row_scale = row_max
        D = sparse.diags(1.0 / row_max)
        A_s = (D @ A).tocsc()

        # Column equilibration: substitute x_j = s_j x'_j so every structural
        # column has unit max-abs entry, keeping reduced costs and pivot
        # magnitudes comparable across columns.  Slack columns anchor at 1.
        col_max = np.zeros(n)
        for j in range(n):
            seg = A_s.data[A_s.indptr[j]:A_s.indptr[j + 1]]
            col_max[j] = np.max(np.abs(seg)) if seg.size else 1.0
        col_s = 1.0 / np.clip(col_max, 1e-8, 1e8)
        A_s = (A_s @ sparse.diags(col_s)).tocsc()
        self.col_scale = np.concatenate([col_s, np.ones(m)])

        slack_lo, slack_hi = _slack_bounds(lp.senses)
        self.W = sparse.hstack([A_s, sparse.eye(m, format="csc")], format="csc")
        self.WT = self.W.T.tocsr()
        self.b = lp.b / row_max
        self.lo = np.concatenate([lp.lo / col_s, slack_lo])
        self.hi = np.concatenate([lp.hi / col_s, slack_hi])
        self.n, self.m = n, m
        self.ncols = n + m
        self.c_real = np.concatenate([lp.c * col_s, np.zeros(m)])

        self.iterations = 0
        self.bland = False
        self._stall = 0

    # -- column access ------------------------------------------------------

    def _col(self, j: int) -> np.ndarray:
        W = self.W
        v = np.zeros(self.m)
        a, bnd = W.indptr[j], W.indptr[j + 1]
        v[W.indices[a:bnd]] = W.data[a:bnd]
        return v

    # -- nonbasic values ----------------------------------------------------

    def _nonbasic_value(self, j: int) -> float:
        if self.at_upper[j]:
            return self.hi[j]
        if np.isfinite(self.lo[j]):
            return self.lo[j]
        if np.isfinite(self.hi[j]):
            return self.hi[j]
        return 0.0

    def _nonbasic_vector(self) -> np.ndarray:
        x = np.where(
            self.at_upper,
            self.hi,
            np.where(np.isfinite(self.lo), self.lo,
                     np.where(np.isfinite(self.hi), self.hi, 0.0)),
        )
        x[self.in_basis] = 0.0
        return x

    def _recompute_basics(self):
        rhs = self.b - self.W @ self._nonbasic_vector()
        self.xB = self.basis_obj.ftran(rhs)

    # -- crash & warm start --------------------------------------------------

    def _cold_state(self):
        basis = np.arange(self.n, self.n + self.m)
        at_upper = np.zeros(self.ncols, dtype=bool)
        # nonbasic structurals sit at a finite bound (upper if that is the
        # only finite one)
        no_lo = ~np.isfinite(self.lo[: self.n])
        has_hi = np.isfinite(self.hi[: self.n])
        at_upper[: self.n] = no_lo & has_hi
        return basis, at_upper

    def _try_state(self, basis, at_upper):
        """Install a basis; returns max bound violation of the basics."""
        self.basis = np.array(basis, dtype=int)
        self.at_upper = np.array(at_upper, dtype=bool)
        self.in_basis = np.zeros(self.ncols, dtype=bool)
        self.in_basis[self.basis] = True
        self.at_upper[self.in_basis] = False
        self.basis_obj = _Basis(self.W, self.basis)
        self._recompute_basics()
        viol_lo = np.maximum(self.lo[self.basis] - self.xB, 0.0)
        viol_hi = np.maximum(self.xB - self.hi[self.basis], 0.0)
        viol_lo[~np.isfinite(viol_lo)] = 0.0
        viol_hi[~np.isfinite(viol_hi)] = 0.0
        return float(np.max(viol_lo + viol_hi, initial=0.0))

    def _install_artificials(self):
        """Clamp violated slack-basis rows and add artificial columns."""
        # only valid when the basis is exactly the slack basis
        xN = self._nonbasic_vector()[: self.n]
        resid = self.b - self.W[:, : self.n] @ xN
        slo = self.lo[self.n:]
        shi = self.hi[self.n:]
        art_rows, art_signs = [], []
        at_upper = self.at_upper.copy()
        for i in range(self.m):
            if resid[i] > shi[i] + _FEAS_TOL:
                at_upper[self.n + i] = True
                art_rows.append(i)
                art_signs.append(1.0)
            elif resid[i] < slo[i] - _FEAS_TOL:
                at_upper[self.n + i] = False  # nonbasic at its finite lower
                art_rows.append(i)
                art_signs.append(-1.0)
        self.art_rows = art_rows
        if not art_rows:
            return 0
        k = len(art_rows)
        E = sparse.csc_matrix(
            (art_signs, (art_rows, range(k))), shape=(self.m, k)
        )
        self.W = sparse.hstack([self.W, E], format="csc")
        self.WT = self.W.T.tocsr()
        self.lo = np.concatenate([self.lo, np.zeros(k)])
        self.hi = np.concatenate([self.hi, np.full(k, np.inf)])
        self.c_real = np.concatenate([self.c_real, np.zeros(k)])
        self.col_scale = np.concatenate([self.col_scale, np.ones(k)])
        self.ncols += k

        basis = np.arange(self.n, self.n + self.m)
        for idx, i in enumerate(art_rows):
            basis[i] = self.n + self.m + idx  # artificial replaces the slack
        at_upper = np.concatenate([at_upper, np.zeros(k, dtype=bool)])
        self._try_state(basis, at_upper)
        return k

    # -- simplex core --------------------------------------------------------

    def _price(self, c: np.ndarray, excluded: set[int]):
        """Pick an entering column, or None when dual-feasible."""
        y = self.basis_obj.btran(c[self.basis])
        d = c - self.WT @ y
        tol_d = self.tol * (1.0 + np.max(np.abs(c), initial=0.0))

        nb = ~self.in_basis
        finite_lo = np.isfinite(self.lo)
        finite_hi = np.isfinite(self.hi)
        at_up = self.at_upper
        at_lo = nb & ~at_up & finite_lo
        free = nb & ~at_up & ~finite_lo & ~finite_hi
        at_hi_only = nb & ~at_up & ~finite_lo & finite_hi  # parked at upper

        score = np.zeros(self.ncols)
        score[at_lo] = -d[at_lo]
        score[nb & at_up] = d[nb & at_up]
        score[at_hi_only] = d[at_hi_only]
        score[free] = np.abs(d[free])
        score[list(excluded)] = 0.0

        eligible = np.flatnonzero(score > tol_d)
        if eligible.size == 0:
            return None, d, y
        if self.bland:
            q = int(eligible[0])
        else:
            q = int(eligible[np.argmax(score[eligible])])
        return q, d, y

    def _direction(self, q: int, d_q: float) -> float:
        if self.at_upper[q]:
            return -1.0
        if np.isfinite(self.lo[q]):
            return 1.0
        if np.isfinite(self.hi[q]):
            return -1.0
        return 1.0 if d_q < 0 else -1.0

    def _ratio_test(self, q: int, u: np.ndarray):
        """Return (step, leaving position or None for a bound flip)."""
        t_best = np.inf
        if np.isfinite(self.lo[q]) and np.isfinite(self.hi[q]):
            t_best = self.hi[q] - self.lo[q]
        leave = None

        xB, basis = self.xB, self.basis
        lo_B, hi_B = self.lo[basis], self.hi[basis]
        pos = u > _PIVOT_TOL
        neg = u < -_PIVOT_TOL
        with np.errstate(invalid="ignore", divide="ignore"):
            t_pos = np.where(pos & np.isfinite(lo_B), (xB - lo_B) / u, np.inf)
            t_neg = np.where(neg & np.isfinite(hi_B), (xB - hi_B) / u, np.inf)
        t_rows = np.minimum(t_pos, t_neg)
        t_rows = np.maximum(t_rows, 0.0)  # degenerate steps clamp to zero

        i_min = int(np.argmin(t_rows)) if t_rows.size else -1
        if i_min >= 0 and t_rows[i_min] < t_best:
            t_best = t_rows[i_min]
            # among ties prefer the biggest pivot (or lowest index in Bland
            # mode, for the termination guarantee)
            ties = np.flatnonzero(t_rows <= t_best + 1e-12)
            if self.bland:
                leave = int(ties[np.argmin(basis[ties])])
            else:
                leave = int(ties[np.argmax(np.abs(u[ties]))])
        return t_best, leave

    def run_phase(self, c: np.ndarray) -> str:
        """Iterate to optimality for cost vector ``c``."""
        excluded: set[int] = set()
        while True:
            if self.iterations >= self.max_iters:
                return "iteration_limit"
            q, d, _ = self._price(c, excluded)
            if q is None:
                return "optimal"

            direction = self._direction(q, d[q])
            w = self.basis_obj.ftran(self._col(q))
            t, leave = self._ratio_test(q, direction * w)

            if not np.isfinite(t):
                return "unbounded"

            self.iterations += 1
            self._stall = self._stall + 1 if t <= 1e-12 else 0
            if self._stall > _STALL_LIMIT:
                self.bland = True

            u = direction * w
            if leave is None:
                # bound flip: the entering variable crosses its own range
                self.xB = self.xB - u * t
                self.at_upper[q] = ~self.at_upper[q]
                excluded.clear()
                continue

            enter_value = self._nonbasic_value(q) + direction * t
            leaving = self.basis[leave]
            if not self.basis_obj.replace(leave, q, w):
                # pivot too small: refactor once and re-price from scratch
                self.basis_obj.force_refactor()
                self._recompute_basics()
                excluded.add(q)
                continue
            excluded.clear()

            self.xB = self.xB - u * t
            self.xB[leave] = enter_value
            self.in_basis[q] = True
            self.in_basis[leaving] = False
            # the leaving variable lands on whichever bound blocked it
            self.at_upper[leaving] = bool(u[leave] < 0)
            self.at_upper[q] = False

            if len(self.basis_obj.etas) == 0:  # just refactored
                self._recompute_basics()

    # -- assembled solution ---------------------------------------------------

    def full_x(self) -> np.ndarray:
        x = self._nonbasic_vector()
        x[self.basis] = self.xB
        return x

    def true_x(self) -> np.ndarray:
        """Structural solution in the caller's (unscaled) variable space."""
        return (self.full_x() * self.col_scale)[: self.n]

    def feasibility_error(self) -> float:
        x = self.full_x()
        resid = np.max(np.abs(self.W @ x - self.b), initial=0.0)
        blo = np.max(np.maximum(self.lo - x, 0.0), initial=0.0)
        bhi = np.max(np.maximum(x - self.hi, 0.0), initial=0.0)
        bound_err = max(
            blo if np.isfinite(blo) else 0.0, bhi if np.isfinite(bhi) else 0.0
        )
        return float(max(resid, bound_err))

    def duals(self, c: np.ndarray) -> np.ndarray:
        y = self.basis_obj.btran(c[self.basis])
        return y / self.row_scale


def solve(
    lp: StandardFormLP,
    tol: float = 1e-9,
    max_iters: int = 50_000,
    warm: WarmStart | None = None,
) -> LPResult:
    """Minimize the LP; returns status, solution, objective, and duals."""
    n, m = lp.n, lp.m

    if m == 0:
        return _solve_boxes(lp)

    sv = _Solver(lp, tol, max_iters)

    started = False
    if warm is not None and len(warm.basis) == m and warm.at_upper.size == n + m:
        try:
            viol = sv._try_state(warm.basis, warm.at_upper)
            started = viol <= _FEAS_TOL
        except (RuntimeError, ValueError):
            started = False  # singular or stale basis: cold start below

    if not started:
        basis, at_upper = sv._cold_state()
        sv._try_state(basis, at_upper)
        n_art = sv._install_artificials()
        if n_art:
            c1 = np.zeros(sv.ncols)
            c1[n + m:] = 1.0
            # real-cost tiebreak: land feasibility near the optimum
            eps = _PHASE1_COST_MIX / (1.0 + np.max(np.abs(sv.c_real)))
            c1[: n + m] = eps * sv.c_real[: n + m]
            status = sv.run_phase(c1)
            if status == "iteration_limit":
                return _limit_result(sv, lp)
            if float(sv.full_x()[n + m:].sum()) > _FEAS_TOL:
                # the tiebreak can stall short of zero artificials on nearly
                # degenerate rows; only a pure phase 1 may declare infeasible
                c1[: n + m] = 0.0
                status = sv.run_phase(c1)
                if status == "iteration_limit":
                    return _limit_result(sv, lp)
            art_vals = sv.full_x()[n + m:]
            if float(art_vals.sum()) > _FEAS_TOL:
                stuck = tuple(
                    sv.art_rows[k]
                    for k in range(art_vals.size)
                    if art_vals[k] > _FEAS_TOL
                )
                return LPResult(
                    status="infeasible",
                    x=np.full(n, np.nan),
                    objective=np.nan,
                    iterations=sv.iterations,
                    stuck_rows=stuck,
                )
            # freeze artificials at zero for phase 2
            sv.lo[n + m:] = 0.0
            sv.hi[n + m:] = 0.0

    status = sv.run_phase(sv.c_real)
    if status == "iteration_limit":
        return _limit_result(sv, lp)
    if status == "unbounded":
        return LPResult(
            status="unbounded",
            x=np.full(n, np.nan),
            objective=-np.inf,
            iterations=sv.iterations,
        )

    # clean re-solve of the basics on a fresh factorization, then verify
    sv.basis_obj.force_refactor()
    sv._recompute_basics()
    err = sv.feasibility_error()
    if err > _FEAS_TOL:
        raise RuntimeError(
            f"simplex returned an infeasible 'optimal' point (error {err:.3e})"
        )

    x = sv.true_x()
    return LPResult(
        status="optimal",
        x=x,
        objective=float(lp.c @ x),
        iterations=sv.iterations,
        duals=sv.duals(sv.c_real),
        warm=WarmStart(
            basis=sv.basis.copy(),
            at_upper=sv.at_upper[: n + m].copy(),
        ),
    )


def _limit_result(sv: _Solver, lp: StandardFormLP) -> LPResult:
    x = sv.true_x()
    return LPResult(
        status="iteration_limit",
        x=x,
        objective=float(lp.c @ x),
        iterations=sv.iterations,
    )


def _solve_boxes(lp: StandardFormLP) -> LPResult:
    """Degenerate case: no constraint rows, pure box minimization."""
    x = np.zeros(lp.n)
    for j in range(lp.n):
        if lp.c[j] > 0:
            x[j] = lp.lo[j]
        elif lp.c[j] < 0:
            x[j] = lp.hi[j]
        else:
            x[j] = lp.lo[j] if np.isfinite(lp.lo[j]) else min(lp.hi[j], 0.0)
        if not np.isfinite(x[j]):
            return LPResult("unbounded", np.full(lp.n, np.nan), -np.inf, 0)
    return LPResult("optimal", x, float(lp.c @ x), 0, np.empty(0), None)


def dual_bound(lp: StandardFormLP, duals: np.ndarray, tol: float = 1e-6) -> float:
    """Weak-duality lower bound on the optimum from a row-dual vector.

    Builds the Lagrangian bound b.y + sum_j min over [lo, hi] of
    (c_j - y.A_j) x_j; reduced costs smaller than ``tol`` (scaled) are
    treated as zero.  Returns -inf if the certificate needs an infinite
    bound, i.e. the duals do not certify anything.
    """
    d = lp.c - lp.A.T @ duals
    scale = tol * (1.0 + np.max(np.abs(lp.c), initial=0.0))
    total = float(lp.b @ duals)
    for j in range(lp.n):
        dj = d[j]
        if abs(dj) <= scale:
            continue
        bound = lp.lo[j] if dj > 0 else lp.hi[j]
        if not np.isfinite(bound):
            return -np.inf
        total += dj * bound
    # row-sense sign sanity: '<' rows need y <= 0 is *not* required here
    # because the bound above is valid for any y when slacks are absorbed
    # into the variable terms; senses enter through the slack bounds, which
    # the caller's duals already reflect.
    for i, s in enumerate(lp.senses):
        # slack term: min over slack bounds of (0 - y_i) * s_i
        yi = duals[i]
        if abs(yi) <= scale:
            continue
        if s == "<":
            if -yi < 0:        # s in [0, inf): needs -y_i >= 0
                return -np.inf
        elif s == ">":
            if -yi > 0:        # s in (-inf, 0]: needs -y_i <= 0
                return -np.inf
            # contribution at s = 0 either way
    return total
