"""Dense bounded-variable simplex: the single numeric kernel of the package.

Interior sampling, bounding boxes, local gradient steps and every
branch-and-bound relaxation all funnel into :class:`SimplexSolver`. The
implementation is a primal two-phase tableau method with implicit variable
bounds, a crash basis of slacks, Dantzig pricing with a Bland fallback after
prolonged stalling, and periodic refactorization to contain drift.

The solver is deliberately self-contained; :class:`LpBackend` documents the
interface an external engine has to satisfy to replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NumericFailure

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE = "<="
GE = ">="
EQ = "="

# nonbasic/basic var states
_AT_LO = 0
_AT_HI = 1
_FREE = 2
_BASIC = 3


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective @ x subject to rows (a, rel, rhs) and lo <= x <= hi."""

    objective: np.ndarray
    maximize: bool
    rows: np.ndarray        # (m, n)
    rels: tuple             # of "<=", ">=", "="
    rhs: np.ndarray         # (m,)
    lo: np.ndarray          # (n,), -inf allowed
    hi: np.ndarray          # (n,), +inf allowed


@dataclass(frozen=True)
class LpOutcome:
    status: str
    point: Optional[np.ndarray] = None
    objective_value: Optional[float] = None
    # Row multipliers certifying infeasibility: y_i >= 0 on <= rows,
    # y_i <= 0 on >= rows, y'A = 0 and y'b < 0. Only attached when the
    # certificate validates numerically (it cannot when finite variable
    # bounds take part in the conflict).
    farkas: Optional[np.ndarray] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def make_lp(objective, rows=None, rels=None, rhs=None, lo=None, hi=None,
            maximize=True) -> LinearProgram:
    """Validate and assemble a LinearProgram from array-likes."""
    c = np.asarray(objective, dtype=float).ravel()
    n = c.size
    if rows is None:
        A = np.zeros((0, n))
        rl: tuple = ()
        b = np.zeros(0)
    else:
        A = np.asarray(rows, dtype=float)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        if A.size == 0:
            A = A.reshape(0, n)
        rl = tuple(rels) if rels is not None else (LE,) * A.shape[0]
        b = np.asarray(rhs, dtype=float).ravel()
    if A.shape[1] != n:
        raise ValueError(f"objective has {n} entries but rows have {A.shape[1]} columns")
    if len(rl) != A.shape[0] or b.size != A.shape[0]:
        raise ValueError("rows, rels and rhs lengths disagree")
    for r in rl:
        if r not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {r!r}")
    lov = np.full(n, -np.inf) if lo is None else np.asarray(lo, dtype=float).ravel()
    hiv = np.full(n, np.inf) if hi is None else np.asarray(hi, dtype=float).ravel()
    if lov.size != n or hiv.size != n:
        raise ValueError("bound vectors must match the objective length")
    if np.any(lov > hiv):
        raise ValueError("lower bound exceeds upper bound")
    if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise ValueError("objective, rows and rhs must be finite")
    return LinearProgram(c, bool(maximize), A, rl, b, lov, hiv)


class LpBackend:
    """Interface for pluggable LP engines."""

    def solve(self, lp: LinearProgram) -> LpOutcome:  # pragma: no cover - interface
        raise NotImplementedError


class SimplexSolver(LpBackend):
    """Primal bounded-variable simplex on a dense tableau."""

    def __init__(self, feas_tol=1e-9, opt_tol=1e-9, pivot_tol=1e-10,
                 max_iters=1_000_000, bland_trigger=500, refactor_every=150):
        self.feas_tol = feas_tol
        self.opt_tol = opt_tol
        self.pivot_tol = pivot_tol
        self.max_iters = max_iters
        self.bland_trigger = bland_trigger
        self.refactor_every = refactor_every

    # -- public API ---------------------------------------------------

    def solve(self, lp: LinearProgram) -> LpOutcome:
        c_user = lp.objective
        sign = -1.0 if lp.maximize else 1.0
        m, n = lp.rows.shape
        if m == 0:
            return self._solve_bounds_only(lp, sign)

        # slack per row: <= gets [0, inf), >= gets (-inf, 0], = is pinned to 0
        slack_lo = np.empty(m)
        slack_hi = np.empty(m)
        for i, r in enumerate(lp.rels):
            if r == LE:
                slack_lo[i], slack_hi[i] = 0.0, np.inf
            elif r == GE:
                slack_lo[i], slack_hi[i] = -np.inf, 0.0
            else:
                slack_lo[i], slack_hi[i] = 0.0, 0.0
        A = np.hstack([lp.rows, np.eye(m)])
        lo = np.concatenate([lp.lo, slack_lo])
        hi = np.concatenate([lp.hi, slack_hi])
        c = np.concatenate([sign * c_user, np.zeros(m)])

        status, x_all, farkas = self._run(A, lp.rhs.copy(), c, lo, hi, n)
        if status == OPTIMAL:
            x = x_all[:n]
            self._check_primal(lp, x)
            return LpOutcome(OPTIMAL, x, float(c_user @ x))
        if status == INFEASIBLE:
            farkas = self._validated_farkas(lp, farkas)
            return LpOutcome(INFEASIBLE, farkas=farkas)
        return LpOutcome(UNBOUNDED)

    def feasible_point(self, rows, rels=None, rhs=None, lo=None, hi=None) -> LpOutcome:
        """Zero-objective solve; any feasible point wins."""
        A = np.asarray(rows, dtype=float)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        lp = make_lp(np.zeros(A.shape[1]), A, rels, rhs, lo=lo, hi=hi, maximize=False)
        return self.solve(lp)

    # -- internals ----------------------------------------------------

    def _solve_bounds_only(self, lp: LinearProgram, sign: float) -> LpOutcome:
        # Rowless problem: optimize each variable against its own bounds.
        c = sign * lp.objective
        x = np.zeros(lp.objective.size)
        for j, cj in enumerate(c):
            if cj > 0:
                if not np.isfinite(lp.lo[j]):
                    return LpOutcome(UNBOUNDED)
                x[j] = lp.lo[j]
            elif cj < 0:
                if not np.isfinite(lp.hi[j]):
                    return LpOutcome(UNBOUNDED)
                x[j] = lp.hi[j]
            else:
                if np.isfinite(lp.lo[j]):
                    x[j] = lp.lo[j]
                elif np.isfinite(lp.hi[j]):
                    x[j] = lp.hi[j]
        return LpOutcome(OPTIMAL, x, float(lp.objective @ x))

    def _run(self, A, b, c, lo, hi, n_struct):
        """Two-phase simplex on A x = b with bounds; returns (status, x, farkas_y)."""
        m, n_cols = A.shape

        status = np.empty(n_cols, dtype=np.int8)
        val = np.zeros(n_cols)
        lo_fin = np.isfinite(lo)
        hi_fin = np.isfinite(hi)
        for j in range(n_cols):
            if lo_fin[j]:
                status[j], val[j] = _AT_LO, lo[j]
            elif hi_fin[j]:
                status[j], val[j] = _AT_HI, hi[j]
            else:
                status[j], val[j] = _FREE, 0.0

        resid = b - A @ val

        # crash basis: each row gets its own slack when the slack bounds can
        # absorb the residual, otherwise a fresh artificial column
        basis = np.empty(m, dtype=np.int64)
        art_rows = []
        art_signs = []
        for i in range(m):
            sc = n_struct + i
            if lo[sc] - self.feas_tol <= resid[i] <= hi[sc] + self.feas_tol:
                basis[i] = sc
            else:
                art_rows.append(i)
                art_signs.append(1.0 if resid[i] >= 0 else -1.0)
                basis[i] = -1
        n_art = len(art_rows)
        if n_art:
            art_block = np.zeros((m, n_art))
            for k, (i, s) in enumerate(zip(art_rows, art_signs)):
                art_block[i, k] = s
                basis[i] = n_cols + k
            A = np.hstack([A, art_block])
            lo = np.concatenate([lo, np.zeros(n_art)])
            hi = np.concatenate([hi, np.full(n_art, np.inf)])
            val = np.concatenate([val, np.zeros(n_art)])
            status = np.concatenate([status, np.full(n_art, _AT_LO, dtype=np.int8)])
            c = np.concatenate([c, np.zeros(n_art)])
        n_tot = A.shape[1]

        # diagonal crash basis makes the initial tableau a row rescale
        diag = np.ones(m)
        for i, s in zip(art_rows, art_signs):
            diag[i] = s
        T = A / diag[:, None]
        xB = resid / diag
        status[basis] = _BASIC

        state = _State(A, b, T, xB, basis, status, val, lo, hi)

        if n_art:
            c1 = np.zeros(n_tot)
            c1[n_cols:] = 1.0
            phase_status = self._iterate(state, c1, allow_unbounded=False,
                                         stop_below=1e-11)
            infeas = float(c1 @ self._full_point(state))
            if infeas > 1e-8:
                y = c1[state.basis] @ state.T[:, n_struct:n_struct + m]
                return INFEASIBLE, None, -y
            # artificials are pinned at zero for phase II
            state.lo[n_cols:] = 0.0
            state.hi[n_cols:] = 0.0
            if phase_status != OPTIMAL:  # pragma: no cover - defensive
                raise NumericFailure("phase I did not converge")

        phase_status = self._iterate(state, c, allow_unbounded=True)
        if phase_status == UNBOUNDED:
            return UNBOUNDED, None, None
        x_full = self._full_point(state)
        return OPTIMAL, x_full[:n_struct + m], None

    def _full_point(self, state) -> np.ndarray:
        full = state.val.copy()
        full[state.basis] = state.xB
        return full

    def _refactor(self, state):
        B = state.A[:, state.basis]
        try:
            Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
            raise NumericFailure("basis matrix became singular") from exc
        state.T = Binv @ state.A
        nb = np.ones(state.A.shape[1], dtype=bool)
        nb[state.basis] = False
        state.xB = Binv @ (state.b - state.A[:, nb] @ state.val[nb])

    def _iterate(self, state, c, allow_unbounded, stop_below=None):
        m, n_tot = state.T.shape
        bland = False
        no_improve = 0
        last_obj = np.inf
        pivots = 0
        for _ in range(self.max_iters):
            T, xB, basis = state.T, state.xB, state.basis
            status, val, lo, hi = state.status, state.val, state.lo, state.hi

            obj = float(c @ self._full_point(state))
            if stop_below is not None and obj <= stop_below:
                return OPTIMAL
            if obj < last_obj - 1e-12:
                no_improve = 0
            else:
                no_improve += 1
                if no_improve >= self.bland_trigger:
                    bland = True
            last_obj = obj

            d = c - c[basis] @ T
            movable = lo < hi  # pinned vars never enter
            inc = movable & (d < -self.opt_tol) & ((status == _AT_LO) | (status == _FREE))
            dec = movable & (d > self.opt_tol) & ((status == _AT_HI) | (status == _FREE))
            cand = inc | dec
            if not cand.any():
                return OPTIMAL
            if bland:
                q = int(np.flatnonzero(cand)[0])
            else:
                scores = np.where(cand, np.abs(d), -1.0)
                q = int(np.argmax(scores))
            s = 1.0 if inc[q] else -1.0

            w = T[:, q].copy()
            wt = s * w

            with np.errstate(divide="ignore", invalid="ignore"):
                r_down = np.where(wt > self.pivot_tol, (xB - lo[basis]) / wt, np.inf)
                r_up = np.where(wt < -self.pivot_tol, (hi[basis] - xB) / (-wt), np.inf)
            ratios = np.minimum(r_down, r_up)
            ratios[~np.isfinite(ratios)] = np.inf
            np.maximum(ratios, 0.0, out=ratios)
            rmin = ratios.min() if m else np.inf

            t_flip = np.inf
            if status[q] != _FREE and np.isfinite(lo[q]) and np.isfinite(hi[q]):
                t_flip = hi[q] - lo[q]

            if rmin == np.inf and t_flip == np.inf:
                if allow_unbounded:
                    return UNBOUNDED
                raise NumericFailure("phase I direction unbounded")  # pragma: no cover

            if t_flip <= rmin:
                # move q to its other bound, basis unchanged
                xB -= wt * t_flip
                if status[q] == _AT_LO:
                    status[q], val[q] = _AT_HI, hi[q]
                else:
                    status[q], val[q] = _AT_LO, lo[q]
            else:
                tie = np.flatnonzero(ratios <= rmin + 1e-9)
                if bland:
                    r = int(tie[np.argmin(basis[tie])])
                else:
                    r = int(tie[np.argmax(np.abs(wt[tie]))])
                enter_val = val[q] + s * rmin
                leave = basis[r]
                xB -= wt * rmin
                if wt[r] > 0:
                    status[leave], val[leave] = _AT_LO, lo[leave]
                else:
                    status[leave], val[leave] = _AT_HI, hi[leave]
                piv = w[r]
                row = T[r] / piv
                factors = T[:, q].copy()
                factors[r] = 0.0
                T -= np.outer(factors, row)
                T[r] = row
                xB[r] = enter_val
                basis[r] = q
                status[q] = _BASIC
                pivots += 1
                if pivots % self.refactor_every == 0:
                    self._refactor(state)
        raise NumericFailure("simplex exceeded the pivot cap")

    def _check_primal(self, lp: LinearProgram, x: np.ndarray):
        if lp.rows.shape[0] == 0:
            return
        ax = lp.rows @ x
        for i, r in enumerate(lp.rels):
            scale = max(1.0, abs(lp.rhs[i]), abs(ax[i]))
            err = ax[i] - lp.rhs[i]
            if r == LE and err > 1e-6 * scale:
                raise NumericFailure(f"row {i} violated by {err:.3e}")
            if r == GE and err < -1e-6 * scale:
                raise NumericFailure(f"row {i} violated by {-err:.3e}")
            if r == EQ and abs(err) > 1e-6 * scale:
                raise NumericFailure(f"row {i} violated by {abs(err):.3e}")

    def _validated_farkas(self, lp: LinearProgram, y) -> Optional[np.ndarray]:
        if y is None:
            return None
        scale = max(1.0, float(np.max(np.abs(y))))
        for i, r in enumerate(lp.rels):
            if r == LE and y[i] < -1e-7 * scale:
                return None
            if r == GE and y[i] > 1e-7 * scale:
                return None
        combo = y @ lp.rows
        if np.max(np.abs(combo)) > 1e-6 * scale * max(1.0, float(np.max(np.abs(lp.rows)))):
            return None
        if y @ lp.rhs >= -1e-10:
            return None
        return y


class _State:
    """Mutable simplex state shared between phases."""

    __slots__ = ("A", "b", "T", "xB", "basis", "status", "val", "lo", "hi")

    def __init__(self, A, b, T, xB, basis, status, val, lo, hi):
        self.A = A
        self.b = b
        self.T = T
        self.xB = xB
        self.basis = basis
        self.status = status
        self.val = val
        self.lo = lo
        self.hi = hi


_default = SimplexSolver()


def default_solver() -> SimplexSolver:
    return _default


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve with the shared default kernel."""
    return _default.solve(lp)


def feasible_point(rows, rels=None, rhs=None, lo=None, hi=None) -> LpOutcome:
    return _default.feasible_point(rows, rels, rhs, lo=lo, hi=hi)
