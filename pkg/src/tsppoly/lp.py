"""Exact rational linear programming with verifiable certificates.

Solves systems of the form  A x = b  with per-column sign constraints
(free or non-negative) and an optional linear objective, entirely in exact
rational arithmetic. Every outcome carries data that can be re-checked
independently of the solver:

* feasible: a primal assignment satisfying all equalities and signs;
* infeasible: a Farkas vector y with y.A_j >= 0 for every non-negative
  column, y.A_j = 0 for every free column, and y.b < 0;
* unbounded: a feasible point plus an improving ray r with A r = 0,
  r >= 0 on non-negative columns and c.r < 0;
* optimal: the primal plus dual prices y with c_j - y.A_j >= 0 on
  non-negative columns (= 0 on free ones) and c.x = y.b.

The solver is a revised simplex with an explicit basis inverse. Pricing is
Dantzig's rule (most negative reduced cost) while the objective makes
progress; after a run of degenerate pivots it falls back to Bland's
smallest-index rule, which cannot cycle, and returns to Dantzig once the
objective strictly improves again. Every solve therefore terminates. Free
variables are split into differences of two non-negative ones; phase 1
introduces one artificial column per row. Internally, arithmetic runs on
gmpy2 rationals when available (a large constant-factor win) and falls
back to fractions.Fraction otherwise; the public interface always speaks
Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

FREE = "free"
NONNEG = "nonneg"

_ZERO = _Q(0)
_ONE = _Q(1)

# Consecutive degenerate pivots tolerated before pricing switches from
# Dantzig to Bland's anti-cycling rule.
_STALL_LIMIT = 12


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class LinearSystem:
    """Columns of A, right-hand side b, per-column sign constraints, optional cost."""

    columns: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    col_bounds: Tuple[str, ...]
    objective: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        m = len(self.rhs)
        cols = tuple(tuple(Fraction(v) for v in col) for col in self.columns)
        for col in cols:
            if len(col) != m:
                raise ValueError(
                    f"column has {len(col)} rows, right-hand side has {m}"
                )
        if len(self.col_bounds) != len(cols):
            raise ValueError("one bound per column required")
        for b in self.col_bounds:
            if b not in (FREE, NONNEG):
                raise ValueError(f"unknown column bound {b!r}")
        obj = self.objective
        if obj is not None:
            obj = tuple(Fraction(v) for v in obj)
            if len(obj) != len(cols):
                raise ValueError("objective length must match column count")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "rhs", tuple(Fraction(v) for v in self.rhs))
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "col_bounds", tuple(self.col_bounds))


@dataclass(frozen=True)
class LPOutcome:
    """Solver verdict plus the exact data needed to re-verify it."""

    status: str  # "feasible" | "infeasible" | "unbounded"
    primal: Optional[Tuple[Fraction, ...]] = None
    dual_certificate: Optional[Tuple[Fraction, ...]] = None
    objective_value: Optional[Fraction] = None
    ray: Optional[Tuple[Fraction, ...]] = None


class _Tableau:
    """Revised simplex working state over the sign-flipped, split system."""

    def __init__(self, sys: LinearSystem):
        self.m = len(sys.rhs)
        self.row_sign = [1 if v >= 0 else -1 for v in sys.rhs]
        self.b = [_Q(v) if s == 1 else -_Q(v) for v, s in zip(sys.rhs, self.row_sign)]

        # Split free columns into a (+) and a (-) copy; remember the mapping
        # back to original column indices.
        self.cols: List[List[Tuple[int, object]]] = []  # sparse (row, value)
        self.col_orig: List[Tuple[int, int]] = []  # (original index, sign)
        self.cost: List[object] = []
        obj = sys.objective
        for j, col in enumerate(sys.columns):
            sparse = [
                (i, _Q(v) if self.row_sign[i] == 1 else -_Q(v))
                for i, v in enumerate(col)
                if v != 0
            ]
            cj = _Q(obj[j]) if obj is not None else _ZERO
            self.cols.append(sparse)
            self.col_orig.append((j, 1))
            self.cost.append(cj)
            if sys.col_bounds[j] == FREE:
                self.cols.append([(i, -v) for i, v in sparse])
                self.col_orig.append((j, -1))
                self.cost.append(-cj)

        self.n_real = len(self.cols)
        self.n_art = self.m
        # Columns whose nonzero entries are all +-1 (tours, shortcuts,
        # artificials) price with additions only.
        self.unit_cols: List[Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = []
        for sparse in self.cols:
            if all(v == 1 or v == -1 for _, v in sparse):
                plus = tuple(i for i, v in sparse if v == 1)
                minus = tuple(i for i, v in sparse if v == -1)
                self.unit_cols.append((plus, minus))
            else:
                self.unit_cols.append(None)
        # Artificial j occupies column n_real + j with a single +1 entry.
        self.basis = [self.n_real + i for i in range(self.m)]
        self.binv = [
            [_ONE if i == k else _ZERO for k in range(self.m)] for i in range(self.m)
        ]
        self.xb = list(self.b)

    def col_sparse(self, j: int) -> List[Tuple[int, object]]:
        if j < self.n_real:
            return self.cols[j]
        return [(j - self.n_real, _ONE)]

    def col_cost(self, j: int, phase: int) -> object:
        if phase == 1:
            return _ZERO if j < self.n_real else _ONE
        return self.cost[j] if j < self.n_real else _ZERO

    def dual_row(self, phase: int) -> List[object]:
        y = [_ZERO] * self.m
        for i in range(self.m):
            cb = self.col_cost(self.basis[i], phase)
            if cb != 0:
                row = self.binv[i]
                for k in range(self.m):
                    if row[k] != 0:
                        y[k] += cb * row[k]
        return y

    def reduced_cost(self, j: int, y: List[object], phase: int) -> object:
        rc = self.col_cost(j, phase)
        if j < self.n_real:
            unit = self.unit_cols[j]
            if unit is not None:
                for i in unit[0]:
                    rc -= y[i]
                for i in unit[1]:
                    rc += y[i]
                return rc
        for i, v in self.col_sparse(j):
            if y[i] != 0:
                rc -= y[i] * v
        return rc

    def direction(self, j: int) -> List[object]:
        binv = self.binv
        d = []
        for i in range(self.m):
            row = binv[i]
            acc = _ZERO
            for k, v in self.col_sparse(j):
                if row[k] != 0:
                    acc += row[k] * v
            d.append(acc)
        return d

    def pivot(self, j: int, r: int, d: List[object]) -> None:
        piv = d[r]
        row_r = self.binv[r]
        inv_piv = _ONE / piv
        self.binv[r] = [v * inv_piv for v in row_r]
        self.xb[r] = self.xb[r] * inv_piv
        for i in range(self.m):
            if i == r:
                continue
            f = d[i]
            if f == 0:
                continue
            row_i = self.binv[i]
            row_rn = self.binv[r]
            self.binv[i] = [a - f * b for a, b in zip(row_i, row_rn)]
            self.xb[i] = self.xb[i] - f * self.xb[r]
        self.basis[r] = j

    def run_phase(self, phase: int):
        """Simplex sweep. Returns ("optimal", None) or, in phase 2,
        possibly ("unbounded", (enter, d))."""
        limit = self.n_real + (self.n_art if phase == 1 else 0)
        stalled = 0
        while True:
            y = self.dual_row(phase)
            basic = set(self.basis)
            bland = stalled >= _STALL_LIMIT
            enter = -1
            best_rc = _ZERO
            for j in range(limit):
                if j in basic:
                    continue
                rc = self.reduced_cost(j, y, phase)
                if rc < 0:
                    if bland:
                        enter = j
                        break
                    if rc < best_rc:
                        best_rc = rc
                        enter = j
            if enter < 0:
                return "optimal", None
            d = self.direction(enter)

            if phase == 2:
                # A basic artificial with d < 0 would turn positive; kick it
                # out with a degenerate pivot instead (its value is 0).
                evict = next(
                    (
                        i
                        for i in range(self.m)
                        if self.basis[i] >= self.n_real and d[i] < 0
                    ),
                    None,
                )
                if evict is not None:
                    self.pivot(enter, evict, d)
                    stalled += 1
                    continue

            leave = -1
            best = None
            for i in range(self.m):
                if d[i] > 0:
                    ratio = self.xb[i] / d[i]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                if phase == 1:
                    raise AssertionError("phase-1 objective is bounded below")
                return "unbounded", (enter, d)
            degenerate = self.xb[leave] == 0
            self.pivot(enter, leave, d)
            stalled = stalled + 1 if degenerate else 0

    def objective_value(self, phase: int) -> object:
        total = _ZERO
        for i in range(self.m):
            cb = self.col_cost(self.basis[i], phase)
            if cb != 0:
                total += cb * self.xb[i]
        return total

    def primal_original(self, n_orig: int) -> List[Fraction]:
        x = [Fraction(0)] * n_orig
        for i, j in enumerate(self.basis):
            if j < self.n_real:
                orig, sign = self.col_orig[j]
                x[orig] += sign * _to_fraction(self.xb[i])
        return x

    def farkas_original(self) -> List[Fraction]:
        y = self.dual_row(1)
        return [
            -self.row_sign[i] * _to_fraction(y[i]) for i in range(self.m)
        ]

    def duals_original(self, phase: int) -> List[Fraction]:
        y = self.dual_row(phase)
        return [self.row_sign[i] * _to_fraction(y[i]) for i in range(self.m)]

    def ray_original(self, enter: int, d: List[object], n_orig: int) -> List[Fraction]:
        r = [Fraction(0)] * n_orig
        orig, sign = self.col_orig[enter]
        r[orig] += sign
        for i, j in enumerate(self.basis):
            if j < self.n_real and d[i] != 0:
                o, s = self.col_orig[j]
                r[o] += s * _to_fraction(-d[i])
        return r


def solve_feasibility(sys: LinearSystem) -> LPOutcome:
    """Decide A x = b with the given sign constraints.

    Feasible outcomes carry an exact primal point; infeasible ones carry a
    Farkas certificate (see module docstring for its convention).
    """
    tab = _Tableau(sys)
    tab.run_phase(1)
    if tab.objective_value(1) > 0:
        return LPOutcome(
            status="infeasible",
            dual_certificate=tuple(tab.farkas_original()),
        )
    return LPOutcome(
        status="feasible",
        primal=tuple(tab.primal_original(len(sys.columns))),
    )


def solve_min(sys: LinearSystem) -> LPOutcome:
    """Minimize the objective over the system; requires sys.objective."""
    if sys.objective is None:
        raise ValueError("solve_min requires an objective row")
    tab = _Tableau(sys)
    tab.run_phase(1)
    if tab.objective_value(1) > 0:
        return LPOutcome(
            status="infeasible",
            dual_certificate=tuple(tab.farkas_original()),
        )
    status, data = tab.run_phase(2)
    n_orig = len(sys.columns)
    if status == "unbounded":
        enter, d = data
        return LPOutcome(
            status="unbounded",
            primal=tuple(tab.primal_original(n_orig)),
            ray=tuple(tab.ray_original(enter, d, n_orig)),
        )
    primal = tab.primal_original(n_orig)
    value = sum(
        (c * x for c, x in zip(sys.objective, primal)), start=Fraction(0)
    )
    return LPOutcome(
        status="feasible",
        primal=tuple(primal),
        dual_certificate=tuple(tab.duals_original(2)),
        objective_value=value,
    )


def _column_dot(y: Sequence[Fraction], col: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(y, col)), start=Fraction(0))


def verify_certificate_lp(sys: LinearSystem, out: LPOutcome) -> bool:
    """Exact, solver-independent re-check of an LP outcome.

    Verifies whichever claim the outcome makes: primal feasibility, Farkas
    infeasibility, dual optimality (when both primal and duals are present
    alongside an objective), or an improving ray.
    """
    if out.status == "infeasible":
        y = out.dual_certificate
        if y is None or len(y) != len(sys.rhs):
            return False
        for col, bound in zip(sys.columns, sys.col_bounds):
            s = _column_dot(y, col)
            if bound == NONNEG and s < 0:
                return False
            if bound == FREE and s != 0:
                return False
        return _column_dot(y, sys.rhs) < 0

    if out.primal is None or len(out.primal) != len(sys.columns):
        return False
    x = out.primal
    for j, bound in enumerate(sys.col_bounds):
        if bound == NONNEG and x[j] < 0:
            return False
    for i in range(len(sys.rhs)):
        lhs = sum(
            (x[j] * sys.columns[j][i] for j in range(len(x))), start=Fraction(0)
        )
        if lhs != sys.rhs[i]:
            return False

    if out.status == "feasible":
        if out.dual_certificate is not None and sys.objective is not None:
            y = out.dual_certificate
            if len(y) != len(sys.rhs):
                return False
            for j, (col, bound) in enumerate(zip(sys.columns, sys.col_bounds)):
                rc = sys.objective[j] - _column_dot(y, col)
                if bound == NONNEG and rc < 0:
                    return False
                if bound == FREE and rc != 0:
                    return False
            cx = sum(
                (c * v for c, v in zip(sys.objective, x)), start=Fraction(0)
            )
            if out.objective_value is not None and out.objective_value != cx:
                return False
            return cx == _column_dot(y, sys.rhs)
        return True

    if out.status == "unbounded":
        if sys.objective is None or out.ray is None:
            return False
        r = out.ray
        if len(r) != len(sys.columns):
            return False
        for j, bound in enumerate(sys.col_bounds):
            if bound == NONNEG and r[j] < 0:
                return False
        for i in range(len(sys.rhs)):
            lhs = sum(
                (r[j] * sys.columns[j][i] for j in range(len(r))), start=Fraction(0)
            )
            if lhs != 0:
                return False
        cr = sum((c * v for c, v in zip(sys.objective, r)), start=Fraction(0))
        return cr < 0

    return False
