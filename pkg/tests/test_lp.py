import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tsppoly.lp import (
    FREE,
    NONNEG,
    LPOutcome,
    LinearSystem,
    solve_feasibility,
    solve_min,
    verify_certificate_lp,
)


def sys_of(columns, rhs, bounds=None, objective=None):
    cols = tuple(tuple(F(v) for v in col) for col in columns)
    b = tuple(F(v) for v in rhs)
    if bounds is None:
        bounds = (NONNEG,) * len(cols)
    obj = tuple(F(v) for v in objective) if objective is not None else None
    return LinearSystem(cols, b, bounds, obj)


def test_feasibility_examples():
    out = solve_feasibility(sys_of([(1,)], (1,)))
    assert out.status == "feasible" and out.primal == (F(1),)
    assert verify_certificate_lp(sys_of([(1,)], (1,)), out)

    sys2 = sys_of([(0,)], (1,))
    out2 = solve_feasibility(sys2)
    assert out2.status == "infeasible"
    y = out2.dual_certificate
    assert sum(a * b for a, b in zip(y, sys2.rhs)) < 0
    assert verify_certificate_lp(sys2, out2)


def test_tour_plus_shortcuts_brute_force_case():
    # Express (2, 0, 1) on three vertices as the triangle plus non-negative
    # shortcut multipliers: eliminating by hand forces a negative multiplier,
    # so the system is infeasible.
    tour = (1, 1, 1, 1)  # triangle column with convexity row
    shortcuts = [(1, -1, 1, 0), (-1, 1, 1, 0), (1, 1, -1, 0)]
    sys = sys_of([tour] + shortcuts, (2, 0, 1, 1))
    out = solve_feasibility(sys)
    assert out.status == "infeasible"
    assert verify_certificate_lp(sys, out)


def test_solve_min_examples():
    out = solve_min(sys_of([()], (), objective=(1,)))
    assert out.status == "feasible" and out.objective_value == 0
    out2 = solve_min(sys_of([()], (), objective=(-1,)))
    assert out2.status == "unbounded" and out2.ray == (F(1),)
    assert verify_certificate_lp(sys_of([()], (), objective=(-1,)), out2)
    with pytest.raises(ValueError):
        solve_min(sys_of([(1,)], (1,)))


def test_solve_min_infeasible_is_a_status():
    # one variable, two rows demanding x = 1 and x = 2 at once
    sys = sys_of([(1, 1)], (1, 2), objective=(5,))
    out = solve_min(sys)
    assert out.status == "infeasible"
    assert verify_certificate_lp(sys, out)


def test_free_variables():
    sys = sys_of([(1,)], (-3,), bounds=(FREE,))
    out = solve_feasibility(sys)
    assert out.status == "feasible" and out.primal == (F(-3),)
    assert verify_certificate_lp(sys, out)

    # min x + y with x - y = 5, x >= 0, y free: y = x - 5, optimum -5 at x = 0
    sys2 = sys_of([(1,), (-1,)], (5,), bounds=(NONNEG, FREE), objective=(1, 1))
    out2 = solve_min(sys2)
    assert out2.status == "feasible" and out2.objective_value == -5
    assert verify_certificate_lp(sys2, out2)

    # min -(x + y) on the same line grows without bound as x increases
    sys3 = sys_of([(1,), (-1,)], (5,), bounds=(NONNEG, FREE), objective=(-1, -1))
    out3 = solve_min(sys3)
    assert out3.status == "unbounded"
    assert verify_certificate_lp(sys3, out3)


def test_redundant_rows_and_duals():
    sys = sys_of([(1, 1), (1, 1)], (2, 2), objective=(1, 2))
    out = solve_min(sys)
    assert out.status == "feasible" and out.objective_value == 2
    assert out.primal == (F(2), F(0))
    assert verify_certificate_lp(sys, out)


def test_verify_rejects_tampering():
    sys = sys_of([(1,)], (1,))
    out = solve_feasibility(sys)
    assert not verify_certificate_lp(sys, LPOutcome("feasible", primal=(F(2),)))
    assert not verify_certificate_lp(
        sys, LPOutcome("infeasible", dual_certificate=(F(0),))
    )
    sysm = sys_of([(1, 1)], (1, 1), objective=(1,))
    good = solve_min(sysm)
    assert verify_certificate_lp(sysm, good)
    bad = LPOutcome(
        "feasible",
        primal=good.primal,
        dual_certificate=(F(7), F(7)),
        objective_value=good.objective_value,
    )
    assert not verify_certificate_lp(sysm, bad)


# Exhaustive agreement oracle: a system with all-non-negative variables is
# feasible iff some basic solution (supported on linearly independent
# columns) is feasible, and a bounded minimum is attained at one of them.


def _solve_square(cols, rhs):
    """Unique solution of the column system, or None (singular/inconsistent)."""
    m = len(rhs)
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [rhs[i]] for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            return None  # dependent columns: skip this support
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if aug[r][k] != 0:
            return None  # inconsistent
    return [aug[i][k] for i in range(k)]


def _basic_points(sys):
    n = len(sys.columns)
    m = len(sys.rhs)
    points = []
    for size in range(0, min(n, m) + 1):
        for support in itertools.combinations(range(n), size):
            cols = [sys.columns[j] for j in support]
            if size == 0:
                if all(v == 0 for v in sys.rhs):
                    points.append((F(0),) * n)
                continue
            sol = _solve_square(cols, sys.rhs)
            if sol is None or any(v < 0 for v in sol):
                continue
            x = [F(0)] * n
            for j, v in zip(support, sol):
                x[j] = v
            points.append(tuple(x))
    return points


small_entries = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 3),
    st.integers(1, 3),
    st.data(),
)
def test_agreement_with_basic_point_enumeration(m, n, data):
    cols = [
        tuple(F(data.draw(small_entries)) for _ in range(m)) for _ in range(n)
    ]
    rhs = tuple(F(data.draw(small_entries)) for _ in range(m))
    obj = tuple(F(data.draw(small_entries)) for _ in range(n))
    sys = LinearSystem(tuple(cols), rhs, (NONNEG,) * n, obj)

    points = _basic_points(sys)
    out = solve_feasibility(sys)
    assert verify_certificate_lp(sys, out)
    assert (out.status == "feasible") == bool(points)

    opt = solve_min(sys)
    assert verify_certificate_lp(sys, opt)
    if opt.status == "feasible":
        best = min(
            sum(c * v for c, v in zip(obj, p)) for p in points
        )
        assert opt.objective_value == best
    elif opt.status == "infeasible":
        assert not points
    else:
        assert opt.status == "unbounded"
        assert points  # unbounded requires feasibility
