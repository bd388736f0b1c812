"""Certified membership oracles for the polyhedra in play.

Five sets are decided, each with an exactly re-verifiable certificate:

* the metric cone (all triangle inequalities),
* its polar cone, generated by the shortcut vectors,
* the tour polytope (convex hull of Hamiltonian cycle vectors),
* the Minkowski sum of the tour polytope and the polar cone,
* that sum intersected with the non-negative orthant.

All decisions reduce to exact rational LP feasibility over the fully
enumerated generator sets, which caps the supported range at 3 <= n <= 8
(at most 2520 tours). Inside answers list an explicit combination of named
generators; outside answers carry a separating inequality normalized to
coprime integers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .edgespace import EdgeSpace, EdgeVector, dot, edge_pairs
from .lp import LPOutcome, LinearSystem, NONNEG, solve_feasibility
from .multigraph import (
    HamiltonianCycle,
    ShortcutTriple,
    cycle_vector,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    shortcut_vector,
)

INSIDE = "inside"
OUTSIDE = "outside"


@dataclass(frozen=True)
class MetricViolation:
    """A strictly violated triangle inequality: a_{uv} > a_{uw} + a_{wv}."""

    u: int
    v: int
    w: int
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        return (
            f"a[{self.u},{self.v}] = {self.lhs} > "
            f"a[{self.u},{self.w}] + a[{self.w},{self.v}] = {self.rhs}"
        )


@dataclass(frozen=True)
class MembershipAnswer:
    """Verdict plus certificate for one membership query.

    Inside: ``tour_coeffs`` and ``shortcut_coeffs`` name a convex/conic
    combination reproducing the point. Outside: ``separating`` is a pair
    (a, alpha) with a.x < alpha while a.y >= alpha holds for every
    generator of the set. ``lp_outcome`` keeps the raw solver outcome for
    independent re-verification; it does not take part in equality.
    """

    set_name: str
    verdict: str
    point: EdgeVector
    tour_coeffs: Tuple[Tuple[HamiltonianCycle, Fraction], ...] = ()
    shortcut_coeffs: Tuple[Tuple[ShortcutTriple, Fraction], ...] = ()
    separating: Optional[Tuple[EdgeVector, Fraction]] = None
    lp_outcome: Optional[LPOutcome] = field(
        default=None, compare=False, repr=False
    )


class ScopeError(ValueError):
    """Query outside the supported vertex-count range."""


def _require_scope(n: int) -> None:
    if not (3 <= n <= 8):
        raise ScopeError(f"membership oracles support 3 <= n <= 8, got n = {n}")


def metric_cone_check(a: EdgeVector) -> Optional[MetricViolation]:
    """None when a satisfies every triangle inequality, else the
    lexicographically first violated ordered triple (u, v, w)."""
    n = a.space.n
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if v == u:
                continue
            for w in range(1, n + 1):
                if w == u or w == v:
                    continue
                lhs = a.get(u, v)
                rhs = a.get(u, w) + a.get(w, v)
                if lhs > rhs:
                    return MetricViolation(u, v, w, lhs, rhs)
    return None


@lru_cache(maxsize=None)
def _tour_table(n: int):
    tours = enumerate_hamiltonian_cycles(n)
    return tuple(tours), tuple(
        tuple(Fraction(k) for k in cycle_vector(t).mult) for t in tours
    )


@lru_cache(maxsize=None)
def _shortcut_table(n: int):
    space = EdgeSpace(n)
    triples = enumerate_shortcut_triples(n)
    return tuple(triples), tuple(
        shortcut_vector(t, space).coords for t in triples
    )


def _normalize_inequality(
    a: Sequence[Fraction], alpha: Fraction, space: EdgeSpace
) -> Tuple[EdgeVector, Fraction]:
    """Scale (a, alpha) by a positive rational to coprime integers."""
    denoms = [c.denominator for c in a] + [alpha.denominator]
    scale = Fraction(math.lcm(*denoms))
    ints = [int(c * scale) for c in a] + [int(alpha * scale)]
    g = math.gcd(*ints)
    if g > 1:
        ints = [c // g for c in ints]
    return (
        EdgeVector(space, tuple(Fraction(c) for c in ints[:-1])),
        Fraction(ints[-1]),
    )


def polar_membership(y: EdgeVector) -> MembershipAnswer:
    """Is y a non-negative combination of shortcut vectors?

    The outside certificate is a vector in the metric cone with a.y < 0.
    """
    n = y.space.n
    _require_scope(n)
    triples, cols = _shortcut_table(n)
    sys = LinearSystem(
        columns=cols, rhs=y.coords, col_bounds=(NONNEG,) * len(cols)
    )
    out = solve_feasibility(sys)
    if out.status == "feasible":
        coeffs = tuple(
            (t, c) for t, c in zip(triples, out.primal) if c != 0
        )
        return MembershipAnswer(
            "polar", INSIDE, y, shortcut_coeffs=coeffs, lp_outcome=out
        )
    a, alpha = _normalize_inequality(
        out.dual_certificate, Fraction(0), y.space
    )
    return MembershipAnswer(
        "polar", OUTSIDE, y, separating=(a, alpha), lp_outcome=out
    )


def stsp_membership(x: EdgeVector) -> MembershipAnswer:
    """Is x a convex combination of Hamiltonian cycle vectors?"""
    n = x.space.n
    _require_scope(n)
    tours, cols = _tour_table(n)
    columns = tuple(col + (Fraction(1),) for col in cols)
    sys = LinearSystem(
        columns=columns,
        rhs=x.coords + (Fraction(1),),
        col_bounds=(NONNEG,) * len(columns),
    )
    out = solve_feasibility(sys)
    if out.status == "feasible":
        coeffs = tuple((t, c) for t, c in zip(tours, out.primal) if c != 0)
        return MembershipAnswer(
            "stsp", INSIDE, x, tour_coeffs=coeffs, lp_outcome=out
        )
    y = out.dual_certificate
    a, alpha = _normalize_inequality(y[:-1], -y[-1], x.space)
    return MembershipAnswer(
        "stsp", OUTSIDE, x, separating=(a, alpha), lp_outcome=out
    )


def minkowski_membership(x: EdgeVector) -> MembershipAnswer:
    """Is x a convex combination of tours plus a non-negative combination
    of shortcut vectors?"""
    n = x.space.n
    _require_scope(n)
    tours, tcols = _tour_table(n)
    triples, scols = _shortcut_table(n)
    columns = tuple(col + (Fraction(1),) for col in tcols) + tuple(
        col + (Fraction(0),) for col in scols
    )
    sys = LinearSystem(
        columns=columns,
        rhs=x.coords + (Fraction(1),),
        col_bounds=(NONNEG,) * len(columns),
    )
    out = solve_feasibility(sys)
    if out.status == "feasible":
        nt = len(tours)
        tc = tuple(
            (t, c) for t, c in zip(tours, out.primal[:nt]) if c != 0
        )
        sc = tuple(
            (t, c) for t, c in zip(triples, out.primal[nt:]) if c != 0
        )
        return MembershipAnswer(
            "minkowski", INSIDE, x, tour_coeffs=tc, shortcut_coeffs=sc,
            lp_outcome=out,
        )
    y = out.dual_certificate
    a, alpha = _normalize_inequality(y[:-1], -y[-1], x.space)
    return MembershipAnswer(
        "minkowski", OUTSIDE, x, separating=(a, alpha), lp_outcome=out
    )


def gtsp_membership(x: EdgeVector) -> MembershipAnswer:
    """Decide membership in the non-negative part of the Minkowski sum.

    The point is inside iff x >= 0 coordinatewise and the Minkowski oracle
    says inside; a negative coordinate yields the certificate x_e >= 0.
    """
    n = x.space.n
    _require_scope(n)
    for i, c in enumerate(x.coords):
        if c < 0:
            coords = [Fraction(0)] * x.space.dim
            coords[i] = Fraction(1)
            a = EdgeVector(x.space, tuple(coords))
            return MembershipAnswer(
                "gtsp", OUTSIDE, x, separating=(a, Fraction(0))
            )
    inner = minkowski_membership(x)
    return MembershipAnswer(
        "gtsp",
        inner.verdict,
        x,
        tour_coeffs=inner.tour_coeffs,
        shortcut_coeffs=inner.shortcut_coeffs,
        separating=inner.separating,
        lp_outcome=inner.lp_outcome,
    )


def verify_membership(answer: MembershipAnswer) -> bool:
    """Re-check a membership certificate by direct substitution.

    Inside answers must reproduce the point exactly with valid coefficient
    signs (and a convex combination where one is required). Outside answers
    must exhibit an inequality valid for every generator of the set and
    violated by the point; for the orthant-restricted set a non-negativity
    inequality violated by the point is also accepted.
    """
    x = answer.point
    space = x.space
    if answer.verdict == INSIDE:
        if any(c < 0 for _, c in answer.tour_coeffs):
            return False
        if any(c < 0 for _, c in answer.shortcut_coeffs):
            return False
        if answer.set_name in ("stsp", "minkowski", "gtsp"):
            if sum((c for _, c in answer.tour_coeffs), start=Fraction(0)) != 1:
                return False
        if answer.set_name == "polar" and answer.tour_coeffs:
            return False
        if answer.set_name == "stsp" and answer.shortcut_coeffs:
            return False
        if answer.set_name == "gtsp" and not x.is_nonnegative():
            return False
        total = EdgeVector.zero(space)
        for t, c in answer.tour_coeffs:
            total = total + cycle_vector(t).vector().scaled(c)
        for t, c in answer.shortcut_coeffs:
            total = total + shortcut_vector(t, space).scaled(c)
        return total == x

    if answer.separating is None:
        return False
    a, alpha = answer.separating
    if dot(a, x) >= alpha:
        return False
    if answer.set_name == "gtsp":
        nonneg = (
            alpha <= 0
            and sum(1 for c in a.coords if c != 0) == 1
            and all(c >= 0 for c in a.coords)
        )
        if nonneg:
            return True
    if answer.set_name in ("stsp", "minkowski", "gtsp"):
        _, tcols = _tour_table(space.n)
        for col in tcols:
            if sum((p * q for p, q in zip(a.coords, col)), start=Fraction(0)) < alpha:
                return False
    if answer.set_name in ("polar", "minkowski", "gtsp"):
        if answer.set_name == "polar" and alpha != 0:
            return False
        _, scols = _shortcut_table(space.n)
        for col in scols:
            if sum((p * q for p, q in zip(a.coords, col)), start=Fraction(0)) < 0:
                return False
    return True


def face_degree_two_check(x: EdgeVector) -> bool:
    """True iff the degree equality sum_{v != u} x_{uv} = 2 holds at every vertex."""
    return all(
        x.vertex_degree(v) == 2 for v in range(1, x.space.n + 1)
    )


def optimize_metric(a: EdgeVector, n: int) -> Tuple[Fraction, HamiltonianCycle]:
    """Minimum of a.x over all Hamiltonian cycles on [n].

    For a in the metric cone this minimum equals the infimum over all
    Eulerian-connected integer vectors (see the exhaustive cross-check in
    the acceptance suite). Requires a metric input; the first violated
    triangle inequality is reported otherwise. Ties go to the cycle whose
    normalized vertex sequence is lexicographically smallest.
    """
    _require_scope(n)
    if a.space.n != n:
        raise ValueError(f"vector lives on [{a.space.n}], not [{n}]")
    violation = metric_cone_check(a)
    if violation is not None:
        raise ValueError(f"not in the metric cone: {violation}")
    tours, cols = _tour_table(n)
    best = None
    best_tour = None
    for t, col in zip(tours, cols):
        cost = sum(
            (p * q for p, q in zip(a.coords, col) if q != 0), start=Fraction(0)
        )
        if best is None or cost < best:
            best = cost
            best_tour = t
    return best, best_tour


def sample_metric(n: int, seed: int) -> EdgeVector:
    """A seeded random member of the metric cone.

    Draws uniform random rational edge weights and takes their shortest-path
    closure, which satisfies every triangle inequality by construction.
    """
    space = EdgeSpace(n)
    rng = random.Random(seed)
    dist = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for u, v in edge_pairs(n):
        w = Fraction(rng.randint(1, 20), rng.randint(1, 5))
        dist[u][v] = w
        dist[v][u] = w
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i == k:
                continue
            for j in range(1, n + 1):
                if j == i or j == k:
                    continue
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return EdgeVector(
        space, tuple(dist[u][v] for u, v in edge_pairs(n))
    )
