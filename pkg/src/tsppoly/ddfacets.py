"""Facet enumeration for the orthant-restricted Minkowski sum at n in {4, 5}.

Let Q_n be the Minkowski sum of the tour polytope and the polar of the
metric cone, intersected with the non-negative orthant. This module
computes the complete irredundant facet list of Q_n and its extreme
elements, entirely in integer arithmetic, via the double description
method run twice:

1. Homogenize the known generators (tour vectors at height 1, shortcut
   vectors at height 0) and compute the extreme rays of the cone of valid
   inequalities; those rays are the facets of the unrestricted sum.
2. Add the non-negativity halfspaces and the height row to that inequality
   list and run double description in the reverse direction, producing all
   vertices and extreme rays of Q_n.

A candidate inequality is kept as a facet exactly when its tight extreme
elements span a hyperplane (an exact rank test), and every kept facet is
classified as a non-negativity inequality or a triangle-metric inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .edgespace import EdgeSpace, EdgeVector
from .membership import metric_cone_check
from .multigraph import (
    cycle_vector,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    shortcut_vector,
)

IntVec = Tuple[int, ...]


class FacetClass(Enum):
    NON_NEGATIVITY = "non-negativity"
    TRIANGLE_METRIC = "triangle-metric"
    DICHOTOMY_VIOLATION = "dichotomy-violation"


class DichotomyViolationError(AssertionError):
    """A computed facet fell outside both facet classes.

    Raised only from ``facets_of_Q``; user-supplied inequalities that fit
    neither class are reported through the classifier's return value.
    """


@dataclass(frozen=True)
class LinearInequality:
    """a . x >= alpha with integer, coprime, canonically oriented data.

    Orientation is fixed by validity: every generator of the polyhedron the
    inequality came from satisfies the >= direction.
    """

    a: EdgeVector
    alpha: Fraction

    def __post_init__(self) -> None:
        if any(c.denominator != 1 for c in self.a.coords):
            raise ValueError("coefficients must be integers")
        if self.alpha.denominator != 1:
            raise ValueError("right-hand side must be an integer")
        if all(c == 0 for c in self.a.coords) and self.alpha > 0:
            raise ValueError(f"0 >= {self.alpha} is unsatisfiable")
        ints = [int(c) for c in self.a.coords] + [int(self.alpha)]
        g = math.gcd(*ints)
        if g > 1:
            raise ValueError(f"coefficients share the factor {g}")

    @classmethod
    def from_primitive(
        cls, space: EdgeSpace, a: Sequence[int], alpha: int
    ) -> "LinearInequality":
        return cls(
            EdgeVector(space, tuple(Fraction(c) for c in a)), Fraction(alpha)
        )

    def key(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.a.coords) + (int(self.alpha),)


@dataclass(frozen=True)
class VRepresentation:
    """Vertices and extreme rays of a polyhedron, as exact vectors."""

    vertices: Tuple[EdgeVector, ...]
    rays: Tuple[EdgeVector, ...]


def _primitive(vec: Sequence[int]) -> IntVec:
    g = math.gcd(*vec)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _has_rank(rows: List[IntVec], dim: int, target: int) -> bool:
    """True iff the integer rows span at least ``target`` dimensions."""
    if target <= 0:
        return True
    if len(rows) < target:
        return False
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(dim):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        pval = prow[col]
        for i in range(rank + 1, len(mat)):
            rv = mat[i][col]
            if rv != 0:
                row = [a * pval - b * rv for a, b in zip(mat[i], prow)]
                g = math.gcd(*row)
                if g > 1:
                    row = [v // g for v in row]
                mat[i] = row
        rank += 1
        if rank >= target:
            return True
    return False


def _initial_basis(rows: List[IntVec], dim: int) -> List[int]:
    """Indices of the first ``dim`` linearly independent rows."""
    chosen: List[int] = []
    mat: List[List[Fraction]] = []
    for idx, row in enumerate(rows):
        cand = [Fraction(v) for v in row]
        for pivot_row in mat:
            lead = next(i for i, v in enumerate(pivot_row) if v != 0)
            if cand[lead] != 0:
                f = cand[lead] / pivot_row[lead]
                cand = [a - f * b for a, b in zip(cand, pivot_row)]
        if any(v != 0 for v in cand):
            mat.append(cand)
            chosen.append(idx)
            if len(chosen) == dim:
                return chosen
    raise ValueError(
        f"rows span only {len(chosen)} of {dim} dimensions; cone is not pointed"
    )


def _invert(matrix: List[IntVec], dim: int) -> List[List[Fraction]]:
    aug = [
        [Fraction(v) for v in row]
        + [Fraction(1) if i == k else Fraction(0) for k in range(dim)]
        for i, row in enumerate(matrix)
    ]
    for col in range(dim):
        piv = next(i for i in range(col, dim) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pivval = aug[col][col]
        aug[col] = [v / pivval for v in aug[col]]
        for i in range(dim):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [[aug[i][dim + k] for k in range(dim)] for i in range(dim)]


def extreme_rays_of_inequality_cone(
    rows: Sequence[IntVec], dim: int
) -> List[IntVec]:
    """Extreme rays of the pointed cone {y : row . y >= 0 for every row}.

    Incremental double description: start from a simplicial cone built on
    ``dim`` independent rows, then cut with the remaining halfspaces in the
    given order. Adjacency of rays is decided by an exact rank computation
    on the intersection of their tight-row sets. Rows must span the full
    space (otherwise the cone has a line and extreme rays do not exist).
    """
    rows = [tuple(int(v) for v in r) for r in rows]
    basis_idx = _initial_basis(rows, dim)
    inv = _invert([rows[i] for i in basis_idx], dim)
    processed: List[IntVec] = [rows[i] for i in basis_idx]

    rays: List[Tuple[IntVec, int]] = []  # (primitive vector, tight bitmask)
    for k in range(dim):
        col = [inv[i][k] for i in range(dim)]
        scale = math.lcm(*[c.denominator for c in col])
        vec = _primitive([int(c * scale) for c in col])
        mask = 0
        for bit in range(dim):
            if bit != k:
                mask |= 1 << bit
        rays.append((vec, mask))

    basis_set = set(basis_idx)
    remaining = [rows[i] for i in range(len(rows)) if i not in basis_set]

    for row in remaining:
        vals = [sum(a * b for a, b in zip(row, vec)) for vec, _ in rays]
        keep: List[Tuple[IntVec, int]] = []
        pos: List[int] = []
        neg: List[int] = []
        bit = 1 << len(processed)
        for i, ((vec, mask), val) in enumerate(zip(rays, vals)):
            if val > 0:
                pos.append(i)
            elif val < 0:
                neg.append(i)
            else:
                keep.append((vec, mask | bit))
        for i in pos:
            keep.append(rays[i])

        target = dim - 2
        for i in pos:
            vec_i, mask_i = rays[i]
            vi = vals[i]
            for j in neg:
                vec_j, mask_j = rays[j]
                common = mask_i & mask_j
                if common.bit_count() < target:
                    continue
                tight_rows = [
                    processed[k] for k in range(len(processed)) if common >> k & 1
                ]
                if not _has_rank(tight_rows, dim, target):
                    continue
                vj = vals[j]
                new_vec = _primitive(
                    [vi * b - vj * a for a, b in zip(vec_i, vec_j)]
                )
                new_mask = bit
                for k, prow in enumerate(processed):
                    if sum(a * b for a, b in zip(prow, new_vec)) == 0:
                        new_mask |= 1 << k
                keep.append((new_vec, new_mask))

        processed.append(row)
        rays = keep

    return [vec for vec, _ in rays]


@lru_cache(maxsize=None)
def _q_description(n: int):
    if n not in (4, 5):
        raise ValueError(f"facet enumeration supports n in {{4, 5}}, got {n}")
    space = EdgeSpace(n)
    d = space.dim
    hom = d + 1

    gen_rows: List[IntVec] = []
    for tour in enumerate_hamiltonian_cycles(n):
        gen_rows.append((1,) + tuple(cycle_vector(tour).mult))
    for t in enumerate_shortcut_triples(n):
        vec = shortcut_vector(t, space)
        gen_rows.append((0,) + tuple(int(c) for c in vec.coords))

    # Step 1: facets of the unrestricted sum = extreme rays of its cone of
    # valid inequalities (y0, a), one defining inequality per generator.
    ineq_rays = extreme_rays_of_inequality_cone(gen_rows, hom)
    trivial = [r for r in ineq_rays if all(v == 0 for v in r[1:])]
    assert len(trivial) == 1 and trivial[0][0] > 0, "expected the 0 >= -1 ray once"

    candidates: List[IntVec] = [r for r in ineq_rays if any(v != 0 for v in r[1:])]
    for i in range(d):
        unit = [0] * hom
        unit[1 + i] = 1
        candidates.append(tuple(unit))
    seen = set()
    deduped: List[IntVec] = []
    for c in candidates:
        c = _primitive(c)
        if c not in seen:
            seen.add(c)
            deduped.append(c)
    height = (1,) + (0,) * d

    # Step 2: extreme elements of Q from its (possibly redundant) inequality
    # description; the height row is included so intermediate cones stay
    # pointed and the homogenization reads off cleanly.
    vrep_rows = [height] + deduped
    hom_rays = extreme_rays_of_inequality_cone(vrep_rows, hom)
    for r in hom_rays:
        assert r[0] >= 0, "homogenized element with negative height"

    vertices = []
    rays = []
    for r in sorted(hom_rays):
        if r[0] > 0:
            vertices.append(
                EdgeVector(
                    space, tuple(Fraction(v, r[0]) for v in r[1:])
                )
            )
        else:
            rays.append(
                EdgeVector(space, tuple(Fraction(v) for v in r[1:]))
            )
    vrep = VRepresentation(tuple(vertices), tuple(rays))

    # Irredundancy: keep a candidate iff its tight extreme elements span a
    # hyperplane of the homogenized space.
    facets: List[Tuple[LinearInequality, FacetClass]] = []
    for cand in sorted(deduped, key=lambda c: (c[0], c[1:])):
        tight = [
            r
            for r in hom_rays
            if sum(a * b for a, b in zip(cand, r)) == 0
        ]
        if not _has_rank(tight, hom, hom - 1):
            continue
        ineq = LinearInequality.from_primitive(space, cand[1:], -cand[0])
        klass = classify_facet(ineq)
        if klass is FacetClass.DICHOTOMY_VIOLATION:
            raise DichotomyViolationError(
                f"facet {ineq} is neither a non-negativity nor a "
                "triangle-metric inequality"
            )
        facets.append((ineq, klass))

    return tuple(facets), vrep


def facets_of_Q(n: int) -> List[Tuple[LinearInequality, FacetClass]]:
    """Complete irredundant facet list of Q_n, each facet classified."""
    facets, _ = _q_description(n)
    return list(facets)


def extreme_elements_of_Q(n: int) -> VRepresentation:
    """All vertices and extreme rays of Q_n."""
    _, vrep = _q_description(n)
    return vrep


def classify_facet(ineq: LinearInequality) -> FacetClass:
    """Sort an inequality into the two facet categories.

    Non-negativity means a positive multiple of some x_e >= 0; otherwise a
    left-hand side satisfying all triangle inequalities is triangle-metric.
    Anything else is reported as a dichotomy violation, which by the facet
    dichotomy cannot happen for actual facets of Q_n.
    """
    nonzero = [c for c in ineq.a.coords if c != 0]
    if (
        ineq.alpha == 0
        and len(nonzero) == 1
        and nonzero[0] > 0
    ):
        return FacetClass.NON_NEGATIVITY
    if metric_cone_check(ineq.a) is None:
        return FacetClass.TRIANGLE_METRIC
    return FacetClass.DICHOTOMY_VIOLATION
