"""Exact rational coordinates over the edge set of the complete graph on [n].

Vertices are 1-based. An edge is a two-element subset {u, v} of
[n] = {1, ..., n}; edges are ordered lexicographically by (min, max) and that
order fixes the coordinate layout of every vector in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

#: Exact rational scalar used for every coordinate. ``fractions.Fraction``
#: already guarantees lowest terms and a positive denominator.
Rational = Fraction

RationalLike = Union[int, Fraction]


def edge_index(u: int, v: int, n: int) -> int:
    """Rank of {u, v} in lexicographic order over all 2-subsets of [n].

    The map is a bijection onto ``range(n * (n - 1) // 2)`` and symmetric in
    u and v. Raises ValueError for loops or out-of-range vertices.
    """
    if not (1 <= u <= n) or not (1 <= v <= n):
        raise ValueError(f"vertex out of range: ({u}, {v}) with n = {n}")
    if u == v:
        raise ValueError(f"loop ({u}, {u}) is not an edge")
    if u > v:
        u, v = v, u
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


def edge_pairs(n: int) -> Iterator[Tuple[int, int]]:
    """All edges (u, v) with u < v, in canonical (lexicographic) order."""
    return itertools.combinations(range(1, n + 1), 2)


@dataclass(frozen=True)
class EdgeSpace:
    """The coordinate space R^{E_n} for a fixed vertex count n >= 3."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need n >= 3, got n = {self.n}")

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2

    def index(self, u: int, v: int) -> int:
        return edge_index(u, v, self.n)

    def edges(self) -> Iterator[Tuple[int, int]]:
        return edge_pairs(self.n)


@dataclass(frozen=True)
class EdgeVector:
    """A dense vector of exact rationals indexed by the edges of [n]."""

    space: EdgeSpace
    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.space.dim:
            raise ValueError(
                f"expected {self.space.dim} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, space: EdgeSpace) -> "EdgeVector":
        return cls(space, (Fraction(0),) * space.dim)

    @classmethod
    def constant(cls, space: EdgeSpace, value: RationalLike) -> "EdgeVector":
        return cls(space, (Fraction(value),) * space.dim)

    def get(self, u: int, v: int) -> Fraction:
        return self.coords[self.space.index(u, v)]

    def replace(self, u: int, v: int, value: RationalLike) -> "EdgeVector":
        """A copy with coordinate {u, v} set to ``value``."""
        i = self.space.index(u, v)
        coords = list(self.coords)
        coords[i] = Fraction(value)
        return EdgeVector(self.space, tuple(coords))

    def vertex_degree(self, v: int) -> Fraction:
        """Sum of the coordinates on edges incident to v."""
        if not (1 <= v <= self.space.n):
            raise ValueError(f"vertex {v} out of range")
        total = Fraction(0)
        for u in range(1, self.space.n + 1):
            if u != v:
                total += self.coords[self.space.index(u, v)]
        return total

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "EdgeVector") -> "EdgeVector":
        _require_same_space(self, other)
        return EdgeVector(
            self.space, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "EdgeVector") -> "EdgeVector":
        _require_same_space(self, other)
        return EdgeVector(
            self.space, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "EdgeVector":
        return EdgeVector(self.space, tuple(-a for a in self.coords))

    def scaled(self, q: RationalLike) -> "EdgeVector":
        q = Fraction(q)
        return EdgeVector(self.space, tuple(q * a for a in self.coords))


def _require_same_space(a: EdgeVector, x: EdgeVector) -> None:
    if a.space != x.space:
        raise ValueError(
            f"mismatched spaces: n = {a.space.n} versus n = {x.space.n}"
        )


def char_vector(edges: Iterable[Tuple[int, int]], space: EdgeSpace) -> EdgeVector:
    """Characteristic vector of an edge multiset.

    ``edges`` may repeat a pair; coordinate {u, v} ends up equal to the
    multiplicity of that edge. Loops raise ValueError.
    """
    coords = [0] * space.dim
    for (u, v) in edges:
        coords[space.index(u, v)] += 1
    return EdgeVector(space, tuple(Fraction(c) for c in coords))


def unit_vector(space: EdgeSpace, u: int, v: int) -> EdgeVector:
    return char_vector([(u, v)], space)


def dot(a: EdgeVector, x: EdgeVector) -> Fraction:
    """Exact inner product sum_e a_e * x_e. Spaces must match."""
    _require_same_space(a, x)
    return sum(
        (p * q for p, q in zip(a.coords, x.coords)), start=Fraction(0)
    )
