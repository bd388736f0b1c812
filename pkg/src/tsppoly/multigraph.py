"""Multigraphs on [n] stored as integer edge-multiplicity vectors.

Provides the structural predicates (spanning connectivity, even degrees),
the two generator families used throughout the package (Hamiltonian cycle
vectors and shortcut vectors), and exhaustive / randomized instance
generation for tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .edgespace import EdgeSpace, EdgeVector, edge_pairs

VertexSet = FrozenSet[int]


@dataclass(frozen=True)
class Multigraph:
    """A non-negative integer vector over E_n read as an edge multiset."""

    space: EdgeSpace
    mult: Tuple[int, ...]
    m: int = field(init=False)

    def __post_init__(self) -> None:
        mult = tuple(int(k) for k in self.mult)
        if len(mult) != self.space.dim:
            raise ValueError(
                f"expected {self.space.dim} multiplicities, got {len(mult)}"
            )
        if any(k < 0 for k in mult):
            raise ValueError("negative edge multiplicity")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "m", sum(mult))

    @classmethod
    def from_edges(cls, edges, n: int) -> "Multigraph":
        space = EdgeSpace(n)
        mult = [0] * space.dim
        for (u, v) in edges:
            mult[space.index(u, v)] += 1
        return cls(space, tuple(mult))

    def vector(self) -> EdgeVector:
        return EdgeVector(self.space, tuple(Fraction(k) for k in self.mult))

    def get(self, u: int, v: int) -> int:
        return self.mult[self.space.index(u, v)]

    def adjacency(self) -> Dict[int, List[int]]:
        """Distinct-neighbour lists over the support, sorted ascending."""
        n = self.space.n
        adj: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
        for i, (u, v) in enumerate(edge_pairs(n)):
            if self.mult[i] > 0:
                adj[u].append(v)
                adj[v].append(u)
        return adj


def degree(g: Multigraph, v: int) -> int:
    """Degree of v counting multiplicities."""
    n = g.space.n
    if not (1 <= v <= n):
        raise ValueError(f"vertex {v} out of range")
    return sum(g.mult[g.space.index(u, v)] for u in range(1, n + 1) if u != v)


def _components(vertices: Sequence[int], adj: Dict[int, List[int]]) -> List[VertexSet]:
    comps: List[VertexSet] = []
    seen = set()
    for start in vertices:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = {start}
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


def is_connected_spanning(g: Multigraph) -> bool:
    """True iff the support of g connects the whole vertex set [n].

    Any isolated vertex makes the answer False, by definition.
    """
    adj = g.adjacency()
    return len(_components(range(1, g.space.n + 1), adj)) == 1


def _connected_union_find(g: Multigraph) -> bool:
    # Second, independent implementation of the same predicate; the test
    # suite cross-checks it against the search-based one.
    n = g.space.n
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(edge_pairs(n)):
        if g.mult[i] > 0:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    roots = {find(v) for v in range(1, n + 1)}
    return len(roots) == 1


def is_eulerian_connected(g: Multigraph) -> bool:
    """True iff g is connected on all of [n] and every degree is even."""
    n = g.space.n
    if any(degree(g, v) % 2 != 0 for v in range(1, n + 1)):
        return False
    return is_connected_spanning(g)


def remove_vertex_components(g: Multigraph, w: int) -> List[VertexSet]:
    """Connected components of the graph induced on [n] minus w.

    Vertices isolated after the removal come back as singleton components.
    The list is sorted by smallest member.
    """
    n = g.space.n
    if not (1 <= w <= n):
        raise ValueError(f"vertex {w} out of range")
    adj = g.adjacency()
    adj = {
        v: [u for u in nbrs if u != w]
        for v, nbrs in adj.items()
        if v != w
    }
    return _components([v for v in range(1, n + 1) if v != w], adj)


@dataclass(frozen=True)
class HamiltonianCycle:
    """A cycle visiting every vertex of [n] exactly once.

    The vertex sequence is normalized so that it starts at 1 and its second
    entry is smaller than its last; every undirected cycle then has exactly
    one representation.
    """

    order: Tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(v) for v in self.order)
        n = len(order)
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if sorted(order) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {order}")
        i = order.index(1)
        order = order[i:] + order[:i]
        if order[1] > order[-1]:
            order = (order[0],) + tuple(reversed(order[1:]))
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> List[Tuple[int, int]]:
        o = self.order
        return [(o[i], o[(i + 1) % len(o)]) for i in range(len(o))]


@dataclass(frozen=True)
class ShortcutTriple:
    """An ordered triple (u, w, v) of distinct vertices.

    Names the vector with +1 on edges {u, w} and {w, v} and -1 on {u, v}.
    That vector is symmetric in u and v, so triples are canonicalized to
    u < v.
    """

    u: int
    w: int
    v: int

    def __post_init__(self) -> None:
        u, w, v = int(self.u), int(self.w), int(self.v)
        if len({u, w, v}) != 3:
            raise ValueError(f"vertices must be pairwise distinct: {(u, w, v)}")
        if u > v:
            u, v = v, u
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "v", v)


def cycle_vector(c: HamiltonianCycle) -> Multigraph:
    """Multiplicity-1 multigraph on the n edges of the cycle."""
    return Multigraph.from_edges(c.edges(), c.n)


def shortcut_vector(t: ShortcutTriple, space: EdgeSpace) -> EdgeVector:
    """+1 on {u,w} and {w,v}, -1 on {u,v}; coordinate sum is +1."""
    for x in (t.u, t.w, t.v):
        if not (1 <= x <= space.n):
            raise ValueError(f"vertex {x} out of range for n = {space.n}")
    coords = [Fraction(0)] * space.dim
    coords[space.index(t.u, t.w)] += 1
    coords[space.index(t.w, t.v)] += 1
    coords[space.index(t.u, t.v)] -= 1
    return EdgeVector(space, tuple(coords))


def enumerate_hamiltonian_cycles(n: int) -> List[HamiltonianCycle]:
    """All (n-1)!/2 Hamiltonian cycles on [n], normalized, 3 <= n <= 8."""
    if not (3 <= n <= 8):
        raise ValueError(f"cycle enumeration supports 3 <= n <= 8, got {n}")
    cycles = []
    for rest in itertools.permutations(range(2, n + 1)):
        if rest[0] < rest[-1]:
            cycles.append(HamiltonianCycle((1,) + rest))
    return cycles


def enumerate_shortcut_triples(n: int) -> List[ShortcutTriple]:
    """One triple per unordered pair {u, v} and apex w, n(n-1)(n-2)/2 total."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    triples = []
    for u, v in edge_pairs(n):
        for w in range(1, n + 1):
            if w != u and w != v:
                triples.append(ShortcutTriple(u, w, v))
    return triples


def enumerate_eulerian_connected(
    n: int, max_mult: int, max_edges: int
) -> Iterator[Multigraph]:
    """Every Eulerian-connected multigraph within the given bounds.

    Exhaustive and duplicate-free over multiplicity vectors with entries
    <= max_mult and total edge count <= max_edges; intended as a brute-force
    oracle, hence the small-scope preconditions 3 <= n <= 6 and max_mult <= 3.
    Yields in lexicographic order of the multiplicity vector.
    """
    if not (3 <= n <= 6):
        raise ValueError(f"exhaustive enumeration supports 3 <= n <= 6, got {n}")
    if max_mult > 3 or max_mult < 0:
        raise ValueError(f"max_mult must be in [0, 3], got {max_mult}")
    space = EdgeSpace(n)
    pairs = list(edge_pairs(n))
    dim = space.dim
    # Index of the last edge incident to each vertex: after that position
    # the parity of the vertex degree is final and can be pruned on.
    last_idx = {v: max(i for i, e in enumerate(pairs) if v in e) for v in range(1, n + 1)}
    finalized_at: List[List[int]] = [[] for _ in range(dim)]
    for v, i in last_idx.items():
        finalized_at[i].append(v)

    mult = [0] * dim
    deg = [0] * (n + 1)

    def rec(i: int, total: int) -> Iterator[Multigraph]:
        if i == dim:
            g = Multigraph(space, tuple(mult))
            if is_connected_spanning(g):
                yield g
            return
        u, v = pairs[i]
        for k in range(0, min(max_mult, max_edges - total) + 1):
            mult[i] = k
            deg[u] += k
            deg[v] += k
            if all(deg[x] % 2 == 0 for x in finalized_at[i]):
                yield from rec(i + 1, total + k)
            deg[u] -= k
            deg[v] -= k
        mult[i] = 0

    return rec(0, 0)


def sample_eulerian_connected(n: int, target_edges: int, seed: int) -> Multigraph:
    """A seeded random Eulerian-connected multigraph with n <= m <= target_edges.

    Grows a random Hamiltonian cycle by two kinds of moves that preserve the
    predicate by construction: adding a shortcut vector (replace one copy of
    an existing edge uv by the path u-w-v) or doubling an edge.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if target_edges < n:
        raise ValueError(f"target_edges must be >= n = {n}, got {target_edges}")
    rng = random.Random(seed)
    perm = list(range(2, n + 1))
    rng.shuffle(perm)
    g = cycle_vector(HamiltonianCycle((1,) + tuple(perm)))
    space = g.space
    pairs = list(edge_pairs(n))
    mult = list(g.mult)
    m = g.m
    target = rng.randint(n, target_edges)
    while m < target:
        if m + 2 <= target and rng.random() < 0.5:
            i = rng.randrange(space.dim)
            mult[i] += 2
            m += 2
        else:
            support = [i for i, k in enumerate(mult) if k > 0]
            i = support[rng.randrange(len(support))]
            u, v = pairs[i]
            w = rng.choice([x for x in range(1, n + 1) if x != u and x != v])
            mult[i] -= 1
            mult[space.index(u, w)] += 1
            mult[space.index(w, v)] += 1
            m += 1
    return Multigraph(space, tuple(mult))
