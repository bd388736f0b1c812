import random
from fractions import Fraction as F

import pytest

from tsppoly.ddfacets import (
    FacetClass,
    LinearInequality,
    classify_facet,
    extreme_rays_of_inequality_cone,
    extreme_elements_of_Q,
    facets_of_Q,
)
from tsppoly.edgespace import EdgeSpace, EdgeVector, dot, unit_vector
from tsppoly.membership import polar_membership, verify_membership
from tsppoly.multigraph import (
    Multigraph,
    cycle_vector,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    is_eulerian_connected,
    shortcut_vector,
)

# first derivation of the facet structure, kept as regression values
EXPECTED = {
    4: dict(facets=13, nonneg=6, metric=7, vertices=31, rays=6),
    5: dict(facets=25, nonneg=10, metric=15, vertices=362, rays=10),
}


def test_extreme_rays_hand_cases():
    # positive orthant of R^2
    assert sorted(extreme_rays_of_inequality_cone([(1, 0), (0, 1)], 2)) == [
        (0, 1),
        (1, 0),
    ]
    # wedge |y1| <= y0
    assert sorted(
        extreme_rays_of_inequality_cone([(1, -1), (1, 1), (1, 0)], 2)
    ) == [(1, -1), (1, 1)]
    # orthant of R^3 cut by y1 + y2 >= y3
    rays = extreme_rays_of_inequality_cone(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)], 3
    )
    assert sorted(rays) == [(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)]


def test_extreme_rays_requires_pointed():
    with pytest.raises(ValueError, match="pointed"):
        extreme_rays_of_inequality_cone([(1, 0), (-1, 0)], 2)


def test_classify_facet_examples():
    s3 = EdgeSpace(3)
    nonneg = LinearInequality(unit_vector(s3, 1, 2), F(0))
    assert classify_facet(nonneg) is FacetClass.NON_NEGATIVITY

    ones = LinearInequality(EdgeVector.constant(s3, 1), F(3))
    assert classify_facet(ones) is FacetClass.TRIANGLE_METRIC

    weird = LinearInequality(EdgeVector(s3, (F(3), F(1), F(1))), F(1))
    assert classify_facet(weird) is FacetClass.DICHOTOMY_VIOLATION


def test_linear_inequality_normalization_rules():
    s3 = EdgeSpace(3)
    with pytest.raises(ValueError, match="integer"):
        LinearInequality(EdgeVector(s3, (F(1, 2), F(0), F(0))), F(0))
    with pytest.raises(ValueError, match="factor"):
        LinearInequality(EdgeVector(s3, (F(2), F(0), F(2))), F(4))


@pytest.mark.parametrize("n", [4, 5])
def test_facet_structure(n):
    facets = facets_of_Q(n)
    want = EXPECTED[n]
    assert len(facets) == want["facets"]
    classes = [k for _, k in facets]
    assert classes.count(FacetClass.NON_NEGATIVITY) == want["nonneg"]
    assert classes.count(FacetClass.TRIANGLE_METRIC) == want["metric"]

    space = EdgeSpace(n)
    nonneg = {
        ineq.a for ineq, k in facets if k is FacetClass.NON_NEGATIVITY
    }
    from tsppoly.edgespace import edge_pairs

    assert nonneg == {unit_vector(space, u, v) for u, v in edge_pairs(n)}

    tours = [cycle_vector(t).vector() for t in enumerate_hamiltonian_cycles(n)]
    shortcuts = [shortcut_vector(t, space) for t in enumerate_shortcut_triples(n)]
    for ineq, klass in facets:
        assert all(dot(ineq.a, p) >= ineq.alpha for p in tours)
        if klass is FacetClass.TRIANGLE_METRIC:
            assert all(dot(ineq.a, s) >= 0 for s in shortcuts)


@pytest.mark.parametrize("n", [4, 5])
def test_extreme_elements(n):
    vrep = extreme_elements_of_Q(n)
    want = EXPECTED[n]
    assert len(vrep.vertices) == want["vertices"]
    assert len(vrep.rays) == want["rays"]

    space = EdgeSpace(n)
    tour_vectors = {
        cycle_vector(t).vector() for t in enumerate_hamiltonian_cycles(n)
    }
    assert tour_vectors <= set(vrep.vertices)

    for v in vrep.vertices:
        assert all(c.denominator == 1 for c in v.coords)
        g = Multigraph(space, tuple(int(c) for c in v.coords))
        assert is_eulerian_connected(g)

    for r in vrep.rays:
        assert r.is_nonnegative()
        ans = polar_membership(r)
        assert ans.verdict == "inside" and verify_membership(ans)

    facets = facets_of_Q(n)
    for ineq, _ in facets:
        assert all(dot(ineq.a, v) >= ineq.alpha for v in vrep.vertices)
        assert all(dot(ineq.a, r) >= 0 for r in vrep.rays)


def test_facets_scope():
    with pytest.raises(ValueError):
        facets_of_Q(6)
    with pytest.raises(ValueError):
        extreme_elements_of_Q(3)


def test_order_independence_at_n4():
    """Permuting the insertion order must reproduce the same facet set."""
    n = 4
    space = EdgeSpace(n)
    hom = space.dim + 1
    rows = [
        (1,) + tuple(cycle_vector(t).mult)
        for t in enumerate_hamiltonian_cycles(n)
    ] + [
        (0,) + tuple(int(c) for c in shortcut_vector(t, space).coords)
        for t in enumerate_shortcut_triples(n)
    ]
    reference = {
        tuple(r) for r in extreme_rays_of_inequality_cone(rows, hom)
    }
    for seed in (1, 2, 3):
        shuffled = rows[:]
        random.Random(seed).shuffle(shuffled)
        got = {
            tuple(r) for r in extreme_rays_of_inequality_cone(shuffled, hom)
        }
        assert got == reference
