#!/usr/bin/env python3
"""Print the facet structure of the orthant-restricted Minkowski sum.

For n in {4, 5}: the complete facet list with classes, the vertex and ray
counts, and the degree statistics of the vertices (as multigraphs). Useful
as a quick structural sanity check and as the source of the regression
numbers in the test suite.
"""

import argparse
from collections import Counter

from tsppoly.ddfacets import FacetClass, extreme_elements_of_Q, facets_of_Q
from tsppoly.edgespace import edge_pairs


def pretty(ineq, n):
    terms = []
    for (u, v), c in zip(edge_pairs(n), ineq.a.coords):
        if c == 0:
            continue
        coeff = "" if c == 1 else f"{c}*"
        terms.append(f"{coeff}x[{u},{v}]")
    return " + ".join(terms) + f" >= {ineq.alpha}"


def census(n: int) -> None:
    facets = facets_of_Q(n)
    vrep = extreme_elements_of_Q(n)
    print(f"== n = {n} ==")
    by_class = Counter(klass for _, klass in facets)
    print(
        f"{len(facets)} facets: "
        f"{by_class[FacetClass.NON_NEGATIVITY]} non-negativity, "
        f"{by_class[FacetClass.TRIANGLE_METRIC]} triangle-metric"
    )
    for ineq, klass in facets:
        print(f"  [{klass.value:15s}] {pretty(ineq, n)}")
    print(f"{len(vrep.vertices)} vertices, {len(vrep.rays)} extreme rays")
    edge_counts = Counter(
        sum(int(c) for c in v.coords) for v in vrep.vertices
    )
    print("vertex edge counts:", dict(sorted(edge_counts.items())))
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--n", type=int, choices=(4, 5), action="append",
        help="vertex count (repeatable; default: both)",
    )
    args = parser.parse_args()
    for n in args.n or (4, 5):
        census(n)


if __name__ == "__main__":
    main()
