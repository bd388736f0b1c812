"""The bundled verification pipeline behind the ``verify`` subcommand.

Each check returns a CheckResult; the CLI prints one line per check and
the acceptance test suite reuses the same functions at full scale. All
checks are deterministic given their seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .ddfacets import (
    FacetClass,
    _has_rank,
    extreme_elements_of_Q,
    facets_of_Q,
)
from .decompose import (
    DecompositionCertificate,
    decompose,
    verify_certificate,
)
from .edgespace import EdgeSpace, EdgeVector, dot, edge_pairs, unit_vector
from .lp import NONNEG, LPOutcome, LinearSystem, verify_certificate_lp
from .membership import (
    INSIDE,
    OUTSIDE,
    MembershipAnswer,
    _shortcut_table,
    _tour_table,
    face_degree_two_check,
    gtsp_membership,
    metric_cone_check,
    minkowski_membership,
    optimize_metric,
    polar_membership,
    sample_metric,
    stsp_membership,
    verify_membership,
)
from .multigraph import (
    Multigraph,
    ShortcutTriple,
    cycle_vector,
    enumerate_eulerian_connected,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    is_eulerian_connected,
    sample_eulerian_connected,
    shortcut_vector,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"check {self.name} {status} {self.details}"


def _mix(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


def exhaustive_instances(n: int, max_mult: int = 2, max_edges: int = 12) -> List[Multigraph]:
    return list(enumerate_eulerian_connected(n, max_mult, max_edges))


def sampled_instances(
    n: int, count: int, seed: int, max_edges: int = 20
) -> List[Multigraph]:
    return [
        sample_eulerian_connected(n, max_edges, _mix(seed, k))
        for k in range(count)
    ]


def check_decomposition_roundtrip(
    instances: Sequence[Multigraph], label: str
) -> CheckResult:
    """decompose + verify_certificate + exact step-count law on every instance."""
    for g in instances:
        cert = decompose(g)
        ok, diag = verify_certificate(g, cert)
        if not ok:
            return CheckResult(
                "decomposition-roundtrip", False, f"{label}: {diag}"
            )
        if len(cert.steps) != g.m - g.space.n:
            return CheckResult(
                "decomposition-roundtrip",
                False,
                f"{label}: step count {len(cert.steps)} != m - n = {g.m - g.space.n}",
            )
    return CheckResult(
        "decomposition-roundtrip", True, f"{label}: {len(instances)} instances"
    )


def check_minkowski_agreement(
    instances: Sequence[Multigraph], label: str
) -> CheckResult:
    """LP membership says inside, its certificate re-verifies, and the
    verdict agrees with the decomposition-derived certificate."""
    for g in instances:
        x = g.vector()
        ans = minkowski_membership(x)
        if ans.verdict != INSIDE:
            return CheckResult(
                "minkowski-lp-agreement", False, f"{label}: LP said outside for {g.mult}"
            )
        if not verify_membership(ans):
            return CheckResult(
                "minkowski-lp-agreement", False, f"{label}: LP certificate failed re-check"
            )
        if ans.lp_outcome is not None and not _lp_outcome_ok(ans, x):
            return CheckResult(
                "minkowski-lp-agreement", False, f"{label}: raw LP outcome failed re-check"
            )
        if not verify_membership(decomposition_answer(g)):
            return CheckResult(
                "minkowski-lp-agreement",
                False,
                f"{label}: decomposition-derived certificate failed re-check",
            )
    return CheckResult(
        "minkowski-lp-agreement", True, f"{label}: {len(instances)} instances"
    )


def _step_multiset(
    steps: Sequence[ShortcutTriple],
) -> Tuple[Tuple[ShortcutTriple, Fraction], ...]:
    counts: dict = {}
    for t in steps:
        counts[t] = counts.get(t, 0) + 1
    return tuple((t, Fraction(c)) for t, c in counts.items())


def decomposition_answer(g: Multigraph) -> MembershipAnswer:
    """The inside-certificate implied by a decomposition: coefficient 1 on
    the base cycle, step multiplicities on the shortcut generators."""
    cert = decompose(g)
    return MembershipAnswer(
        "minkowski",
        INSIDE,
        g.vector(),
        tour_coeffs=((cert.base_cycle, Fraction(1)),),
        shortcut_coeffs=_step_multiset(cert.steps),
    )


def membership_lp_system(set_name: str, x: EdgeVector) -> LinearSystem:
    """The linear system a membership oracle solves for point x."""
    n = x.space.n
    if set_name == "polar":
        _, cols = _shortcut_table(n)
        return LinearSystem(cols, x.coords, (NONNEG,) * len(cols))
    if set_name == "stsp":
        _, cols = _tour_table(n)
        cols = tuple(c + (Fraction(1),) for c in cols)
        return LinearSystem(
            cols, x.coords + (Fraction(1),), (NONNEG,) * len(cols)
        )
    _, tcols = _tour_table(n)
    _, scols = _shortcut_table(n)
    cols = tuple(c + (Fraction(1),) for c in tcols) + tuple(
        c + (Fraction(0),) for c in scols
    )
    return LinearSystem(
        cols, x.coords + (Fraction(1),), (NONNEG,) * len(cols)
    )


def _lp_outcome_ok(ans: MembershipAnswer, x: EdgeVector) -> bool:
    # Rebuild the LP the oracle solved and re-verify its raw outcome.
    sys = membership_lp_system(ans.set_name, x)
    return verify_certificate_lp(sys, ans.lp_outcome)


def check_polarity(n: int, n_metrics: int, seed: int) -> CheckResult:
    """dot(a, s) >= 0 for sampled metric-cone members a and all shortcuts s."""
    space = EdgeSpace(n)
    shortcuts = [
        shortcut_vector(t, space) for t in enumerate_shortcut_triples(n)
    ]
    for k in range(n_metrics):
        a = sample_metric(n, _mix(seed, k))
        if metric_cone_check(a) is not None:
            return CheckResult(
                "polarity", False, f"n={n}: sampled metric fails its own check"
            )
        for s in shortcuts:
            if dot(a, s) < 0:
                return CheckResult(
                    "polarity", False, f"n={n}: dot(a, s) < 0 at metric {k}"
                )
    return CheckResult(
        "polarity", True, f"n={n}: {n_metrics} metrics x {len(shortcuts)} generators"
    )


def check_double_edge_identity(n: int) -> CheckResult:
    """2*chi_{uw} equals the sum of two shortcut vectors, for all triples."""
    space = EdgeSpace(n)
    count = 0
    for u, w in edge_pairs(n):
        double = unit_vector(space, u, w).scaled(2)
        for v in range(1, n + 1):
            if v == u or v == w:
                continue
            lhs = shortcut_vector(ShortcutTriple(v, u, w), space) + shortcut_vector(
                ShortcutTriple(v, w, u), space
            )
            if lhs != double:
                return CheckResult(
                    "double-edge-identity",
                    False,
                    f"n={n}: identity fails at (u,w,v)=({u},{w},{v})",
                )
            count += 1
    return CheckResult("double-edge-identity", True, f"n={n}: {count} triples")


def _instance_matrix(instances: Sequence[Multigraph]) -> np.ndarray:
    return np.array([g.mult for g in instances], dtype=np.int64)


def brute_force_metric_minimum(
    a: EdgeVector, instances: Sequence[Multigraph], matrix: Optional[np.ndarray] = None
) -> Fraction:
    """Exact minimum of a.x over a finite instance list.

    Clears denominators and evaluates the integer dot products in bulk; the
    scaled magnitudes are asserted to stay far below the int64 overflow
    line, so the numpy computation is exact.
    """
    if matrix is None:
        matrix = _instance_matrix(instances)
    scale = math.lcm(*[c.denominator for c in a.coords])
    ints = np.array([int(c * scale) for c in a.coords], dtype=np.int64)
    bound = int(np.abs(ints).max(initial=0)) * int(matrix.max(initial=0)) * matrix.shape[1]
    assert bound < 2**62, "scaled metric too large for exact int64 arithmetic"
    costs = matrix @ ints
    return Fraction(int(costs.min()), scale)


def check_optimization(n: int, n_metrics: int, seed: int) -> CheckResult:
    """Tour optimum equals the brute-force optimum over all Eulerian-connected
    multigraphs with multiplicity <= 2 and m <= 2n."""
    instances = exhaustive_instances(n, max_mult=2, max_edges=2 * n)
    matrix = _instance_matrix(instances)
    for k in range(n_metrics):
        a = sample_metric(n, _mix(seed, k))
        value, argmin = optimize_metric(a, n)
        brute = brute_force_metric_minimum(a, instances, matrix)
        if value != brute:
            return CheckResult(
                "optimization",
                False,
                f"n={n}: tour minimum {value} != enumeration minimum {brute} (metric {k})",
            )
        if dot(a, cycle_vector(argmin).vector()) != value:
            return CheckResult(
                "optimization", False, f"n={n}: argmin does not attain the value"
            )
    return CheckResult(
        "optimization",
        True,
        f"n={n}: {n_metrics} metrics against {len(instances)} multigraphs",
    )


def sample_q_point(n: int, seed: int) -> EdgeVector:
    """A seeded random rational point inside the orthant-restricted sum.

    Mixes a random convex combination of tours with a random non-negative
    combination of shortcut vectors, then repairs any negative coordinate by
    adding multiples of unit vectors, which are recession directions. About
    a third of the samples use no shortcuts at all, so the degree-two face
    is exercised from both sides.
    """
    rng = random.Random(seed)
    space = EdgeSpace(n)
    tours = enumerate_hamiltonian_cycles(n)
    k = rng.randint(1, 3)
    weights = [rng.randint(1, 5) for _ in range(k)]
    total = sum(weights)
    x = EdgeVector.zero(space)
    for w in weights:
        t = tours[rng.randrange(len(tours))]
        x = x + cycle_vector(t).vector().scaled(Fraction(w, total))
    if rng.random() < 0.65:
        triples = enumerate_shortcut_triples(n)
        for _ in range(rng.randint(1, 3)):
            t = triples[rng.randrange(len(triples))]
            mu = Fraction(rng.randint(1, 4), rng.randint(1, 3))
            x = x + shortcut_vector(t, space).scaled(mu)
    for i, c in enumerate(x.coords):
        if c < 0:
            u, v = list(edge_pairs(n))[i]
            x = x + unit_vector(space, u, v).scaled(-c)
    return x


def check_face_property(
    points: Sequence[EdgeVector], label: str
) -> CheckResult:
    """degree-two-face AND inside-the-restricted-sum iff inside the tour polytope."""
    for x in points:
        f = face_degree_two_check(x)
        g_ans = gtsp_membership(x)
        s_ans = stsp_membership(x)
        if not verify_membership(g_ans) or not verify_membership(s_ans):
            return CheckResult(
                "face-property", False, f"{label}: a certificate failed re-check"
            )
        lhs = f and g_ans.verdict == INSIDE
        rhs = s_ans.verdict == INSIDE
        if lhs != rhs:
            return CheckResult(
                "face-property",
                False,
                f"{label}: equivalence fails (face={f}, gtsp={g_ans.verdict}, "
                f"stsp={s_ans.verdict})",
            )
    return CheckResult("face-property", True, f"{label}: {len(points)} points")


def check_facets(n: int) -> CheckResult:
    """Facet enumeration invariants at n: validity on all generators,
    irredundancy, integral Eulerian-connected vertices, rays in the polar,
    and the two-class dichotomy."""
    space = EdgeSpace(n)
    d = space.dim
    facets = facets_of_Q(n)
    vrep = extreme_elements_of_Q(n)

    tours = [cycle_vector(t).vector() for t in enumerate_hamiltonian_cycles(n)]
    shortcuts = [
        shortcut_vector(t, space) for t in enumerate_shortcut_triples(n)
    ]
    for ineq, klass in facets:
        if klass not in (FacetClass.NON_NEGATIVITY, FacetClass.TRIANGLE_METRIC):
            return CheckResult("facets", False, f"n={n}: dichotomy violation")
        for p in tours:
            if dot(ineq.a, p) < ineq.alpha:
                return CheckResult(
                    "facets", False, f"n={n}: facet cuts off a tour point"
                )
        # Shortcut rays generate the unrestricted sum, not its orthant
        # restriction, so only the triangle-metric facets must be valid on
        # them (polarity); non-negativity facets legitimately cut them off.
        if klass is FacetClass.TRIANGLE_METRIC:
            for s in shortcuts:
                if dot(ineq.a, s) < 0:
                    return CheckResult(
                        "facets", False, f"n={n}: metric facet cuts off a shortcut ray"
                    )

    for v in vrep.vertices:
        if any(c.denominator != 1 for c in v.coords):
            return CheckResult("facets", False, f"n={n}: non-integral vertex")
        g = Multigraph(space, tuple(int(c) for c in v.coords))
        if not is_eulerian_connected(g):
            return CheckResult(
                "facets", False, f"n={n}: vertex is not Eulerian-connected"
            )
    for r in vrep.rays:
        if not r.is_nonnegative():
            return CheckResult("facets", False, f"n={n}: ray leaves the orthant")
        ans = polar_membership(r)
        if ans.verdict != INSIDE or not verify_membership(ans):
            return CheckResult(
                "facets", False, f"n={n}: ray not certified inside the polar"
            )

    # H/V cross-consistency and irredundancy, recomputed from the public
    # outputs: every extreme element satisfies every facet, and the elements
    # tight at a facet must span a hyperplane of the homogenized space.
    hom_elems = [
        (1,) + tuple(int(c) for c in v.coords) for v in vrep.vertices
    ] + [(0,) + tuple(int(c) for c in r.coords) for r in vrep.rays]
    for ineq, _ in facets:
        row = (-int(ineq.alpha),) + tuple(int(c) for c in ineq.a.coords)
        tight = []
        for e in hom_elems:
            val = sum(a * b for a, b in zip(row, e))
            if val < 0:
                return CheckResult(
                    "facets", False, f"n={n}: facet cuts off an extreme element"
                )
            if val == 0:
                tight.append(e)
        if not _has_rank(tight, d + 1, d):
            return CheckResult(
                "facets", False, f"n={n}: facet fails the tight-rank test"
            )

    by_class = {
        FacetClass.NON_NEGATIVITY: 0,
        FacetClass.TRIANGLE_METRIC: 0,
    }
    for _, klass in facets:
        by_class[klass] += 1
    return CheckResult(
        "facets",
        True,
        f"n={n}: {len(facets)} facets "
        f"({by_class[FacetClass.NON_NEGATIVITY]} non-negativity, "
        f"{by_class[FacetClass.TRIANGLE_METRIC]} triangle-metric), "
        f"{len(vrep.vertices)} vertices, {len(vrep.rays)} rays",
    )


def check_facet_validity_on_instances(
    n: int, instances: Sequence[Multigraph]
) -> CheckResult:
    """Every enumerated Eulerian-connected multigraph satisfies every facet."""
    facets = facets_of_Q(n)
    matrix = _instance_matrix(instances)
    for ineq, _ in facets:
        a = np.array([int(c) for c in ineq.a.coords], dtype=np.int64)
        vals = matrix @ a
        if int(vals.min()) < int(ineq.alpha):
            return CheckResult(
                "facet-validity",
                False,
                f"n={n}: an instance violates {ineq.a.coords} >= {ineq.alpha}",
            )
    return CheckResult(
        "facet-validity",
        True,
        f"n={n}: {len(instances)} instances x {len(facets)} facets",
    )


def check_certificate_soundness(n: int, seed: int) -> CheckResult:
    """Tampered certificates must be rejected by the re-verifiers.

    Every mutation below provably breaks the mutated claim (a changed step
    changes the reconstruction sum, an extra unit of a tour coefficient
    breaks convexity, a bumped primal coordinate breaks an equality row, a
    right-hand side moved onto the point kills the violation, a zeroed
    Farkas vector loses y.b < 0), so detection is required, not just likely.
    """
    g = sample_eulerian_connected(n, 2 * n + 2, seed)
    while g.m == g.space.n:  # want at least one step to tamper with
        seed += 1
        g = sample_eulerian_connected(n, 2 * n + 2, seed)
    cert = decompose(g)
    ok, _ = verify_certificate(g, cert)
    if not ok:
        return CheckResult(
            "certificate-soundness", False, f"n={n}: honest certificate rejected"
        )

    t0 = cert.steps[0]
    swapped = ShortcutTriple(t0.u, t0.v, t0.w)  # move the apex: new vector
    bad = DecompositionCertificate(cert.base_cycle, (swapped,) + cert.steps[1:])
    if verify_certificate(g, bad)[0]:
        return CheckResult(
            "certificate-soundness", False, f"n={n}: tampered step accepted"
        )
    dropped = DecompositionCertificate(cert.base_cycle, cert.steps[1:])
    if verify_certificate(g, dropped)[0]:
        return CheckResult(
            "certificate-soundness", False, f"n={n}: dropped step accepted"
        )

    x = g.vector()
    ans = minkowski_membership(x)
    if not verify_membership(ans) or not _lp_outcome_ok(ans, x):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: honest LP certificate rejected"
        )
    t, c = ans.tour_coeffs[0]
    tampered = MembershipAnswer(
        ans.set_name,
        ans.verdict,
        x,
        tour_coeffs=((t, c + 1),) + ans.tour_coeffs[1:],
        shortcut_coeffs=ans.shortcut_coeffs,
    )
    if verify_membership(tampered):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: tampered combination accepted"
        )

    out = ans.lp_outcome
    flipped = list(out.primal)
    flipped[0] = flipped[0] + 1
    bad_out = LPOutcome(status=out.status, primal=tuple(flipped))
    if verify_certificate_lp(membership_lp_system("minkowski", x), bad_out):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: tampered LP primal accepted"
        )

    y_out = x + unit_vector(x.space, 1, 2)  # odd degrees: outside both
    outside = stsp_membership(y_out)
    if outside.verdict != OUTSIDE or not verify_membership(outside):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: expected outside verdict"
        )
    a, _ = outside.separating
    moved = MembershipAnswer(
        outside.set_name,
        outside.verdict,
        outside.point,
        separating=(a, dot(a, outside.point)),
    )
    if verify_membership(moved):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: non-violated separator accepted"
        )
    zeroed = LPOutcome(
        status="infeasible",
        dual_certificate=(Fraction(0),) * (x.space.dim + 1),
    )
    if verify_certificate_lp(membership_lp_system("stsp", y_out), zeroed):
        return CheckResult(
            "certificate-soundness", False, f"n={n}: zeroed Farkas vector accepted"
        )
    return CheckResult("certificate-soundness", True, f"n={n}: tampering detected")


def run_verify(n: int, samples: int, seed: int) -> List[CheckResult]:
    """The scaled-down pipeline behind ``verify --n N --samples K --seed S``."""
    results: List[CheckResult] = []
    max_edges = 12 if n <= 5 else 20
    instances = sampled_instances(n, samples, seed, max_edges=max_edges)
    label = f"n={n} sampled"
    results.append(check_decomposition_roundtrip(instances, label))
    results.append(check_minkowski_agreement(instances, label))
    results.append(check_polarity(n, min(samples, 50), seed))
    if n <= 6:
        results.append(check_double_edge_identity(n))
        results.append(check_optimization(n, min(samples, 25), seed))
    points = [sample_q_point(n, _mix(seed, 7000 + k)) for k in range(min(samples, 50))]
    results.append(
        check_face_property(
            points + [g.vector() for g in instances[: min(len(instances), 50)]],
            f"n={n}",
        )
    )
    if n in (4, 5):
        results.append(check_facets(n))
        results.append(
            check_facet_validity_on_instances(n, exhaustive_instances(n))
        )
    results.append(check_certificate_soundness(n, seed))
    return results
