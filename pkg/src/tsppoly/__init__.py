"""Exact-arithmetic toolkit for traveling-salesman polyhedra.

Everything runs over exact rationals: edge-indexed vectors, Eulerian
multigraph decomposition into a Hamiltonian cycle plus shortcut vectors,
certified LP membership oracles for the tour polytope / metric-polar cone
/ their Minkowski sum and its orthant restriction, double-description
facet enumeration with the two-class facet classifier, and a CLI wrapping
it all (``tsppoly --help``).
"""

from .edgespace import (
    EdgeSpace,
    EdgeVector,
    Rational,
    char_vector,
    dot,
    edge_index,
)
from .multigraph import (
    HamiltonianCycle,
    Multigraph,
    ShortcutTriple,
    cycle_vector,
    degree,
    enumerate_eulerian_connected,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    is_connected_spanning,
    is_eulerian_connected,
    remove_vertex_components,
    sample_eulerian_connected,
    shortcut_vector,
)
from .decompose import (
    DecompositionCertificate,
    NotEulerianError,
    ReductionStep,
    choose_reduction,
    decompose,
    verify_certificate,
)
from .lp import (
    LPOutcome,
    LinearSystem,
    solve_feasibility,
    solve_min,
    verify_certificate_lp,
)
from .membership import (
    MembershipAnswer,
    MetricViolation,
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
from .ddfacets import (
    FacetClass,
    LinearInequality,
    VRepresentation,
    classify_facet,
    extreme_elements_of_Q,
    facets_of_Q,
)

__version__ = "0.1.0"
