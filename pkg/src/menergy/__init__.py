"""Graph energy, exact spectral moments, and moment-based energy bounds.

The library computes the energy of a simple graph (the sum of absolute
adjacency eigenvalues) exactly, bounds it from the walk counts n, M2, M4
through an optimal tangent quartic with a closed form, classifies the graphs
attaining the bound, and optimises bounds of higher polynomial degree with a
small LP.
"""

from .extremal import (
    EqualityClass,
    classify_equality,
    design_spectrum,
    detect_complete,
    detect_design_incidence,
    detect_srg,
    spectrum_membership,
    srg_spectrum,
)
from .families import (
    FamilyError,
    FamilySpec,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    generate,
    generate_from_string,
    heawood,
    parse_family_spec,
    path,
    petersen,
    projective_plane_incidence,
    random_gnp,
    rook,
    star,
)
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .graphs import (
    Graph,
    GraphError,
    adjacency_matrix,
    bipartition,
    is_bipartite,
    is_connected,
    is_regular,
    parse_edge_list,
)
from .moments import (
    DegreeStats,
    MomentMismatchError,
    MomentSummary,
    NoEdgesError,
    ScaledMoments,
    count_quadrilaterals,
    degree_stats,
    moment_summary,
    scaled_moments,
)
from .polyopt import (
    LpConvergenceError,
    LpInfeasibleError,
    LpProblem,
    LpSolution,
    SweepEntry,
    bound_sweep,
    lp_problem,
    solve_bound_lp,
)
from .quartic import (
    EvenPolynomial,
    MajorizationError,
    best_quartic_bound,
    bound_at_tangency,
    bound_from_polynomial,
    dilate,
    optimal_tangency,
    tangent_quartic,
    van_dam_bound,
    verify_majorization,
)
from .report import BoundReport, analyze_graph, soundness_ok
from .spectral import (
    CapExceededError,
    NoConvergenceError,
    Spectrum,
    eigenvalues,
    energy,
    trace_moment,
    trace_moments,
)

__version__ = "0.1.0"
