"""Finite frames built from graph Laplacians, their duals and tightness."""

__version__ = "0.1.0"

from .errors import CheckFailed, ConsistencyError, ConvergenceError, GraphFramesError, InputError
from .frame import (
    Frame,
    FrameBounds,
    analysis_apply,
    canonical_dual,
    frame_bounds,
    frame_operator,
    gramian,
    is_frame,
    is_parseval,
    is_tight,
    is_uniform,
    is_unit_norm,
    reconstruct,
    synthesis_matrix,
    verify_dual,
)
from .graph import (
    ComponentPartition,
    DegreeInfo,
    Graph,
    adjacency_matrix,
    complete,
    connected_components,
    cycle,
    degree_info,
    degree_matrix,
    disjoint_union,
    empty,
    from_edge_list,
    has_null_vertex,
    is_regular,
    laplacian_matrix,
    path,
    random_connected_graph,
    random_graph,
    star,
)
from .graph_frame import (
    BoundCheck,
    DualSpec,
    EquivalenceMap,
    LgFrameResult,
    TightnessReport,
    canonical_dual_lg,
    dual_from_shifts,
    dual_is_in_family,
    eigenbasis_variant,
    is_g_frame,
    is_lg_frame,
    laplacian_bound_check,
    lg_frame,
    tightness_report,
    unitary_equivalence_map,
)
from .linalg import DEFAULT_TOLERANCE, EigenDecomposition, TolerancePolicy, cluster_distinct, eigh
from .survey import SurveyReport, survey
