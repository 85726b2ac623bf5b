"""Node-removal vulnerability of a graph's largest connected component."""

from .attack import (
    AttackStep,
    AttackTrace,
    CutPartition,
    greedy_centrality_removal,
    greedy_spectral_removal,
    random_removal,
    run_strategy,
    spectral_cut,
)
from .centrality import CentralityScores, betweenness, degrees
from .estimators import CentralityAttack, ComponentIndicators, RandomAttack, SpectralCutAttack, check_graph
from .exceptions import (
    BasisInconsistency,
    BudgetExceedsNodes,
    CapacityExceeded,
    DuplicateEdge,
    FractureError,
    NoConvergence,
    NotConnected,
    ParseError,
    SelfLoop,
    ToleranceAmbiguity,
    UnknownNode,
)
from .graph import (
    ComponentList,
    Graph,
    augmented_signless,
    components_bfs,
    incidence,
    laplacian,
    nuclear_norm_identity,
    parse_edge_list,
    parse_gml,
    parse_pajek,
    read_graph,
    remove_nodes,
    signless_laplacian,
)
from .nullspace import ComponentBasis, NullBasis, matrix_one_norm, null_space_basis, sparsest_binary_basis
from .spectral import SpectralResult, edge_upper_bound, fiedler, lambda_max

__version__ = "0.1.0"
