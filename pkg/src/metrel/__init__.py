"""Realizations of integer vector sets as metric coordinates of graphs."""

from metrel.core import (
    DimensionError,
    GraphError,
    LabeledGraph,
    Realization,
    VectorSet,
    VectorSetError,
    bfs_distances,
    chebyshev_adjacent,
    is_connected,
)
from metrel.minimization import (
    addable_edge,
    bmetrel_decide,
    descent_realizes,
    enumerate_minimal,
    enumerate_minimum,
    forced_edges,
    is_uniquely_realizable,
    minimize_greedy,
    minimum_edges,
    removable_edge,
)
from metrel.realizability import (
    NotRealizableError,
    canonical_realization,
    check_realizable,
    d_neighborhood,
)
from metrel.satbridge import (
    CnfFormula,
    brute_force_sat,
    decode_assignment,
    normalize_formula,
    parse_dimacs,
    reduce_3sat,
    satisfying_graph,
    witness_graph_g0,
)
from metrel.trees import (
    build_tree_realization,
    split_strata,
    tree_realizable,
    uniquely_realizable_by_tree,
)
from metrel.verification import (
    are_equivalent,
    are_isomorphic_small,
    is_resolving_set,
    project_to_canonical,
    verify_realization,
)

__version__ = "0.1.0"
