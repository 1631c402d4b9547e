"""Cohomology basis graphs of right-angled Artin groups over prime fields.

Given a graph and a basis of H^1 over F_p (rows of an invertible matrix in
vertex-dual coordinates), the basis graph joins two basis vectors when
their cup product is nonzero.  The defining graph always embeds in it.
This package computes these graphs, checks the embedding constructively
through null-connectedness, blocks and determinant tracks, reconstructs
graphs from cup-product data, reads cup products off group presentations,
and decides the minor-closed properties that bound the Colin de Verdière
invariant.
"""

from .cohomology import (
    CohomologyBasis,
    Degree1Vector,
    Degree2Vector,
    cohomology_basis_graph,
    cup_deg1,
    edge_count_report,
    null_connected,
    verify_containment,
)
from .errors import CBGError, GuardError, InvariantViolation, ParseError, SingularMatrixError
from .graphs import (
    MinorOp,
    SimpleGraph,
    VertexMap,
    are_isomorphic,
    canonical_form,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    find_subgraph_embedding,
    has_minor,
    path_graph,
    petersen_graph,
    star_graph,
)
from .linalg import (
    Permutation,
    PrimeField,
    PrimeFieldMatrix,
    det_gaussian,
    det_leibniz,
    enumerate_invertible,
    inverse,
    is_invertible,
    random_invertible,
    rank,
)
from .minors import contraction_gap, dumbbell, elementary_minor_basis, verify_minor_relation
from .presentation import (
    Cocycle,
    Presentation,
    certify_property,
    cup_eval,
    cup_vanishes,
    h1_basis,
    parse_presentation,
    presentation_basis_graph,
)
from .properties import (
    complement_is_outerplanar,
    complement_is_planar,
    is_linear_forest,
    is_linkless,
    is_outerplanar,
    is_planar,
    mu_at_most,
)
from .reconstruction import (
    EdgeIdeal,
    PairingTensor,
    gamma_prime,
    graphs_from_edge_ideal,
    nonvanishing_graph,
    pairing_from,
    reconstruct_minimal_edges,
)
from .tracks import (
    OneBlock,
    Track,
    embedding_from_reordering,
    find_good_reordering,
    find_one_blocks,
    null_connectivity_graph,
    track_determinants,
    track_of_permutation,
    track_restricted_det,
)

__all__ = [
    "CohomologyBasis",
    "Degree1Vector",
    "Degree2Vector",
    "cohomology_basis_graph",
    "cup_deg1",
    "edge_count_report",
    "null_connected",
    "verify_containment",
    "CBGError",
    "GuardError",
    "InvariantViolation",
    "ParseError",
    "SingularMatrixError",
    "MinorOp",
    "SimpleGraph",
    "VertexMap",
    "are_isomorphic",
    "canonical_form",
    "complement",
    "complete_bipartite",
    "complete_graph",
    "cycle_graph",
    "find_subgraph_embedding",
    "has_minor",
    "path_graph",
    "petersen_graph",
    "star_graph",
    "Permutation",
    "PrimeField",
    "PrimeFieldMatrix",
    "det_gaussian",
    "det_leibniz",
    "enumerate_invertible",
    "inverse",
    "is_invertible",
    "random_invertible",
    "rank",
    "contraction_gap",
    "dumbbell",
    "elementary_minor_basis",
    "verify_minor_relation",
    "Cocycle",
    "Presentation",
    "certify_property",
    "cup_eval",
    "cup_vanishes",
    "h1_basis",
    "parse_presentation",
    "presentation_basis_graph",
    "complement_is_outerplanar",
    "complement_is_planar",
    "is_linear_forest",
    "is_linkless",
    "is_outerplanar",
    "is_planar",
    "mu_at_most",
    "EdgeIdeal",
    "PairingTensor",
    "gamma_prime",
    "graphs_from_edge_ideal",
    "nonvanishing_graph",
    "pairing_from",
    "reconstruct_minimal_edges",
    "OneBlock",
    "Track",
    "embedding_from_reordering",
    "find_good_reordering",
    "find_one_blocks",
    "null_connectivity_graph",
    "track_determinants",
    "track_of_permutation",
    "track_restricted_det",
]

__version__ = "0.1.0"
