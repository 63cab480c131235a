"""Rigidity of cut and spectral approximation, operational.

Graphs that approximate each other must overlap heavily edge for edge;
graphs near a reference compress to a few bits; counting regular graphs
against sketch capacity forces size lower bounds.  This package makes all
three quantitative: generators and exact/dense approximation factors,
overlap-law checks with a constructive rounding witness, a relative
sketch codec, counting calculators, and a seeded experiment layer exposed
over HTTP and a CLI.
"""

__version__ = "0.1.0"

from .approx import (
    ApproxReport,
    cut_approx_factor_exact,
    cut_value,
    friedman_factor,
    quadratic_form,
    spectral_approx_factor,
)
from .errors import (
    DecodeError,
    GenerationError,
    NoFiniteEpsilonError,
    NumericError,
    ParameterError,
    RigidkitError,
    ScaleError,
)
from .graphs import (
    BipartiteRegularGraph,
    EdgeOverlapReport,
    RegularGraph,
    bipartite_double_cover,
    canonical_hash,
    edge_overlap,
    graph_to_text,
    is_connected,
    perturb_edges,
    random_bipartite_regular,
    random_regular,
    read_graph,
    text_to_graph,
    write_graph,
)
from .linalg import (
    SymmetricMatrix,
    adjacency,
    adjacency_diff_frobenius_sq,
    laplacian,
    pinv_sqrt,
    sym_eigen,
)
from .rigidity import (
    GramVectors,
    RigidityReport,
    WitnessCut,
    check_cut_rigidity_exact,
    check_spectral_rigidity,
    cut_overlap_bound,
    gram_lower_bound,
    gram_vectors,
    rounding_expectation,
    rounding_gaps,
    spectral_overlap_bound,
    witness_cut,
)
from .sketch import (
    CountEstimate,
    CountingGapReport,
    SketchBits,
    SketchLayout,
    bytes_to_sketch,
    capacity_bound_log2,
    count_leading_term_log2,
    count_regular_log2,
    counting_gap_demo,
    cut_capacity_bound_log2,
    d_for_epsilon_cut,
    d_for_epsilon_spectral,
    decode_relative,
    encode_relative,
    enumerate_regular_exact,
    load_sketch,
    lower_bound_bits_cut,
    lower_bound_bits_spectral,
    mutual_approx_bound,
    save_sketch,
    sketch_to_bytes,
)

__all__ = [
    "__version__",
    "ApproxReport",
    "BipartiteRegularGraph",
    "CountEstimate",
    "CountingGapReport",
    "DecodeError",
    "EdgeOverlapReport",
    "GenerationError",
    "GramVectors",
    "NoFiniteEpsilonError",
    "NumericError",
    "ParameterError",
    "RegularGraph",
    "RigidityReport",
    "RigidkitError",
    "ScaleError",
    "SketchBits",
    "SketchLayout",
    "SymmetricMatrix",
    "WitnessCut",
    "adjacency",
    "adjacency_diff_frobenius_sq",
    "bipartite_double_cover",
    "bytes_to_sketch",
    "canonical_hash",
    "capacity_bound_log2",
    "check_cut_rigidity_exact",
    "check_spectral_rigidity",
    "count_leading_term_log2",
    "count_regular_log2",
    "counting_gap_demo",
    "cut_approx_factor_exact",
    "cut_capacity_bound_log2",
    "cut_overlap_bound",
    "cut_value",
    "d_for_epsilon_cut",
    "d_for_epsilon_spectral",
    "decode_relative",
    "edge_overlap",
    "encode_relative",
    "enumerate_regular_exact",
    "friedman_factor",
    "gram_lower_bound",
    "gram_vectors",
    "graph_to_text",
    "is_connected",
    "laplacian",
    "load_sketch",
    "lower_bound_bits_cut",
    "lower_bound_bits_spectral",
    "mutual_approx_bound",
    "perturb_edges",
    "pinv_sqrt",
    "quadratic_form",
    "random_bipartite_regular",
    "random_regular",
    "read_graph",
    "rounding_expectation",
    "rounding_gaps",
    "save_sketch",
    "sketch_to_bytes",
    "spectral_approx_factor",
    "spectral_overlap_bound",
    "sym_eigen",
    "text_to_graph",
    "witness_cut",
    "write_graph",
]
