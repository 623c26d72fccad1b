"""Secret-sharing information-complexity bounds for graphs.

Core-based lower bounds and star-cover LP upper bounds for arbitrary graphs,
the entropy-method LP, and for trees the provably optimal linear secret
sharing scheme with load 2 - 1/c.
"""

from .cores import (
    CoreProfile,
    WeightedCoreProfile,
    WeightFunction,
    is_core,
    is_maximal_weighting,
    max_core_bruteforce,
    max_core_weight_at,
    max_core_weight_bruteforce,
    maximalize_weights,
    sigma_of_tree,
    tree_core_sizes,
    weighted_core_profile,
)
from .entropy import (
    EntropyLP,
    build_entropy_lp,
    dump_lp,
    entropy_lower_bound,
    is_qualified,
    solve_entropy_lp,
)
from .gf import (
    FieldMatrix,
    field_matrix,
    interpolate_secret,
    is_prime,
    mat_rank,
    poly_eval,
    rowspace_contains,
    smallest_prime_at_least,
)
from .graphs import (
    Graph,
    GraphParseError,
    RootedTree,
    is_tree,
    load_graph,
    make_graph,
    parse_graph,
    root_at,
    serialize_graph,
)
from .lp import LinearProgram, LPError, LPSolution, Rational, solve_min, solve_min_dual
from .scheme import (
    Scheme,
    SharesBundle,
    VerifyReport,
    build_scheme,
    deal,
    emit_matrices,
    max_independent_sets,
    random_vector,
    reconstruct,
    scheme_from_json,
    scheme_hash,
    scheme_to_json,
    shares_from_json,
    shares_to_json,
    verify_exhaustive,
    verify_linear,
)
from .stars import (
    Orientation,
    PackingReport,
    Star,
    StarCoverResult,
    StarPacking,
    extract_stars,
    orient_edges,
    star_cover_rate_lp,
    verify_packing,
)

__version__ = "0.1.0"
