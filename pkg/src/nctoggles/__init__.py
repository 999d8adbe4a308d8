"""Toggle dynamics on noncrossing partitions and independent sets.

The package provides exact (integer / rational) verification of orbit and
homomesy phenomena for toggle actions: noncrossing partitions of [n] under
arc toggles, Kreweras complementation and the Simion-Ullman involution, and
the generalization to vertex toggles on independent sets of graphs,
including 2-cliquish graphs and the skeletal/multigraph bijection.
"""

__version__ = "0.1.0"

from .dynamics import (
    HomomesyReport,
    Orbit,
    Statistic,
    check_homomesy,
    chi_sum_conjugation_check,
    eval_statistic,
    even_orbits_check,
    orbit_average,
    orbit_partition,
    orbits,
    parse_statistic,
    verify_arc_count_theorem,
)
from .indsets import (
    CliquishCertificate,
    Multigraph,
    SimpleGraph,
    add_edge,
    apply_vertex_word,
    check_cliquish_with,
    complete_minus_edge,
    cycle_with_edge_triangles,
    disjoint_union,
    enumerate_2cliquish_from_skeletal,
    enumerate_independent_sets,
    gamma_graph,
    graph_isomorphic,
    is_2_cliquish,
    is_skeletal,
    multigraph_isomorphic,
    multigraph_to_skeletal,
    pendant_double,
    psi_v,
    remove_edge,
    skeletal_to_multigraph,
    skeletalize,
    toggle_vertex,
    verify_cardinality_homomesy,
)
from .kreweras import (
    eta,
    kreweras,
    kreweras_oracle,
    kreweras_power,
    kreweras_prime,
    kreweras_prime_oracle,
    relabel,
    rotate,
    simion_ullman,
)
from .ncpartition import (
    Arc,
    BlockPartition,
    EnumerationLimitError,
    InvalidPartitionError,
    NCPartition,
    Violation,
    ViolationKind,
    arc_count,
    arcs_to_blocks,
    block_count,
    blocks_to_arcs,
    catalan,
    enumerate_nc,
    is_refinement,
    validate,
)
from .toggles import (
    BaseGraph,
    PairType,
    ToggleCounts,
    base_graph,
    classify_pair,
    commutes,
    counts,
    counts_observed,
    noncommuting_count,
    pair_order,
    pair_order_observed,
    toggle,
)
from .words import (
    Orientation,
    ToggleWord,
    admissible_conjugate,
    admissible_sequence_valid,
    apply_word,
    column_word,
    functionally_equal,
    is_coxeter,
    is_partial_coxeter,
    kreweras_inverse_word,
    kreweras_word,
    orientation_of,
    row_word,
    sinks,
    sources,
    torically_equivalent,
)
