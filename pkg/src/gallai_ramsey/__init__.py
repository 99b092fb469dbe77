"""Gallai colorings, Gallai-Ramsey numbers of odd cycles, and the machinery
to certify them: constructions, Gallai partitions, exhaustive search and
bound formulas."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    HypothesisError,
    compare_table,
    even_cycle_bound,
    exact_value,
    f_value,
    fox_conjecture_value,
    ramsey_two_cycles,
    upper_bound_chen,
    upper_bound_new,
    upper_bound_old,
)
from .certify import verify_gr_point
from .checks import (
    color_class_odd_cycle_free,
    find_mono_cycle,
    find_rainbow_triangle,
    mono_components,
    verify_certificate,
)
from .constructions import (
    ConstructionSpec,
    PartSizeVector,
    lower_bound_coloring,
    multipartite_cycle,
    verify_bad_coloring,
    verify_lower_bound,
)
from .graph import ColoredCompleteGraph, CycleCertificate, TriangleCertificate, read_graph, write_graph
from .harness import lemma12_harness, lemma13_harness, lemma15_harness, random_gallai_coloring
from .partition import (
    GallaiPartition,
    NotGallaiError,
    decomposition_tree,
    find_gallai_partition,
    reduced_graph,
    validate_partition,
)
from .search import SearchConfig, SearchOutcome, Status, search_coloring, search_via_gallai_tree

__all__ = [
    "BoundReport",
    "ColoredCompleteGraph",
    "ConstructionSpec",
    "CycleCertificate",
    "GallaiPartition",
    "HypothesisError",
    "NotGallaiError",
    "PartSizeVector",
    "SearchConfig",
    "SearchOutcome",
    "Status",
    "TriangleCertificate",
    "color_class_odd_cycle_free",
    "compare_table",
    "decomposition_tree",
    "even_cycle_bound",
    "exact_value",
    "f_value",
    "find_gallai_partition",
    "find_mono_cycle",
    "find_rainbow_triangle",
    "fox_conjecture_value",
    "lemma12_harness",
    "lemma13_harness",
    "lemma15_harness",
    "lower_bound_coloring",
    "mono_components",
    "multipartite_cycle",
    "ramsey_two_cycles",
    "random_gallai_coloring",
    "read_graph",
    "reduced_graph",
    "search_coloring",
    "search_via_gallai_tree",
    "upper_bound_chen",
    "upper_bound_new",
    "upper_bound_old",
    "validate_partition",
    "verify_bad_coloring",
    "verify_certificate",
    "verify_gr_point",
    "verify_lower_bound",
    "write_graph",
]
