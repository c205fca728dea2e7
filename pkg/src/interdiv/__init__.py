"""Diversity and interdisciplinarity indicators over two-mode matrices.

Reads Pajek ``.net`` files, builds a cosine (or Jaccard) disparity among
the classes, and computes per-unit Rao-Stirling diversity, DIV and their
components, plus the network and correlation statistics used to compare
them.
"""

from .diversity import (
    IndicatorRow,
    RSParams,
    avg_disparity,
    coherence,
    div_indicator,
    gini,
    gini_bruteforce,
    gini_simpson,
    indicator_row,
    rao_stirling,
    shannon,
    true_diversity,
    variety,
)
from .graph import Descriptives, Graph, betweenness, descriptives, largest_component, normalize_betweenness
from .matrix import (
    ColumnProfile,
    CoocMatrix,
    LoopReport,
    TwoModeMatrix,
    column_profile,
    drop_loops,
    row_projection,
    transpose,
)
from .pajek import (
    Link,
    PajekError,
    PajekNetwork,
    cooc_from_network,
    network_from_cooc,
    network_from_matrix,
    parse_net,
    read_net,
    save_net,
    to_two_mode,
    write_net,
)
from .pipeline import PipelineError, RunConfig, analyze, build_disparity, compute_indicators, run
from .similarity import DisparityMatrix, cosine_similarity, disparity_from_similarity, jaccard_similarity
from .stats import CorrelationReport, correlation_report, pearson, spearman, top_k

__all__ = [
    "IndicatorRow",
    "RSParams",
    "avg_disparity",
    "coherence",
    "div_indicator",
    "gini",
    "gini_bruteforce",
    "gini_simpson",
    "indicator_row",
    "rao_stirling",
    "shannon",
    "true_diversity",
    "variety",
    "Descriptives",
    "Graph",
    "betweenness",
    "descriptives",
    "largest_component",
    "normalize_betweenness",
    "ColumnProfile",
    "CoocMatrix",
    "LoopReport",
    "TwoModeMatrix",
    "column_profile",
    "drop_loops",
    "row_projection",
    "transpose",
    "Link",
    "PajekError",
    "PajekNetwork",
    "cooc_from_network",
    "network_from_cooc",
    "network_from_matrix",
    "parse_net",
    "read_net",
    "save_net",
    "to_two_mode",
    "write_net",
    "PipelineError",
    "RunConfig",
    "analyze",
    "build_disparity",
    "compute_indicators",
    "run",
    "DisparityMatrix",
    "cosine_similarity",
    "disparity_from_similarity",
    "jaccard_similarity",
    "CorrelationReport",
    "correlation_report",
    "pearson",
    "spearman",
    "top_k",
]

__version__ = "0.1.0"
