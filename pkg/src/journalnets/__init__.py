"""Interlocking-editorship, interlocking-authorship and co-citation
journal networks: construction, whole-network dissimilarity correlation,
and community-partition comparison."""

__version__ = "0.1.0"

from .model import (
    AlignmentError,
    AssocReport,
    BipartiteIncidence,
    CommunityStats,
    ContingencyTable,
    DcorResult,
    DissimMatrix,
    NetworkStats,
    ParseError,
    Partition,
    WeightedGraph,
    validate_graph,
)
from .ingest import (
    parse_bipartite_csv,
    parse_edgelist_csv,
    parse_pajek_clu,
    parse_pajek_net,
    project_cocitation,
    project_interlocking,
    write_edgelist_csv,
    write_pajek_clu,
    write_pajek_net,
)
from .dissimilarity import (
    dissim_from_graph,
    dissim_from_incidence,
    jaccard,
    read_matrix_csv,
    write_matrix_csv,
)
from .distcorr import bonferroni_gate, dcor, double_center, perm_test
from .communities import ei_index, louvain, modularity, network_stats
from .association import (
    adjusted_rand,
    assoc_report,
    chi_square,
    contingency,
    cramers_v,
    rajski,
)
from .config import StudyConfig, load_study_config
from .report import run_study

__all__ = [
    "AlignmentError",
    "AssocReport",
    "BipartiteIncidence",
    "CommunityStats",
    "ContingencyTable",
    "DcorResult",
    "DissimMatrix",
    "NetworkStats",
    "ParseError",
    "Partition",
    "StudyConfig",
    "WeightedGraph",
    "__version__",
    "adjusted_rand",
    "assoc_report",
    "bonferroni_gate",
    "chi_square",
    "contingency",
    "cramers_v",
    "dcor",
    "dissim_from_graph",
    "dissim_from_incidence",
    "double_center",
    "ei_index",
    "jaccard",
    "load_study_config",
    "louvain",
    "modularity",
    "network_stats",
    "parse_bipartite_csv",
    "parse_edgelist_csv",
    "parse_pajek_clu",
    "parse_pajek_net",
    "perm_test",
    "project_cocitation",
    "project_interlocking",
    "rajski",
    "read_matrix_csv",
    "run_study",
    "validate_graph",
    "write_edgelist_csv",
    "write_matrix_csv",
    "write_pajek_clu",
    "write_pajek_net",
]
