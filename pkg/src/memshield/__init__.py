"""memshield: membership-based immunization on networks with overlapping
communities, with attack-curve and SIR evaluation."""

from .cover import (
    CommunityCover,
    CommunityFileError,
    CumulativeDistribution,
    OverlapStatistics,
    cumulative_distribution,
    load_community_file,
    nonzero_overlap_sizes,
    overlap_statistics,
    parse_community_file,
)
from .graph import (
    EdgeListParseError,
    Graph,
    NodeMask,
    connected_components,
    lcc_size,
    load_edge_list,
    parse_edge_list,
    write_edge_list,
)
from .sir import SirConfigurationError, SirEnsemble, SirParams, SirTrace, sir_ensemble, sir_run
from .strategies import (
    STRATEGY_CLASSES,
    CommunityBridgeFinder,
    HighMembershipFirst,
    ImmunizationOrder,
    ImmunizationStrategy,
    LowMembershipFirst,
    RandomAcquaintance,
    apply_order,
)

__version__ = "0.1.0"

__all__ = [
    "CommunityBridgeFinder",
    "CommunityCover",
    "CommunityFileError",
    "CumulativeDistribution",
    "EdgeListParseError",
    "Graph",
    "HighMembershipFirst",
    "ImmunizationOrder",
    "ImmunizationStrategy",
    "LowMembershipFirst",
    "NodeMask",
    "OverlapStatistics",
    "RandomAcquaintance",
    "STRATEGY_CLASSES",
    "SirConfigurationError",
    "SirEnsemble",
    "SirParams",
    "SirTrace",
    "apply_order",
    "connected_components",
    "cumulative_distribution",
    "lcc_size",
    "load_community_file",
    "load_edge_list",
    "nonzero_overlap_sizes",
    "overlap_statistics",
    "parse_community_file",
    "parse_edge_list",
    "sir_ensemble",
    "sir_run",
    "write_edge_list",
]
