"""Main-path mining on patent citation networks via genetic knowledge persistence."""

from gbfp.analysis import ComparisonReport, SynthParams, compare_networks, generate_synthetic
from gbfp.baseline import LinkWeights, baseline_forward_paths, rank_components, spc_weights
from gbfp.errors import CycleError, GBFPError, OracleTooLarge, ParameterError, ParseError
from gbfp.graph import (
    CitationEdge,
    CitationNetwork,
    PatentRecord,
    ValidationReport,
    endpoints,
    load_citation_pairs,
    load_metadata,
    startpoints,
    validate,
)
from gbfp.kernels import DEFAULT_BACKEND
from gbfp.layering import LayerAssignment, assign_layers
from gbfp.mainpath import Cutoffs, HppSet, MainPathNetwork, build_main_paths, select_hpps
from gbfp.persistence import (
    PersistenceScores,
    brute_force_persistence,
    compute_all_persistence,
    effective_backward_count,
    knowledge_persistence,
    normalize,
)

__version__ = "0.1.0"
