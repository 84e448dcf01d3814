"""Strong structural controllability of structured networks.

The toolkit works over pattern matrices with entries in {0, *, ?}: "0"
means exactly zero, "*" surely nonzero, "?" arbitrary. It decides whether
every numeric network consistent with the patterns is controllable, via
graph color-change certificates, and backs the symbolic verdicts with a
numeric sampling oracle.
"""

from .errors import (
    AssumptionViolated,
    BadShape,
    DimensionMismatch,
    NetworkFormatError,
    PatternParseError,
)
from .graph import (
    ColoringResult,
    PatternGraph,
    build_graph,
    color_change,
    export_dot,
    is_full_row_rank,
    weak_color_change,
)
from .network import (
    AnalysisReport,
    NodeSystem,
    StructuredNetwork,
    SystemCheck,
    Violation,
    analyze,
    assemble,
    check_structured_system,
    extract_topology,
    is_network_controllable,
    load_network,
    network_from_dict,
    network_to_dict,
    node_necessary_check,
    topology_necessary_check,
    validate,
)
from .oracle import (
    AuditConfig,
    AuditOutcome,
    audit_network,
    audit_rank,
    enumerate_patterns,
    kalman_controllable,
    shift_exclusion_exhaustive,
    shift_exclusion_random,
)
from .pattern import (
    ANY,
    STAR,
    SYMBOLS,
    ZERO,
    PatternMatrix,
    PatternSymbol,
    ProductExactness,
    assemble_blocks,
    block_diag,
    exact_product_condition,
    hstack,
    is_member,
    load_pattern,
    pat_add,
    pat_identity,
    pat_mul,
    sample_realization,
    sym_add,
    sym_mul,
)

__version__ = "0.1.0"

__all__ = [
    "ANY",
    "AnalysisReport",
    "AssumptionViolated",
    "AuditConfig",
    "AuditOutcome",
    "BadShape",
    "ColoringResult",
    "DimensionMismatch",
    "NetworkFormatError",
    "NodeSystem",
    "PatternGraph",
    "PatternMatrix",
    "PatternParseError",
    "PatternSymbol",
    "ProductExactness",
    "STAR",
    "SYMBOLS",
    "StructuredNetwork",
    "SystemCheck",
    "Violation",
    "ZERO",
    "analyze",
    "assemble",
    "assemble_blocks",
    "audit_network",
    "audit_rank",
    "block_diag",
    "build_graph",
    "check_structured_system",
    "color_change",
    "enumerate_patterns",
    "exact_product_condition",
    "export_dot",
    "extract_topology",
    "hstack",
    "is_full_row_rank",
    "is_member",
    "is_network_controllable",
    "kalman_controllable",
    "load_network",
    "load_pattern",
    "network_from_dict",
    "network_to_dict",
    "node_necessary_check",
    "pat_add",
    "pat_identity",
    "pat_mul",
    "sample_realization",
    "shift_exclusion_exhaustive",
    "shift_exclusion_random",
    "sym_add",
    "sym_mul",
    "topology_necessary_check",
    "validate",
    "weak_color_change",
]
