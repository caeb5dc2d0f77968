"""Rewriting engine for 1-polygraphs: termination, confluence, homotopy bases and certificates."""

from __future__ import annotations

from .cells import (
    AtomicCell,
    CellKind,
    RewriteZigZag,
    WhiskeredCell,
    check_atomic_cell,
    check_rewrite_zigzag,
    inv_cancellation,
    rz_compose,
    rz_invert,
    whisker,
)
from .certify import Certificate, certify_closed, check_certificate
from .coherence import BasisWitness, LocalConfluenceStructure, basis_witness, contract_closed, wb_to_cr
from .core import (
    GRAPH,
    SRS,
    OrientedStep,
    RewritingSystem,
    StepRef,
    StringRule,
    ZigZag,
    compose,
    find_local_peak,
    invert,
    length,
)
from .errors import (
    CellChainMismatch,
    EndpointMismatch,
    InvalidStep,
    MeasureViolation,
    ModeMismatch,
    NoMatch,
    NotParallel,
    ParseError,
    PolybasisError,
    Report,
    UnresolvedPeak,
)
from .order import (
    ExplicitOrder,
    LengthOrder,
    ReachabilityOrder,
    TerminationOrder,
    check_noetherian,
    list_ext_gt,
    zigzag_measure,
)
from .srs import (
    ConfluenceFailure,
    CriticalPeak,
    PeakKind,
    classify,
    critical_peaks,
    free_group_system,
    normalize,
    synthesize_lc,
)

__all__ = [
    "Certificate",
    "certify_closed",
    "check_certificate",
    "BasisWitness",
    "LocalConfluenceStructure",
    "basis_witness",
    "contract_closed",
    "wb_to_cr",
    "AtomicCell",
    "CellKind",
    "RewriteZigZag",
    "WhiskeredCell",
    "check_atomic_cell",
    "check_rewrite_zigzag",
    "inv_cancellation",
    "rz_compose",
    "rz_invert",
    "whisker",
    "GRAPH",
    "SRS",
    "OrientedStep",
    "RewritingSystem",
    "StepRef",
    "StringRule",
    "ZigZag",
    "compose",
    "find_local_peak",
    "invert",
    "length",
    "CellChainMismatch",
    "EndpointMismatch",
    "InvalidStep",
    "MeasureViolation",
    "ModeMismatch",
    "NoMatch",
    "NotParallel",
    "ParseError",
    "PolybasisError",
    "Report",
    "UnresolvedPeak",
    "ExplicitOrder",
    "LengthOrder",
    "ReachabilityOrder",
    "TerminationOrder",
    "check_noetherian",
    "list_ext_gt",
    "zigzag_measure",
    "ConfluenceFailure",
    "CriticalPeak",
    "PeakKind",
    "classify",
    "critical_peaks",
    "free_group_system",
    "normalize",
    "synthesize_lc",
]

__version__ = "0.1.0"
