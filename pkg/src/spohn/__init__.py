"""Exact Spohnian belief revision on singly connected networks."""

from .diagram import Family, InfluenceDiagram, ValidationReport
from .documents import parse_evidence, parse_network, serialize_network
from .errors import (
    AllInfinite,
    ContradictoryEvidence,
    DocumentError,
    DuplicateTargetVariable,
    EmptyCondition,
    EmptyProposition,
    FullProposition,
    ImpossibleEvidence,
    InconsistentTables,
    InvalidNetwork,
    InvalidTarget,
    RankArithmeticError,
    SpaceMismatch,
    SpohnError,
    TooLargeForOracle,
    UnknownValue,
    UnknownVariable,
)
from .network import SpohnianNetwork
from .ocf import OCF, Proposition, StateSpace, Variable
from .oracle import (
    ORACLE_STATE_LIMIT,
    OracleReport,
    compare,
    ensure_tractable,
    independence_audit,
    oracle_revise,
)
from .propagation import (
    EvidenceSpec,
    Schedule,
    TraceEntry,
    augment_with_dummy,
    propagate_certain_multi,
    propagate_single,
    propagate_uncertain_multi,
)
from .ranks import INF, NEG_INF, BeliefStrength, Rank, SignedDelta, rank_delta, s_normalize

__all__ = [
    "AllInfinite",
    "BeliefStrength",
    "ContradictoryEvidence",
    "DocumentError",
    "DuplicateTargetVariable",
    "EmptyCondition",
    "EmptyProposition",
    "EvidenceSpec",
    "Family",
    "FullProposition",
    "INF",
    "ImpossibleEvidence",
    "InconsistentTables",
    "InfluenceDiagram",
    "InvalidNetwork",
    "InvalidTarget",
    "NEG_INF",
    "OCF",
    "ORACLE_STATE_LIMIT",
    "OracleReport",
    "Proposition",
    "Rank",
    "RankArithmeticError",
    "Schedule",
    "SignedDelta",
    "SpaceMismatch",
    "SpohnError",
    "SpohnianNetwork",
    "StateSpace",
    "TooLargeForOracle",
    "TraceEntry",
    "UnknownValue",
    "UnknownVariable",
    "ValidationReport",
    "Variable",
    "augment_with_dummy",
    "compare",
    "ensure_tractable",
    "independence_audit",
    "oracle_revise",
    "parse_evidence",
    "parse_network",
    "propagate_certain_multi",
    "propagate_single",
    "propagate_uncertain_multi",
    "rank_delta",
    "s_normalize",
    "serialize_network",
]

__version__ = "0.1.0"
