"""Type definitions for gdsp-solver."""

from .code import LinearCode
from .decomposition import Applicability, DecompositionResult
from .diagnostics import CodeVerification, SmoothnessCheck, SolveReport, Violation
from .flow import INF, Arc, FlowFeasibility, FlowNetwork
from .instance import (
    ColoredEdge,
    ColoredGraph,
    FileSpec,
    FrontierSets,
    GdspInstance,
    HyperGraph,
    MemoryAllocation,
    Partition,
    Rational,
)
from .lp import CoveringLP, LPSolution
from .oracle import Certification, OracleConfig, OracleResult

__all__ = [
    "FileSpec",
    "ColoredEdge",
    "ColoredGraph",
    "HyperGraph",
    "MemoryAllocation",
    "Partition",
    "FrontierSets",
    "GdspInstance",
    "Rational",
    "CoveringLP",
    "LPSolution",
    "LinearCode",
    "Applicability",
    "Violation",
    "SmoothnessCheck",
    "CodeVerification",
    "SolveReport",
    "DecompositionResult",
    "OracleConfig",
    "OracleResult",
    "Certification",
    "INF",
    "Arc",
    "FlowNetwork",
    "FlowFeasibility",
]
