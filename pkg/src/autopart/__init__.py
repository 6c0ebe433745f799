"""Digital-twin models of automotive hardware/software and deployment optimization."""

from .errors import *  # noqa: F401,F403
from .evaluation import (
    EvaluationResult,
    Route,
    ScoreWeights,
    UtilizationReport,
    Violation,
    ViolationKind,
    check_feasibility,
    evaluate,
    partial_bound,
    route,
    utilization_report,
)
from .hwsynth import DeviceCatalog, DeviceTemplate, LinkDefaults, SynthesisResult, suggest_hardware
from .io import (
    parse_catalog,
    parse_hardware,
    parse_mapping,
    parse_software,
    serialize_catalog,
    serialize_hardware,
    serialize_mapping,
    serialize_software,
)
from .model import (
    UNLIMITED,
    DeploymentMapping,
    EcuNode,
    HardwareModel,
    Integrity,
    NetLink,
    SoftwareModel,
    SwComponent,
    SwEdge,
    Tier,
    build_hardware_model,
    build_software_model,
)
from .solvers import (
    SolveRequest,
    SolveResult,
    solve,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_local_search,
)

__version__ = "0.1.0"
