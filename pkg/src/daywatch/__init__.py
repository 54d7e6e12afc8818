"""daywatch: deterministic day-ahead prognostic watch for a power grid.

Seven scalars describing tomorrow (four synchronization times, droop,
price level, forecast error) go in; a classified report comes out:
expected free-trade volume, market and grid operating states, a threat
level, and the watch's own false-alarm and miss probabilities, with a
full numeric trace and structured records for every quantity whose
domain preconditions failed.

    from daywatch import InputParameters, run_watch

    report = run_watch(InputParameters(t6_1=6, t6_2=6, t16=16, t24=24,
                                       k_c=4, c_0=50, delta=0.035))
    print(report.states.threat_level, report.degraded)
"""

from .config import RunConfig
from .errors import (
    ComputationError,
    DaywatchError,
    DegenerateChain,
    ErrorRecord,
    ExponentialOverflow,
    NegativeDiscriminant,
    NegativeMissRadicand,
    NegativeRadicand,
    NonFiniteResult,
    NonPositiveGap,
    NonPositivePermanent,
    NonPositivePotential,
    ParseError,
    RhoBelowTwo,
    ValidationError,
    Violation,
    ZeroImpulse,
    ZeroLp1,
    ZeroMiddle,
    ZeroP3,
    ZeroPotential,
    ZeroTime,
)
from .grid_analysis import (
    QUENCH_CONSTANT,
    Distances,
    OperatingState,
    Potentials,
    ReliabilityProbabilities,
    StateClassification,
    ThreatLevel,
    classify_grid,
    classify_market,
    critical_distance,
    elliptic_distance,
    energy_potential,
    frequency_potential,
    hyperbolic_distance,
    quenched_probability,
    star_reliability,
    threat_level,
    trade_volume,
    triangle_reliability,
)
from .grid_model import (
    GridModel,
    SeparabilityRoot,
    build_model,
    first_pair,
    frequencies,
    second_pair,
    separability,
)
from .inputs import InputParameters, ScaledTimes, scale_times, validate
from .io import (
    SweepEntry,
    SweepSpec,
    emit_report,
    parse_records,
    report_as_dict,
    sweep,
)
from .lyapunov import (
    LyapunovExponents,
    build_matrix,
    compute_exponents,
    permanent,
    permanent_expansion,
)
from .watch import (
    DistanceChain,
    ProbabilityChain,
    ReportFlags,
    WatchReport,
    distance_chain,
    false_alarm,
    miss_probability,
    probability_chain,
    run_watch,
)

__version__ = "1.0.0"

__all__ = [
    "ComputationError",
    "DaywatchError",
    "DegenerateChain",
    "DistanceChain",
    "Distances",
    "ErrorRecord",
    "ExponentialOverflow",
    "GridModel",
    "InputParameters",
    "LyapunovExponents",
    "NegativeDiscriminant",
    "NegativeMissRadicand",
    "NegativeRadicand",
    "NonFiniteResult",
    "NonPositiveGap",
    "NonPositivePermanent",
    "NonPositivePotential",
    "OperatingState",
    "ParseError",
    "Potentials",
    "ProbabilityChain",
    "QUENCH_CONSTANT",
    "ReliabilityProbabilities",
    "ReportFlags",
    "RhoBelowTwo",
    "RunConfig",
    "ScaledTimes",
    "SeparabilityRoot",
    "StateClassification",
    "SweepEntry",
    "SweepSpec",
    "ThreatLevel",
    "ValidationError",
    "Violation",
    "WatchReport",
    "ZeroImpulse",
    "ZeroLp1",
    "ZeroMiddle",
    "ZeroP3",
    "ZeroPotential",
    "ZeroTime",
    "build_matrix",
    "build_model",
    "classify_grid",
    "classify_market",
    "compute_exponents",
    "critical_distance",
    "distance_chain",
    "elliptic_distance",
    "emit_report",
    "energy_potential",
    "false_alarm",
    "first_pair",
    "frequencies",
    "frequency_potential",
    "hyperbolic_distance",
    "miss_probability",
    "parse_records",
    "permanent",
    "permanent_expansion",
    "probability_chain",
    "quenched_probability",
    "report_as_dict",
    "run_watch",
    "scale_times",
    "second_pair",
    "separability",
    "star_reliability",
    "sweep",
    "threat_level",
    "trade_volume",
    "triangle_reliability",
    "validate",
]
