"""Day-ahead watch: error probabilities and the end-to-end pipeline.

run_watch drives the whole computation for one input record:

    inputs -> Lyapunov exponents -> grid model -> potentials,
    distances, reliabilities -> states -> watch probabilities

Each quantity is attempted independently once its inputs exist.  A
domain failure produces a structured ErrorRecord and a None in the
trace; everything not transitively dependent on the failed quantity is
still computed.  No error short-circuits the run and nothing non-finite
ever reaches the report: any inf or NaN is converted to an error record
on the spot.

The two watch probabilities carry a documented anomaly:

  * the false-alarm formula divides the smallest distance by
    (smallest - largest), which is negative whenever the three
    distances are distinct, so the raw value is non-positive on
    essentially every real record.  It is evaluated exactly as defined,
    reported raw, clamped into [0, 1], and flagged.  No corrected
    variant is offered.
  * the miss formula can likewise leave [0, 1]; same treatment.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

from . import grid_analysis, grid_model, inputs, lyapunov
from .config import RunConfig
from .errors import (
    ComputationError,
    DegenerateChain,
    ErrorRecord,
    NegativeMissRadicand,
    NonFiniteResult,
    ZeroMiddle,
    ZeroP3,
)
from .grid_analysis import (
    Distances,
    OperatingState,
    Potentials,
    ReliabilityProbabilities,
    StateClassification,
    ThreatLevel,
)
from .inputs import InputParameters

# Droop value at which the fourth chain probability equals the third.
DROOP_PIVOT = 3.5


@dataclass(frozen=True)
class DistanceChain:
    """The three distances arranged smallest to largest."""

    r_big: float
    r_mid: float
    r_small: float


@dataclass(frozen=True)
class ProbabilityChain:
    """Chain built from the sorted reliability probabilities.

    p1 is the largest probability, p2 = 1 - middle/2, p3 = smallest/2,
    and p4 = (k_c/3.5)**4 * p3, so p4/p3 is a pure droop factor.
    """

    p1: float
    p2: float
    p3: float
    p4: float


@dataclass(frozen=True)
class ReportFlags:
    """The six named report flags.

    paper_gap_flag and the two out-of-range flags mark anomalies;
    valid_percentage and v1_in_unit_interval are health predicates
    (True is the good state); pg_undefined marks a missing quenched
    probability.
    """

    paper_gap_flag: bool
    valid_percentage: bool
    v1_in_unit_interval: bool
    pf_out_of_range: bool
    pm_out_of_range: bool
    pg_undefined: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "paper_gap_flag": self.paper_gap_flag,
            "valid_percentage": self.valid_percentage,
            "v1_in_unit_interval": self.v1_in_unit_interval,
            "pf_out_of_range": self.pf_out_of_range,
            "pm_out_of_range": self.pm_out_of_range,
            "pg_undefined": self.pg_undefined,
        }


@dataclass(frozen=True)
class WatchReport:
    """Everything the watch knows about one day-ahead record."""

    params: InputParameters
    trade_volume_pct: float | None
    states: StateClassification
    p_false_alarm_raw: float | None
    p_false_alarm: float | None
    p_miss_raw: float | None
    p_miss: float | None
    flags: ReportFlags
    trace: dict[str, float | None]
    errors: tuple[ErrorRecord, ...]

    @property
    def degraded(self) -> bool:
        """True when anything about this run needs human attention."""
        return (bool(self.errors)
                or self.flags.paper_gap_flag
                or self.flags.pf_out_of_range
                or self.flags.pm_out_of_range
                or self.flags.pg_undefined
                or not self.flags.valid_percentage
                or not self.flags.v1_in_unit_interval)


def distance_chain(distances: Distances) -> DistanceChain:
    """Sort the three distances; ties keep the (r_e, r_h, r_c) order."""
    ordered = sorted((distances.r_e, distances.r_h, distances.r_c))
    return DistanceChain(r_big=ordered[2], r_mid=ordered[1],
                         r_small=ordered[0])


def _false_alarm_from_chain(chain: DistanceChain) -> tuple[float, float, bool]:
    if chain.r_small == chain.r_big:
        raise DegenerateChain("watch", "p_false_alarm_raw",
                              "all three distances are equal")
    if chain.r_mid == 0:
        raise ZeroMiddle("watch", "p_false_alarm_raw",
                         "middle distance is zero")
    raw = ((2.0 / 3.0)
           * (chain.r_small / (chain.r_small - chain.r_big))
           * ((chain.r_mid - chain.r_big) / chain.r_mid) ** 2)
    clamped = min(1.0, max(0.0, raw))
    return raw, clamped, not 0 <= raw <= 1


def false_alarm(distances: Distances) -> tuple[float, float, bool]:
    """(raw, clamped, out_of_range) false-alarm probability.

    Raw value per the defining formula; see the module docstring for why
    it is non-positive for distinct distances.
    """
    return _false_alarm_from_chain(distance_chain(distances))


def _half_chain(p_s: float, p_t: float,
                p_g: float) -> tuple[float, float, float]:
    """(p1, p2, p3) from the sorted probabilities; p4 needs the droop."""
    ordered = sorted((p_s, p_t, p_g))
    return ordered[2], 1 - ordered[1] / 2, ordered[0] / 2


def _fourth_probability(p3: float, k_c: float) -> float:
    if p3 == 0:
        raise ZeroP3("watch", "p_miss_raw",
                     "halved minimum of the probability chain is zero")
    return (k_c / DROOP_PIVOT) ** 4 * p3


def probability_chain(probabilities: ReliabilityProbabilities,
                      k_c: float) -> ProbabilityChain:
    p1, p2, p3 = _half_chain(probabilities.p_s, probabilities.p_t,
                             probabilities.p_g)
    return ProbabilityChain(p1=p1, p2=p2, p3=p3,
                            p4=_fourth_probability(p3, k_c))


def _miss_from_chain(chain: ProbabilityChain,
                     v_m: float) -> tuple[float, float, bool]:
    share = v_m / 100
    inner = (share ** 2 * (1 - share) ** 2 * (chain.p1 - chain.p2) ** 2
             + chain.p1 * chain.p2)
    if inner < 0:
        raise NegativeMissRadicand("watch", "p_miss_raw",
                                   "miss radicand is negative", inner)
    # p3*p4 and p4/p3 cannot go negative: p4 is p3 times a fourth power
    raw = 1 - 2 * math.sqrt(chain.p4 / chain.p3) * (
        math.sqrt(inner) + math.sqrt(chain.p3 * chain.p4))
    clamped = min(1.0, max(0.0, raw))
    return raw, clamped, not 0 <= raw <= 1


def miss_probability(probabilities: ReliabilityProbabilities, k_c: float,
                     v_m: float) -> tuple[float, float, bool]:
    """(raw, clamped, out_of_range) miss probability."""
    return _miss_from_chain(probability_chain(probabilities, k_c), v_m)


def _attempt(errors: list[ErrorRecord], stage: str, quantity: str,
             compute: Callable[[], object]):
    """Run one step; on domain failure record the reason and yield None.

    Also converts float-machinery escapes (overflow, division by zero,
    inf/NaN results) into NonFiniteResult records so a report can never
    carry a non-finite number.
    """
    try:
        value = compute()
    except ComputationError as exc:
        errors.append(exc.record())
        return None
    except (OverflowError, ZeroDivisionError):
        errors.append(NonFiniteResult(
            stage, quantity, "evaluation left the float range").record())
        return None
    parts = value if isinstance(value, tuple) else (value,)
    for part in parts:
        if isinstance(part, float) and not math.isfinite(part):
            errors.append(NonFiniteResult(
                stage, quantity, "result is not finite").record())
            return None
    return value


def run_watch(params: InputParameters,
              config: RunConfig | None = None) -> WatchReport:
    """Run the full day-ahead pipeline for one validated record.

    Raises ValidationError for inadmissible inputs; every failure past
    validation is captured inside the report instead of raised.
    """
    if config is None:
        config = RunConfig()
    inputs.validate(params)

    errors: list[ErrorRecord] = []
    trace: dict[str, float | None] = {}

    def attempt(stage, quantity, compute):
        return _attempt(errors, stage, quantity, compute)

    trace["t6_1"] = params.t6_1
    trace["t6_2"] = params.t6_2
    trace["t16"] = params.t16
    trace["t24"] = params.t24
    trace["k_c"] = params.k_c
    trace["c_0"] = params.c_0
    trace["delta"] = params.delta

    scaled = inputs.scale_times(params)
    trace["t6_1_s"] = scaled.t6_1_s
    trace["t6_2_s"] = scaled.t6_2_s
    trace["t16_s"] = scaled.t16_s
    trace["t24_s"] = scaled.t24_s

    matrix = lyapunov.build_matrix(scaled)
    perm_a = attempt("lyapunov", "perm_a",
                     lambda: lyapunov.permanent(matrix))
    trace["perm_a"] = perm_a

    l_p1 = lyapunov.error_exponent(params.delta)
    l_p2 = None
    if perm_a is not None:
        l_p2 = attempt("lyapunov", "l_p2",
                       lambda: lyapunov.permanent_exponent(perm_a))
    l_y1 = attempt("lyapunov", "l_y1",
                   lambda: lyapunov.price_exponent(params.c_0))
    l_y2 = attempt("lyapunov", "l_y2",
                   lambda: lyapunov.droop_exponent(params.k_c))
    trace["l_p1"] = l_p1
    trace["l_p2"] = l_p2
    trace["l_y1"] = l_y1
    trace["l_y2"] = l_y2

    exponents = None
    if None not in (l_p2, l_y1, l_y2):
        exponents = lyapunov.LyapunovExponents(
            l_p1=l_p1, l_p2=l_p2, l_y1=l_y1, l_y2=l_y2, perm_a=perm_a)

    root = attempt("grid-model", "rho",
                   lambda: grid_model.separability(l_p1))
    trace["rho"] = root.rho if root is not None else None
    trace["discriminant"] = root.discriminant if root is not None else None

    e1 = None
    if l_p2 is not None:
        e1 = attempt("grid-model", "e1",
                     lambda: grid_model.expected_energy(l_p1, l_p2))
    second = None
    if root is not None:
        second = attempt("grid-model", "e2",
                         lambda: grid_model.second_pair(root))
    e2, t2 = second if second is not None else (None, None)

    t1 = None
    if exponents is not None:
        t1 = attempt("grid-model", "t1",
                     lambda: grid_model.expected_time(l_p1, l_p2, l_y1, l_y2))

    omega1 = None
    if t1 is not None:
        omega1 = attempt("grid-model", "omega1",
                         lambda: grid_model.first_frequency(l_p1, t1))
    omega2 = None
    if t2 is not None and l_y1 is not None:
        omega2 = attempt("grid-model", "omega2",
                         lambda: grid_model.second_frequency(l_y1, t2))

    trace["e1"] = e1
    trace["e2"] = e2
    trace["omega1"] = omega1
    trace["omega2"] = omega2
    trace["t1"] = t1
    trace["t2"] = t2

    model = None
    if None not in (e1, e2, omega1, omega2, t1, t2):
        model = grid_model.assemble(e1, e2, omega1, omega2, t1, t2)

    v1 = w1 = u_s = None
    if exponents is not None and t1 is not None:
        triple = attempt("grid-analysis", "v1",
                         lambda: grid_analysis.energy_potential(exponents, t1))
        if triple is not None:
            v1, w1, u_s = triple

    p_x = None
    if None not in (e1, omega1, omega2):
        p_x = attempt("grid-analysis", "p_x",
                      lambda: grid_analysis.auxiliary_potential(
                          e1, omega1, omega2))
    u_p = None
    if None not in (p_x, v1, t1):
        u_p = attempt("grid-analysis", "u_p",
                      lambda: grid_analysis.frequency_from_auxiliary(
                          p_x, v1, t1))

    trace["v1"] = v1
    trace["w1"] = w1
    trace["u_s"] = u_s
    trace["p_x"] = p_x
    trace["u_p"] = u_p

    v_m = None
    if u_s is not None:
        v_m = attempt("grid-analysis", "trade_volume_pct",
                      lambda: grid_analysis.trade_volume(u_s))

    r_e = None
    if None not in (u_s, u_p):
        r_e = attempt("grid-analysis", "r_e",
                      lambda: grid_analysis.elliptic_distance(u_s, u_p))
    r_h = None
    if model is not None:
        r_h = attempt("grid-analysis", "r_h",
                      lambda: grid_analysis.hyperbolic_distance(model))
    r_c = None
    if v1 is not None:
        r_c = attempt("grid-analysis", "r_c",
                      lambda: grid_analysis.critical_distance(v1, l_p1))
    trace["r_e"] = r_e
    trace["r_h"] = r_h
    trace["r_c"] = r_c

    market_state = None
    if None not in (r_e, r_h, r_c):
        market_state = grid_analysis.classify_market(
            Distances(r_e=r_e, r_h=r_h, r_c=r_c))

    p_s = p_t = None
    if v1 is not None:
        p_s = attempt("grid-analysis", "p_s",
                      lambda: grid_analysis.star_reliability(v1))
        p_t = attempt("grid-analysis", "p_t",
                      lambda: grid_analysis.triangle_reliability(v1))
    p_g = None
    if None not in (u_s, u_p, e1):
        p_g = attempt("grid-analysis", "p_g",
                      lambda: grid_analysis.quenched_probability(
                          u_s, u_p, e1, config.up_log_mode))
    trace["p_s"] = p_s
    trace["p_t"] = p_t
    trace["p_g"] = p_g

    grid_state = None
    if None not in (p_s, p_t, p_g):
        grid_state = grid_analysis.classify_grid(
            ReliabilityProbabilities(p_s=p_s, p_t=p_t, p_g=p_g),
            config.equality_tolerance)

    threat: ThreatLevel | None = None
    paper_gap = False
    if market_state is not None and grid_state is not None:
        threat, paper_gap = grid_analysis.threat_level(market_state,
                                                       grid_state)

    r_small = r_mid = r_big = None
    p_f_raw = p_f = None
    pf_out_of_range = False
    if None not in (r_e, r_h, r_c):
        chain = distance_chain(Distances(r_e=r_e, r_h=r_h, r_c=r_c))
        r_small, r_mid, r_big = chain.r_small, chain.r_mid, chain.r_big
        alarm = attempt("watch", "p_false_alarm_raw",
                        lambda: _false_alarm_from_chain(chain))
        if alarm is not None:
            p_f_raw, p_f, pf_out_of_range = alarm
    trace["r_small"] = r_small
    trace["r_mid"] = r_mid
    trace["r_big"] = r_big

    p1 = p2 = p3 = p4 = None
    p_m_raw = p_m = None
    pm_out_of_range = False
    if None not in (p_s, p_t, p_g, v_m):
        p1, p2, p3 = _half_chain(p_s, p_t, p_g)
        p4 = attempt("watch", "p_miss_raw",
                     lambda: _fourth_probability(p3, params.k_c))
        if p4 is not None:
            miss = attempt("watch", "p_miss_raw",
                           lambda: _miss_from_chain(
                               ProbabilityChain(p1=p1, p2=p2, p3=p3, p4=p4),
                               v_m))
            if miss is not None:
                p_m_raw, p_m, pm_out_of_range = miss
    trace["p1"] = p1
    trace["p2"] = p2
    trace["p3"] = p3
    trace["p4"] = p4

    flags = ReportFlags(
        paper_gap_flag=paper_gap,
        valid_percentage=v_m is not None and 0 <= v_m <= 100,
        v1_in_unit_interval=v1 is not None and 0 <= v1 <= 1,
        pf_out_of_range=pf_out_of_range,
        pm_out_of_range=pm_out_of_range,
        pg_undefined=p_g is None,
    )
    states = StateClassification(
        market_state=market_state,
        grid_state=grid_state,
        threat_level=threat,
        paper_gap_flag=paper_gap,
    )
    return WatchReport(
        params=params,
        trade_volume_pct=v_m,
        states=states,
        p_false_alarm_raw=p_f_raw,
        p_false_alarm=p_f,
        p_miss_raw=p_m_raw,
        p_miss=p_m,
        flags=flags,
        trace=trace,
        errors=tuple(errors),
    )


def potentials_of(report: WatchReport) -> Potentials:
    """Potentials block of a report as a typed record."""
    t = report.trace
    return Potentials(v1=t["v1"], w1=t["w1"], u_s=t["u_s"],
                      p_x=t["p_x"], u_p=t["u_p"])


def distances_of(report: WatchReport) -> Distances:
    t = report.trace
    return Distances(r_e=t["r_e"], r_h=t["r_h"], r_c=t["r_c"])


def probabilities_of(report: WatchReport) -> ReliabilityProbabilities:
    t = report.trace
    return ReliabilityProbabilities(p_s=t["p_s"], p_t=t["p_t"], p_g=t["p_g"])
