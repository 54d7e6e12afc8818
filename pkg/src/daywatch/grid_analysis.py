"""Potentials, distances, reliability probabilities, and state classification.

Everything here is a pure function of the grid model and the Lyapunov
exponents.  The quantities:

    v1, w1   components of the energy potential; v1 doubles as the
             edge-failure probability fed to the reliability polynomials
    u_s      energy potential, l_y1**2 * v1 + w1
    p_x      auxiliary balance 2*e1 - (omega1**2 + omega2**2) - 4
    u_p      frequency potential
    v_m      expected trade volume in percent
    r_e      elliptic-kernel distance between tomorrow and criticality
    r_h      hyperbolic-kernel distance
    r_c      critical distance the two are compared against
    p_s      star-topology reliability polynomial at v1
    p_t      triangle-topology reliability polynomial at v1
    p_g      quenched-disorder critical probability

Gamma-function constants are folded into the distance prefactors once
and for all (sqrt(pi) and the two half-integer values cancel), so no
gamma evaluation happens at run time.

The classifiers at the bottom turn the numbers into operating states
and a threat level.  Their comparison structure is deliberate:

  * the market classifier uses strict inequalities against r_c, so a
    distance exactly equal to r_c does not count as exceeding it;
  * the grid classifier treats *closeness* of p_s and p_t to p_g as the
    alarming condition, with a relative tolerance because exact float
    equality of independently computed reals is vacuous;
  * two (market, grid) combinations have no published mapping and fall
    back to guarded with paper_gap_flag set, so consumers can tell a
    defined level from a patched one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    NegativeRadicand,
    NonPositiveGap,
    NonPositivePotential,
    ZeroImpulse,
    ZeroLp1,
    ZeroPotential,
    ZeroTime,
)
from .grid_model import GridModel
from .lyapunov import LyapunovExponents

# Named constant of the quenched-disorder exponent denominator.
QUENCH_CONSTANT = 1.261060863 * math.pi

# Smoothing term (1/4)**2 shared by both potential denominators.
REGULARIZER = 1.0 / 16.0

# Reliability polynomial coefficients, highest degree first.
# Degree 15, star topology (complete graph on six vertices).
STAR_COEFFS = (
    -120.0, 360.0, -270.0, -90.0, 120.0, 0.0, 20.0, -15.0,
    0.0, 0.0, -6.0, 0.0, 0.0, 0.0, 0.0, 1.0,
)
# Degree 12, triangle topology (complete bipartite graph on six vertices).
TRIANGLE_COEFFS = (
    79.0, -560.0, 1668.0, -2656.0, 2331.0, -960.0, 0.0,
    96.0, 21.0, -16.0, -4.0, 0.0, 1.0,
)

UP_LOG_MODES = ("strict", "absolute")


class OperatingState(str, Enum):
    NORMAL = "normal"
    RESTORATIVE = "restorative"
    EMERGENCY = "emergency"


class ThreatLevel(str, Enum):
    LOW = "low"
    GUARDED = "guarded"
    ELEVATED = "elevated"
    HIGH = "high"
    SEVERE = "severe"


@dataclass(frozen=True)
class Potentials:
    v1: float | None
    w1: float | None
    u_s: float | None
    p_x: float | None
    u_p: float | None


@dataclass(frozen=True)
class Distances:
    r_e: float | None
    r_h: float | None
    r_c: float | None


@dataclass(frozen=True)
class ReliabilityProbabilities:
    p_s: float | None
    p_t: float | None
    p_g: float | None

    @property
    def out_of_range(self) -> tuple[str, ...]:
        """Names of the defined probabilities lying outside [0, 1]."""
        triplet = (("p_s", self.p_s), ("p_t", self.p_t), ("p_g", self.p_g))
        return tuple(name for name, value in triplet
                     if value is not None and not 0 <= value <= 1)


@dataclass(frozen=True)
class StateClassification:
    market_state: OperatingState | None
    grid_state: OperatingState | None
    threat_level: ThreatLevel | None
    paper_gap_flag: bool


def energy_potential(exponents: LyapunovExponents,
                     t1: float) -> tuple[float, float, float]:
    """(v1, w1, u_s) from the first exponent pair and the coupling time.

    v1 = (l_p1 + t1)/(l_p1 ((l_p1 + t1)**2 + 1/16))
       + (l_p1 - t1)/(l_p1 ((l_p1 - t1)**2 + 1/16))
    w1 = (3/l_p1) ln(((l_p1 + t1)**2 + 1/16)/((l_p1 - t1)**2 + 1/16))
    u_s = l_y1**2 v1 + w1

    Both denominators are at least 1/16, so only l_p1 = 0 is singular
    and w1 is finite for every finite input.
    """
    l_p1 = exponents.l_p1
    if l_p1 == 0:
        raise ZeroLp1("grid-analysis", "v1", "l_p1 is zero")
    plus = (l_p1 + t1) ** 2 + REGULARIZER
    minus = (l_p1 - t1) ** 2 + REGULARIZER
    v1 = (l_p1 + t1) / (l_p1 * plus) + (l_p1 - t1) / (l_p1 * minus)
    w1 = (3 / l_p1) * math.log(plus / minus)
    u_s = exponents.l_y1 ** 2 * v1 + w1
    return v1, w1, u_s


def auxiliary_potential(e1: float, omega1: float, omega2: float) -> float:
    """p_x = 2 e1 - (omega1**2 + omega2**2) - 4."""
    return 2 * e1 - (omega1 ** 2 + omega2 ** 2) - 4


def frequency_from_auxiliary(p_x: float, v1: float, t1: float) -> float:
    """u_p = -(1/2 + 1/(4 v1)) (1 + p_x v1 / t1) exp(v1 t1).

    Typically negative for positive v1 and t1, which is what later makes
    ln(u_p) undefined in the quenched probability; see quenched_probability.
    """
    if v1 == 0:
        raise ZeroImpulse("grid-analysis", "u_p", "v1 is zero")
    if t1 == 0:
        raise ZeroTime("grid-analysis", "u_p", "t1 is zero")
    return -(0.5 + 1 / (4 * v1)) * (1 + p_x * v1 / t1) * math.exp(v1 * t1)


def frequency_potential(e1: float, omega1: float, omega2: float,
                        v1: float, t1: float) -> tuple[float, float]:
    """(p_x, u_p) in one step; the pipeline uses the two halves separately."""
    p_x = auxiliary_potential(e1, omega1, omega2)
    return p_x, frequency_from_auxiliary(p_x, v1, t1)


def trade_volume(u_s: float) -> float:
    """Expected free-trade volume in percent.

    v_m = 100 - 9 pi**2 / (4 (u_s / (2 pi))**2)

    Approaches 100 from below as |u_s| grows; strongly negative for
    small |u_s|.  The raw value is reported either way and the
    valid_percentage flag marks whether it landed inside [0, 100].
    """
    if u_s == 0:
        raise ZeroPotential("grid-analysis", "trade_volume_pct", "u_s is zero")
    denominator = 4 * (u_s / (2 * math.pi)) ** 2
    # |u_s| below ~1e-161 squares to subnormal zero
    if denominator == 0:
        raise ZeroPotential("grid-analysis", "trade_volume_pct",
                            "u_s squared underflows to zero", u_s)
    return 100 - 9 * math.pi ** 2 / denominator


def elliptic_distance(u_s: float, u_p: float) -> float:
    """r_e = 1/(128 sqrt(u_s - u_p)); gamma prefactors folded."""
    gap = u_s - u_p
    if gap <= 0:
        raise NonPositiveGap("grid-analysis", "r_e",
                             "u_s - u_p is not positive", gap)
    return 1 / (128 * math.sqrt(gap))


def hyperbolic_distance(model: GridModel) -> float:
    """r_h = sqrt(omega1**2 + omega2**2 + e1**2 - e2**2 - t1**2)/(16 pi**2.5)."""
    radicand = (model.omega1 ** 2 + model.omega2 ** 2
                + model.e1 ** 2 - model.e2 ** 2 - model.t1 ** 2)
    if radicand < 0:
        raise NegativeRadicand("grid-analysis", "r_h",
                               "hyperbolic radicand is negative", radicand)
    return math.sqrt(radicand) / (16 * math.pi ** 2.5)


def critical_distance(v1: float, l_p1: float) -> float:
    """r_c = exp(-v1 l_p1)/(10 l_p1)."""
    if l_p1 == 0:
        raise ZeroLp1("grid-analysis", "r_c", "l_p1 is zero")
    return math.exp(-v1 * l_p1) / (10 * l_p1)


def classify_market(distances: Distances) -> OperatingState:
    """Market state from the two kernel distances against the critical one.

    Strict inequalities: a distance exactly at r_c does not exceed it.
    Precedence emergency > restorative > normal resolves the overlap of
    the two alarm conditions.
    """
    elliptic_exceeds = distances.r_e > distances.r_c
    hyperbolic_exceeds = distances.r_h > distances.r_c
    if elliptic_exceeds and hyperbolic_exceeds:
        return OperatingState.EMERGENCY
    if elliptic_exceeds or hyperbolic_exceeds:
        return OperatingState.RESTORATIVE
    return OperatingState.NORMAL


def _horner(coefficients: tuple[float, ...], x: float) -> float:
    accumulator = 0.0
    for coefficient in coefficients:
        accumulator = accumulator * x + coefficient
    return accumulator


def star_reliability(v1: float) -> float:
    """Star-topology reliability polynomial at edge-failure probability v1."""
    return _horner(STAR_COEFFS, v1)


def triangle_reliability(v1: float) -> float:
    """Triangle-topology reliability polynomial at v1."""
    return _horner(TRIANGLE_COEFFS, v1)


def quenched_probability(u_s: float, u_p: float, e1: float,
                         up_log_mode: str = "strict") -> float:
    """Quenched-disorder critical probability.

    p_g = 1 - (1/u_s) exp(-4 (ln u_s - ln u_p)**2 e1 / QUENCH_CONSTANT)

    Both logarithms need positive arguments, and u_p is typically
    negative (see frequency_from_auxiliary), so in the default strict
    mode this error path is ordinary operation, not an edge case.  The
    absolute mode takes both logarithms of magnitudes instead; zero
    still has no logarithm in either mode.  The 1/u_s prefactor keeps
    the sign of u_s in both modes.
    """
    if up_log_mode == "strict":
        if u_s <= 0:
            raise NonPositivePotential("grid-analysis", "p_g",
                                       "u_s is not positive", u_s)
        if u_p <= 0:
            raise NonPositivePotential("grid-analysis", "p_g",
                                       "u_p is not positive", u_p)
        log_s = math.log(u_s)
        log_p = math.log(u_p)
    elif up_log_mode == "absolute":
        if u_s == 0:
            raise NonPositivePotential("grid-analysis", "p_g", "u_s is zero")
        if u_p == 0:
            raise NonPositivePotential("grid-analysis", "p_g", "u_p is zero")
        log_s = math.log(abs(u_s))
        log_p = math.log(abs(u_p))
    else:
        raise ValueError(f"up_log_mode must be one of {UP_LOG_MODES}, "
                         f"got {up_log_mode!r}")
    exponent = -4 * (log_s - log_p) ** 2 * e1 / QUENCH_CONSTANT
    return 1 - (1 / u_s) * math.exp(exponent)


def _close(x: float, reference: float, tolerance: float) -> bool:
    return abs(x - reference) <= tolerance * max(1.0, abs(reference))


def classify_grid(probabilities: ReliabilityProbabilities,
                  tolerance: float = 1e-6) -> OperatingState:
    """Grid state from the reliability probabilities.

    Proximity of the topology reliabilities to the critical probability
    is the alarming condition: both close means emergency, one close
    means restorative, neither means normal.  Closeness is relative,
    |x - p_g| <= tolerance * max(1, |p_g|).
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    star_matches = _close(probabilities.p_s, probabilities.p_g, tolerance)
    triangle_matches = _close(probabilities.p_t, probabilities.p_g, tolerance)
    if star_matches and triangle_matches:
        return OperatingState.EMERGENCY
    if star_matches or triangle_matches:
        return OperatingState.RESTORATIVE
    return OperatingState.NORMAL


# (market, grid) -> (threat, paper_gap_flag).  The two flagged rows have
# no published mapping; guarded is the conservative patch.
_THREAT_TABLE: dict[tuple[OperatingState, OperatingState],
                    tuple[ThreatLevel, bool]] = {
    (OperatingState.NORMAL, OperatingState.NORMAL): (ThreatLevel.LOW, False),
    (OperatingState.RESTORATIVE, OperatingState.NORMAL):
        (ThreatLevel.GUARDED, False),
    (OperatingState.RESTORATIVE, OperatingState.RESTORATIVE):
        (ThreatLevel.ELEVATED, False),
    (OperatingState.RESTORATIVE, OperatingState.EMERGENCY):
        (ThreatLevel.ELEVATED, False),
    (OperatingState.EMERGENCY, OperatingState.NORMAL):
        (ThreatLevel.HIGH, False),
    (OperatingState.EMERGENCY, OperatingState.RESTORATIVE):
        (ThreatLevel.SEVERE, False),
    (OperatingState.EMERGENCY, OperatingState.EMERGENCY):
        (ThreatLevel.SEVERE, False),
    (OperatingState.NORMAL, OperatingState.RESTORATIVE):
        (ThreatLevel.GUARDED, True),
    (OperatingState.NORMAL, OperatingState.EMERGENCY):
        (ThreatLevel.GUARDED, True),
}


def threat_level(market_state: OperatingState,
                 grid_state: OperatingState) -> tuple[ThreatLevel, bool]:
    """Threat level for the pair of states, total over all 9 combinations."""
    return _THREAT_TABLE[(OperatingState(market_state),
                          OperatingState(grid_state))]
