"""Daily input records and their dimensionless scaling.

Seven scalars describe the day ahead: four expected synchronization
times in hours, the expected droop k_c, the expected price c_0, and the
expected reduction delta of the load-forecast error.  Validation
enforces finiteness and sign constraints only; times above 48 h are
suspicious but legal and are logged, not rejected.

Scaling maps hours onto the dimensionless entries of the evolution
matrix.  t6_1 and t16 have a doubling branch: 2T/10 below the 9.5 h
threshold, T/10 from the threshold upward.  t6_2 and t24 are always
T/10.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import ValidationError, Violation

logger = logging.getLogger(__name__)

DOUBLING_THRESHOLD_HOURS = 9.5
LONG_DAY_HOURS = 48.0

TIME_FIELDS = ("t6_1", "t6_2", "t16", "t24")
NONNEGATIVE_FIELDS = ("k_c", "c_0", "delta")
FIELD_ORDER = TIME_FIELDS + NONNEGATIVE_FIELDS


@dataclass(frozen=True)
class InputParameters:
    """One day-ahead record.  `date` is an opaque pass-through label."""

    t6_1: float
    t6_2: float
    t16: float
    t24: float
    k_c: float
    c_0: float
    delta: float
    date: str | None = None

    def values(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FIELD_ORDER}


@dataclass(frozen=True)
class ScaledTimes:
    """The four dimensionless starred times feeding the evolution matrix."""

    t6_1_s: float
    t6_2_s: float
    t16_s: float
    t24_s: float


def validate(params: InputParameters) -> InputParameters:
    """Check every invariant; raise one ValidationError naming all violations."""
    violations = []
    for name, value in params.values().items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            violations.append(Violation(name, "NonFinite", float("nan")))
            continue
        if not math.isfinite(value):
            violations.append(Violation(name, "NonFinite", value))
        elif name in TIME_FIELDS and value <= 0:
            violations.append(Violation(name, "NonPositiveTime", value))
        elif name in NONNEGATIVE_FIELDS and value < 0:
            violations.append(Violation(name, "NegativeParameter", value))
    if violations:
        raise ValidationError(violations)
    for name in TIME_FIELDS:
        value = getattr(params, name)
        if value > LONG_DAY_HOURS:
            logger.warning("%s = %r exceeds %s h; accepted but suspicious",
                           name, value, LONG_DAY_HOURS)
    return params


def _scale(t: float, doubling: bool) -> float:
    # the doubling branch is strict: exactly 9.5 h falls on the plain branch
    if doubling and t < DOUBLING_THRESHOLD_HOURS:
        return 2 * t / 10
    return t / 10


def scale_times(params: InputParameters) -> ScaledTimes:
    return ScaledTimes(
        t6_1_s=_scale(params.t6_1, doubling=True),
        t6_2_s=_scale(params.t6_2, doubling=False),
        t16_s=_scale(params.t16, doubling=True),
        t24_s=_scale(params.t24, doubling=False),
    )
