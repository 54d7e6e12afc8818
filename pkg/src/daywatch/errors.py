"""Structured error taxonomy for the watch pipeline.

Domain failures never escape as NaN or infinity.  Every computation
error names the pipeline stage and the quantity it was computing, so a
degraded report can state exactly which value is missing and why.  The
`detail` string of each error is a fixed message per failure mode;
numeric diagnostics ride in the separate `value` field.  This keeps
serialized reports byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


class DaywatchError(Exception):
    """Base class for every error raised by this package."""


@dataclass(frozen=True)
class Violation:
    """A single validation failure on one input field."""

    field: str
    kind: str  # NonFinite | NonPositiveTime | NegativeParameter
    value: float

    def describe(self) -> str:
        return f"{self.kind}({self.field}) value={self.value!r}"


class ValidationError(DaywatchError):
    """Input record violates its invariants; lists every violated field."""

    def __init__(self, violations, row=None):
        self.violations = tuple(violations)
        self.row = row
        where = f"row {row}: " if row is not None else ""
        super().__init__(where + "; ".join(v.describe() for v in self.violations))

    def with_row(self, row: int) -> "ValidationError":
        return ValidationError(self.violations, row=row)

    @property
    def fields(self):
        return tuple(v.field for v in self.violations)


class ParseError(DaywatchError):
    """Input text cannot be turned into records at all."""

    def __init__(self, row, detail):
        self.row = row
        self.detail = detail
        super().__init__(f"row {row}: {detail}")


@dataclass(frozen=True)
class ErrorRecord:
    """Serializable form of a computation error inside a report."""

    stage: str
    quantity: str
    error: str
    detail: str
    value: float | None = None

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "quantity": self.quantity,
            "error": self.error,
            "detail": self.detail,
            "value": self.value,
        }


class ComputationError(DaywatchError):
    """Domain failure inside one pipeline formula."""

    def __init__(self, stage: str, quantity: str, detail: str, value=None):
        self.stage = stage
        self.quantity = quantity
        self.detail = detail
        self.value = value
        suffix = "" if value is None else f" (value={value!r})"
        super().__init__(f"{stage}/{quantity}: {detail}{suffix}")

    def record(self) -> ErrorRecord:
        return ErrorRecord(
            stage=self.stage,
            quantity=self.quantity,
            error=type(self).__name__,
            detail=self.detail,
            value=None if self.value is None else float(self.value),
        )


class NonPositivePermanent(ComputationError):
    """per(A) <= 0; the logarithm in the second potential exponent is undefined."""


class ExponentialOverflow(ComputationError):
    """An exponential exceeded the 64-bit range; reported, never an inf."""


class NegativeDiscriminant(ComputationError):
    """Quadratic discriminant below zero; unreachable for real inputs but guarded."""


class RhoBelowTwo(ComputationError):
    """rho < 2 makes sqrt(rho**2 - 4) imaginary; guarded, never a NaN."""


class ZeroTime(ComputationError):
    """A characteristic time vanished where a division needs it."""


class ZeroLp1(ComputationError):
    """l_p1 = 0 where a division needs it."""


class ZeroImpulse(ComputationError):
    """v1 = 0 makes 1/(4 v1) singular."""


class ZeroPotential(ComputationError):
    """u_s = 0 (or its square underflowed) where a division needs it."""


class NonPositiveGap(ComputationError):
    """u_s - u_p <= 0; the elliptic distance does not exist for this record."""


class NegativeRadicand(ComputationError):
    """Hyperbolic radicand below zero; carries the radicand for diagnostics."""


class NonPositivePotential(ComputationError):
    """u_s <= 0 or u_p <= 0 where a logarithm needs it (strict mode)."""


class DegenerateChain(ComputationError):
    """All three distances equal; the false-alarm denominator vanishes."""


class ZeroMiddle(ComputationError):
    """Middle distance of the chain is zero."""


class ZeroP3(ComputationError):
    """Halved minimum of the probability chain is zero; p4/p3 undefined."""


class NegativeMissRadicand(ComputationError):
    """Inner radicand of the miss probability went negative."""


class NonFiniteResult(ComputationError):
    """A formula produced inf or NaN from finite inputs; reported, never emitted."""
