"""Six-component grid model for the day ahead.

The model M0 = (e1, e2, omega1, omega2, t1, t2) is assembled from the
Lyapunov exponents:

    e1 = l_p1 * l_p2
    t1 = (1/4) * (1 + ((l_y1 + l_p1)/2) * ((l_y2 + l_p2)/2))

The second pair comes from the larger root rho of the separability
quadratic

    rho**2 - (2 + l_p1)*rho + (4 - (2 + l_p1)**2)/2 - 2 = 0

via e2 = (rho + sqrt(rho**2 - 4))/2 and t2 = 5*(rho - sqrt(rho**2 - 4)).
Hand algebra collapses the discriminant to 3*(2 + l_p1)**2 and the root
to (2 + l_p1)*(1 + sqrt(3))/2; those identities serve as test oracles
while the production path keeps the quadratic-formula form.  The root
product obeys e2 * t2 = 10 exactly, another self-check.

Angular frequencies close the model: omega1 = 2*l_p1/t1 and
omega2 = 2*l_y1/t2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeDiscriminant, RhoBelowTwo, ZeroTime
from .lyapunov import LyapunovExponents


@dataclass(frozen=True)
class SeparabilityRoot:
    rho: float
    discriminant: float


@dataclass(frozen=True)
class GridModel:
    e1: float
    e2: float
    omega1: float
    omega2: float
    t1: float
    t2: float


def expected_energy(l_p1: float, l_p2: float) -> float:
    """e1 = l_p1 * l_p2."""
    return l_p1 * l_p2


def expected_time(l_p1: float, l_p2: float, l_y1: float, l_y2: float) -> float:
    """t1 = (1/4)(1 + ((l_y1 + l_p1)/2) ((l_y2 + l_p2)/2))."""
    return 0.25 * (1.0 + ((l_y1 + l_p1) / 2) * ((l_y2 + l_p2) / 2))


def first_pair(exponents: LyapunovExponents) -> tuple[float, float]:
    e1 = expected_energy(exponents.l_p1, exponents.l_p2)
    t1 = expected_time(exponents.l_p1, exponents.l_p2,
                       exponents.l_y1, exponents.l_y2)
    return e1, t1


def separability(l_p1: float) -> SeparabilityRoot:
    """Larger root of the separability quadratic in rho."""
    a = 2.0 + l_p1
    discriminant = a ** 2 - 4 * ((4 - a ** 2) / 2 - 2)
    # algebraically 3*(2 + l_p1)**2 >= 0; guarded anyway, never a NaN
    if discriminant < 0:
        raise NegativeDiscriminant(
            "grid-model", "rho", "separability discriminant is negative",
            discriminant)
    rho = (a + math.sqrt(discriminant)) / 2
    return SeparabilityRoot(rho=rho, discriminant=discriminant)


def second_pair(root: SeparabilityRoot) -> tuple[float, float]:
    """e2 and t2 from rho; rho < 2 would make the square root imaginary."""
    rho = root.rho
    if rho < 2:
        raise RhoBelowTwo(
            "grid-model", "e2", "rho below 2 makes sqrt(rho**2 - 4) imaginary",
            rho)
    # (rho - 2)*(rho + 2) loses less precision than rho**2 - 4 near rho = 2
    offset = math.sqrt((rho - 2.0) * (rho + 2.0))
    e2 = (rho + offset) / 2
    t2 = 5 * (rho - offset)
    return e2, t2


def first_frequency(l_p1: float, t1: float) -> float:
    """omega1 = 2 l_p1 / t1."""
    if t1 == 0:
        raise ZeroTime("grid-model", "omega1", "t1 is zero")
    return 2 * l_p1 / t1


def second_frequency(l_y1: float, t2: float) -> float:
    """omega2 = 2 l_y1 / t2."""
    if t2 == 0:
        raise ZeroTime("grid-model", "omega2", "t2 is zero")
    return 2 * l_y1 / t2


def frequencies(exponents: LyapunovExponents, t1: float,
                t2: float) -> tuple[float, float]:
    return (first_frequency(exponents.l_p1, t1),
            second_frequency(exponents.l_y1, t2))


def assemble(e1: float, e2: float, omega1: float, omega2: float,
             t1: float, t2: float) -> GridModel:
    return GridModel(e1=e1, e2=e2, omega1=omega1, omega2=omega2, t1=t1, t2=t2)


def build_model(exponents: LyapunovExponents) -> GridModel:
    """Full model in one call; run_watch uses the fine-grained steps."""
    e1, t1 = first_pair(exponents)
    e2, t2 = second_pair(separability(exponents.l_p1))
    omega1, omega2 = frequencies(exponents, t1, t2)
    return assemble(e1, e2, omega1, omega2, t1, t2)
