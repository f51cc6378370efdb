"""The two worked instances as reusable data."""

from __future__ import annotations

import cmath
import math

from .algebra import ExpPoly
from .parser import parse_exppoly
from .systems import E1Params, E4Params
from .theorems import HomogeneousSpec, TheoremParams

PI = math.pi

EXAMPLE1_F1 = "(1/6)*exp(3*z1-3*z2+3*z3) + (1/6)*exp(-3*z1+3*z2-3*z3) + exp(-(2*log(-6))/(pi*i)*(z2+z3))"
EXAMPLE1_F2 = "(i/6)*exp(-3*z1+3*z2-3*z3) - (i/6)*exp(3*z1-3*z2+3*z3) - exp(-(2*log(-6))/(pi*i)*(z2+z3))"

EXAMPLE2_F1 = "-(1/60)*exp(3*z1+z2-2*z3+5*z4) + (1/60)*exp(-3*z1-z2+2*z3-5*z4) + exp((15*log(2/3))/(8*pi*i)*(-8*z1+z2+z3+z4))"
EXAMPLE2_F2 = "(i/60)*exp(3*z1+z2-2*z3+5*z4) - (i/60)*exp(-3*z1-z2+2*z3-5*z4) - exp((15*log(2/3))/(8*pi*i)*(-8*z1+z2+z3+z4))"


def example1_params() -> E1Params:
    return E1Params(3, (PI * 1j, -PI * 1j, PI * 1j / 2), 1j, -18, 3, 2, mu=1)


def example1_pair() -> tuple[ExpPoly, ExpPoly]:
    return parse_exppoly(EXAMPLE1_F1, 3), parse_exppoly(EXAMPLE1_F2, 3)


def example2_params() -> E4Params:
    return E4Params(4, (PI * 1j / 3, 2 * PI * 1j, PI * 1j, PI * 1j / 5), (1, -2, 3, 7), -12j, -18j, mu=1)


def example2_pair() -> tuple[ExpPoly, ExpPoly]:
    return parse_exppoly(EXAMPLE2_F1, 4), parse_exppoly(EXAMPLE2_F2, 4)


def example1_g_direction() -> tuple[complex, complex, complex]:
    """Exponent ``-(2 log(-6)/(pi i)) (z2 + z3)`` of the homogeneous part."""
    g = -2 * cmath.log(-6) / (PI * 1j)
    return (0j, g, g)


def example1_bundle() -> TheoremParams:
    """Example 1 written as a member of the ``T12`` family."""
    return TheoremParams(
        "T12",
        example1_params(),
        b=(-3, 3, -3),
        A=0,
        B=0,
        K=(-1j, 1j, 1, 1),
        homogeneous=(HomogeneousSpec(example1_g_direction(), 1.0),),
    )


def example1_t13_bundle() -> TheoremParams:
    """A ``T13`` member on the Example-1 coefficients (b_mu = 3, nu = 1)."""
    s = example1_params()
    b = (3, 3, 0)
    K1, K3 = 1.0, 1.0
    Lc = sum(x * y for x, y in zip(b, s.c))
    A = 0j
    B = A + cmath.log((-1) ** 2 * K1 * cmath.exp(-Lc) / K3)
    return TheoremParams(
        "T13",
        s,
        b=b,
        A=A,
        B=B,
        K=(K1, 1 / K1, K3, 1 / K3),
        nu=1,
        homogeneous=(HomogeneousSpec(example1_g_direction(), 1.0),),
    )
