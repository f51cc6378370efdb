"""Growth order, kernel linear forms and periodic building blocks."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import TAU_EXP, DimensionError, ExpPoly, Polynomial, partial_derivative

TWO_PI_I = 2j * math.pi
PERIOD_TOL = 1e-9


@dataclass(frozen=True)
class LinearForm:
    """``sum_j t_j z_j`` with no constant term."""

    coefficients: tuple[complex, ...]

    def __init__(self, coefficients: Sequence[complex]):
        coefs = tuple(complex(c) for c in coefficients)
        if not coefs:
            raise DimensionError("a linear form needs at least one coefficient")
        object.__setattr__(self, "coefficients", coefs)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __call__(self, point: Sequence[complex]) -> complex:
        if len(point) != self.dim:
            raise DimensionError(f"point of length {len(point)} for a form in {self.dim} variables")
        return sum((t * complex(p) for t, p in zip(self.coefficients, point)), 0j)

    def as_polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coefficients)

    def scaled(self, k: complex) -> "LinearForm":
        return LinearForm([k * t for t in self.coefficients])

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return LinearForm([s + t for s, t in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "LinearForm":
        return self.scaled(-1)

    def involves(self, k: int) -> bool:
        """Whether the 1-based variable ``k`` has a nonzero coefficient."""
        return self.coefficients[k - 1] != 0


class InvarianceError(ValueError):
    def __init__(self, message: str, residual: complex):
        super().__init__(message)
        self.residual = residual


class PeriodError(ValueError):
    def __init__(self, message: str, form=None, value: complex | None = None):
        super().__init__(message)
        self.form = form
        self.value = value


def order_of_growth(f: ExpPoly) -> int:
    """Order of an exponential polynomial: the largest exponent degree."""
    return max((t.exponent.degree for t in f.terms), default=0)


def directional_derivative(f: ExpPoly, a: Sequence[complex]) -> ExpPoly:
    """``sum_j a_j df/dz_j``."""
    if len(a) != f.dim:
        raise DimensionError("direction length must equal the dimension")
    out = ExpPoly.zero(f.dim)
    for j, aj in enumerate(a):
        if aj != 0:
            out = out + partial_derivative(f, j + 1) * complex(aj)
    return out


def kernel_forms(a: Sequence[complex], mu: int) -> list[LinearForm]:
    """Forms ``a_mu z_k - a_k z_mu`` (k != mu), all killed by ``sum a_j d/dz_j``."""
    n = len(a)
    if not (1 <= mu <= n):
        raise IndexError(f"mu={mu} out of range 1..{n}")
    a = [complex(v) for v in a]
    if a[mu - 1] == 0:
        raise ValueError("a_mu must be nonzero")
    forms = []
    for k in range(1, n + 1):
        if k == mu:
            continue
        t = [0j] * n
        t[k - 1] = a[mu - 1]
        t[mu - 1] = -a[k - 1]
        forms.append(LinearForm(t))
    return forms


def kernel_coordinates(t: Sequence[complex], a: Sequence[complex], mu: int) -> tuple[list[complex], complex]:
    """Express ``t`` in the basis returned by :func:`kernel_forms`.

    Returns the coordinates and the defect in the ``z_mu`` slot; the form lies in
    the span exactly when the defect vanishes (equivalently ``sum a_j t_j = 0``).
    """
    n = len(a)
    am = complex(a[mu - 1])
    if am == 0:
        raise ValueError("a_mu must be nonzero")
    coords = [complex(t[k - 1]) / am for k in range(1, n + 1) if k != mu]
    rebuilt_mu = -sum(complex(a[k - 1]) * complex(t[k - 1]) for k in range(1, n + 1) if k != mu) / am
    return coords, complex(t[mu - 1]) - rebuilt_mu


def in_kernel_span(t: Sequence[complex], a: Sequence[complex], tol: float = TAU_EXP) -> bool:
    s = sum(complex(x) * complex(y) for x, y in zip(t, a))
    scale = 1.0 + max(abs(complex(x) * complex(y)) for x, y in zip(t, a))
    return abs(s) <= tol * scale


def shift_invariant_form(t: Sequence[complex], c: Sequence[complex]) -> LinearForm:
    """Accept ``t`` when ``t . c`` vanishes, so every polynomial in the form is c-invariant."""
    if len(t) != len(c):
        raise DimensionError("form and shift lengths differ")
    residual = sum((complex(x) * complex(y) for x, y in zip(t, c)), 0j)
    if abs(residual) > TAU_EXP:
        raise InvarianceError(f"form is not shift invariant: t.c = {residual}", residual)
    return LinearForm(t)


def is_multiple_of_2pi_i(w: complex, tol: float = PERIOD_TOL) -> bool:
    k = w.imag / (2 * math.pi)
    return abs(k - round(k)) <= tol and abs(w.real) <= tol


def periodic_exp_poly(p: Sequence[complex], spec) -> ExpPoly:
    """Sum of ``front * exp(L)`` terms, each checked to have period ``p``.

    ``spec`` is a sequence of ``(LinearForm, front)`` pairs; fronts must be
    constants (complex numbers or constant polynomials).
    """
    dim = len(p)
    out = ExpPoly.zero(dim)
    for form, front in spec:
        if not isinstance(form, LinearForm):
            form = LinearForm(form)
        if form.dim != dim:
            raise DimensionError("form and period lengths differ")
        if isinstance(front, Polynomial):
            if not front.is_constant():
                raise PeriodError("fronts of periodic terms must be constant", form)
            front = front.constant_term
        value = form(p)
        if not is_multiple_of_2pi_i(value):
            raise PeriodError(f"L(p) = {value} is not in 2*pi*i*Z", form, value)
        out = out + ExpPoly.exp(form.as_polynomial(), complex(front))
    return out


def principal_log(w: complex) -> complex:
    w = complex(w)
    if w == 0:
        raise ValueError("log(0) is undefined")
    return cmath.log(w)
