"""Seeded random polynomials, exponential polynomials and identity instances."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product as _cartesian

import numpy as np

from .algebra import ExpPoly, Polynomial
from .parser import format_complex


def _coef(rng: np.random.Generator, scale: float) -> complex:
    return complex(rng.uniform(0.2, 1.0) * scale * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))


def _monomials(dim: int, max_degree: int) -> list[tuple[int, ...]]:
    out = [m for m in _cartesian(range(max_degree + 1), repeat=dim) if sum(m) <= max_degree]
    out.sort(key=lambda m: (sum(m), m))
    return out


def random_polynomial(
    rng: np.random.Generator,
    dim: int,
    max_degree: int = 2,
    max_terms: int = 3,
    scale: float = 1.0,
    constant: bool = True,
) -> Polynomial:
    monos = _monomials(dim, max_degree)
    if not constant:
        monos = [m for m in monos if sum(m)]
    count = int(rng.integers(1, min(max_terms, len(monos)) + 1))
    picks = rng.choice(len(monos), size=count, replace=False)
    return Polynomial(dim, {monos[int(k)]: _coef(rng, scale) for k in picks})


def random_exppoly(
    rng: np.random.Generator,
    dim: int | None = None,
    max_terms: int = 5,
    exp_degree: int = 2,
    front_degree: int = 2,
    exp_scale: float = 0.5,
) -> ExpPoly:
    """At most ``max_terms`` exp-terms, exponent degree at most ``exp_degree``."""
    if dim is None:
        dim = int(rng.integers(1, 5))
    count = int(rng.integers(1, max_terms + 1))
    pairs = []
    for _ in range(count):
        front = random_polynomial(rng, dim, front_degree, 3)
        if rng.uniform() < 0.2:
            exponent = Polynomial.zero(dim)
        else:
            exponent = random_polynomial(rng, dim, exp_degree, 3, exp_scale, constant=False)
        pairs.append((front, exponent))
    return ExpPoly(dim, pairs)


# ---------------------------------------------------------------------------
# cancellation instances


def _poly_text(p: Polynomial) -> str:
    pieces = []
    for m, c in p.items():
        factors = [format_complex(c)] + [f"z{j + 1}^{e}" for j, e in enumerate(m) if e]
        pieces.append("*".join(factors))
    return "(" + " + ".join(pieces) + ")" if pieces else "0"


def _atom_text(front: Polynomial, exponent: Polynomial) -> str:
    if exponent.is_zero():
        return _poly_text(front)
    return f"{_poly_text(front)}*exp({_poly_text(exponent)})"


@dataclass(frozen=True)
class IdentityInstance:
    """Two texts for the same function, built through different association orders."""

    dim: int
    lhs: str
    rhs: str

    @property
    def difference(self) -> str:
        return f"({self.lhs}) - ({self.rhs})"


def _atoms(rng, dim, count):
    out = []
    for _ in range(count):
        front = random_polynomial(rng, dim, 1, 2)
        exponent = random_polynomial(rng, dim, 1, 2, 0.5, constant=False)
        out.append((front, exponent))
    return out


def _shape_texts(shape, f, fe, g, ge, h, he, g_right):
    F, G, H = _atom_text(f, fe), _atom_text(g, ge), _atom_text(h, he)
    Gr = _atom_text(g_right, ge)
    if shape == 0:
        return f"(({F})*({G}))*({H})", f"({F})*(({Gr})*({H}))"
    if shape == 1:
        return f"(({F})+({G}))*({H})", f"({F})*({H})+({Gr})*({H})"
    if shape == 2:
        return f"(({F})+({G}))^2", f"({F})^2+2*({F})*({Gr})+({G})^2"
    # exp(a + b) against exp(a)*exp(b), fronts attached in different places
    lhs = f"{_poly_text(f)}*{_poly_text(g)}*exp({_poly_text(fe)}+{_poly_text(ge)})"
    return lhs, f"({F})*({Gr})"


def cancellation_instance(rng: np.random.Generator, dim: int | None = None) -> IdentityInstance:
    """A pair of algebraically equal expressions (distributivity, associativity, exp laws)."""
    if dim is None:
        dim = int(rng.integers(1, 5))
    shape = int(rng.integers(0, 4))
    (f, fe), (g, ge), (h, he) = _atoms(rng, dim, 3)
    return IdentityInstance(dim, *_shape_texts(shape, f, fe, g, ge, h, he, g))


def perturbed_instance(rng: np.random.Generator, dim: int | None = None, delta: float = 1e-6) -> IdentityInstance:
    """A cancellation instance whose right side has one front constant moved by ``delta``."""
    if dim is None:
        dim = int(rng.integers(1, 5))
    shape = int(rng.integers(0, 4))
    (f, fe), (g, ge), (h, he) = _atoms(rng, dim, 3)
    g_right = g + Polynomial.constant(dim, delta)
    return IdentityInstance(dim, *_shape_texts(shape, f, fe, g, ge, h, he, g_right))
