"""Residuals of the three coupled Fermat-type systems and the pair verifier.

* ``FG``:  ``F1(f1)^m1 + P1 f2(z+c)^n1 = Q1`` and the mirrored equation;
* ``E1``:  ``(a1 d_mu f1)^2 + (a2 f1 + a3 f2(z+c) + a4 d_mu^2 f1)^2 = 1`` and mirror;
* ``E4``:  ``(sum a_j d_j f1)^2 + (a_{n+1} f1 + a_{n+2} f2(z+c))^2 = 1`` and mirror.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import numeric
from .algebra import (
    DimensionError,
    EvaluationOverflow,
    ExpPoly,
    NonFiniteError,
    derivative,
    multiply,
    partial_derivative,
    power,
    shift,
)
from .analysis import directional_derivative

DEFAULT_SAMPLES = 128
DEFAULT_RADIUS = 2.0
DEFAULT_SEED = 42
DEFAULT_TOL = 1e-9
EXTRA_ROUNDS = 3


class ParamsError(ValueError):
    pass


def _complex_tuple(values, name: str, length: int | None = None) -> tuple[complex, ...]:
    out = tuple(complex(v) for v in values)
    if length is not None and len(out) != length:
        raise ParamsError(f"{name} must have length {length}, got {len(out)}")
    for v in out:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ParamsError(f"{name} contains a non-finite value")
    return out


def _check_shift(c: tuple[complex, ...]) -> None:
    if all(v == 0 for v in c):
        raise ParamsError("the shift c must not be the zero vector")


@dataclass(frozen=True)
class OperatorSpec:
    """``F(f) = sum_I coef_I * d^I f`` with every ``|I| >= 1``."""

    entries: tuple[tuple[tuple[int, ...], ExpPoly], ...]

    def __init__(self, entries):
        cleaned = []
        for index, coef in entries:
            index = tuple(int(e) for e in index)
            if any(e < 0 for e in index) or sum(index) < 1:
                raise ParamsError(f"multi-index {index} must have non-negative entries and norm >= 1")
            if not isinstance(coef, ExpPoly):
                coef = ExpPoly.constant(len(index), coef)
            if coef.dim != len(index):
                raise ParamsError("multi-index length must equal the coefficient dimension")
            cleaned.append((index, coef))
        if not cleaned:
            raise ParamsError("operator needs at least one entry")
        if len({len(i) for i, _ in cleaned}) != 1:
            raise ParamsError("all multi-indices must have the same length")
        if all(c.is_zero() for _, c in cleaned):
            raise ParamsError("operator has only zero coefficients")
        object.__setattr__(self, "entries", tuple(cleaned))

    @property
    def dim(self) -> int:
        return len(self.entries[0][0])


@dataclass(frozen=True)
class FGParams:
    n: int
    c: tuple[complex, ...]
    m1: int
    m2: int
    n1: int
    n2: int
    P1: ExpPoly
    P2: ExpPoly
    Q1: ExpPoly
    Q2: ExpPoly
    F1: OperatorSpec
    F2: OperatorSpec
    variant = "fg"

    def __post_init__(self):
        object.__setattr__(self, "c", _complex_tuple(self.c, "c", self.n))
        _check_shift(self.c)
        for name in ("m1", "m2", "n1", "n2"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ParamsError(f"{name} must be a positive integer")
        for name in ("P1", "P2", "Q1", "Q2"):
            f = getattr(self, name)
            if f.dim != self.n:
                raise ParamsError(f"{name} has dimension {f.dim}, expected {self.n}")
            if f.is_zero():
                raise ParamsError(f"{name} must not vanish identically")
        for name in ("F1", "F2"):
            if getattr(self, name).dim != self.n:
                raise ParamsError(f"{name} has the wrong dimension")


@dataclass(frozen=True)
class E1Params:
    n: int
    c: tuple[complex, ...]
    a1: complex
    a2: complex
    a3: complex
    a4: complex
    mu: int = 1
    variant = "e1"

    def __post_init__(self):
        object.__setattr__(self, "c", _complex_tuple(self.c, "c", self.n))
        _check_shift(self.c)
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if 0 in (self.a1, self.a2, self.a3):
            raise ParamsError("a1, a2, a3 must be nonzero")
        if not (1 <= self.mu <= self.n):
            raise ParamsError(f"mu must lie in 1..{self.n}")

    @property
    def a(self) -> tuple[complex, ...]:
        return (self.a1, self.a2, self.a3, self.a4)


@dataclass(frozen=True)
class E4Params:
    n: int
    c: tuple[complex, ...]
    a: tuple[complex, ...]
    an1: complex
    an2: complex
    mu: int = 1
    variant = "e4"

    def __post_init__(self):
        object.__setattr__(self, "c", _complex_tuple(self.c, "c", self.n))
        object.__setattr__(self, "a", _complex_tuple(self.a, "a", self.n))
        _check_shift(self.c)
        object.__setattr__(self, "an1", complex(self.an1))
        object.__setattr__(self, "an2", complex(self.an2))
        if any(v == 0 for v in self.a) or self.an1 == 0 or self.an2 == 0:
            raise ParamsError("all coefficients a_1..a_{n+2} must be nonzero")
        if not (1 <= self.mu <= self.n):
            raise ParamsError(f"mu must lie in 1..{self.n}")


SystemParams = Union[FGParams, E1Params, E4Params]


class Verdict(str, enum.Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    INCONSISTENT = "INCONSISTENT"


@dataclass
class VerificationReport:
    symbolic_zero: tuple[bool, bool]
    max_residual: tuple[float, float]
    max_raw_residual: tuple[float, float]
    sample_count: int
    radius: float
    seed: int
    tol: float
    verdict: Verdict
    notes: list[str] = field(default_factory=list)
    residual_terms: tuple[list, list] = ((), ())

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.VERIFIED


# ---------------------------------------------------------------------------
# symbolic residuals


def _dims(f1: ExpPoly, f2: ExpPoly, n: int) -> None:
    if f1.dim != n or f2.dim != n:
        raise DimensionError(f"candidate dimensions ({f1.dim}, {f2.dim}) do not match n={n}")


def apply_F(f: ExpPoly, spec: OperatorSpec) -> ExpPoly:
    if f.dim != spec.dim:
        raise DimensionError("operator and function dimensions differ")
    out = ExpPoly.zero(f.dim)
    for index, coef in spec.entries:
        out = out + multiply(coef, derivative(f, index))
    return out


def _unit(f: ExpPoly) -> ExpPoly:
    return ExpPoly.constant(f.dim, 1.0)


def residual_e1(f1: ExpPoly, f2: ExpPoly, p: E1Params) -> tuple[ExpPoly, ExpPoly]:
    _dims(f1, f2, p.n)
    out = []
    for fj, fk in ((f1, f2), (f2, f1)):
        d1 = partial_derivative(fj, p.mu)
        d2 = partial_derivative(d1, p.mu)
        x = d1 * p.a1
        y = fj * p.a2 + shift(fk, p.c) * p.a3 + d2 * p.a4
        out.append(multiply(x, x) + multiply(y, y) - _unit(fj))
    return out[0], out[1]


def residual_e4(f1: ExpPoly, f2: ExpPoly, p: E4Params) -> tuple[ExpPoly, ExpPoly]:
    _dims(f1, f2, p.n)
    out = []
    for fj, fk in ((f1, f2), (f2, f1)):
        x = directional_derivative(fj, p.a)
        y = fj * p.an1 + shift(fk, p.c) * p.an2
        out.append(multiply(x, x) + multiply(y, y) - _unit(fj))
    return out[0], out[1]


def residual_fg(f1: ExpPoly, f2: ExpPoly, p: FGParams) -> tuple[ExpPoly, ExpPoly]:
    _dims(f1, f2, p.n)
    r1 = power(apply_F(f1, p.F1), p.m1) + multiply(p.P1, power(shift(f2, p.c), p.n1)) - p.Q1
    r2 = power(apply_F(f2, p.F2), p.m2) + multiply(p.P2, power(shift(f1, p.c), p.n2)) - p.Q2
    return r1, r2


def residuals(f1: ExpPoly, f2: ExpPoly, p: SystemParams) -> tuple[ExpPoly, ExpPoly]:
    if isinstance(p, E1Params):
        return residual_e1(f1, f2, p)
    if isinstance(p, E4Params):
        return residual_e4(f1, f2, p)
    if isinstance(p, FGParams):
        return residual_fg(f1, f2, p)
    raise TypeError(f"unknown system parameters {type(p).__name__}")


def _numeric(f1, f2, p, points):
    if isinstance(p, E1Params):
        return numeric.e1_residuals(f1, f2, p, points)
    if isinstance(p, E4Params):
        return numeric.e4_residuals(f1, f2, p, points)
    return numeric.fg_residuals(f1, f2, p, points)


def dominant_terms(r: ExpPoly, limit: int = 5) -> list[dict]:
    """Largest terms of a residual, for reporting which exponential survives."""
    from .parser import format_polynomial

    rows = []
    for t in r.terms:
        rows.append(
            {
                "exponent": format_polynomial(t.exponent),
                "front": format_polynomial(t.front),
                "magnitude": t.front.max_abs(),
            }
        )
    rows.sort(key=lambda d: -d["magnitude"])
    return rows[:limit]


def verify(
    f1: ExpPoly,
    f2: ExpPoly,
    params: SystemParams,
    samples: int = DEFAULT_SAMPLES,
    radius: float = DEFAULT_RADIUS,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    notes: list[str] = []
    try:
        r1, r2 = residuals(f1, f2, params)
    except NonFiniteError as exc:
        return VerificationReport((False, False), (math.inf, math.inf), (math.inf, math.inf), 0, radius, seed, tol, Verdict.INCONSISTENT, [f"symbolic overflow: {exc}"])
    sym = (r1.is_zero(), r2.is_zero())
    terms = (dominant_terms(r1), dominant_terms(r2))

    rng = np.random.default_rng(seed)
    worst = [0.0, 0.0]
    worst_raw = [0.0, 0.0]
    used = 0
    rounds = 0
    while True:
        points = numeric.sample_points(params.n, samples, radius, rng)
        try:
            n1, n2 = _numeric(f1, f2, params, points)
        except EvaluationOverflow as exc:
            notes.append(f"numeric overflow: {exc}")
            return VerificationReport(sym, (math.inf, math.inf), (math.inf, math.inf), used, radius, seed, tol, Verdict.INCONSISTENT, notes, terms)
        used += samples
        for j, res in enumerate((n1, n2)):
            worst[j] = max(worst[j], float(np.max(res.normalized)))
            worst_raw[j] = max(worst_raw[j], float(np.max(np.abs(res.raw))))
        # a nonzero symbolic residual that looks numerically tiny gets more samples
        pending = [j for j in range(2) if not sym[j] and worst[j] <= tol]
        if not pending or rounds >= EXTRA_ROUNDS:
            break
        rounds += 1
    if rounds:
        notes.append(f"sampling extended by {rounds} round(s) to separate a small nonzero residual")

    agree = [(sym[j] and worst[j] <= tol) or (not sym[j] and worst[j] > tol) for j in range(2)]
    if not all(agree):
        for j in range(2):
            if not agree[j]:
                if sym[j]:
                    notes.append(f"equation {j + 1}: symbolic residual is zero but numeric residual {worst[j]:.3e} exceeds tol")
                else:
                    notes.append(f"equation {j + 1}: symbolic residual is nonzero but numerically below tol")
        verdict = Verdict.INCONSISTENT
    elif all(sym):
        verdict = Verdict.VERIFIED
    else:
        verdict = Verdict.REFUTED
    return VerificationReport(sym, (worst[0], worst[1]), (worst_raw[0], worst_raw[1]), used, radius, seed, tol, verdict, notes, terms)


@dataclass
class IdentityReport:
    symbolic_zero: bool
    max_residual: float
    sample_count: int
    verdict: Verdict


def verify_identity(
    lhs: str,
    rhs: str,
    dim: int,
    samples: int = DEFAULT_SAMPLES,
    radius: float = DEFAULT_RADIUS,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> IdentityReport:
    """Decide ``lhs == rhs`` canonically and by evaluating both syntax trees directly."""
    from .parser import interpret, parse, parse_exppoly

    sym = parse_exppoly(f"({lhs}) - ({rhs})", dim).is_zero()
    left, right = parse(lhs), parse(rhs)
    points = numeric.sample_points(dim, samples, radius, np.random.default_rng(seed))
    worst = 0.0
    for z in points:
        a, b = interpret(left, z), interpret(right, z)
        worst = max(worst, abs(a - b) / (1.0 + max(abs(a), abs(b))))
    num_zero = worst <= tol
    if sym == num_zero:
        verdict = Verdict.VERIFIED if sym else Verdict.REFUTED
    else:
        verdict = Verdict.INCONSISTENT
    return IdentityReport(sym, worst, samples, verdict)
