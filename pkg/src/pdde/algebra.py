"""Sparse polynomials and exponential polynomials over the complex numbers.

Variables are numbered from 1, so ``partial_derivative(f, 1)`` differentiates
with respect to ``z1``.  Every value is canonical and immutable once built:

* polynomial coefficients whose modulus is at most ``TAU_COEFF`` times the
  largest coefficient (or the largest contribution that produced them) are
  dropped;
* the constant part of an exponent is folded into the front as ``exp(k)``;
* exp-terms whose exponents agree coefficient-wise within ``TAU_EXP`` are
  merged, terms with a zero front are dropped, and the remaining terms are
  sorted by their exponent.

With that normal form an exponential polynomial vanishes identically exactly
when it has no terms: exponentials with pairwise non-constant exponent
differences are linearly independent over the polynomials.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels

TAU_COEFF = 1e-12
TAU_EXP = 1e-9
OVERFLOW_RE = 700.0

Monomial = tuple[int, ...]


class DimensionError(ValueError):
    pass


class NonFiniteError(ArithmeticError):
    pass


class EvaluationOverflow(ArithmeticError):
    """An exponent's real part exceeded the safe bound during evaluation."""


def _clean(c) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise NonFiniteError(f"non-finite coefficient {c!r}")
    # adding +0.0 turns negative zeros into positive ones
    return complex(c.real + 0.0, c.imag + 0.0)


def _grlex(m: Monomial):
    return (sum(m), m)


class Polynomial:
    """Sparse multivariate polynomial ``sum c_I z^I`` in ``dim`` variables."""

    __slots__ = ("dim", "_terms", "_key")

    def __init__(self, dim: int, terms: Mapping[Monomial, complex] | None = None, *, scale: float = 0.0):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        cleaned: dict[Monomial, complex] = {}
        top = scale
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dim or any(e < 0 for e in mono):
                raise DimensionError(f"bad monomial {mono} for dimension {dim}")
            c = _clean(c)
            cleaned[mono] = cleaned.get(mono, 0j) + c
            top = max(top, abs(c))
        cut = TAU_COEFF * top
        kept = {m: _clean(c) for m, c in cleaned.items() if abs(c) > cut}
        self.dim = dim
        self._terms = {m: kept[m] for m in sorted(kept, key=_grlex, reverse=True)}
        self._key = None

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, dim: int, c) -> "Polynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim: int, k: int) -> "Polynomial":
        _check_var(dim, k)
        mono = [0] * dim
        mono[k - 1] = 1
        return cls(dim, {tuple(mono): 1.0})

    @classmethod
    def linear(cls, coefficients: Sequence[complex]) -> "Polynomial":
        dim = len(coefficients)
        terms = {}
        for j, c in enumerate(coefficients):
            mono = [0] * dim
            mono[j] = 1
            terms[tuple(mono)] = c
        return cls(dim, terms)

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    # inspection -------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> complex:
        return self._terms.get(tuple(mono), 0j)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    @property
    def constant_term(self) -> complex:
        return self._terms.get((0,) * self.dim, 0j)

    def without_constant(self) -> "Polynomial":
        zero = (0,) * self.dim
        if zero not in self._terms:
            return self
        return _raw_poly(self.dim, {m: c for m, c in self._terms.items() if m != zero})

    def variables(self) -> set[int]:
        """1-based indices of the variables that actually occur."""
        return {j + 1 for m in self._terms for j, e in enumerate(m) if e}

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def sort_key(self):
        if self._key is None:
            self._key = tuple((sum(m), m, c.real, c.imag) for m, c in self._terms.items())
        return self._key

    def close_to(self, other: "Polynomial", tol: float) -> bool:
        if self.dim != other.dim:
            return False
        for m in self._terms.keys() | other._terms.keys():
            if abs(self.coefficient(m) - other.coefficient(m)) > tol:
                return False
        return True

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
            return other
        return Polynomial.constant(self.dim, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0j) + c
        return Polynomial(self.dim, acc, scale=max(self.max_abs(), other.max_abs()))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return _raw_poly(self.dim, {m: _clean(-c) for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _clean(other)
            return Polynomial(self.dim, {m: v * c for m, v in self._terms.items()}, scale=self.max_abs() * abs(c))
        other = self._coerce(other)
        acc: dict[Monomial, complex] = {}
        top = 0.0
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                top = max(top, abs(v))
                acc[m] = acc.get(m, 0j) + v
        return Polynomial(self.dim, acc, scale=top)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if int(k) != k or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.dim, 1.0)
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def partial(self, k: int) -> "Polynomial":
        _check_var(self.dim, k)
        j = k - 1
        acc = {}
        for m, c in self._terms.items():
            if m[j]:
                mm = list(m)
                mm[j] -= 1
                acc[tuple(mm)] = c * m[j]
        return Polynomial(self.dim, acc)

    def shift(self, c: Sequence[complex]) -> "Polynomial":
        """Return ``p(z + c)``."""
        c = _point(c, self.dim)
        acc: dict[Monomial, complex] = {}
        top = 0.0
        for m, coef in self._terms.items():
            # expand prod_j (z_j + c_j)^{e_j} one variable at a time
            pieces = []
            for j, e in enumerate(m):
                pieces.append([(k, math.comb(e, k) * c[j] ** (e - k)) for k in range(e + 1)])
            for combo in _cartesian(*pieces):
                v = coef
                for _, w in combo:
                    v = v * w
                mono = tuple(k for k, _ in combo)
                top = max(top, abs(v))
                acc[mono] = acc.get(mono, 0j) + v
        return Polynomial(self.dim, acc, scale=top)

    def evaluate(self, z: Sequence[complex]) -> complex:
        z = _point(z, self.dim)
        total = 0j
        for m, c in self._terms.items():
            v = c
            for zj, e in zip(z, m):
                if e:
                    v *= zj**e
            total += v
        return total

    # comparison -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms and list(self._terms) == list(other._terms)

    def __hash__(self) -> int:
        return hash((self.dim, self.sort_key()))

    def __repr__(self) -> str:
        if not self._terms:
            return f"Polynomial({self.dim}, 0)"
        parts = []
        for m, c in self._terms.items():
            vars_ = "*".join(f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(m) if e)
            parts.append(f"({c:.6g})" + (f"*{vars_}" if vars_ else ""))
        return f"Polynomial({self.dim}, {' + '.join(parts)})"


def _raw_poly(dim: int, terms: dict[Monomial, complex]) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    p.dim = dim
    p._terms = {m: terms[m] for m in sorted(terms, key=_grlex, reverse=True)}
    p._key = None
    return p


def _check_var(dim: int, k: int) -> None:
    if not (1 <= k <= dim):
        raise IndexError(f"variable index {k} out of range 1..{dim}")


def _point(z, dim: int) -> tuple[complex, ...]:
    z = tuple(complex(v) for v in z)
    if len(z) != dim:
        raise DimensionError(f"point of length {len(z)} for dimension {dim}")
    return z


@dataclass(frozen=True)
class ExpTerm:
    front: Polynomial
    exponent: Polynomial


class ExpPoly:
    """Finite sum ``sum_t front_t(z) * exp(exponent_t(z))`` in canonical form."""

    __slots__ = ("dim", "terms", "_table")

    def __init__(self, dim: int, pairs: Iterable[tuple[Polynomial, Polynomial]] = (), *, scale: float = 0.0):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        self.dim = dim
        self.terms = _canonical_terms(dim, pairs, scale)
        self._table = None

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "ExpPoly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> "ExpPoly":
        return cls(dim, [(Polynomial.constant(dim, c), Polynomial.zero(dim))])

    @classmethod
    def variable(cls, dim: int, k: int) -> "ExpPoly":
        return cls(dim, [(Polynomial.variable(dim, k), Polynomial.zero(dim))])

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "ExpPoly":
        return cls(p.dim, [(p, Polynomial.zero(p.dim))])

    @classmethod
    def exp(cls, exponent: Polynomial, front: Polynomial | complex = 1.0) -> "ExpPoly":
        """``front * exp(exponent)``; the exponent's constant is folded in."""
        if not isinstance(front, Polynomial):
            front = Polynomial.constant(exponent.dim, front)
        return cls(exponent.dim, [(front, exponent)])

    # inspection -------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(t.exponent.is_zero() for t in self.terms)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("expression contains non-trivial exponentials")
        if not self.terms:
            return Polynomial.zero(self.dim)
        return self.terms[0].front

    def is_constant(self) -> bool:
        return self.is_polynomial() and all(t.front.is_constant() for t in self.terms)

    def constant_value(self) -> complex:
        if not self.is_constant():
            raise ValueError("expression is not constant")
        return self.terms[0].front.constant_term if self.terms else 0j

    def max_abs(self) -> float:
        return max((t.front.max_abs() for t in self.terms), default=0.0)

    def variables(self) -> set[int]:
        out: set[int] = set()
        for t in self.terms:
            out |= t.front.variables() | t.exponent.variables()
        return out

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
            return other
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
            return ExpPoly.from_polynomial(other)
        return ExpPoly.constant(self.dim, other)

    def __add__(self, other) -> "ExpPoly":
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return negate(self)

    def __sub__(self, other) -> "ExpPoly":
        return add(self, negate(self._coerce(other)))

    def __rsub__(self, other) -> "ExpPoly":
        return add(self._coerce(other), negate(self))

    def __mul__(self, other) -> "ExpPoly":
        if isinstance(other, (ExpPoly, Polynomial)):
            return multiply(self, self._coerce(other))
        return scale(self, other)

    def __rmul__(self, other) -> "ExpPoly":
        return self.__mul__(other)

    def __truediv__(self, other) -> "ExpPoly":
        if isinstance(other, (ExpPoly, Polynomial)):
            raise TypeError("only division by a scalar is supported")
        return scale(self, 1.0 / complex(other))

    def __pow__(self, k: int) -> "ExpPoly":
        return power(self, k)

    # comparison -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, tuple((t.front, t.exponent) for t in self.terms)))

    def __repr__(self) -> str:
        from .parser import format_exppoly

        return f"ExpPoly({self.dim}, {format_exppoly(self)!r})"

    # numeric ------------------------------------------------------------------
    def table(self):
        """Flattened monomial table consumed by the evaluation kernels."""
        if self._table is None:
            rows, coefs, idx, role = [], [], [], []
            for t_i, t in enumerate(self.terms):
                for r, poly in ((_kernels.ROLE_FRONT, t.front), (_kernels.ROLE_EXPONENT, t.exponent)):
                    for m, c in poly.items():
                        rows.append(m)
                        coefs.append(c)
                        idx.append(t_i)
                        role.append(r)
            self._table = (
                np.array(rows, dtype=np.int64).reshape(len(rows), self.dim),
                np.array(coefs, dtype=np.complex128),
                np.array(idx, dtype=np.int64),
                np.array(role, dtype=np.int64),
                len(self.terms),
            )
        return self._table


def _canonical_terms(dim: int, pairs, scale: float) -> tuple[ExpTerm, ...]:
    reps: list[Polynomial] = []
    accs: list[dict[Monomial, complex]] = []
    exact: dict[tuple, int] = {}
    top = scale
    for front, exponent in pairs:
        if front.dim != dim or exponent.dim != dim:
            raise DimensionError("term dimension mismatch")
        if front.is_zero():
            continue
        k = exponent.constant_term
        if k != 0:
            if k.real > OVERFLOW_RE:
                raise NonFiniteError(f"exp({k}) overflows")
            front = front * cmath.exp(k)
            exponent = exponent.without_constant()
        key = exponent.sort_key()
        slot = exact.get(key)
        if slot is None:
            for i, rep in enumerate(reps):
                if rep.close_to(exponent, TAU_EXP):
                    slot = i
                    break
            else:
                slot = len(reps)
                reps.append(exponent)
                accs.append({})
            exact[key] = slot
        acc = accs[slot]
        for m, c in front.items():
            acc[m] = acc.get(m, 0j) + c
            top = max(top, abs(c))
    terms = []
    for rep, acc in zip(reps, accs):
        front = Polynomial(dim, acc, scale=top)
        if not front.is_zero():
            terms.append(ExpTerm(front, rep))
    terms.sort(key=lambda t: t.exponent.sort_key())
    return tuple(terms)


# ---------------------------------------------------------------------------
# functional API


def _same_dim(f: ExpPoly, g: ExpPoly) -> None:
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch {f.dim} vs {g.dim}")


def add(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    _same_dim(f, g)
    pairs = [(t.front, t.exponent) for t in f.terms] + [(t.front, t.exponent) for t in g.terms]
    return ExpPoly(f.dim, pairs)


def negate(f: ExpPoly) -> ExpPoly:
    return ExpPoly(f.dim, [(-t.front, t.exponent) for t in f.terms])


def scale(f: ExpPoly, c) -> ExpPoly:
    c = _clean(c)
    return ExpPoly(f.dim, [(t.front * c, t.exponent) for t in f.terms], scale=f.max_abs() * abs(c))


def multiply(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    _same_dim(f, g)
    pairs = []
    for s in f.terms:
        for t in g.terms:
            pairs.append((s.front * t.front, s.exponent + t.exponent))
    top = f.max_abs() * g.max_abs()
    return ExpPoly(f.dim, pairs, scale=top)


def power(f: ExpPoly, k: int) -> ExpPoly:
    if int(k) != k or k < 0:
        raise ValueError("powers must be non-negative integers")
    result = ExpPoly.constant(f.dim, 1.0)
    base = f
    k = int(k)
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def partial_derivative(f: ExpPoly, k: int) -> ExpPoly:
    """``d f / d z_k`` using ``d(Q e^P) = (dQ + Q dP) e^P``."""
    _check_var(f.dim, k)
    pairs = []
    for t in f.terms:
        pairs.append((t.front.partial(k) + t.front * t.exponent.partial(k), t.exponent))
    return ExpPoly(f.dim, pairs)


def derivative(f: ExpPoly, index: Sequence[int]) -> ExpPoly:
    """Mixed partial for a multi-index ``index`` (one entry per variable)."""
    if len(index) != f.dim:
        raise DimensionError("multi-index length must equal the dimension")
    out = f
    for j, e in enumerate(index):
        for _ in range(int(e)):
            out = partial_derivative(out, j + 1)
    return out


def shift(f: ExpPoly, c: Sequence[complex]) -> ExpPoly:
    """``f(z + c)``; the new exponent constants ``P(c)`` move into the fronts."""
    c = _point(c, f.dim)
    return ExpPoly(f.dim, [(t.front.shift(c), t.exponent.shift(c)) for t in f.terms])


def evaluate_many(f: ExpPoly, points) -> np.ndarray:
    points = np.asarray(points, dtype=np.complex128)
    if points.ndim != 2 or points.shape[1] != f.dim:
        raise DimensionError(f"points must have shape (P, {f.dim})")
    exps, coefs, idx, role, n_terms = f.table()
    values, max_re = _kernels.evaluate_table(points, exps, coefs, idx, role, n_terms)
    if n_terms and np.max(max_re) > OVERFLOW_RE:
        raise EvaluationOverflow(f"exponent real part {np.max(max_re):.1f} exceeds {OVERFLOW_RE}")
    if not np.all(np.isfinite(values)):
        raise EvaluationOverflow("non-finite value during evaluation")
    return values


def evaluate(f: ExpPoly, z: Sequence[complex]) -> complex:
    z = _point(z, f.dim)
    return complex(evaluate_many(f, np.array([z]))[0])


def is_identically_zero(f: ExpPoly) -> bool:
    return f.is_zero()


def equal(f: ExpPoly, g: ExpPoly) -> bool:
    return is_identically_zero(add(f, negate(g)))


def canonicalize(f: ExpPoly) -> ExpPoly:
    return ExpPoly(f.dim, [(t.front, t.exponent) for t in f.terms])
