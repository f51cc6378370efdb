"""Nonexistence gate, constraint checks and solution constructors.

The ``E1`` families are ``T1, T11, T12, T13`` and the ``E4`` families are
``T2, T22, T23, T24``.  Every constructor materialises ``(f1, f2)`` from a
:class:`TheoremParams` bundle and then runs :func:`systems.verify`; a pair is
only handed back if the verifier agrees.

Auxiliary parts come in two flavours.  Inhomogeneous pairs ``(g1, g2)`` solve

    p*g1(z) + q*g2(z+c) = R1(z),   p*g2(z) + q*g1(z+c) = R2(z)

for exponential right-hand sides (``solve_condition``); homogeneous pairs make
both left-hand sides vanish (``homogeneous_pair``).  Here ``(p, q)`` is
``(a2, a3)`` for ``E1`` and ``(a_{n+1}, a_{n+2})`` for ``E4``.  On the ``E1``
side every auxiliary function avoids ``z_mu``; on the ``E4`` side every
exponent lies in the span of the kernel forms.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import TAU_EXP, ExpPoly, Polynomial, shift
from .analysis import LinearForm, in_kernel_span, kernel_forms, periodic_exp_poly
from .systems import (
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    E1Params,
    E4Params,
    VerificationReport,
    verify,
)

E1_THEOREMS = ("T1", "T11", "T12", "T13")
E4_THEOREMS = ("T2", "T22", "T23", "T24")
THEOREMS = E1_THEOREMS + E4_THEOREMS

CHECK_TOL = 1e-9
SINGULAR_TOL = 1e-12


# ---------------------------------------------------------------------------
# nonexistence gate


class GateVerdict(str, enum.Enum):
    NONEXISTENT_BY_PRODUCT = "NONEXISTENT_BY_PRODUCT"
    NONEXISTENT_BY_RATIO = "NONEXISTENT_BY_RATIO"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class GateResult:
    verdict: GateVerdict
    reason: str


def gate_nonexistence(m1: int, m2: int, n1: int, n2: int) -> GateResult:
    """Integer-exact test of ``n1 n2 > m1 m2`` or ``n_j > m_j/(m_j - 1)`` for both j."""
    for name, v in (("m1", m1), ("m2", m2), ("n1", n1), ("n2", n2)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")
    m1, m2, n1, n2 = int(m1), int(m2), int(n1), int(n2)
    if n1 * n2 > m1 * m2:
        return GateResult(GateVerdict.NONEXISTENT_BY_PRODUCT, f"n1*n2 = {n1 * n2} > m1*m2 = {m1 * m2}")
    if m1 >= 2 and m2 >= 2 and n1 * (m1 - 1) > m1 and n2 * (m2 - 1) > m2:
        return GateResult(
            GateVerdict.NONEXISTENT_BY_RATIO,
            f"n1 = {n1} > {Fraction(m1, m1 - 1)} and n2 = {n2} > {Fraction(m2, m2 - 1)}",
        )
    return GateResult(GateVerdict.INCONCLUSIVE, "neither inequality holds")


# ---------------------------------------------------------------------------
# parameter bundles


@dataclass(frozen=True)
class GammaPair:
    k: int
    gamma1: complex
    gamma2: complex


def gamma_pair(system: E1Params | E4Params) -> GammaPair:
    """``gamma_{1,2} = (coef*c_mu -/+ i*lead) / (2*lead)``.

    ``E1`` uses ``coef = a2`` and ``lead = a1``.  ``E4`` uses
    ``coef = a_{n+1}`` and ``lead = a_mu``, the coefficient that actually
    multiplies ``z_mu`` under the directional derivative.
    """
    cm = system.c[system.mu - 1]
    if isinstance(system, E1Params):
        k, coef, lead = 1, system.a2, system.a1
    else:
        k, coef, lead = system.n, system.an1, system.a[system.mu - 1]
    g1 = (coef * cm - 1j * lead) / (2 * lead)
    g2 = (coef * cm + 1j * lead) / (2 * lead)
    return GammaPair(k, g1, g2)


@dataclass(frozen=True)
class HomogeneousSpec:
    """One homogeneous term ``tau*exp(M)`` added to ``f1`` (and its partner to ``f2``)."""

    M: tuple[complex, ...]
    tau: complex

    def __init__(self, M: Sequence[complex] | LinearForm, tau: complex):
        if isinstance(M, LinearForm):
            M = M.coefficients
        object.__setattr__(self, "M", tuple(complex(v) for v in M))
        object.__setattr__(self, "tau", complex(tau))


@dataclass(frozen=True)
class TheoremParams:
    theorem: str
    system: E1Params | E4Params
    b: tuple[complex, ...] = ()
    A: complex = 0j
    B: complex = 0j
    K: tuple[complex, complex, complex, complex] = (1, 1, 1, 1)
    nu: int | None = None
    psi1: Polynomial | None = None
    homogeneous: tuple[HomogeneousSpec, ...] = ()

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}; expected one of {', '.join(THEOREMS)}")
        want = E1Params if self.theorem in E1_THEOREMS else E4Params
        if not isinstance(self.system, want):
            raise TypeError(f"{self.theorem} needs {want.__name__}")
        n = self.system.n
        b = tuple(complex(v) for v in self.b) if self.b else (0j,) * n
        if len(b) != n:
            raise ValueError(f"b must have length {n}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", complex(self.A))
        object.__setattr__(self, "B", complex(self.B))
        K = tuple(complex(v) for v in self.K)
        if len(K) != 4:
            raise ValueError("K must hold K1..K4")
        object.__setattr__(self, "K", K)
        if self.nu is not None and self.nu not in (1, 2):
            raise ValueError("nu must be 1 or 2")
        if self.psi1 is not None and self.psi1.dim != n:
            raise ValueError("psi1 has the wrong dimension")
        object.__setattr__(self, "homogeneous", tuple(self.homogeneous))
        for h in self.homogeneous:
            if len(h.M) != n:
                raise ValueError("homogeneous exponent has the wrong length")

    @property
    def kind(self) -> str:
        return "A" if self.theorem in E1_THEOREMS else "B"

    @property
    def pq(self) -> tuple[complex, complex]:
        s = self.system
        return (s.a2, s.a3) if isinstance(s, E1Params) else (s.an1, s.an2)

    @property
    def psi(self) -> Polynomial:
        return self.psi1 if self.psi1 is not None else Polynomial.zero(self.system.n)

    def linear_b(self) -> tuple[complex, ...]:
        """Coefficients of the linear exponent; T11 drops the ``z_mu`` slot."""
        if self.theorem == "T11":
            b = list(self.b)
            b[self.system.mu - 1] = 0j
            return tuple(b)
        return self.b

    def L(self) -> Polynomial:
        return Polynomial.linear(self.linear_b())

    def Lc(self) -> complex:
        return sum((bj * cj for bj, cj in zip(self.linear_b(), self.system.c)), 0j)


# ---------------------------------------------------------------------------
# constraint validation


@dataclass(frozen=True)
class ConstraintCheck:
    label: str
    lhs: complex
    rhs: complex
    passed: bool
    kind: str  # hypothesis | display | derived | structural


def _close(lhs: complex, rhs: complex, tol: float = CHECK_TOL) -> bool:
    return abs(lhs - rhs) <= tol * (1.0 + max(abs(lhs), abs(rhs)))


def _eq(label, lhs, rhs, kind) -> ConstraintCheck:
    lhs, rhs = complex(lhs), complex(rhs)
    return ConstraintCheck(label, lhs, rhs, _close(lhs, rhs), kind)


def _either(label, lhs, options, kind) -> ConstraintCheck:
    lhs = complex(lhs)
    best = min((complex(o) for o in options), key=lambda o: abs(lhs - o))
    return ConstraintCheck(label, lhs, best, _close(lhs, best), kind)


def _nonzero(label, value, kind) -> ConstraintCheck:
    value = complex(value)
    return ConstraintCheck(label, value, 0j, abs(value) > CHECK_TOL, kind)


def _exp(w: complex) -> complex:
    if w.real > 700:
        return complex(math.inf, 0)
    return cmath.exp(w)


def _psi_checks(tp: TheoremParams) -> list[ConstraintCheck]:
    psi = tp.psi
    mu = tp.system.mu
    out = [ConstraintCheck("Psi1 does not involve z_mu", complex(mu in psi.variables()), 0j, mu not in psi.variables(), "structural")]
    drift = shift(ExpPoly.from_polynomial(psi), tp.system.c) - ExpPoly.from_polynomial(psi)
    out.append(ConstraintCheck("Psi1(z+c) = Psi1(z)", complex(drift.max_abs()), 0j, drift.is_zero(), "structural"))
    has_const = psi.constant_term != 0
    out.append(ConstraintCheck("Psi1 has no constant term", psi.constant_term, 0j, not has_const, "structural"))
    return out


def _homogeneous_checks(tp: TheoremParams) -> list[ConstraintCheck]:
    p, q = tp.pq
    s = tp.system
    out = []
    for j, h in enumerate(tp.homogeneous, start=1):
        form = LinearForm(h.M)
        if tp.kind == "A":
            out.append(_eq(f"homogeneous term {j}: coefficient of z_mu", h.M[s.mu - 1], 0, "structural"))
        else:
            dot = sum(a * m for a, m in zip(s.a, h.M))
            ok = in_kernel_span(h.M, s.a)
            out.append(ConstraintCheck(f"homogeneous term {j}: sum a_j M_j = 0", dot, 0j, ok, "structural"))
        out.append(_eq(f"homogeneous term {j}: exp(2 M(c)) = (p/q)^2", _exp(2 * form(s.c)), (p / q) ** 2, "structural"))
    return out


def _k_checks(tp: TheoremParams) -> list[ConstraintCheck]:
    K1, K2, K3, K4 = tp.K
    return [_eq("K1*K2 = 1", K1 * K2, 1, "hypothesis"), _eq("K3*K4 = 1", K3 * K4, 1, "hypothesis")]


def _nu_check(tp: TheoremParams) -> list[ConstraintCheck]:
    if tp.nu is None:
        return [ConstraintCheck("nu is given (1 or 2)", 0j, 0j, False, "structural")]
    return []


def _j3_block(tp: TheoremParams, sign: int) -> list[ConstraintCheck]:
    K1, K2, K3, K4 = tp.K
    Lc, A, B = tp.Lc(), tp.A, tp.B
    return [
        _eq("exp(2 Lc) = 1", _exp(2 * Lc), 1, "display"),
        _eq("exp(2A - 2B) = K2 K3/(K1 K4)", _exp(2 * A - 2 * B), K2 * K3 / (K1 * K4), "display"),
        _eq("exp(Lc - A + B) = (-1)^(nu+1) K4/K2", _exp(Lc - A + B), sign * K4 / K2, "display"),
        _eq("exp(Lc + A - B) = (-1)^(nu+1) K2/K4", _exp(Lc + A - B), sign * K2 / K4, "display"),
        _eq("exp(-Lc + A - B) = (-1)^(nu+1) K3/K1", _exp(-Lc + A - B), sign * K3 / K1, "display"),
        _eq("exp(-Lc - A + B) = (-1)^(nu+1) K1/K3", _exp(-Lc - A + B), sign * K1 / K3, "display"),
    ]


def _swap_block(tp: TheoremParams, p: complex, q: complex) -> list[ConstraintCheck]:
    """Identities shared by T11 (over the z_mu-free part of L) and T22."""
    K1, K2, K3, K4 = tp.K
    Lc, A, B = tp.Lc(), tp.A, tp.B
    lam = q / p
    return [
        _eq("exp(2 Lc) = (q/p)^2", _exp(2 * Lc), lam**2, "display"),
        _eq("exp(-2 Lc) = (q/p)^2", _exp(-2 * Lc), lam**2, "display"),
        _eq("exp(2A + 2B) = q^2 K2 K4/(p^2 K1 K3)", _exp(2 * A + 2 * B), lam**2 * K2 * K4 / (K1 * K3), "display"),
        _eq("exp(-Lc + A + B) = -q K4/(p K1)", _exp(-Lc + A + B), -lam * K4 / K1, "display"),
        _eq("exp(Lc - A - B) = -q K3/(p K2)", _exp(Lc - A - B), -lam * K3 / K2, "display"),
        _eq("exp(Lc + A + B) = -q K2/(p K3)", _exp(Lc + A + B), -lam * K2 / K3, "display"),
        _eq("exp(-Lc - A - B) = -q K1/(p K4)", _exp(-Lc - A - B), -lam * K1 / K4, "display"),
    ]


def validate_constraints(tp: TheoremParams) -> list[ConstraintCheck]:
    """Evaluate every identity the chosen family requires; failures are data."""
    s = tp.system
    th = tp.theorem
    p, q = tp.pq
    cm = s.c[s.mu - 1]
    checks: list[ConstraintCheck] = []
    if isinstance(s, E1Params):
        checks.append(_nonzero("a4 != 0", s.a4, "hypothesis"))
        bm = tp.b[s.mu - 1]
    else:
        am = s.a[s.mu - 1]
        S = sum((aj * bj for aj, bj in zip(s.a, tp.b)), 0j)

    if th == "T1":
        checks.append(_either("a2 = +-a3", s.a2, (s.a3, -s.a3), "hypothesis"))
        checks.append(_nonzero("a1^2 + a2^2 c_mu^2 != 0", s.a1**2 + s.a2**2 * cm**2, "structural"))
    elif th == "T11":
        checks += _k_checks(tp)
        checks.append(_either("a2^2 = +-a3^2", s.a2**2, (s.a3**2, -s.a3**2), "hypothesis"))
        checks.append(_eq("a2^2 = a3^2", s.a2**2, s.a3**2, "derived"))
        checks += _swap_block(tp, p, q)
        checks += _psi_checks(tp)
    elif th == "T12":
        checks += _k_checks(tp)
        checks.append(_eq("a1^4 a2^2 = a3^4 a4^2", s.a1**4 * s.a2**2, s.a3**4 * s.a4**2, "hypothesis"))
        checks.append(_nonzero("b_mu != 0", bm, "structural"))
        checks.append(_eq("a4 b_mu^2 + a2 = 0", s.a4 * bm**2 + s.a2, 0, "derived"))
        checks.append(_eq("a3^2 = -(a1 b_mu)^2", s.a3**2, -((s.a1 * bm) ** 2), "derived"))
        checks += _t12_block(tp)
        checks += _psi_checks(tp)
    elif th == "T13":
        checks += _k_checks(tp)
        checks += _nu_check(tp)
        checks.append(_nonzero("b_mu != 0", bm, "structural"))
        if tp.nu is not None:
            lhs = 1j * s.a1 * bm + s.a4 * bm**2 + s.a2
            checks.append(_eq("i a1 b_mu + a4 b_mu^2 + a2 = (-1)^nu a3", lhs, (-1) ** tp.nu * s.a3, "hypothesis"))
            checks += _j3_block(tp, (-1) ** (tp.nu + 1))
        checks += _psi_checks(tp)
    elif th == "T2":
        checks.append(_either("a_{n+1} = +-a_{n+2}", p, (q, -q), "hypothesis"))
        checks.append(_nonzero("a_mu^2 + a_{n+1}^2 c_mu^2 != 0", am**2 + p**2 * cm**2, "structural"))
    elif th == "T22":
        checks += _k_checks(tp)
        checks.append(_either("a_{n+1}^2 = +-a_{n+2}^2", p**2, (q**2, -(q**2)), "hypothesis"))
        checks.append(_eq("a_{n+1}^2 = a_{n+2}^2", p**2, q**2, "derived"))
        checks.append(_eq("sum a_j b_j = 0", S, 0, "derived"))
        checks += _swap_block(tp, p, q)
    elif th == "T23":
        checks += _k_checks(tp)
        checks += _nu_check(tp)
        if tp.nu is not None:
            sg = (-1) ** tp.nu
            checks.append(_nonzero("a_{n+1} - (-1)^nu a_{n+2} != 0", p - sg * q, "hypothesis"))
            checks.append(_eq("sum a_j b_j = i(a_{n+1} - (-1)^nu a_{n+2})", S, 1j * (p - sg * q), "hypothesis"))
            checks += _j3_block(tp, -sg)
    elif th == "T24":
        checks += _k_checks(tp)
        checks += _nu_check(tp)
        if tp.nu is not None:
            sg = (-1) ** tp.nu
            checks.append(_eq("a_{n+1} = (-1)^nu a_{n+2}", p, sg * q, "hypothesis"))
            checks.append(_eq("sum a_j b_j = 0", S, 0, "hypothesis"))
            checks += _j3_block(tp, -sg)
    checks += _homogeneous_checks(tp)
    return checks


def _t12_block(tp: TheoremParams) -> list[ConstraintCheck]:
    s = tp.system
    K1, K2, K3, K4 = tp.K
    Lc, A, B = tp.Lc(), tp.A, tp.B
    bm = tp.b[s.mu - 1]
    if bm == 0:
        return []
    beta = s.a3 / (s.a1 * bm)
    return [
        _eq("exp(2 Lc) = (a3/(a1 b_mu))^2", _exp(2 * Lc), beta**2, "display"),
        _eq("exp(-2 Lc) = (a3/(a1 b_mu))^2", _exp(-2 * Lc), beta**2, "display"),
        _eq("exp(2A + 2B) = a3^2 K2 K4/(a1^2 b_mu^2 K1 K3)", _exp(2 * A + 2 * B), beta**2 * K2 * K4 / (K1 * K3), "display"),
        _eq("exp(-Lc + A + B) = i a3 K4/(a1 b_mu K1)", _exp(-Lc + A + B), 1j * beta * K4 / K1, "display"),
        _eq("exp(Lc - A - B) = i a3 K3/(a1 b_mu K2)", _exp(Lc - A - B), 1j * beta * K3 / K2, "display"),
        _eq("exp(Lc + A + B) = -i a3 K2/(a1 b_mu K3)", _exp(Lc + A + B), -1j * beta * K2 / K3, "display"),
        _eq("exp(-Lc - A - B) = -i a3 K1/(a1 b_mu K4)", _exp(-Lc - A - B), -1j * beta * K1 / K4, "display"),
    ]


# ---------------------------------------------------------------------------
# auxiliary pairs


class ConditionError(ValueError):
    def __init__(self, message: str, defect=None):
        super().__init__(message)
        self.defect = defect


class HomogeneousError(ValueError):
    def __init__(self, message: str, lhs: complex, rhs: complex):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


@dataclass(frozen=True)
class BlockSolution:
    """Solution of ``[[p, qE], [qE, p]] x = r`` for one exponential."""

    alpha: tuple[complex, complex]
    singular: bool
    consistent: bool
    null_vector: tuple[complex, complex] | None
    defect: tuple[complex, complex]

    @property
    def family(self) -> str | None:
        if not (self.singular and self.consistent) or self.null_vector is None:
            return None
        a, v = self.alpha, self.null_vector
        return f"({a[0]:.6g}, {a[1]:.6g}) + t*({v[0]:.6g}, {v[1]:.6g})"


def solve_exponential_block(p: complex, q: complex, E: complex, r1: complex, r2: complex) -> BlockSolution:
    M = np.array([[p, q * E], [q * E, p]], dtype=np.complex128)
    rhs = np.array([r1, r2], dtype=np.complex128)
    size = max(1.0, abs(p) ** 2, abs(q * E) ** 2)
    det = p * p - (q * E) ** 2
    singular = abs(det) <= SINGULAR_TOL * size
    if singular:
        x, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        _, _, vh = np.linalg.svd(M)
        null = vh[-1].conj()
        null_vec = (complex(null[0]), complex(null[1]))
    else:
        x = np.linalg.solve(M, rhs)
        null_vec = None
    defect = M @ x - rhs
    consistent = float(np.max(np.abs(defect))) <= CHECK_TOL * (1.0 + float(np.max(np.abs(rhs))))
    return BlockSolution((complex(x[0]), complex(x[1])), bool(singular), consistent, null_vec, (complex(defect[0]), complex(defect[1])))


@dataclass
class ConditionSolution:
    first: ExpPoly
    second: ExpPoly
    certificate: tuple[ExpPoly, ExpPoly]
    blocks: list[dict] = field(default_factory=list)
    secular: bool = False

    @property
    def certified(self) -> bool:
        return self.certificate[0].is_zero() and self.certificate[1].is_zero()


def shift_identities(g1: ExpPoly, g2: ExpPoly, p: complex, q: complex, c) -> tuple[ExpPoly, ExpPoly]:
    """``(p g1 + q g2(z+c), p g2 + q g1(z+c))``."""
    return g1 * p + shift(g2, c) * q, g2 * p + shift(g1, c) * q


def _exponent_groups(rhs1: ExpPoly, rhs2: ExpPoly):
    groups: list[list] = []
    for which, f in ((0, rhs1), (1, rhs2)):
        for t in f.terms:
            if not t.front.is_constant():
                raise ConditionError("right-hand sides must have constant fronts")
            for g in groups:
                if g[0].close_to(t.exponent, TAU_EXP):
                    g[1 + which] += t.front.constant_term
                    break
            else:
                row = [t.exponent, 0j, 0j]
                row[1 + which] = t.front.constant_term
                groups.append(row)
    return groups


def solve_shift_system(p: complex, q: complex, c, rhs1: ExpPoly, rhs2: ExpPoly, secular: LinearForm | None = None) -> ConditionSolution:
    """Solve ``p g1 + q g2(z+c) = rhs1``, ``p g2 + q g1(z+c) = rhs2`` over ``alpha*exp(M)``.

    Each exponential is an independent 2x2 block.  When a block is singular
    and inconsistent, ``(alpha + alpha' * ell) * exp(M)`` is tried with the
    linear form ``secular = ell`` (requires ``ell(c) != 0``).
    """
    dim = rhs1.dim
    c = tuple(complex(v) for v in c)
    g1 = ExpPoly.zero(dim)
    g2 = ExpPoly.zero(dim)
    blocks = []
    used_secular = False
    for M, r1, r2 in _exponent_groups(rhs1, rhs2):
        drift = M.shift(c) - M
        if not drift.is_constant():
            raise ConditionError("exponent is not shift compatible: M(z+c) - M(z) is not constant")
        E = cmath.exp(drift.constant_term)
        sol = solve_exponential_block(p, q, E, r1, r2)
        record = {"exponent": M, "E": E, "singular": sol.singular, "consistent": sol.consistent, "family": sol.family}
        if sol.consistent:
            g1 = g1 + ExpPoly.exp(M, sol.alpha[0])
            g2 = g2 + ExpPoly.exp(M, sol.alpha[1])
            blocks.append(record)
            continue
        delta = secular(c) if secular is not None else 0j
        if secular is None or abs(delta) <= CHECK_TOL:
            raise ConditionError("singular block with inconsistent right-hand side", sol.defect)
        qE = q * E
        big = np.array(
            [[p, qE, 0, qE * delta], [qE, p, qE * delta, 0], [0, 0, p, qE], [0, 0, qE, p]],
            dtype=np.complex128,
        )
        rhs = np.array([r1, r2, 0, 0], dtype=np.complex128)
        x, *_ = np.linalg.lstsq(big, rhs, rcond=None)
        defect = big @ x - rhs
        if float(np.max(np.abs(defect))) > CHECK_TOL * (1.0 + max(abs(r1), abs(r2))):
            raise ConditionError("secular extension is also inconsistent", tuple(complex(d) for d in defect))
        ell = secular.as_polynomial()
        g1 = g1 + ExpPoly.exp(M, Polynomial.constant(dim, x[0]) + ell * complex(x[2]))
        g2 = g2 + ExpPoly.exp(M, Polynomial.constant(dim, x[1]) + ell * complex(x[3]))
        record["secular"] = (complex(x[2]), complex(x[3]))
        blocks.append(record)
        used_secular = True
    lhs1, lhs2 = shift_identities(g1, g2, p, q, c)
    return ConditionSolution(g1, g2, (lhs1 - rhs1, lhs2 - rhs2), blocks, used_secular)


def condition_rhs(tp: TheoremParams) -> tuple[ExpPoly, ExpPoly]:
    """Right-hand sides of the inhomogeneous auxiliary identities (zero if none)."""
    n = tp.system.n
    if tp.theorem not in ("T11", "T22", "T24"):
        return ExpPoly.zero(n), ExpPoly.zero(n)
    g = gamma_pair(tp.system)
    K1, K2, K3, K4 = tp.K
    P, Q = _exponents(tp)
    r1 = ExpPoly.exp(P, g.gamma1 * K1) + ExpPoly.exp(-P, g.gamma2 * K2)
    r2 = ExpPoly.exp(Q, g.gamma1 * K3) + ExpPoly.exp(-Q, g.gamma2 * K4)
    return r1, r2


def _secular_form(tp: TheoremParams) -> LinearForm | None:
    s = tp.system
    n, mu = s.n, s.mu
    if tp.kind == "A":
        best = max((k for k in range(1, n + 1) if k != mu), key=lambda k: abs(s.c[k - 1]), default=None)
        if best is None or s.c[best - 1] == 0:
            return None
        t = [0j] * n
        t[best - 1] = 1.0
        return LinearForm(t)
    forms = kernel_forms(s.a, mu)
    if not forms:
        return None
    return max(forms, key=lambda F: abs(F(s.c)))


def solve_condition(kind: str, tp: TheoremParams) -> ConditionSolution:
    """Solve the auxiliary identities of ``tp`` (kind ``"A"`` for E1, ``"B"`` for E4)."""
    if kind != tp.kind:
        raise ValueError(f"{tp.theorem} uses condition {tp.kind}, not {kind}")
    p, q = tp.pq
    rhs1, rhs2 = condition_rhs(tp)
    return solve_shift_system(p, q, tp.system.c, rhs1, rhs2, _secular_form(tp))


def homogeneous_pair(M: Sequence[complex] | LinearForm, tau: complex, p: complex, q: complex, c) -> tuple[ExpPoly, ExpPoly]:
    """``h1 = tau e^M``, ``h2 = -(p/(q e^{M(c)})) tau e^M``; needs ``e^{2M(c)} = (p/q)^2``."""
    form = M if isinstance(M, LinearForm) else LinearForm(M)
    if complex(tau) == 0:
        zero = ExpPoly.zero(form.dim)
        return zero, zero
    Mc = form(c)
    lhs = _exp(2 * Mc)
    rhs = (p / q) ** 2
    if not _close(lhs, rhs):
        raise HomogeneousError(f"exp(2 M(c)) = {lhs} differs from (p/q)^2 = {rhs}", lhs, rhs)
    poly = form.as_polynomial()
    h1 = ExpPoly.exp(poly, tau)
    h2 = ExpPoly.exp(poly, -(p / (q * cmath.exp(Mc))) * tau)
    return h1, h2


# ---------------------------------------------------------------------------
# constructors


class ConstructionError(RuntimeError):
    def __init__(self, message: str, checks=(), report: VerificationReport | None = None, pair=None):
        super().__init__(message)
        self.checks = list(checks)
        self.report = report
        self.pair = pair


def _exponents(tp: TheoremParams) -> tuple[Polynomial, Polynomial]:
    n = tp.system.n
    L = tp.L()
    psi = tp.psi if tp.kind == "A" else Polynomial.zero(n)
    A = Polynomial.constant(n, tp.A)
    B = Polynomial.constant(n, tp.B)
    if tp.theorem in ("T11", "T12", "T22"):
        return L + psi + A, -L - psi + B
    return L + psi + A, L + psi + B


def _main_parts(tp: TheoremParams) -> tuple[ExpPoly, ExpPoly]:
    s = tp.system
    n, mu = s.n, s.mu
    K1, K2, K3, K4 = tp.K
    p, q = tp.pq
    zmu = Polynomial.variable(n, mu)
    cm = s.c[mu - 1]
    e = ExpPoly.exp
    th = tp.theorem
    if th in ("T1", "T2"):
        lead = s.a1 if th == "T1" else s.a[mu - 1]
        alpha = 1 / cmath.sqrt(lead**2 + p**2 * cm**2)
        s1 = -1 if _close(p, q) else 1
        return ExpPoly.from_polynomial(zmu * (s1 * alpha)), ExpPoly.from_polynomial(zmu * alpha)
    P, Q = _exponents(tp)
    if th in ("T11", "T22", "T24"):
        lead = s.a1 if th == "T11" else s.a[mu - 1]
        front = ExpPoly.from_polynomial(zmu * (1 / (2 * lead)))
        return front * (e(P, K1) + e(-P, K2)), front * (e(Q, K3) + e(-Q, K4))
    if th in ("T12", "T13"):
        d = 2 * s.a1 * tp.b[mu - 1]
        f1 = e(P, K1 / d) + e(-P, -K2 / d)
        if th == "T12":
            return f1, e(Q, -K3 / d) + e(-Q, K4 / d)
        return f1, e(Q, K3 / d) + e(-Q, -K4 / d)
    S = sum((aj * bj for aj, bj in zip(s.a, tp.b)), 0j)
    return (e(P, K1) + e(-P, -K2)) * (1 / (2 * S)), (e(Q, K3) + e(-Q, -K4)) * (1 / (2 * S))


def _homogeneous_parts(tp: TheoremParams) -> tuple[ExpPoly, ExpPoly]:
    s = tp.system
    p, q = tp.pq
    h1 = ExpPoly.zero(s.n)
    h2 = ExpPoly.zero(s.n)
    for h in tp.homogeneous:
        x1, x2 = homogeneous_pair(h.M, h.tau, p, q, s.c)
        if tp.theorem in ("T1", "T2"):
            # these families ask for 2c-periodic parts; build h1 through the period check
            x1 = periodic_exp_poly([2 * v for v in s.c], [(LinearForm(h.M), h.tau)])
        h1 = h1 + x1
        h2 = h2 + x2
    return h1, h2


def construct_solution(
    tp: TheoremParams,
    samples: int = DEFAULT_SAMPLES,
    radius: float = DEFAULT_RADIUS,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> tuple[ExpPoly, ExpPoly, VerificationReport]:
    """Build ``(f1, f2)`` for ``tp`` and verify it.

    Raises :class:`ConstructionError` when a constraint fails, an auxiliary
    identity cannot be solved, or the verifier does not return VERIFIED (the
    report and pair ride along on the exception).
    """
    checks = validate_constraints(tp)
    failed = [ck for ck in checks if not ck.passed]
    if failed:
        labels = "; ".join(ck.label for ck in failed)
        raise ConstructionError(f"constraint validation failed: {labels}", checks=failed)
    f1, f2 = _main_parts(tp)
    notes = []
    aux1 = ExpPoly.zero(tp.system.n)
    aux2 = ExpPoly.zero(tp.system.n)
    if tp.theorem in ("T11", "T22", "T24"):
        try:
            sol = solve_condition(tp.kind, tp)
        except ConditionError as exc:
            raise ConstructionError(f"auxiliary identities are unsolvable: {exc}", checks=checks) from exc
        if not sol.certified:
            raise ConstructionError("auxiliary solution failed its certificate", checks=checks)
        aux1, aux2 = sol.first, sol.second
        if sol.secular:
            notes.append("auxiliary pair uses a secular (linear times exponential) term")
    h1, h2 = _homogeneous_parts(tp)
    aux1, aux2 = aux1 + h1, aux2 + h2
    for name, part in (("first", aux1), ("second", aux2)):
        if part.is_polynomial():
            notes.append(f"{name} auxiliary function is not transcendental")
    f1, f2 = f1 + aux1, f2 + aux2
    report = verify(f1, f2, tp.system, samples=samples, radius=radius, seed=seed, tol=tol)
    report.notes.extend(notes)
    if not report.ok:
        raise ConstructionError(f"constructed pair is {report.verdict.value}", checks=checks, report=report, pair=(f1, f2))
    return f1, f2, report
