"""Seeded random parameter bundles that satisfy each family's constraints.

Draw order: coefficients first, then ``b`` so that the exponential identities
on ``L(c)`` hold, then ``A`` and ``B`` from the ``exp(A +- B)`` relations via
principal logarithms, then ``K1 K2 = 1 = K3 K4``, then auxiliary parts.
Magnitudes stay moderate so that samples of radius 2 remain far from overflow.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .algebra import Polynomial
from .systems import E1Params, E4Params
from .theorems import THEOREMS, HomogeneousSpec, TheoremParams

PI_I = 1j * math.pi
MAX_B = 4.0


class _Redraw(Exception):
    pass


def _rc(rng: np.random.Generator, lo: float = 0.5, hi: float = 1.5) -> complex:
    return complex(rng.uniform(lo, hi) * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))


def _vec(rng, n, lo=0.5, hi=1.5) -> list[complex]:
    return [_rc(rng, lo, hi) for _ in range(n)]


def _hit_target(b: list[complex], c, target: complex, free: list[int]) -> list[complex]:
    """Adjust one coordinate of ``b`` (0-based, from ``free``) so that ``b . c = target``."""
    j = max(free, key=lambda k: abs(c[k]))
    rest = sum(b[k] * c[k] for k in range(len(b)) if k != j)
    b = list(b)
    b[j] = (target - rest) / c[j]
    return b


def _two_constraints(rng, a, c, s_target: complex, l_target: complex) -> list[complex]:
    """``b`` with ``a . b = s_target`` and ``c . b = l_target`` (least-norm correction)."""
    a = np.asarray(a, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    G = np.array([[a @ a.conj(), a @ c.conj()], [c @ a.conj(), c @ c.conj()]])
    b = None
    for _ in range(20):
        b0 = np.array(_vec(rng, len(a), 0.2, 0.6))
        rhs = np.array([s_target - a @ b0, l_target - c @ b0])
        x, y = np.linalg.solve(G, rhs)
        b = b0 + x * a.conj() + y * c.conj()
        if np.max(np.abs(b)) <= MAX_B:
            return list(b)
    raise _Redraw()


def _kind_a_direction(rng, c, mu) -> list[complex] | None:
    n = len(c)
    for _ in range(20):
        w = _vec(rng, n)
        w[mu - 1] = 0j
        dot = sum(x * y for x, y in zip(w, c))
        if abs(dot) > 0.4:
            return [x / dot for x in w]
    return None


def _kind_b_direction(rng, a, c) -> list[complex] | None:
    a = np.asarray(a, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    for _ in range(20):
        w = np.array(_vec(rng, len(a)))
        r = w - (a @ w) / (a @ a.conj()) * a.conj()
        dot = r @ c
        if abs(dot) > 0.4:
            return list(r / dot)
    return None


def _homogeneous(rng, kind: str, system, p: complex, q: complex, count: int):
    """Terms ``tau exp(lam * r.z)`` with ``r.c = 1`` and ``exp(2 lam) = (p/q)^2``."""
    specs = []
    for _ in range(count):
        if kind == "A":
            r = _kind_a_direction(rng, system.c, system.mu)
        else:
            r = _kind_b_direction(rng, system.a, system.c)
        if r is None:
            continue
        lam = cmath.log(p / q) + PI_I * int(rng.choice([-1, 1]))
        if abs(lam) < 1e-9:
            lam = PI_I
        M = [lam * x for x in r]
        if max(abs(v) for v in M) > 4.0:
            continue
        specs.append(HomogeneousSpec(M, _rc(rng, 0.3, 1.0)))
    return tuple(specs)


def _psi(rng, c, mu) -> Polynomial | None:
    """``kappa * (t.z)^2`` with ``t.c = 0`` and ``t_mu = 0``, when there is room."""
    n = len(c)
    free = [k for k in range(n) if k != mu - 1]
    if len(free) < 2 or rng.uniform() < 0.4:
        return None
    j1, j2 = rng.choice(free, size=2, replace=False)
    t = [0j] * n
    t[j1] = c[j2]
    t[j2] = -c[j1]
    form = Polynomial.linear(t)
    return form * form * _rc(rng, 0.05, 0.15)


def _ks(rng) -> tuple[complex, complex, complex, complex]:
    K1 = _rc(rng, 0.7, 1.4)
    K3 = _rc(rng, 0.7, 1.4)
    return (K1, 1 / K1, K3, 1 / K3)


def _e1_base(rng):
    n = int(rng.integers(2, 4))
    mu = int(rng.integers(1, n + 1))
    c = _vec(rng, n)
    return n, mu, c


def _e4_base(rng):
    n = int(rng.integers(2, 4))
    mu = int(rng.integers(1, n + 1))
    c = _vec(rng, n)
    a = _vec(rng, n)
    return n, mu, c, a


def random_bundle(theorem: str, rng: np.random.Generator) -> TheoremParams:
    """One random bundle for ``theorem`` satisfying its constraints."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    # a, c nearly parallel forces a huge b; draw the whole bundle again
    for _ in range(100):
        try:
            return _DRAW[theorem](rng)
        except _Redraw:
            continue
    raise RuntimeError(f"could not draw a well-conditioned bundle for {theorem}")


def _t1(rng):
    n, mu, c = _e1_base(rng)
    a1, a2, a4 = _rc(rng), _rc(rng), _rc(rng)
    a3 = a2 * rng.choice([-1, 1])
    s = E1Params(n, c, a1, a2, a3, a4, mu)
    return TheoremParams("T1", s, homogeneous=_homogeneous(rng, "A", s, a2, a3, int(rng.integers(0, 3))))


def _t11(rng):
    n, mu, c = _e1_base(rng)
    a1, a2, a4 = _rc(rng), _rc(rng), _rc(rng)
    a3 = a2 * rng.choice([-1, 1])
    free = [k for k in range(n) if k != mu - 1]
    b = _vec(rng, n, 0.3, 1.0)
    b = _hit_target([0j if k == mu - 1 else b[k] for k in range(n)], c, PI_I * int(rng.integers(-1, 2)), free)
    b[mu - 1] = _rc(rng)  # ignored by this family
    K = _ks(rng)
    s = E1Params(n, c, a1, a2, a3, a4, mu)
    Lc = sum(b[k] * c[k] for k in free)
    A = _rc(rng, 0.1, 0.6)
    B = cmath.log(-a3 * K[1] / (a2 * K[2])) - Lc - A
    return TheoremParams("T11", s, b, A, B, K, psi1=_psi(rng, c, mu), homogeneous=_homogeneous(rng, "A", s, a2, a3, int(rng.integers(0, 2))))


def _t12(rng):
    n, mu, c = _e1_base(rng)
    a1, a4 = _rc(rng), _rc(rng)
    bm = _rc(rng, 0.6, 1.2)
    a2 = -a4 * bm**2
    a3 = 1j * a1 * bm * rng.choice([-1, 1])
    free = [k for k in range(n) if k != mu - 1]
    b = _vec(rng, n, 0.3, 1.0)
    b[mu - 1] = bm
    b = _hit_target(b, c, PI_I * (int(rng.integers(-1, 1)) + 0.5), free)
    K = _ks(rng)
    s = E1Params(n, c, a1, a2, a3, a4, mu)
    Lc = sum(x * y for x, y in zip(b, c))
    beta = a3 / (a1 * bm)
    A = _rc(rng, 0.1, 0.6)
    B = cmath.log(1j * beta * K[3] * cmath.exp(Lc) / K[0]) - A
    return TheoremParams("T12", s, b, A, B, K, psi1=_psi(rng, c, mu), homogeneous=_homogeneous(rng, "A", s, a2, a3, int(rng.integers(0, 2))))


def _t13(rng):
    for _ in range(50):
        n, mu, c = _e1_base(rng)
        nu = int(rng.integers(1, 3))
        a1, a3, a4 = _rc(rng), _rc(rng), _rc(rng)
        bm = _rc(rng, 0.6, 1.2)
        a2 = (-1) ** nu * a3 - 1j * a1 * bm - a4 * bm**2
        if abs(a2) > 0.3:
            break
    free = [k for k in range(n) if k != mu - 1]
    b = _vec(rng, n, 0.3, 1.0)
    b[mu - 1] = bm
    b = _hit_target(b, c, PI_I * int(rng.integers(-1, 2)), free)
    K = _ks(rng)
    s = E1Params(n, c, a1, a2, a3, a4, mu)
    Lc = sum(x * y for x, y in zip(b, c))
    A = _rc(rng, 0.1, 0.6)
    B = A + cmath.log((-1) ** (nu + 1) * K[0] * cmath.exp(-Lc) / K[2])
    return TheoremParams("T13", s, b, A, B, K, nu=nu, psi1=_psi(rng, c, mu), homogeneous=_homogeneous(rng, "A", s, a2, a3, int(rng.integers(0, 2))))


def _t2(rng):
    n, mu, c, a = _e4_base(rng)
    p = _rc(rng)
    q = p * rng.choice([-1, 1])
    s = E4Params(n, c, a, p, q, mu)
    return TheoremParams("T2", s, homogeneous=_homogeneous(rng, "B", s, p, q, int(rng.integers(0, 3))))


def _t22(rng):
    n, mu, c, a = _e4_base(rng)
    p = _rc(rng)
    q = p * rng.choice([-1, 1])
    b = _two_constraints(rng, a, c, 0j, PI_I * int(rng.integers(-1, 2)))
    K = _ks(rng)
    s = E4Params(n, c, a, p, q, mu)
    Lc = sum(x * y for x, y in zip(b, c))
    A = _rc(rng, 0.1, 0.6)
    B = cmath.log(-q * K[1] / (p * K[2])) - Lc - A
    return TheoremParams("T22", s, b, A, B, K, homogeneous=_homogeneous(rng, "B", s, p, q, int(rng.integers(0, 2))))


def _j3(rng, nu, K, Lc):
    A = _rc(rng, 0.1, 0.6)
    B = A + cmath.log((-1) ** (nu + 1) * K[0] * cmath.exp(-Lc) / K[2])
    return A, B


def _t23(rng):
    for _ in range(50):
        n, mu, c, a = _e4_base(rng)
        nu = int(rng.integers(1, 3))
        p, q = _rc(rng), _rc(rng)
        if abs(p - (-1) ** nu * q) > 0.3:
            break
    S = 1j * (p - (-1) ** nu * q)
    b = _two_constraints(rng, a, c, S, PI_I * int(rng.integers(-1, 2)))
    K = _ks(rng)
    s = E4Params(n, c, a, p, q, mu)
    A, B = _j3(rng, nu, K, sum(x * y for x, y in zip(b, c)))
    return TheoremParams("T23", s, b, A, B, K, nu=nu, homogeneous=_homogeneous(rng, "B", s, p, q, int(rng.integers(0, 2))))


def _t24(rng):
    n, mu, c, a = _e4_base(rng)
    nu = int(rng.integers(1, 3))
    q = _rc(rng)
    p = (-1) ** nu * q
    b = _two_constraints(rng, a, c, 0j, PI_I * int(rng.integers(-1, 2)))
    K = _ks(rng)
    s = E4Params(n, c, a, p, q, mu)
    A, B = _j3(rng, nu, K, sum(x * y for x, y in zip(b, c)))
    return TheoremParams("T24", s, b, A, B, K, nu=nu, homogeneous=_homogeneous(rng, "B", s, p, q, int(rng.integers(0, 2))))


_DRAW = {"T1": _t1, "T11": _t11, "T12": _t12, "T13": _t13, "T2": _t2, "T22": _t22, "T23": _t23, "T24": _t24}
