"""Batch evaluation kernels for exponential polynomials.

An exponential polynomial is flattened into a monomial table: every row is
one monomial ``coef * prod(z**exps)`` tagged with the term it belongs to and
whether it contributes to that term's front or to its exponent.  The kernels
evaluate the table at many points at once and return, per point, the value
and the largest real part of any exponent (the caller turns that into an
overflow error).

Two interchangeable backends exist.  The numba one is used when numba is
importable and the environment variable ``PDDE_NUMBA`` is not set to a false
value (``0``, ``false``, ``no``, ``off``).  The numpy one is always present.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

_FALSEY = {"0", "false", "no", "off"}

ROLE_FRONT = 0
ROLE_EXPONENT = 1


def _eval_loop(points, exps, coefs, term_idx, role, n_terms):
    n_points, dim = points.shape
    n_monos = exps.shape[0]
    values = np.zeros(n_points, dtype=np.complex128)
    max_re = np.full(n_points, -np.inf)
    front = np.zeros(n_terms, dtype=np.complex128)
    expo = np.zeros(n_terms, dtype=np.complex128)
    for p in range(n_points):
        for t in range(n_terms):
            front[t] = 0.0
            expo[t] = 0.0
        for m in range(n_monos):
            v = coefs[m]
            for j in range(dim):
                z = points[p, j]
                for _ in range(exps[m, j]):
                    v = v * z
            if role[m] == 0:
                front[term_idx[m]] += v
            else:
                expo[term_idx[m]] += v
        acc = 0.0 + 0.0j
        top = -np.inf
        for t in range(n_terms):
            re = expo[t].real
            if re > top:
                top = re
            if re <= 700.0:
                acc += front[t] * np.exp(expo[t])
        values[p] = acc
        max_re[p] = top
    return values, max_re


def _eval_numpy(points, exps, coefs, term_idx, role, n_terms):
    n_points = points.shape[0]
    if exps.shape[0] == 0 or n_terms == 0:
        return np.zeros(n_points, dtype=np.complex128), np.full(n_points, -np.inf)
    # (P, M): value of every monomial at every point
    monos = np.prod(points[:, None, :] ** exps[None, :, :], axis=2) * coefs[None, :]
    onehot = np.zeros((exps.shape[0], n_terms), dtype=np.complex128)
    onehot[np.arange(exps.shape[0]), term_idx] = 1.0
    front = monos @ (onehot * (role == ROLE_FRONT)[:, None])
    expo = monos @ (onehot * (role == ROLE_EXPONENT)[:, None])
    max_re = expo.real.max(axis=1)
    safe = np.where(expo.real <= 700.0, expo, -np.inf)
    with np.errstate(over="ignore", invalid="ignore"):
        values = (front * np.exp(safe)).sum(axis=1)
    return values, max_re


if numba is not None:
    _eval_numba = numba.njit(cache=True, nogil=True)(_eval_loop)
else:  # pragma: no cover
    _eval_numba = None


def numba_available() -> bool:
    return _eval_numba is not None


def _default_backend() -> str:
    flag = os.environ.get("PDDE_NUMBA", "1").strip().lower()
    if flag in _FALSEY or not numba_available():
        return "numpy"
    return "numba"


_backend = _default_backend()


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Select ``"numba"`` or ``"numpy"`` for subsequent evaluations."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not numba_available():
        raise RuntimeError("numba is not importable")
    _backend = name


def evaluate_table(points, exps, coefs, term_idx, role, n_terms, backend=None):
    """Evaluate a flattened monomial table at ``points`` (shape ``(P, n)``)."""
    backend = backend or _backend
    points = np.ascontiguousarray(points, dtype=np.complex128)
    if backend == "numba":
        return _eval_numba(points, exps, coefs, term_idx, role, n_terms)
    return _eval_numpy(points, exps, coefs, term_idx, role, n_terms)
