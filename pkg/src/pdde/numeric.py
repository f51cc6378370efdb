"""Numeric cross-check: sampling and derivative-free-of-algebra evaluation.

Derivatives are recovered from function values only, via Cauchy integrals on
small circles (or polydiscs) discretised with the FFT.  Nothing here uses the
symbolic derivative or shift code, so agreement with the symbolic residual is
a genuine second opinion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import ExpPoly, evaluate_many

N_CIRCLE = 24
N_POLYDISC = 16


def sample_points(dim: int, count: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Coordinates with modulus uniform in [0, radius] and angle uniform in [0, 2pi)."""
    mod = rng.uniform(0.0, radius, size=(count, dim))
    ang = rng.uniform(0.0, 2 * math.pi, size=(count, dim))
    return mod * np.exp(1j * ang)


def growth_bound(f: ExpPoly, direction: np.ndarray, reach: float) -> float:
    """Upper bound for |d/dt exponent(z + t*direction)| when |z_j| <= reach."""
    dnorm = float(np.max(np.abs(direction))) if direction.size else 0.0
    beta = 0.0
    for t in f.terms:
        b = 0.0
        for m, c in t.exponent.items():
            d = sum(m)
            if d:
                b += abs(c) * d * reach ** (d - 1) * dnorm * len(direction)
        beta = max(beta, b)
    return beta


def _contour_radius(fs: Sequence[ExpPoly], direction: np.ndarray, points: np.ndarray) -> float:
    reach = float(np.max(np.abs(points))) + 1.0 if points.size else 1.0
    beta = max((growth_bound(f, direction, reach) for f in fs), default=0.0)
    return 0.5 / max(1.0, beta)


@dataclass
class DirectionalJet:
    """Values ``d^m/dt^m f(z + t*dir)`` at ``t = 0`` and their rounding scales."""

    values: np.ndarray  # (orders + 1, P)
    scales: np.ndarray  # (orders + 1, P)
    radius: float


def directional_jet(f: ExpPoly, points: np.ndarray, direction: Sequence[complex], orders: int, radius: float | None = None, n_nodes: int = N_CIRCLE) -> DirectionalJet:
    direction = np.asarray(direction, dtype=np.complex128)
    r = radius if radius is not None else _contour_radius([f], direction, points)
    omega = np.exp(2j * math.pi * np.arange(n_nodes) / n_nodes)
    # (P, N, n) points on the circles
    ring = points[:, None, :] + r * omega[None, :, None] * direction[None, None, :]
    vals = evaluate_many(f, ring.reshape(-1, points.shape[1])).reshape(points.shape[0], n_nodes)
    coeffs = np.fft.fft(vals, axis=1) / n_nodes
    peak = np.max(np.abs(vals), axis=1)
    out = np.empty((orders + 1, points.shape[0]), dtype=np.complex128)
    scales = np.empty((orders + 1, points.shape[0]))
    for m in range(orders + 1):
        out[m] = coeffs[:, m] * math.factorial(m) / r**m
        scales[m] = peak * math.factorial(m) / r**m
    return DirectionalJet(out, scales, r)


def mixed_partials(f: ExpPoly, points: np.ndarray, indices: Sequence[Sequence[int]], n_nodes: int = N_POLYDISC):
    """Mixed partials ``d^I f`` for each multi-index via a polydisc FFT.

    Returns ``(values, scales)`` with one row per multi-index.
    """
    dim = points.shape[1]
    support = sorted({j for I in indices for j, e in enumerate(I) if e})
    top = max((sum(I) for I in indices), default=0)
    n_nodes = max(n_nodes, top + 12)
    count = points.shape[0]
    if not support:
        v = evaluate_many(f, points)
        return np.tile(v, (len(indices), 1)), np.tile(np.abs(v), (len(indices), 1))
    reach = float(np.max(np.abs(points))) + 1.0
    r = 1.0
    for j in support:
        e = np.zeros(dim, dtype=np.complex128)
        e[j] = 1.0
        r = min(r, 0.5 / max(1.0, growth_bound(f, e, reach)))
    k = len(support)
    omega = np.exp(2j * math.pi * np.arange(n_nodes) / n_nodes)
    grids = np.meshgrid(*([omega] * k), indexing="ij")
    offsets = np.zeros((n_nodes**k, dim), dtype=np.complex128)
    for axis, j in enumerate(support):
        offsets[:, j] = r * grids[axis].ravel()
    cloud = points[:, None, :] + offsets[None, :, :]
    vals = evaluate_many(f, cloud.reshape(-1, dim)).reshape((count,) + (n_nodes,) * k)
    coeffs = np.fft.fftn(vals, axes=tuple(range(1, k + 1))) / n_nodes**k
    peak = np.max(np.abs(vals.reshape(count, -1)), axis=1)
    out = np.empty((len(indices), count), dtype=np.complex128)
    scales = np.empty((len(indices), count))
    for row, I in enumerate(indices):
        sel = tuple(I[j] for j in support)
        fact = math.prod(math.factorial(e) for e in I)
        out[row] = coeffs[(slice(None),) + sel] * fact / r ** sum(I)
        scales[row] = peak * fact / r ** sum(I)
    return out, scales


@dataclass
class NumericResidual:
    """Per-point raw residuals and their normalisation for one equation."""

    raw: np.ndarray
    scale: np.ndarray

    @property
    def normalized(self) -> np.ndarray:
        return np.abs(self.raw) / self.scale


def _squared_residual(x, x_scale, y_parts, y_scales, rhs=1.0) -> NumericResidual:
    y = sum(y_parts)
    raw = x * x + y * y - rhs
    ymag = np.max(np.stack([np.abs(p) for p in y_parts] + list(y_scales)), axis=0)
    xmag = np.maximum(np.abs(x), x_scale)
    return NumericResidual(raw, 1.0 + xmag**2 + ymag**2)


def e1_residuals(f1: ExpPoly, f2: ExpPoly, p, points: np.ndarray) -> tuple[NumericResidual, NumericResidual]:
    c = np.asarray(p.c, dtype=np.complex128)
    e = np.zeros(p.n, dtype=np.complex128)
    e[p.mu - 1] = 1.0
    eps = 2.2e-16
    jets = {}
    r = _contour_radius([f1, f2], e, points)
    for name, f in (("f1", f1), ("f2", f2)):
        jets[name] = directional_jet(f, points, e, 2, radius=r)
    shifted = {"f1": evaluate_many(f1, points + c), "f2": evaluate_many(f2, points + c)}
    out = []
    for j, k in (("f1", "f2"), ("f2", "f1")):
        jet = jets[j]
        x = p.a1 * jet.values[1]
        parts = [p.a2 * jet.values[0], p.a3 * shifted[k], p.a4 * jet.values[2]]
        scales = [eps * abs(p.a4) * jet.scales[2] * 1e3]
        out.append(_squared_residual(x, eps * abs(p.a1) * jet.scales[1] * 1e3, parts, scales))
    return out[0], out[1]


def e4_residuals(f1: ExpPoly, f2: ExpPoly, p, points: np.ndarray) -> tuple[NumericResidual, NumericResidual]:
    c = np.asarray(p.c, dtype=np.complex128)
    a = np.asarray(p.a, dtype=np.complex128)
    eps = 2.2e-16
    r = _contour_radius([f1, f2], a, points)
    jets = {"f1": directional_jet(f1, points, a, 1, radius=r), "f2": directional_jet(f2, points, a, 1, radius=r)}
    shifted = {"f1": evaluate_many(f1, points + c), "f2": evaluate_many(f2, points + c)}
    out = []
    for j, k in (("f1", "f2"), ("f2", "f1")):
        jet = jets[j]
        x = jet.values[1]
        parts = [p.an1 * jet.values[0], p.an2 * shifted[k]]
        out.append(_squared_residual(x, eps * jet.scales[1] * 1e3, parts, []))
    return out[0], out[1]


def fg_residuals(f1: ExpPoly, f2: ExpPoly, p, points: np.ndarray) -> tuple[NumericResidual, NumericResidual]:
    c = np.asarray(p.c, dtype=np.complex128)
    eps = 2.2e-16
    shifted = {"f1": evaluate_many(f1, points + c), "f2": evaluate_many(f2, points + c)}
    own = {"f1": f1, "f2": f2}
    out = []
    for j, k, spec, m, nexp, P, Q in (
        ("f1", "f2", p.F1, p.m1, p.n1, p.P1, p.Q1),
        ("f2", "f1", p.F2, p.m2, p.n2, p.P2, p.Q2),
    ):
        indices = [I for I, _ in spec.entries]
        derivs, dscales = mixed_partials(own[j], points, indices)
        F = np.zeros(points.shape[0], dtype=np.complex128)
        Fscale = np.zeros(points.shape[0])
        for row, (_, coef) in enumerate(spec.entries):
            a = evaluate_many(coef, points)
            F += a * derivs[row]
            Fscale = np.maximum(Fscale, np.abs(a * derivs[row]))
            Fscale = np.maximum(Fscale, eps * 1e3 * np.abs(a) * dscales[row])
        first = F**m
        second = evaluate_many(P, points) * shifted[k] ** nexp
        q = evaluate_many(Q, points)
        raw = first + second - q
        scale = 1.0 + np.max(np.stack([Fscale**m, np.abs(second), np.abs(q)]), axis=0)
        out.append(NumericResidual(raw, scale))
    return out[0], out[1]
