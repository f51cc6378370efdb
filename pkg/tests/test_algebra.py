import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdde.algebra import (
    DimensionError,
    EvaluationOverflow,
    ExpPoly,
    NonFiniteError,
    Polynomial,
    canonicalize,
    derivative,
    equal,
    evaluate,
    evaluate_many,
    is_identically_zero,
    multiply,
    partial_derivative,
    power,
    shift,
)
from pdde.fixtures import example1_pair
from pdde.generators import random_exppoly

seeds = st.integers(0, 2**32 - 1)
PI_I = math.pi * 1j
C1 = (PI_I, -PI_I, PI_I / 2)


def lin(*coefs):
    return Polynomial.linear(coefs)


def L3():
    return lin(3, -3, 3)


def test_cancellation_gives_zero():
    z1 = lin(1)
    f = ExpPoly.exp(z1) + ExpPoly.exp(z1, -1)
    assert f.is_zero() and len(f) == 0


def test_period_constant_merges():
    z1 = lin(1)
    f = ExpPoly.exp(z1 + 2 * PI_I * 0) + ExpPoly.exp(z1)
    assert equal(f, ExpPoly.exp(z1, 2))


def test_exponent_constant_folds_into_front():
    z1 = lin(1)
    f = ExpPoly.exp(z1 + math.log(2)) + ExpPoly.exp(z1)
    assert len(f) == 1
    assert abs(f.terms[0].front.constant_term - 3) < 1e-15
    assert f.terms[0].exponent == z1


def test_exp_products():
    L = L3()
    assert equal(ExpPoly.exp(L) * ExpPoly.exp(-L), ExpPoly.constant(3, 1))
    sq = power(ExpPoly.exp(L) - ExpPoly.exp(-L), 2)
    assert equal(sq, ExpPoly.exp(2 * L) - 2 + ExpPoly.exp(-2 * L))


def test_front_product():
    z1 = ExpPoly.variable(2, 1)
    z2p = Polynomial.variable(2, 2)
    got = multiply(z1 * ExpPoly.exp(z2p), ExpPoly.from_polynomial(z2p))
    want = ExpPoly.exp(z2p, Polynomial.variable(2, 1) * z2p)
    assert equal(got, want)


def test_partials():
    z1, z2 = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
    assert partial_derivative(ExpPoly.from_polynomial(z1**2 * z2), 1) == ExpPoly.from_polynomial(2 * z1 * z2)
    L = L3()
    assert equal(partial_derivative(ExpPoly.exp(L), 1), ExpPoly.exp(L, 3))


def test_partial_of_example1_f1():
    f1, _ = example1_pair()
    L = L3()
    assert equal(partial_derivative(f1, 1), ExpPoly.exp(L, 0.5) - ExpPoly.exp(-L, 0.5))


def test_shifts():
    z1 = Polynomial.variable(2, 1)
    assert equal(shift(ExpPoly.from_polynomial(z1**2), (1, 0)), ExpPoly.from_polynomial(z1**2 + 2 * z1 + 1))
    L = L3()
    got = shift(ExpPoly.exp(L), C1)
    assert equal(got, ExpPoly.exp(L, -1j))
    assert equal(shift(ExpPoly.constant(3, 5), (1 + 2j, -3, 0.5)), ExpPoly.constant(3, 5))


def test_evaluations():
    assert evaluate(ExpPoly.exp(lin(1)), (0,)) == 1
    f = ExpPoly.exp(lin(0, 1), 2 * Polynomial.variable(2, 1))
    assert abs(evaluate(f, (3, 0)) - 6) < 1e-14
    f1, _ = example1_pair()
    assert abs(evaluate(f1, (0, 0, 0)) - 4 / 3) < 1e-14


def test_zero_tests():
    L, A = L3(), 0.7 - 0.2j
    assert is_identically_zero(ExpPoly.exp(L + A) - ExpPoly.exp(L) * cmath.exp(A))
    assert not is_identically_zero(ExpPoly.exp(lin(1, 0)) - ExpPoly.exp(lin(0, 1)))


def test_mixed_derivative():
    z = [Polynomial.variable(2, k) for k in (1, 2)]
    f = ExpPoly.exp(z[0] * z[1])
    got = derivative(f, (1, 1))
    assert equal(got, ExpPoly.exp(z[0] * z[1], 1 + z[0] * z[1]))


def test_errors():
    with pytest.raises(DimensionError):
        ExpPoly.variable(2, 1) + ExpPoly.variable(3, 1)
    with pytest.raises(NonFiniteError):
        ExpPoly.constant(1, complex("nan"))
    with pytest.raises(EvaluationOverflow):
        evaluate(ExpPoly.exp(lin(1)), (800,))
    with pytest.raises(IndexError):
        partial_derivative(ExpPoly.variable(2, 1), 3)


def test_negative_zero_normalised():
    p = Polynomial.constant(1, complex(-0.0, -0.0))
    assert p.is_zero()
    q = Polynomial.constant(1, complex(-0.0, 1.0))
    assert math.copysign(1, q.constant_term.real) == 1.0


def _gen(seed, dim=None):
    return random_exppoly(np.random.default_rng(seed), dim=dim)


@given(seeds, seeds, st.integers(1, 4))
def test_product_rule(sa, sb, dim):
    f, g = _gen(sa, dim), _gen(sb, dim)
    for k in range(1, dim + 1):
        lhs = partial_derivative(f * g, k)
        rhs = f * partial_derivative(g, k) + partial_derivative(f, k) * g
        assert equal(lhs, rhs)


@given(seeds, seeds, st.integers(1, 4))
def test_shift_is_multiplicative(sa, sb, dim):
    f, g = _gen(sa, dim), _gen(sb, dim)
    c = np.random.default_rng(sa ^ sb).uniform(-1, 1, size=(dim, 2)) @ np.array([1, 1j])
    assert equal(shift(f * g, c), shift(f, c) * shift(g, c))


@given(seeds)
def test_shift_commutes_with_evaluation(seed):
    rng = np.random.default_rng(seed)
    f = random_exppoly(rng)
    c = rng.uniform(-1, 1, f.dim) + 1j * rng.uniform(-1, 1, f.dim)
    pts = rng.uniform(-1, 1, (100, f.dim)) + 1j * rng.uniform(-1, 1, (100, f.dim))
    a = evaluate_many(shift(f, c), pts)
    b = evaluate_many(f, pts + c)
    assert np.all(np.abs(a - b) <= 1e-12 * (1 + np.abs(b)) * 10)


@given(seeds)
def test_canonicalisation_idempotent(seed):
    f = _gen(seed)
    g = canonicalize(f)
    assert g == f and canonicalize(g).terms == f.terms
    assert [t.exponent.sort_key() for t in f.terms] == sorted(t.exponent.sort_key() for t in f.terms)


@given(seeds)
def test_zero_test_sound(seed):
    rng = np.random.default_rng(seed)
    f = random_exppoly(rng)
    pts = rng.uniform(-1, 1, (200, f.dim)) + 1j * rng.uniform(-1, 1, (200, f.dim))
    vals = evaluate_many(f - f, pts)
    assert is_identically_zero(f - f) and np.all(np.abs(vals) < 1e-9)
    if not f.is_zero():
        vals = evaluate_many(f, pts)
        assert np.max(np.abs(vals)) > 1e-9


@given(seeds, st.integers(1, 4))
def test_ring_laws(seed, dim):
    rng = np.random.default_rng(seed)
    f, g, h = (random_exppoly(rng, dim=dim) for _ in range(3))
    assert equal((f + g) * h, f * h + g * h)
    assert equal((f * g) * h, f * (g * h))
    assert equal(f - g, -(g - f))
