import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdde.algebra import ExpPoly, Polynomial, equal, partial_derivative, shift
from pdde.analysis import (
    InvarianceError,
    LinearForm,
    PeriodError,
    directional_derivative,
    in_kernel_span,
    is_multiple_of_2pi_i,
    kernel_coordinates,
    kernel_forms,
    order_of_growth,
    periodic_exp_poly,
    principal_log,
    shift_invariant_form,
)
from pdde.fixtures import example1_g_direction, example1_pair
from pdde.generators import random_exppoly

seeds = st.integers(0, 2**32 - 1)
PI_I = math.pi * 1j
C1 = (PI_I, -PI_I, PI_I / 2)


def test_orders():
    z1 = Polynomial.variable(2, 1)
    z2 = Polynomial.variable(2, 2)
    assert order_of_growth(ExpPoly.from_polynomial(z1**3)) == 0
    assert order_of_growth(ExpPoly.exp(z1 * z2)) == 2
    f1, f2 = example1_pair()
    assert order_of_growth(f1) == 1 and order_of_growth(f2) == 1
    assert order_of_growth(ExpPoly.zero(2)) == 0


def test_kernel_forms_example():
    forms = kernel_forms((1, -2, 3, 7), 1)
    want = [(2, 1, 0, 0), (-3, 0, 1, 0), (-7, 0, 0, 1)]
    assert [f.coefficients for f in forms] == [tuple(complex(v) for v in w) for w in want]
    for f in forms:
        assert sum(a * t for a, t in zip((1, -2, 3, 7), f.coefficients)) == 0


def test_kernel_forms_mu_last():
    (form,) = kernel_forms((1, 1), 2)
    assert form.coefficients == (1, -1)


def test_kernel_forms_need_nonzero_lead():
    with pytest.raises(ValueError):
        kernel_forms((0, 1), 1)


def test_example2_direction_in_span():
    a = (1, -2, 3, 7)
    t = (-8, 1, 1, 1)
    assert in_kernel_span(t, a)
    coords, defect = kernel_coordinates(t, a, 1)
    assert abs(defect) < 1e-12
    rebuilt = sum((f.scaled(k) for f, k in zip(kernel_forms(a, 1), coords)), LinearForm([0] * 4))
    assert np.allclose(rebuilt.coefficients, t)
    assert not in_kernel_span((1, 0, 0, 0), a)


def test_shift_invariant_forms():
    assert shift_invariant_form((1, 1, 0), C1).coefficients == (1, 1, 0)
    with pytest.raises(InvarianceError) as exc:
        shift_invariant_form((1, 0, 0), C1)
    assert abs(exc.value.residual - PI_I) < 1e-15
    assert shift_invariant_form((0, 0, 0), C1).is_zero()


def test_invariant_polynomial_is_shift_fixed():
    t = shift_invariant_form((1, 1, 0), C1).as_polynomial()
    psi = t**2 * 0.3 + t**3
    assert shift(ExpPoly.from_polynomial(psi), C1) == ExpPoly.from_polynomial(psi)


def test_periodic_exp_poly():
    f = periodic_exp_poly((2 * PI_I,), [((1,), 1)])
    assert equal(f, ExpPoly.exp(Polynomial.variable(1, 1)))
    assert equal(shift(f, (2 * PI_I,)), f)
    assert periodic_exp_poly((1, 2), []).is_zero()


def test_example1_g_is_not_2s1_periodic():
    period = (0, -2 * PI_I, PI_I)
    with pytest.raises(PeriodError) as exc:
        periodic_exp_poly(period, [(example1_g_direction(), 1)])
    assert abs(np.exp(exc.value.value) - 36) < 1e-9
    g = ExpPoly.exp(Polynomial.linear(example1_g_direction()))
    assert len(g) == 1


def test_periodic_rejects_nonconstant_front():
    with pytest.raises(PeriodError):
        periodic_exp_poly((2 * PI_I,), [((1,), Polynomial.variable(1, 1))])


def test_period_membership():
    assert is_multiple_of_2pi_i(-4 * PI_I)
    assert not is_multiple_of_2pi_i(PI_I)
    assert not is_multiple_of_2pi_i(1e-6 + 2 * PI_I)


def test_principal_log():
    w = principal_log(-6)
    assert abs(w - (math.log(6) + PI_I)) < 1e-15
    with pytest.raises(ValueError):
        principal_log(0)


@given(seeds, seeds)
def test_order_properties(sa, sb):
    rng = np.random.default_rng(sa)
    f = random_exppoly(rng)
    g = random_exppoly(np.random.default_rng(sb), dim=f.dim)
    c = rng.uniform(-1, 1, f.dim) + 1j * rng.uniform(-1, 1, f.dim)
    assert order_of_growth(f + g) <= max(order_of_growth(f), order_of_growth(g))
    assert order_of_growth(shift(f, c)) == order_of_growth(f)
    for k in range(1, f.dim + 1):
        assert order_of_growth(partial_derivative(f, k)) <= order_of_growth(f)


@given(seeds, st.integers(2, 4))
def test_kernel_composites_are_annihilated(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.5, 2, n) * np.exp(1j * rng.uniform(0, 6.28, n))
    mu = int(rng.integers(1, n + 1))
    forms = [f.as_polynomial() for f in kernel_forms(a, mu)]
    u = forms[0] * complex(rng.normal())
    for F in forms[1:]:
        u = u + F * complex(rng.normal())
    front = forms[-1] ** 2 + 1
    f = ExpPoly.exp(u, front) + ExpPoly.exp(forms[0] ** 2 * 0.1, forms[0])
    assert directional_derivative(f, a).is_zero()
