import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdde.algebra import ExpPoly, Polynomial, equal
from pdde.bundles import random_bundle
from pdde.fixtures import example1_bundle, example1_pair, example1_params, example1_t13_bundle
from pdde.systems import E1Params, E4Params, Verdict
from pdde.theorems import (
    THEOREMS,
    ConstructionError,
    GateVerdict,
    HomogeneousError,
    HomogeneousSpec,
    TheoremParams,
    condition_rhs,
    construct_solution,
    gamma_pair,
    gate_nonexistence,
    homogeneous_pair,
    shift_identities,
    solve_condition,
    solve_exponential_block,
    validate_constraints,
)

PI_I = math.pi * 1j
C1 = (PI_I, -PI_I, PI_I / 2)


def failed(tp):
    return [c.label for c in validate_constraints(tp) if not c.passed]


def by_label(tp, label):
    (ck,) = [c for c in validate_constraints(tp) if c.label == label]
    return ck


@pytest.mark.parametrize(
    "args,verdict",
    [
        ((2, 2, 3, 3), GateVerdict.NONEXISTENT_BY_PRODUCT),
        ((3, 3, 2, 2), GateVerdict.NONEXISTENT_BY_RATIO),
        ((2, 2, 2, 2), GateVerdict.INCONCLUSIVE),
        ((1, 1, 1, 1), GateVerdict.INCONCLUSIVE),
        ((1, 5, 1, 4), GateVerdict.INCONCLUSIVE),
    ],
)
def test_gate_table(args, verdict):
    assert gate_nonexistence(*args).verdict is verdict


@pytest.mark.parametrize("bad", [0, -1, 1.5, True])
def test_gate_rejects_non_positive_integers(bad):
    with pytest.raises(ValueError):
        gate_nonexistence(bad, 1, 1, 1)


@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30), st.integers(1, 30))
def test_gate_verdicts_imply_their_inequality(m1, m2, n1, n2):
    g = gate_nonexistence(m1, m2, n1, n2)
    if g.verdict is GateVerdict.NONEXISTENT_BY_PRODUCT:
        assert n1 * n2 > m1 * m2
    elif g.verdict is GateVerdict.NONEXISTENT_BY_RATIO:
        assert m1 >= 2 and m2 >= 2 and n1 * (m1 - 1) > m1 and n2 * (m2 - 1) > m2
    else:
        assert n1 * n2 <= m1 * m2


def test_gamma_pair_relations():
    g = gamma_pair(example1_params())
    assert g.k == 1
    assert abs((g.gamma2 - g.gamma1) - 1j) < 1e-15
    assert abs((g.gamma1 + g.gamma2) - (-18) * PI_I / 1j) < 1e-12


def test_t13_hypothesis_on_example1_coefficients():
    tp = TheoremParams("T13", example1_params(), b=(3, 0, 0), nu=1)
    ck = by_label(tp, "i a1 b_mu + a4 b_mu^2 + a2 = (-1)^nu a3")
    assert ck.passed and abs(ck.lhs + 3) < 1e-12


def test_t11_needs_a2_squared_matching():
    s = E1Params(2, (1, 1), 1, 1, 2, 1)
    tp = TheoremParams("T11", s)
    assert "a2^2 = +-a3^2" in failed(tp)


def test_k_products():
    s = E1Params(2, (1, 1), 1, 1, 1, 1)
    assert by_label(TheoremParams("T13", s, K=(2, 0.5, 1, 1), nu=1), "K1*K2 = 1").passed
    assert not by_label(TheoremParams("T13", s, K=(2, 1, 1, 1), nu=1), "K1*K2 = 1").passed


def test_example1_is_a_t12_member():
    assert failed(example1_bundle()) == []
    f1, f2, report = construct_solution(example1_bundle())
    g1, g2 = example1_pair()
    assert equal(f1, g1) and equal(f2, g2)
    assert report.verdict is Verdict.VERIFIED


def test_example1_fails_t13_displays():
    tp = TheoremParams("T13", example1_params(), b=(-3, 3, -3), K=(-1j, 1j, 1, 1), nu=2)
    bad = failed(tp)
    assert "i a1 b_mu + a4 b_mu^2 + a2 = (-1)^nu a3" not in bad
    assert "exp(2 Lc) = 1" in bad


def test_t13_on_example1_coefficients_verifies():
    tp = example1_t13_bundle()
    assert failed(tp) == []
    _, _, report = construct_solution(tp)
    assert report.verdict is Verdict.VERIFIED


def test_t1_hand_case():
    s = E1Params(2, (0, 1), 1, 1, -1, 1, mu=1)
    f1, f2, report = construct_solution(TheoremParams("T1", s))
    z1 = ExpPoly.variable(2, 1)
    assert equal(f1, z1) and equal(f2, z1)
    assert report.ok


def test_t24_instance():
    # a.b = 0, b.c = pi*i, a3 = -a4 (nu = 1)
    s = E4Params(2, (PI_I, PI_I), (1, 2), -1.5, 1.5, mu=1)
    tp = TheoremParams("T24", s, b=(2, -1), A=0, B=-PI_I, K=(1, 1, 1, 1), nu=1)
    assert failed(tp) == []
    f1, f2, report = construct_solution(tp)
    assert report.ok
    assert not f1.is_polynomial()


def test_construction_rejects_bad_constraints():
    s = E1Params(2, (1, 1), 1, 1, 2, 1)
    with pytest.raises(ConstructionError) as exc:
        construct_solution(TheoremParams("T1", s))
    assert exc.value.checks


# condition solving -----------------------------------------------------------


def test_block_regular():
    sol = solve_exponential_block(1, 1, 2, 3, 0)
    assert not sol.singular
    assert np.allclose(sol.alpha, (-1, 2))


def test_block_zero_rhs():
    sol = solve_exponential_block(1, 1, 2, 0, 0)
    assert sol.alpha == (0, 0)


def test_block_singular_consistent():
    sol = solve_exponential_block(1, 1, 1, 2, 2)
    assert sol.singular and sol.consistent
    assert np.allclose(sol.alpha, (1, 1))
    assert sol.family is not None


def test_block_singular_inconsistent():
    sol = solve_exponential_block(1, 1, 1, 2, 0)
    assert sol.singular and not sol.consistent
    assert max(abs(d) for d in sol.defect) > 0.1


def test_homogeneous_example1_coefficients():
    M = (0, math.log(6) / (-PI_I), 0)
    h1, h2 = homogeneous_pair(M, 1, -18, 3, C1)
    r1, r2 = shift_identities(h1, h2, -18, 3, C1)
    assert r1.is_zero() and r2.is_zero()


def test_homogeneous_zero_tau():
    h1, h2 = homogeneous_pair((0, 1, 0), 0, -18, 3, C1)
    assert h1.is_zero() and h2.is_zero()


def test_homogeneous_sign():
    c = (PI_I, 0)
    h1, h2 = homogeneous_pair((1, 0), 2, 1, 1, c)
    assert equal(h2, h1)


def test_homogeneous_rejects_bad_period():
    with pytest.raises(HomogeneousError):
        homogeneous_pair((0, 1, 0), 1, -18, 3, C1)


@pytest.mark.parametrize("theorem", ["T11", "T22", "T24"])
def test_condition_certificate(theorem):
    rng = np.random.default_rng(99)
    for _ in range(5):
        tp = random_bundle(theorem, rng)
        sol = solve_condition(tp.kind, tp)
        r1, r2 = condition_rhs(tp)
        lhs1, lhs2 = shift_identities(sol.first, sol.second, *tp.pq, tp.system.c)
        assert (lhs1 - r1).is_zero() and (lhs2 - r2).is_zero()
        assert sol.certified


def test_condition_kind_mismatch():
    tp = random_bundle("T22", np.random.default_rng(5))
    with pytest.raises(ValueError):
        solve_condition("A", tp)


@settings(max_examples=16)
@given(st.sampled_from(THEOREMS), st.integers(0, 2**31))
def test_random_bundles_round_trip(theorem, seed):
    tp = random_bundle(theorem, np.random.default_rng(seed))
    assert failed(tp) == []
    _, _, report = construct_solution(tp)
    assert report.verdict is Verdict.VERIFIED


def test_params_validation():
    with pytest.raises(ValueError):
        TheoremParams("T99", example1_params())
    with pytest.raises(TypeError):
        TheoremParams("T22", example1_params())
    with pytest.raises(ValueError):
        TheoremParams("T13", example1_params(), nu=3)
    with pytest.raises(ValueError):
        TheoremParams("T13", example1_params(), b=(1, 2))
    spec = HomogeneousSpec((1, 2), 1)
    with pytest.raises(ValueError):
        TheoremParams("T1", example1_params(), homogeneous=(spec,))
