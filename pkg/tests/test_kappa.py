import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nncalc.arithmetic import arithmetic
from nncalc.calculus import NNFunction, nn_derivative
from nncalc.errors import DomainViolation, InvalidParam, Overflow
from nncalc.kappa import (
    KappaParams,
    fig1_table,
    kappa_arithmetic,
    kappa_derivative,
    kappa_dual_derivative,
    kappa_exp,
    kappa_exp_self,
    kappa_ln,
    kappa_nn_ln_derivative,
)

I = arithmetic("identity")


def test_kappa_derivative_examples():
    assert kappa_derivative(lambda x: x, 1.0, 1.0) == pytest.approx(math.sqrt(2), rel=1e-10)
    assert kappa_derivative(math.sin, 0.4, 0.0) == pytest.approx(math.cos(0.4), rel=1e-10)


@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.0])
def test_kappa_exp_solves_kappa_equation(kappa):
    for x in np.linspace(-3, 3, 25):
        d = kappa_derivative(lambda t: kappa_exp(t, kappa), x, kappa)
        assert d == pytest.approx(kappa_exp(x, kappa), rel=1e-8)
    assert kappa_exp(0.0, kappa) == 1.0


@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.0])
def test_kappa_exp_self_solves_nn_equation(kappa):
    K = kappa_arithmetic(kappa)
    F = NNFunction(K, K, lambda x: kappa_exp_self(x, kappa))
    for x in np.linspace(-2, 1, 13):
        assert nn_derivative(F, x) == pytest.approx(F(x), rel=1e-8)
    assert kappa_exp_self(0.0, kappa) == pytest.approx(math.sinh(kappa) / kappa, rel=1e-15)
    assert KappaParams(kappa).one == pytest.approx(math.sinh(kappa) / kappa)


@settings(max_examples=60, deadline=None)
@given(st.floats(-5, 5), st.sampled_from([0.5, 1.0, 2.0]),
       st.sampled_from(["exp", "cubic", "atan"]))
def test_kappa_derivative_matches_generic(x, kappa, which):
    A = {"exp": lambda t: math.exp(0.5 * t), "cubic": lambda t: t ** 3 + t,
         "atan": math.atan}[which]
    F = NNFunction(kappa_arithmetic(kappa), I, A)
    generic = nn_derivative(F, x)
    assert kappa_derivative(A, x, kappa) == pytest.approx(generic, rel=1e-6)


def test_dual_derivative_examples():
    assert kappa_dual_derivative(lambda y: kappa_ln(y, 1.0), 2.0, 1.0) == pytest.approx(0.5, rel=1e-9)
    assert kappa_dual_derivative(math.exp, 0.3, 0.0) == pytest.approx(math.exp(0.3), rel=1e-10)
    assert kappa_dual_derivative(lambda y: y, 1.0, 1.0) == pytest.approx(1 / math.sqrt(2), rel=1e-10)


def test_nn_ln_derivative_examples():
    assert kappa_nn_ln_derivative(2.0, 1.0) == pytest.approx(0.521095, abs=5e-7)
    assert kappa_nn_ln_derivative(2.0, 0.0) == 0.5
    assert kappa_nn_ln_derivative(2.0, 1e-9) == pytest.approx(0.5, rel=1e-12)
    assert kappa_nn_ln_derivative(1.0, 1.0) == pytest.approx(1.175201, abs=5e-7)
    with pytest.raises(DomainViolation):
        kappa_nn_ln_derivative(0.0, 1.0)


@pytest.mark.parametrize("y", [0.5, 1.0, 2.0, 5.0])
def test_nn_ln_derivative_matches_generic_calculus(y):
    # Ln maps R into R_kappa, so the generic derivative has X = identity, Y = R_kappa
    F = NNFunction(I, kappa_arithmetic(1.0), lambda t: kappa_ln(t, 1.0))
    assert nn_derivative(F, y) == pytest.approx(kappa_nn_ln_derivative(y, 1.0), rel=1e-8)


def test_dual_and_nn_derivatives_disagree():
    dual = kappa_dual_derivative(lambda y: kappa_ln(y, 1.0), 0.5, 1.0)
    assert abs(dual - kappa_nn_ln_derivative(0.5, 1.0)) > 0.1


def test_kappa_exp_examples():
    assert kappa_exp(1.0, 1.0) == pytest.approx(2.414214, abs=5e-7)
    for x in np.linspace(-10, 10, 41):
        for kappa in (0.3, 1.0, 2.5):
            assert kappa_exp(x, kappa) * kappa_exp(-x, kappa) == pytest.approx(1.0, rel=1e-13)


def test_kappa_exp_overflow_reported():
    with pytest.raises(Overflow):
        kappa_exp(1e300, 1e-300)
    with pytest.raises(Overflow):
        kappa_exp_self(1000.0, 1.0)


def test_kappa_ln_inverts_kappa_exp():
    x = np.linspace(-20, 20, 81)
    np.testing.assert_allclose(kappa_ln(kappa_exp(x, 1.3), 1.3), x, rtol=1e-12, atol=1e-12)
    with pytest.raises(DomainViolation):
        kappa_ln(-1.0, 1.0)


def test_fig1_values():
    t = fig1_table(10.0, 100.0, 2, 1.0)
    assert t[0, 1] == pytest.approx(0.049876, abs=5e-7)
    assert t[0, 1] == pytest.approx(1.0 / (10.0 + math.sqrt(101.0)), rel=1e-14)


def test_fig1_kappa_zero_columns_equal():
    t = fig1_table(0.01, 50.0, 30, 0.0)
    np.testing.assert_array_equal(t[:, 1], np.exp(-t[:, 0]))
    np.testing.assert_array_equal(t[:, 2], np.exp(-t[:, 0]))


def test_fig1_tails():
    t = fig1_table(0.01, 1e4, 200, 1.0)
    assert np.all(np.isfinite(t)) and np.all(t[:, 1:] > 0)
    tail = t[t[:, 0] >= 100]
    l2, l3 = np.log(tail[:, 1]), np.log(tail[:, 2])
    assert np.all(np.abs(l2 - l3) / np.abs(l2) < 0.01)
    # ratio approaches 1 as x grows
    ratio = np.abs(l2 / l3 - 1.0)
    assert ratio[-1] < ratio[0]


def test_fig1_rejects_bad_range():
    with pytest.raises(InvalidParam):
        fig1_table(0.0, 1.0, 10, 1.0)
    with pytest.raises(InvalidParam):
        KappaParams(-1.0)
