import pytest
from hypothesis import given

from kminkowski.calculus import (build_calculus, coact_form, d0, d1, d1_tau, d_phi_check, sigma, star_form,
                                 tensor_forms, verify_calculus_suite, wedge)
from kminkowski.minkowski import Metric

from conftest import elements, one_forms

CAL2 = build_calculus(Metric.minkowski(2))
M = CAL2.M


def test_d_of_product():
    assert str(d0(M.x(0) * M.x(1), CAL2)) == "x1*t0 + (x0 + i*k^-1)*t1"


def test_commutation_table():
    t0, t1, tau = CAL2.t(0), CAL2.t(1), CAL2.tau
    assert str(t0 * M.x(0)) == "x0*t0 + 1/2*tau"
    assert str(tau * M.x(1)) == "-2*k^-2*t1 + x1*tau"
    assert str(t1 * M.x(1)) == "i*k^-1*t0 + x1*t1 - 1/2*tau"
    assert str(t0 * M.x(1)) == "x1*t0 + i*k^-1*t1"


def test_star_example():
    assert str(star_form(CAL2.t(0).lmul(M.x(1)))) == "x1*t0 + i*k^-1*t1"
    assert star_form(CAL2.tau) == CAL2.tau.scale(-1)


def test_two_forms():
    t0, t1, tau = CAL2.t(0), CAL2.t(1), CAL2.tau
    assert str(d1(t1.lmul(M.x(0)))) == "t0^t1"
    assert str(wedge(t1, t0)) == "-t0^t1"
    assert str(wedge(tau, tau)) == "0"
    assert not wedge(t0, t0)


def test_d_phi():
    ok, lhs, _ = d_phi_check(CAL2)
    assert ok
    assert str(lhs) == "2*x0*t0 - 2*x1*t1 + tau"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_tau_vanishes(n):
    assert not d1_tau(build_calculus(Metric.minkowski(n)))


def test_sigma_fixes_tau_tau():
    tt = tensor_forms(CAL2.tau, CAL2.tau)
    assert sigma(tt) == tt


@given(elements(M.presentation), elements(M.presentation))
def test_leibniz(a, b):
    assert d0(a * b, CAL2) == d0(a, CAL2) * b + d0(b, CAL2).lmul(a)


@given(elements(M.presentation))
def test_d_squared(a):
    assert not d1(d0(a, CAL2))


@given(one_forms(CAL2))
def test_star_involution(f):
    assert star_form(star_form(f)) == f


@given(elements(M.presentation, 2), one_forms(CAL2, 1))
def test_bimodule_associativity(a, f):
    assert (f * a) * a == f * (a * a)
    assert (f.lmul(a)) * a == (f * a).lmul(a)


def test_invariant_forms_coact_trivially():
    assert str(coact_form(CAL2.tau)) == "(1 (x) 1)*tau"
    assert str(coact_form(CAL2.t(1))) == "(L[1,0] (x) 1)*t0 + (L[1,1] (x) 1)*t1"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_suite(n):
    rep = verify_calculus_suite(build_calculus(Metric.minkowski(n)), 4, 30, 0)
    assert rep.ok, rep.to_text()
    notes = [c for c in rep.checks if c.detail.startswith("note:")]
    assert [c.name for c in notes] == ["calculus.d-tau.printed-formula"]
