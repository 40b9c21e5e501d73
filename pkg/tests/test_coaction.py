import random

import pytest
from hypothesis import given

from kminkowski.coaction import (build_context, omega_univ, r_map, random_bimodule_element, rho_L, rho_R_self, universal_d,
                                 verify_coaction_suite, verify_x_munu_covariance)
from kminkowski.hopf import counit_on_factor
from kminkowski.minkowski import Metric

from conftest import elements

M2 = build_context(Metric.minkowski(2)).M.presentation


def test_rho_on_generator(ctx2):
    assert str(rho_L(ctx2.M.x(1))) == "a[1] (x) 1 + L[1,0] (x) x0 + L[1,1] (x) x1"
    assert str(rho_R_self(ctx2.M.x(1))) == "x1 (x) 1 + 1 (x) x1"


def test_projection_to_minkowski(ctx2):
    P = ctx2.P
    assert ctx2.pi(P.a(1)) == ctx2.M.x(1)
    assert not ctx2.pi(P.L(0, 1))
    assert ctx2.pi(P.L(1, 1)) == ctx2.M.one()
    assert ctx2.pi(P.a(1) * P.a(0)) == ctx2.M.x(1) * ctx2.M.x(0)


def test_universal_d_and_omega(ctx2):
    x0, x1 = ctx2.M.x(0), ctx2.M.x(1)
    assert str(universal_d(x0)) == "-x0 (x) 1 + 1 (x) x0"
    assert omega_univ(x1) == universal_d(x1)
    assert str(r_map(universal_d(x1).value)) == "1 (x) x1"
    with pytest.raises(ValueError):
        omega_univ(ctx2.M.one())


def test_universal_leibniz(ctx2):
    x0, x1 = ctx2.M.x(0), ctx2.M.x(1)
    assert universal_d(x0 * x1) == universal_d(x0).rmul(x1) + universal_d(x1).lmul(x0)


@given(elements(M2, 3))
def test_rho_is_counital(a):
    t = rho_L(a)
    assert counit_on_factor(t, 0).to_element() == a


def test_random_bimodule_elements_are_in_kernel(ctx2):
    rng = random.Random(3)
    for _ in range(10):
        q, pairs = random_bimodule_element(ctx2.M, rng, 3)
        assert q.value.contract(0).to_element() == ctx2.M.presentation.zero()
        assert pairs


def test_suite_n2(ctx2):
    rep = verify_coaction_suite(ctx2, 3, 50, 0)
    assert rep.ok, rep.to_text()
    assert len(rep.checks) == 25


@pytest.mark.slow
def test_suite_n3(ctx3):
    rep = verify_coaction_suite(ctx3, 3, 50, 0)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("name", ["ctx2", "ctx3"])
def test_quadratic_tensor_covariance(name, request):
    rep = verify_x_munu_covariance(request.getfixturevalue(name))
    assert rep.ok, rep.to_text()

