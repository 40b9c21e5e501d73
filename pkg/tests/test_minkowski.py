import pytest

from kminkowski.engine import counit
from kminkowski.minkowski import Metric, build_minkowski, verify_hopf_minkowski
from kminkowski.scalars import IL


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hopf_suite_exact(n):
    rep = verify_hopf_minkowski(build_minkowski(Metric.minkowski(n)), 3)
    assert rep.ok, rep.to_text()
    assert all("modulo" not in c.detail for c in rep.checks)


def test_phi_n2():
    alg = build_minkowski(Metric.minkowski(2))
    assert str(alg.phi()) == "x0^2 - x1^2 + i*k^-1*x0"
    assert counit(alg.phi()) == counit(alg.x_squared())


def test_phi_n4_trace_term():
    alg = build_minkowski(Metric.minkowski(4))
    assert alg.phi() - alg.x_squared() == alg.x(0).scale(IL * 3)


def test_metric_parsing():
    assert Metric.parse("+---").signature == (1, -1, -1, -1)
    assert Metric.parse("+-", 3).signature == (1, -1, -1)
    assert str(Metric.minkowski(3)) == "+--"
    with pytest.raises(ValueError):
        Metric.parse("+-x")
    with pytest.raises(ValueError):
        Metric.parse("+--", 4)
    with pytest.raises(ValueError):
        Metric.minkowski(1)


def test_x_munu_symmetric_for_time_plus():
    alg = build_minkowski(Metric.minkowski(3))
    for mu in range(3):
        for nu in range(3):
            assert alg.x_munu(mu, nu) == alg.x_munu(nu, mu)


def test_x_munu_asymmetric_for_mostly_plus():
    alg = build_minkowski(Metric((-1, 1, 1)))
    assert alg.x_munu(0, 1) - alg.x_munu(1, 0) == alg.x(1).scale(IL * 2)
