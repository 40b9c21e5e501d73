import pytest

from kminkowski.coaction import build_context
from kminkowski.ideal_lab import (GradedBasis, classify, covariance_components, covariant_closure,
                                  full_tensor_generators, antipode_star_check, quotient_dimension, right_ideal_span,
                                  traceless_generators)
from kminkowski.minkowski import Metric


@pytest.mark.parametrize("n, dims", [(2, (14, 11, 3)), (3, (34, 30, 4)), (4, (69, 64, 5))])
def test_traceless_quotient(n, dims):
    alg = build_context(Metric.minkowski(n)).M
    q = quotient_dimension(alg, traceless_generators(alg), 4)
    assert (q.dim_ker_eps, q.dim_ideal, q.quotient_dim) == dims
    assert q.is_basis([alg.x(mu) for mu in range(n)] + [alg.phi()])
    assert q.is_basis([alg.x(mu) for mu in range(n)] + [alg.x(0) * alg.x(0)])
    # x0 x1 = x^{01} lies in R, so it cannot replace phi
    assert not q.is_basis([alg.x(mu) for mu in range(n)] + [alg.x(0) * alg.x(1)])


def test_graded_basis_counts():
    alg = build_context(Metric.minkowski(3)).M
    assert [len(GradedBasis.of(alg, d).words) for d in range(5)] == [1, 3, 6, 10, 15]
    assert GradedBasis.expected_size(3, 4) == 15


def test_traceless_generators_are_covariant(ctx2):
    gens = traceless_generators(ctx2.M)
    span = right_ideal_span(gens, 4, ctx2.M)
    for g in gens:
        assert all(span.contains(v) for v in covariance_components(ctx2, g))


def test_square_alone_is_not_covariant(ctx2):
    sq = ctx2.M.x(0) * ctx2.M.x(0)
    span = right_ideal_span([sq], 4, ctx2.M)
    assert not all(span.contains(v) for v in covariance_components(ctx2, sq))


def test_closure_of_square_pulls_in_other_generators(ctx2):
    M = ctx2.M
    seed = [M.x(0) * M.x(0)]
    closed = covariant_closure(ctx2, seed, 4)
    assert [str(e) for e in closed[1:]] == ["-x1^2 + i*k^-1*x0", "2*x0*x1 - 2*i*k^-1*x1"]


def test_full_tensor_chain(ctx2):
    # x^i enters R at degree 3 before closure; the closure then kills everything
    M = ctx2.M
    full = full_tensor_generators(M)
    assert not right_ideal_span(full, 2, M).contains(M.x(1))
    assert right_ideal_span(full, 3, M).contains(M.x(1))
    assert quotient_dimension(M, covariant_closure(ctx2, full, 4), 4).quotient_dim == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_antipode_star_closed(n):
    ok, bad = antipode_star_check(build_context(Metric.minkowski(n)).M, 3)
    assert ok, bad


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classify(n):
    rep = classify(build_context(Metric.minkowski(n)), 4)
    assert rep.ok, rep.to_text()
    d = {c.name: c.detail for c in rep.checks}
    assert d["classify.full-tensor.quotient-dim"] == "quotient = 0"
    assert d["classify.seed[x0].quotient-dim"] == "quotient = 0"
    assert d["classify.traceless.quotient-dim"].endswith(f"quotient = {n + 1}")
