import itertools

import pytest
from hypothesis import given

from kminkowski.engine import PresentationError, TensorElement, antipode, coproduct, counit, star, tensor_mul
from kminkowski.minkowski import Metric, build_minkowski
from kminkowski.poincare import PoincareAlgebra
from kminkowski.scalars import IL, LAM

from conftest import elements

M2 = build_minkowski(Metric.minkowski(2)).presentation
M3 = build_minkowski(Metric.minkowski(3)).presentation


@pytest.mark.parametrize("pres", [M2, M3], ids=["n2", "n3"])
def test_normal_words_are_pbw(pres):
    assert all(list(w) == sorted(w) for w in pres.normal_words(4))


@given(elements(M2), elements(M2), elements(M2))
def test_product_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements(M3, 2), elements(M3, 2), elements(M3, 2))
def test_product_is_associative_n3(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements(M2), elements(M2))
def test_star_is_antilinear_antihomomorphism(a, b):
    assert star(star(a)) == a
    assert star(a * b) == star(b) * star(a)
    assert star(a.scale(IL)) == star(a).scale(-IL)


@given(elements(M2), elements(M2))
def test_counit_and_coproduct_are_homomorphisms(a, b):
    assert counit(a * b) == counit(a) * counit(b)
    assert coproduct(a * b) == tensor_mul(coproduct(a), coproduct(b))


@given(elements(M2), elements(M2))
def test_antipode_is_antihomomorphism(a, b):
    assert antipode(a * b) == antipode(b) * antipode(a)


def test_rewriting_example():
    x0, x1 = M2.gen(0), M2.gen(1)
    assert str(x1 * x0) == "x0*x1 - i*k^-1*x1"
    assert x1 * x0 == x0 * x1 - x1.scale(IL)


def test_unknown_generator():
    with pytest.raises(PresentationError):
        M2.gen("x7")
    with pytest.raises(PresentationError):
        M2.gen(5)


def test_mixed_presentations_rejected():
    with pytest.raises(PresentationError):
        M2.gen(0) + M3.gen(0)


def test_tensor_pure_and_contract():
    x0, x1 = M2.gen(0), M2.gen(1)
    t = TensorElement.pure(x1, x0)
    assert t.contract(0).to_element() == x1 * x0


def _nonassociative_triples(alg):
    p = alg.presentation
    gens = [p.gen(k) for k in range(len(p.generators))]
    return [(i, j, k) for i, j, k in itertools.product(range(len(gens)), repeat=3)
            if (gens[i] * gens[j]) * gens[k] != gens[i] * (gens[j] * gens[k])]


def test_time_plus_signature_rewrites_confluently():
    assert _nonassociative_triples(PoincareAlgebra(Metric((1, -1)))) == []


def test_mostly_plus_signature_breaks_confluence():
    # regression witness: the Lambda a rules only close up for g^00 = +1
    P = PoincareAlgebra(Metric((-1, 1)))
    assert _nonassociative_triples(P)
    a0, a1, L10 = P.a(0), P.a(1), P.L(1, 0)
    diff = (L10 * a1) * a0 - L10 * (a1 * a0)
    assert diff == (P.L(0, 0) - P.one()).scale(LAM * LAM * 2)
