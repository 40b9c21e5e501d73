"""Hopf-algebra axiom plumbing shared by the Minkowski and Poincare checks."""

from __future__ import annotations

from typing import Dict, Tuple

from .engine import Element, TensorElement, Word, _accumulate, _need, antipode, coproduct
from .scalars import Scalar


def counit_on_factor(t: TensorElement, k: int) -> TensorElement:
    """(id .. eps .. id) applied to factor k; that factor disappears."""
    p = t.factors[k]
    _need(p)
    eps = p._counit_map.word
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for key, c in t.terms.items():
        e = eps(key[k])
        if e:
            _accumulate(out, key[:k] + key[k + 1:], c * e)
    return TensorElement(t.factors[:k] + t.factors[k + 1:], out)


def coproduct_on_factor(t: TensorElement, k: int) -> TensorElement:
    p = t.factors[k]
    return t.map_factor(k, coproduct, target=t.factors[:k] + (p, p) + t.factors[k + 1:])


def coassociativity_sides(a: Element):
    """((Delta (x) id) Delta a, (id (x) Delta) Delta a)."""
    d = coproduct(a)
    return coproduct_on_factor(d, 0), coproduct_on_factor(d, 1)


def counit_sides(a: Element):
    d = coproduct(a)
    return counit_on_factor(d, 0).to_element(), counit_on_factor(d, 1).to_element()


def antipode_sides(a: Element):
    """m(S (x) id) Delta(a) and m(id (x) S) Delta(a)."""
    d = coproduct(a)
    left = d.map_factor(0, antipode, target=d.factors).contract(0).to_element()
    right = d.map_factor(1, antipode, target=d.factors).contract(0).to_element()
    return left, right


def star_tensor(t: TensorElement) -> TensorElement:
    """(* (x) * ...) on a tensor: antilinear once, factorwise antihomomorphic."""
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for key, c in t.terms.items():
        imgs = []
        for p, w in zip(t.factors, key):
            _need(p)
            imgs.append(p._star_map.word(w))
        cc = c.conj()
        for k2, v in TensorElement.pure(*imgs).terms.items():
            _accumulate(out, k2, cc * v)
    return TensorElement(t.factors, out)


__all__ = [
    "counit_on_factor",
    "coproduct_on_factor",
    "coassociativity_sides",
    "counit_sides",
    "antipode_sides",
    "star_tensor",
]
