"""Degree-truncated one-sided and two-sided ideals of a presented algebra.

A positive membership answer is a certificate.  A negative answer only means
the target is not in the span of ``m g`` / ``g m`` / ``m1 g m2`` with total
word length at most ``max_degree``.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .engine import Element, Presentation, PresentationError, TensorElement, Word
from .linalg import (
    NotHomogeneous,
    SparseEchelon,
    fraction_free_contains,
    fraction_free_rank,
    specialize,
    unspecialize,
)
from .scalars import ONE, Scalar

__all__ = [
    "IdealSpan",
    "ideal_membership",
    "equal_mod_ideal",
    "graded_key",
    "FactorReducer",
]

SIDES = ("left", "right", "two-sided")


def graded_key(word: Word):
    """Column order: longer words are larger; ties broken lexicographically."""
    return (len(word), word)


def ideal_products(gens: Sequence[Element], side: str, max_degree: int) -> List[Element]:
    """Every product spanning the truncated ideal, normalized (zeros dropped)."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    if not gens:
        return []
    p = gens[0].pres
    out = []
    for g in gens:
        if g.pres is not p:
            raise PresentationError("ideal generators from different algebras")
        dg = g.degree()
        if dg < 0 or dg > max_degree:
            continue
        room = max_degree - dg
        words = [Element(p, {w: ONE}) for w in p.normal_words(room)]
        if side == "right":
            prods = (g * m for m in words)
        elif side == "left":
            prods = (m * g for m in words)
        else:
            prods = (
                m1 * g * m2
                for m1 in words
                for m2 in words
                if m1.degree() + m2.degree() <= room
            )
        out.extend(e for e in prods if e)
    return out


class IdealSpan:
    """Truncated span of an ideal, kept as an exact echelon basis.

    Uses the specialised (lam = -i) route when every spanning element is
    weight-homogeneous, otherwise keeps the raw rows for fraction-free
    elimination over the Laurent ring.
    """

    def __init__(self, gens: Sequence[Element], side: str = "right", max_degree: int = 4,
                 pres: Optional[Presentation] = None):
        self.gens = list(gens)
        self.side = side
        self.max_degree = max_degree
        self.pres = pres if pres is not None else (self.gens[0].pres if self.gens else None)
        self.homogeneous = True
        self.echelon = SparseEchelon(key=graded_key)
        self._raw: List[Dict[Word, Scalar]] = []
        weight = self.pres.word_weight if self.pres is not None else len
        for e in ideal_products(self.gens, side, max_degree):
            self._raw.append(e.terms)
            if self.homogeneous:
                try:
                    vec, _ = specialize(e.terms, weight)
                except NotHomogeneous:
                    self.homogeneous = False
                    continue
                self.echelon.add(vec)

    @property
    def dimension(self) -> int:
        if self.homogeneous:
            return self.echelon.rank
        return fraction_free_rank(self._raw)

    def contains(self, target: Element) -> bool:
        if not target:
            return True
        if target.degree() > self.max_degree:
            return False
        if self.homogeneous:
            try:
                vec, _ = specialize(target.terms, target.pres.word_weight)
            except NotHomogeneous:
                # split into homogeneous components; each must lie in the span
                return all(self.contains(c) for c in homogeneous_components(target))
            return self.echelon.contains(vec)
        return fraction_free_contains(self._raw, target.terms)

    def normal_form(self, target: Element) -> Element:
        """Canonical coset representative (homogeneous route only)."""
        if not self.homogeneous:
            raise NotHomogeneous("normal_form needs a homogeneous ideal")
        out = target.pres.zero()
        for comp in homogeneous_components(target):
            vec, w = specialize(comp.terms, comp.pres.word_weight)
            red = self.echelon.reduce(vec)
            if red:
                out = out + Element(comp.pres, unspecialize(red, w, comp.pres.word_weight))
        return out


def homogeneous_components(e: Element) -> List[Element]:
    parts: Dict[int, Dict[Word, Scalar]] = {}
    for w, c in e.terms.items():
        ww = e.pres.word_weight(w)
        for k, v in c.terms.items():
            d = parts.setdefault(ww + k, {})
            d[w] = d.get(w, Scalar()) + Scalar({k: v})
    return [Element(e.pres, {w: c for w, c in d.items() if c}) for _, d in sorted(parts.items())]


def ideal_membership(target: Element, gens: Sequence[Element], side: str = "right", max_degree: int = 4) -> bool:
    """True iff ``target`` lies in the degree-<=max_degree span of the ideal."""
    return IdealSpan(gens, side, max_degree, pres=target.pres).contains(target)


def equal_mod_ideal(a: Element, b: Element, gens: Sequence[Element], max_degree: int = 4) -> bool:
    return ideal_membership(a - b, gens, "two-sided", max_degree)


class FactorReducer:
    """Equality and normal forms of tensors modulo an ideal in one factor.

    For a tensor t over (P, M, ...), group terms by the words of the other
    factors; t vanishes modulo the ideal iff every grouped P-coefficient lies
    in the ideal span.
    """

    def __init__(self, span: IdealSpan, factor: int = 0):
        self.span = span
        self.factor = factor

    def _groups(self, t: TensorElement) -> Dict[Tuple, Dict[Word, Scalar]]:
        k = self.factor
        groups: Dict[Tuple, Dict[Word, Scalar]] = {}
        for key, c in t.terms.items():
            rest = key[:k] + key[k + 1:]
            groups.setdefault(rest, {})[key[k]] = c
        return groups

    def is_zero(self, t: TensorElement) -> bool:
        p = t.factors[self.factor]
        return all(self.span.contains(Element(p, terms)) for terms in self._groups(t).values())

    def equal(self, a: TensorElement, b: TensorElement) -> bool:
        return self.is_zero(a - b)

    def normal_form(self, t: TensorElement) -> TensorElement:
        k = self.factor
        p = t.factors[k]
        out: Dict[Tuple, Scalar] = {}
        for rest, terms in self._groups(t).items():
            red = self.span.normal_form(Element(p, terms))
            for w, c in red.terms.items():
                out[rest[:k] + (w,) + rest[k:]] = c
        return TensorElement(t.factors, out)
