"""Finitely presented *-algebras with a PBW-type normal form.

A :class:`Presentation` fixes a totally ordered list of generators together
with swap rules ``g_j g_i -> g_i g_j + correction`` for ``j > i``.  Words are
tuples of generator indices; a word is normal when it is nondecreasing.
Normal forms are computed by rewriting the leftmost descent first and are
memoised per word.

Hopf data (coproduct, counit, antipode, star) is given on generators and
extended (anti)homomorphically.
"""

from __future__ import annotations

import itertools
from numbers import Rational
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, GaussianRational, Scalar, as_scalar, format_monomial, format_scalar

Word = Tuple[int, ...]

__all__ = [
    "Word",
    "Presentation",
    "Element",
    "TensorElement",
    "PresentationError",
    "normalize",
    "mul",
    "star",
    "coproduct",
    "counit",
    "antipode",
    "tensor_mul",
    "WordMap",
]


class PresentationError(ValueError):
    """Unknown generator, mismatched presentations, malformed rule."""


def is_normal(word: Word) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


def _accumulate(out: Dict, key, c: Scalar) -> None:
    cur = out.get(key)
    if cur is None:
        out[key] = c
    else:
        s = cur + c
        if s.terms:
            out[key] = s
        else:
            del out[key]


class Presentation:
    """Generators, swap rules and (after :meth:`attach_structure`) Hopf tables.

    ``rules`` maps ``(j, i)`` with ``j > i`` to the correction term of
    ``g_j g_i -> g_i g_j + correction`` as a mapping word -> Scalar.  Pairs
    without a rule commute.  ``weights`` is the scaling weight of each
    generator (lam carries weight 1); every rule must be weight-homogeneous
    for the fast linear algebra in :mod:`kminkowski.linalg` to apply.
    ``ranks`` orders generator classes for the termination key: the
    per-class degree of a word is compared before its total degree.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        rules: Mapping[Tuple[int, int], Mapping[Word, object]],
        weights: Optional[Sequence[int]] = None,
        ranks: Optional[Sequence[int]] = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.index = {g: k for k, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise PresentationError("duplicate generator names")
        ng = len(self.generators)
        self.weights = tuple(weights) if weights is not None else (1,) * ng
        self.ranks = tuple(ranks) if ranks is not None else (0,) * ng
        self.rules: Dict[Tuple[int, int], Tuple[Tuple[Word, Scalar], ...]] = {}
        for (j, i), corr in rules.items():
            if not (0 <= i < j < ng):
                raise PresentationError(f"rule key {(j, i)} must satisfy 0 <= i < j < {ng}")
            items = []
            for w, c in corr.items():
                w = tuple(w)
                c = as_scalar(c)
                if any(not (0 <= g < ng) for g in w):
                    raise PresentationError(f"unknown generator in correction {w}")
                if c:
                    items.append((w, c))
            self.rules[(j, i)] = tuple(items)
        self._nf: Dict[Word, Dict[Word, Scalar]] = {}
        self.counit_table: Optional[List[Scalar]] = None
        self.antipode_table: Optional[List[Element]] = None
        self.star_table: Optional[List[Element]] = None
        self.coproduct_table: Optional[List[TensorElement]] = None
        self._coproduct_map = self._counit_map = self._antipode_map = self._star_map = None

    def __repr__(self):
        return f"Presentation({self.name!r}, {len(self.generators)} generators)"

    # ---- structure -------------------------------------------------------

    def attach_structure(
        self,
        counit: Sequence[object],
        antipode: Sequence["Element"],
        star: Sequence["Element"],
        coproduct: Sequence["TensorElement"],
    ) -> "Presentation":
        ng = len(self.generators)
        if not (len(counit) == len(antipode) == len(star) == len(coproduct) == ng):
            raise PresentationError("structure tables must cover every generator")
        self.counit_table = [as_scalar(c) for c in counit]
        self.antipode_table = list(antipode)
        self.star_table = list(star)
        self.coproduct_table = list(coproduct)
        pair = (self, self)
        self._coproduct_map = WordMap(self.coproduct_table, TensorElement.one(pair))
        self._counit_map = WordMap(self.counit_table, ONE)
        self._antipode_map = WordMap(self.antipode_table, self.one(), anti=True)
        self._star_map = WordMap(self.star_table, self.one(), anti=True)
        return self

    # ---- words and elements ---------------------------------------------

    def word(self, symbols: Iterable) -> Word:
        out = []
        for s in symbols:
            if isinstance(s, int):
                if not 0 <= s < len(self.generators):
                    raise PresentationError(f"generator index {s} out of range for {self.name}")
                out.append(s)
            else:
                try:
                    out.append(self.index[s])
                except KeyError:
                    raise PresentationError(f"unknown generator {s!r} in {self.name}") from None
        return tuple(out)

    def one(self) -> "Element":
        return Element(self, {(): ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, g) -> "Element":
        return Element(self, {self.word([g]): ONE})

    def scalar(self, c) -> "Element":
        c = as_scalar(c)
        return Element(self, {(): c} if c else {})

    def word_degree(self, word: Word) -> int:
        return len(word)

    def word_weight(self, word: Word) -> int:
        w = self.weights
        return sum(w[g] for g in word)

    def termination_key(self, word: Word):
        """Well-founded key that every rewrite step strictly decreases."""
        classes = sorted(set(self.ranks), reverse=True)
        per_class = tuple(sum(1 for g in word if self.ranks[g] == r) for r in classes)
        inversions = sum(
            1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b]
        )
        return per_class + (len(word), inversions)

    def normal_words(self, max_degree: int, min_degree: int = 0) -> List[Word]:
        ng = len(self.generators)
        out: List[Word] = []
        for d in range(min_degree, max_degree + 1):
            out.extend(itertools.combinations_with_replacement(range(ng), d))
        return out

    # ---- rewriting -------------------------------------------------------

    def nf_word(self, word: Word) -> Dict[Word, Scalar]:
        """Normal form of a single word (cached; do not mutate the result)."""
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        p = -1
        for k in range(len(word) - 1):
            if word[k] > word[k + 1]:
                p = k
                break
        if p < 0:
            res = {word: ONE}
        else:
            j, i = word[p], word[p + 1]
            pre, post = word[:p], word[p + 2:]
            res = dict(self.nf_word(pre + (i, j) + post))
            for cw, c in self.rules.get((j, i), ()):
                for w, v in self.nf_word(pre + cw + post).items():
                    _accumulate(res, w, c * v)
        self._nf[word] = res
        return res

    def normalize_terms(self, raw) -> Dict[Word, Scalar]:
        if isinstance(raw, Mapping):
            raw = [(c, w) for w, c in raw.items()]
        out: Dict[Word, Scalar] = {}
        for c, w in raw:
            c = as_scalar(c)
            if not c:
                continue
            for ww, v in self.nf_word(self.word(w)).items():
                _accumulate(out, ww, c * v)
        return out

    def element(self, raw) -> "Element":
        """Build a normalized Element from ``{word: coeff}`` or ``[(coeff, word)]``."""
        return Element(self, self.normalize_terms(raw))

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for g, grp in itertools.groupby(word):
            k = len(list(grp))
            name = self.generators[g]
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)


def _is_neg(c: GaussianRational) -> bool:
    return (not c.im and c.re < 0) or (not c.re and c.im < 0)


def format_term(coeff: Scalar, body: str) -> Tuple[bool, str]:
    """Returns (negative, text) for coeff*body; ``body == ''`` means the unit."""
    if len(coeff.terms) == 1:
        (k, c), = coeff.terms.items()
        neg = _is_neg(c)
        if neg:
            c = -c
        if not body:
            return neg, format_monomial(c, k)
        if k == 0 and c == 1:
            return neg, body
        return neg, f"{format_monomial(c, k)}*{body}"
    if not body:
        return False, f"({format_scalar(coeff)})"
    return False, f"({format_scalar(coeff)})*{body}"


def join_terms(parts: Sequence[Tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for neg, text in parts:
        if not out:
            out.append("-" + text if neg else text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out)


class _Linear:
    """Shared linear-combination behaviour; subclasses define ``_space``."""

    __slots__ = ("terms", "_hash")

    def _new(self, terms):
        raise NotImplementedError

    def _space(self):
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self) or other._space() != self._space():
            raise PresentationError("operands live in different algebras")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if type(other) is type(self):
            return self._space() == other._space() and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, -c)
        return self._new(out)

    def scale(self, c) -> "_Linear":
        c = as_scalar(c)
        if not c:
            return self._new({})
        if c.is_one():
            return self
        return self._new({k: v * c for k, v in self.terms.items() if (v * c).terms})

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar, GaussianRational)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, ZERO)


def _is_fraction(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


class Element(_Linear):
    """Normal-ordered element of a presented algebra: ``{word: Scalar}``."""

    __slots__ = ("pres",)

    def __init__(self, pres: Presentation, terms: Dict[Word, Scalar]):
        self.pres = pres
        self.terms = terms
        self._hash = None

    def _new(self, terms):
        return Element(self.pres, terms)

    def _space(self):
        return self.pres

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Scalar, GaussianRational)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        out = self.pres.one()
        for _ in range(e):
            out = out * self
        return out

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def weights(self) -> set:
        pw = self.pres.word_weight
        return {pw(w) + k for w, c in self.terms.items() for k in c.terms}

    def sorted_terms(self) -> List[Tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: (-len(kv[0]), kv[0]))

    def __str__(self):
        fw = self.pres.format_word
        return join_terms([format_term(c, fw(w) if w else "") for w, c in self.sorted_terms()])

    def __repr__(self):
        return f"Element[{self.pres.name}]({self})"


class TensorElement(_Linear):
    """Element of P_1 (x) ... (x) P_k; keys are tuples of normal words."""

    __slots__ = ("factors",)

    def __init__(self, factors: Tuple[Presentation, ...], terms: Dict[Tuple[Word, ...], Scalar]):
        self.factors = tuple(factors)
        self.terms = terms
        self._hash = None

    @classmethod
    def one(cls, factors) -> "TensorElement":
        factors = tuple(factors)
        return cls(factors, {tuple(() for _ in factors): ONE})

    @classmethod
    def zero(cls, factors) -> "TensorElement":
        return cls(tuple(factors), {})

    @classmethod
    def pure(cls, *elements: Element) -> "TensorElement":
        """e_1 (x) e_2 (x) ... for Elements (or a TensorElement and Elements)."""
        factors = tuple(e.pres for e in elements)
        out: Dict[Tuple[Word, ...], Scalar] = {}
        for combo in itertools.product(*[list(e.terms.items()) for e in elements]):
            c = ONE
            for _, v in combo:
                c = c * v
            _accumulate(out, tuple(w for w, _ in combo), c)
        return cls(factors, out)

    def _new(self, terms):
        return TensorElement(self.factors, terms)

    def _space(self):
        return self.factors

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, (int, Scalar, GaussianRational)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def map_factor(self, k: int, f: Callable[[Element], object], target=None) -> "TensorElement":
        """Apply a linear map to factor ``k``; ``f`` returns Element or TensorElement."""
        out: Dict[Tuple[Word, ...], Scalar] = {}
        new_factors = None
        for key, c in self.terms.items():
            img = f(Element(self.factors[k], {key[k]: ONE}))
            if isinstance(img, Element):
                img_factors = (img.pres,)
                items = (((w,), v) for w, v in img.terms.items())
            else:
                img_factors = img.factors
                items = img.terms.items()
            nf_ = self.factors[:k] + img_factors + self.factors[k + 1:]
            if new_factors is None:
                new_factors = nf_
            for sub, v in items:
                _accumulate(out, key[:k] + sub + key[k + 1:], c * v)
        if new_factors is None:
            if target is None:
                raise PresentationError("cannot infer target factors of an empty map; pass target")
            new_factors = target
        return TensorElement(new_factors, out)

    def contract(self, k: int) -> "TensorElement":
        """Multiply factors k and k+1 together (they must share a presentation)."""
        p = self.factors[k]
        if self.factors[k + 1] is not p:
            raise PresentationError("contracted factors must be the same algebra")
        out: Dict[Tuple[Word, ...], Scalar] = {}
        for key, c in self.terms.items():
            for w, v in p.nf_word(key[k] + key[k + 1]).items():
                _accumulate(out, key[:k] + (w,) + key[k + 2:], c * v)
        return TensorElement(self.factors[:k + 1] + self.factors[k + 2:], out)

    def to_element(self) -> Element:
        if len(self.factors) != 1:
            raise PresentationError("only a one-factor tensor converts to an Element")
        return Element(self.factors[0], {k[0]: c for k, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: tuple((-len(w), w) for w in kv[0]))

    def __str__(self):
        parts = []
        for key, c in self.sorted_terms():
            body = " (x) ".join(p.format_word(w) for p, w in zip(self.factors, key))
            parts.append(format_term(c, body))
        return join_terms(parts)

    def __repr__(self):
        names = ",".join(p.name for p in self.factors)
        return f"TensorElement[{names}]({self})"


class WordMap:
    """(Anti)homomorphic extension of generator images, memoised per word.

    ``images`` may be Scalars, Elements or TensorElements; ``one`` is the
    image of the empty word.  With ``conjugate=True`` the map is antilinear.
    """

    def __init__(self, images: Sequence, one, anti: bool = False, conjugate: bool = False):
        self.images = list(images)
        self.one = one
        self.anti = anti
        self.conjugate = conjugate
        self._cache: Dict[Word, object] = {(): one}

    def word(self, w: Word):
        r = self._cache.get(w)
        if r is None:
            head = self.word(w[:-1])
            last = self.images[w[-1]]
            r = last * head if self.anti else head * last
            self._cache[w] = r
        return r

    def __call__(self, x):
        if isinstance(x, Element):
            total = None
            for w, c in x.terms.items():
                if self.conjugate:
                    c = c.conj()
                t = self.word(w) * c
                total = t if total is None else total + t
            if total is None:
                return ZERO if isinstance(self.one, Scalar) else self.one.scale(ZERO)
            return total
        raise TypeError(f"WordMap applies to Elements, not {type(x).__name__}")


# ---- module-level operations ---------------------------------------------


def normalize(raw, p: Presentation) -> Element:
    """Fully normal-ordered Element from a raw term list ``[(coeff, word)]``."""
    return p.element(raw)


def mul(a: Element, b: Element) -> Element:
    if a.pres is not b.pres:
        raise PresentationError("presentation mismatch in mul")
    p = a.pres
    out: Dict[Word, Scalar] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            if not u or not v or u[-1] <= v[0]:
                _accumulate(out, u + v, c)
            else:
                for w, x in p.nf_word(u + v).items():
                    _accumulate(out, w, c * x)
    return Element(p, out)


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    if a.factors != b.factors:
        raise PresentationError("factor mismatch in tensor_mul")
    factors = a.factors
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            c = ca * cb
            parts = []
            for p, u, v in zip(factors, ka, kb):
                if not u or not v or u[-1] <= v[0]:
                    parts.append(((u + v, ONE),))
                else:
                    parts.append(tuple(p.nf_word(u + v).items()))
            for combo in itertools.product(*parts):
                x = c
                for _, s in combo:
                    if not s.is_one():
                        x = x * s
                _accumulate(out, tuple(w for w, _ in combo), x)
    return TensorElement(factors, out)


def _need(p: Presentation):
    if p.coproduct_table is None:
        raise PresentationError(f"{p.name} has no Hopf structure attached")


def coproduct(a: Element) -> TensorElement:
    _need(a.pres)
    return a.pres._coproduct_map(a)


def counit(a: Element) -> Scalar:
    _need(a.pres)
    return a.pres._counit_map(a)


def antipode(a: Element) -> Element:
    _need(a.pres)
    return a.pres._antipode_map(a)


def star(a: Element) -> Element:
    """Antilinear antihomomorphic extension of the star table."""
    _need(a.pres)
    p = a.pres
    out = p.zero()
    for w, c in a.terms.items():
        out = out + p._star_map.word(w).scale(c.conj())
    return out
