"""The kappa-Poincare quantum group P_kappa.

Generators are ordered a^0 < ... < a^{n-1} < L[0,0] < L[0,1] < ... so that the
Lambda-a relation is applied as ``L a -> a L + (pure Lambda terms)``, which
lowers the a-degree and therefore terminates.  Orthogonality of Lambda is not
a rewrite rule; it is carried as a side ideal.
"""

from __future__ import annotations

from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .engine import Element, Presentation, PresentationError, TensorElement, Word, antipode, coproduct, counit, star
from .hopf import antipode_sides, coassociativity_sides, counit_sides
from .ideals import IdealSpan, graded_key
from .linalg import SparseEchelon, specialize, unspecialize
from .minkowski import Metric
from .report import Report
from .scalars import IL, ONE, ZERO, Scalar


class PoincareAlgebra:
    """P_kappa with Hopf tables and the two orthogonality families."""

    def __init__(self, metric: Metric, la_sign: int = 1):
        n = metric.n
        self.la_sign = la_sign
        self.metric = metric
        self.n = n
        g = metric.g
        names = [f"a[{m}]" for m in range(n)] + [f"L[{m},{v}]" for m in range(n) for v in range(n)]
        A, L = self.a_index, self.l_index
        rules: Dict[Tuple[int, int], Dict[Word, Scalar]] = {}
        # a^k a^0 -> a^0 a^k - (i/kappa) a^k
        for k in range(1, n):
            rules[(A(k), A(0))] = {(A(k),): -IL}
        # [L^m_v, a^al] = -(i/kappa)((L^m_0 - d^m_0) L^al_v + (L^0_v - d^0_v) g^{m al})
        for m in range(n):
            for v in range(n):
                for al in range(n):
                    corr: Dict[Word, Scalar] = {}

                    def add(w, c):
                        w = tuple(sorted(w))
                        corr[w] = corr.get(w, ZERO) + c

                    c = IL * la_sign
                    add((L(m, 0), L(al, v)), -c)
                    if m == 0:
                        add((L(al, v),), c)
                    if g(m, al):
                        add((L(0, v),), -c * g(m, al))
                        if v == 0:
                            add((), c * g(m, al))
                    rules[(L(m, v), A(al))] = corr
        weights = [1] * n + [0] * (n * n)
        ranks = [1] * n + [0] * (n * n)
        p = Presentation(f"P{n}", names, rules, weights=weights, ranks=ranks)
        self.presentation = p

        one = p.one()
        lam = [[p.gen(L(m, v)) for v in range(n)] for m in range(n)]
        a = [p.gen(A(m)) for m in range(n)]
        self._lam, self._a = lam, a
        # S(L^m_v) = L_v^m = g_{v al} g^{m be} L^al_be = g_vv g_mm L^v_m
        s_lam = [[lam[v][m].scale(g(v, v) * g(m, m)) for v in range(n)] for m in range(n)]
        s_a = [-_sum([s_lam[m][v] * a[v] for v in range(n)], p) for m in range(n)]
        d_lam = [
            [_tsum([TensorElement.pure(lam[m][al], lam[al][v]) for al in range(n)], (p, p)) for v in range(n)]
            for m in range(n)
        ]
        d_a = [
            _tsum([TensorElement.pure(lam[m][v], a[v]) for v in range(n)], (p, p)) + TensorElement.pure(a[m], one)
            for m in range(n)
        ]
        counit_t = [ZERO] * n + [ONE if m == v else ZERO for m in range(n) for v in range(n)]
        antipode_t = s_a + [s_lam[m][v] for m in range(n) for v in range(n)]
        coproduct_t = d_a + [d_lam[m][v] for m in range(n) for v in range(n)]
        star_t = [p.gen(k) for k in range(len(names))]
        p.attach_structure(counit=counit_t, antipode=antipode_t, star=star_t, coproduct=coproduct_t)

    def __repr__(self):
        return f"PoincareAlgebra(n={self.n}, metric={self.metric})"

    def a_index(self, mu: int) -> int:
        return mu

    def l_index(self, mu: int, nu: int) -> int:
        return self.n + mu * self.n + nu

    def a(self, mu: int) -> Element:
        return self._a[mu]

    def L(self, mu: int, nu: int) -> Element:
        return self._lam[mu][nu]

    def one(self) -> Element:
        return self.presentation.one()

    @cached_property
    def ortho_ideal(self) -> List[Element]:
        """L g L^T - g and L^T g L - g, entrywise, upper triangle of each."""
        n, g, p = self.n, self.metric.g, self.presentation
        out = []
        for m in range(n):
            for v in range(m, n):
                row = _sum([(self.L(m, al) * self.L(v, al)).scale(g(al, al)) for al in range(n)], p)
                out.append(row - p.scalar(g(m, v)))
        for m in range(n):
            for v in range(m, n):
                col = _sum([(self.L(al, m) * self.L(al, v)).scale(g(al, al)) for al in range(n)], p)
                out.append(col - p.scalar(g(m, v)))
        return out

    def ortho_span(self, max_degree: int = 4) -> IdealSpan:
        cache = self.__dict__.setdefault("_ortho_spans", {})
        if max_degree not in cache:
            cache[max_degree] = IdealSpan(self.ortho_ideal, "two-sided", max_degree, pres=self.presentation)
        return cache[max_degree]

    def ortho_reducer(self, lambda_degree: int = 4) -> "OrthoReducer":
        cache = self.__dict__.setdefault("_ortho_reducers", {})
        if lambda_degree not in cache:
            cache[lambda_degree] = OrthoReducer(self, lambda_degree)
        return cache[lambda_degree]

    def relations(self) -> List[Tuple[str, Element]]:
        """Raw defining relations of P_kappa as formal differences.

        Each entry is (label, element-builder) where the element is built in the
        *free* sense from images; see :meth:`relation_image`.
        """
        n = self.n
        out = []
        for mu in range(n):
            for nu in range(mu + 1, n):
                out.append(("a", (mu, nu)))
        for m in range(n):
            for v in range(n):
                for al in range(n):
                    out.append(("La", (m, v, al)))
        for idx1 in range(n * n):
            for idx2 in range(idx1 + 1, n * n):
                out.append(("LL", (divmod(idx1, n), divmod(idx2, n))))
        return out

    def relation_image(self, kind, idx, a_img, l_img, anti: bool = False, conj: bool = False):
        """Image of a raw relation under a map given on generators.

        For homomorphisms the relation ``x y - y x - rhs`` maps to
        f(x)f(y) - f(y)f(x) - f(rhs); for antihomomorphisms the product order
        flips.  ``conj`` conjugates the scalar coefficients of ``rhs``.
        """
        g = self.metric.g
        il = IL.conj() if conj else IL

        def comm(x, y):
            return (y * x - x * y) if anti else (x * y - y * x)

        if kind == "a":
            mu, nu = idx
            out = comm(a_img(mu), a_img(nu))
            if mu == 0:
                out = out - a_img(nu).scale(il)
            if nu == 0:
                out = out + a_img(mu).scale(il)
            return out
        if kind == "LL":
            (m1, v1), (m2, v2) = idx
            return comm(l_img(m1, v1), l_img(m2, v2))
        m, v, al = idx
        out = comm(l_img(m, v), a_img(al))
        # + (i/kappa)((L^m_0 - d^m_0) L^al_v + (L^0_v - d^0_v) g^{m al})
        t = l_img(al, v) * l_img(m, 0) if anti else l_img(m, 0) * l_img(al, v)
        if m == 0:
            t = t - l_img(al, v)
        if g(m, al):
            t = t + l_img(0, v).scale(g(m, al))
            if v == 0:
                t = t - _one_like(l_img(0, 0)).scale(g(m, al))
        return out + t.scale(il * self.la_sign)


class OrthoReducer:
    """Reduction modulo the orthogonality ideal O on P_kappa factors.

    Normal words of P_kappa are (a-part)(Lambda-part).  Because [a, O] lies
    in O (checked by :func:`verify_ortho_ideal`), the two-sided ideal is
    the direct sum over a-prefixes of a-prefix * O_Lambda, where O_Lambda is
    the ideal of the commutative Lambda subalgebra.  O_Lambda is truncated at
    Lambda-degree ``lambda_degree``.
    """

    def __init__(self, alg: "PoincareAlgebra", lambda_degree: int = 4):
        self.alg = alg
        self.lambda_degree = lambda_degree
        p = alg.presentation
        self.pres = p
        self.echelon = SparseEchelon(key=graded_key)
        lwords = [w for w in p.normal_words(max(0, lambda_degree - 2)) if all(k >= alg.n for k in w)]
        for o in alg.ortho_ideal:
            for w in lwords:
                e = o * Element(p, {w: ONE})
                if e:
                    self.echelon.add(specialize(e.terms, p.word_weight)[0])

    def _split(self, word: Word) -> Tuple[Word, Word]:
        n = self.alg.n
        k = 0
        while k < len(word) and word[k] < n:
            k += 1
        return word[:k], word[k:]

    def _reduce_terms(self, terms: Dict[Word, Scalar]) -> Dict[Word, Scalar]:
        """Canonical representative of an Element's terms modulo O."""
        p = self.pres
        groups: Dict[Tuple[Word, int], Dict[Word, Scalar]] = {}
        for w, c in terms.items():
            pre, lam = self._split(w)
            for k, v in c.terms.items():
                key = (pre, p.word_weight(w) + k)
                d = groups.setdefault(key, {})
                d[lam] = d.get(lam, ZERO) + Scalar({k: v})
        out: Dict[Word, Scalar] = {}
        for (pre, wt), lam_terms in groups.items():
            lam_terms = {w: c for w, c in lam_terms.items() if c}
            if not lam_terms:
                continue
            vec, _ = specialize(lam_terms, p.word_weight)
            red = self.echelon.reduce(vec)
            pre_w = p.word_weight(pre)
            for lw, c in unspecialize(red, wt - pre_w, p.word_weight).items():
                key = pre + lw
                out[key] = out.get(key, ZERO) + c
        return {w: c for w, c in out.items() if c}

    def normal_form(self, x):
        if isinstance(x, Element):
            return Element(x.pres, self._reduce_terms(x.terms))
        t = x
        for k, f in enumerate(t.factors):
            if f is self.pres:
                t = self._reduce_factor(t, k)
        return t

    def _reduce_factor(self, t: TensorElement, k: int) -> TensorElement:
        groups: Dict[Tuple, Dict[Word, Scalar]] = {}
        for key, c in t.terms.items():
            rest = key[:k] + key[k + 1:]
            groups.setdefault(rest, {})[key[k]] = c
        out: Dict[Tuple, Scalar] = {}
        for rest, terms in groups.items():
            for w, c in self._reduce_terms(terms).items():
                out[rest[:k] + (w,) + rest[k:]] = c
        return TensorElement(t.factors, out)

    def is_zero(self, x) -> bool:
        return not self.normal_form(x)

    def equal(self, a, b) -> bool:
        return self.is_zero(a - b)


def _one_like(e):
    if isinstance(e, Element):
        return e.pres.one()
    return TensorElement.one(e.factors)


def _sum(items, p: Presentation) -> Element:
    total = p.zero()
    for e in items:
        total = total + e
    return total


def _tsum(items, factors) -> TensorElement:
    total = TensorElement.zero(factors)
    for e in items:
        total = total + e
    return total


def build_poincare(metric: Metric) -> PoincareAlgebra:
    if metric.n < 2:
        raise PresentationError("n >= 2 required")
    return PoincareAlgebra(metric)


def verify_hopf_poincare(alg: PoincareAlgebra, max_degree: int = 2, lambda_degree: Optional[int] = None) -> Report:
    """Hopf axioms of P_kappa.

    Delta of the defining relations vanishes only modulo O (x) P + P (x) O,
    so every Delta-based identity is checked modulo orthogonality; the number
    of cases that already vanish exactly is reported alongside.  eps and *
    respect the relations exactly; S modulo orthogonality.  The antipode law
    m(S (x) id)Delta = eta eps uses orthogonality truncated at Lambda-degree
    ``lambda_degree`` (default max_degree + 2).  The mirror law
    m(id (x) S)Delta needs Lambda-degree 3 * max_degree, since S(a) carries
    Lambda-degree 2 per translation; the larger of the two is used for it.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    p = alg.presentation
    trunc = lambda_degree if lambda_degree is not None else max_degree + 2
    deep = max(trunc, 3 * max_degree)
    red = alg.ortho_reducer(trunc)
    red_deep = alg.ortho_reducer(deep)
    rep = Report("hopf-poincare", {"n": alg.n, "metric": str(alg.metric), "maxDegree": max_degree})

    rels = alg.relations()
    images = {
        "coproduct": (lambda m: coproduct(alg.a(m)), lambda m, v: coproduct(alg.L(m, v)), False, False),
        "counit": (lambda m: p.scalar(counit(alg.a(m))), lambda m, v: p.scalar(counit(alg.L(m, v))), False, False),
        "antipode": (lambda m: antipode(alg.a(m)), lambda m, v: antipode(alg.L(m, v)), True, False),
        "star": (lambda m: star(alg.a(m)), lambda m, v: star(alg.L(m, v)), True, True),
    }
    for name, (fa, fl, anti, conj) in images.items():
        exact, bad = 0, []
        for kind, idx in rels:
            img = alg.relation_image(kind, idx, fa, fl, anti=anti, conj=conj)
            if not img:
                exact += 1
            elif not red.is_zero(img):
                bad.append(f"{kind}{idx}")
        if name in ("counit", "star"):
            rep.add(f"poincare.relations.{name}-exact", exact == len(rels),
                    f"{exact} of {len(rels)} relations vanish exactly")
        else:
            rep.add(f"poincare.relations.{name}-mod-ortho", not bad,
                    _detail(bad, len(rels), "relations") + f"; {exact} vanish exactly")

    words = p.normal_words(max_degree)
    bad = {"coassociativity": [], "counit": [], "antipode-left": [], "antipode-right": []}
    exact = {k: 0 for k in bad}
    for w in words:
        a = Element(p, {w: ONE})
        label = p.format_word(w)
        lhs, rhs = coassociativity_sides(a)
        _tally(lhs - rhs, red, "coassociativity", label, bad, exact)
        l, r = counit_sides(a)
        if l == a and r == a:
            exact["counit"] += 1
        else:
            bad["counit"].append(label)
        eps = p.scalar(counit(a))
        l, r = antipode_sides(a)
        _tally(l - eps, red, "antipode-left", label, bad, exact)
        _tally(r - eps, red_deep, "antipode-right", label, bad, exact)
    for name, b in bad.items():
        how = "exact" if name == "counit" else "mod-ortho"
        d = deep if name == "antipode-right" else trunc
        rep.add(f"poincare.{name}-{how}", not b,
                _detail(b, len(words), "monomials") + f"; {exact[name]} vanish exactly; Lambda-degree {d}")
    rep.extend(verify_ortho_ideal(alg, trunc))
    return rep


def _tally(diff, red, name, label, bad, exact):
    if not diff:
        exact[name] += 1
    elif not red.is_zero(diff):
        bad[name].append(label)


def verify_ortho_ideal(alg: PoincareAlgebra, lambda_degree: int = 4) -> Report:
    """O is a Hopf *-ideal stable under the translations.

    eps(o) = 0, Delta(o) in O (x) P + P (x) O, S(o) in O, o* = o, and
    [a^alpha, o] in O (which justifies reducing per a-prefix).
    """
    rep = Report("ortho-ideal", {"n": alg.n, "metric": str(alg.metric), "maxDegree": lambda_degree})
    red = alg.ortho_reducer(lambda_degree)
    gens = alg.ortho_ideal
    checks = {
        "counit": lambda o: not counit(o),
        "coproduct": lambda o: red.is_zero(coproduct(o)),
        "antipode": lambda o: red.is_zero(antipode(o)),
        "star": lambda o: star(o) == o,
        "translation-stable": lambda o: all(
            red.is_zero(alg.a(m) * o - o * alg.a(m)) for m in range(alg.n)
        ),
    }
    for name, pred in checks.items():
        bad = [str(o) for o in gens if not pred(o)]
        rep.add(f"poincare.ortho.{name}", not bad, _detail(bad, len(gens), "generators"))
    return rep


def _detail(bad: List[str], total: int, what: str) -> str:
    if not bad:
        return f"{total} {what}"
    return f"first failure {bad[0]} ({len(bad)} of {total} {what})"
