"""Coactions on kappa-Minkowski space and their lifts to the universal bimodule.

The left coaction of P_kappa is rho_L(x^mu) = L^mu_nu (x) x^nu + a^mu (x) I.
M_kappa also coacts on itself from both sides through its own coproduct;
that pair carries the right-coaction and bicovariance identities.

Tensors with a P_kappa factor are compared modulo the orthogonality ideal,
which is the only place where Lambda-orthogonality enters.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import (
    Element,
    Presentation,
    PresentationError,
    TensorElement,
    Word,
    WordMap,
    _accumulate,
    antipode,
    coproduct,
    counit,
)
from .hopf import coproduct_on_factor, counit_on_factor
from .minkowski import Metric, MinkowskiAlgebra, build_minkowski
from .poincare import OrthoReducer, build_poincare
from .report import Report
from .scalars import ONE, GaussianRational, Scalar

__all__ = [
    "UniversalBimoduleElement",
    "Coaction",
    "CoactionContext",
    "build_context",
    "universal_d",
    "omega_univ",
    "rho_L",
    "lift_rho_L",
    "pi_projection",
    "rho_R_self",
    "lift_rho_R_self",
    "r_map",
    "verify_coaction_suite",
    "verify_x_munu_covariance",
]


class UniversalBimoduleElement:
    """Sum of a_k (x) b_k in A (x) A with sum a_k b_k = 0."""

    __slots__ = ("value",)

    def __init__(self, value: TensorElement, check: bool = True):
        if len(value.factors) != 2 or value.factors[0] is not value.factors[1]:
            raise PresentationError("universal bimodule elements live in A (x) A")
        if check and value.contract(0):
            raise ValueError("element is not in the kernel of multiplication")
        self.value = value

    @property
    def pres(self) -> Presentation:
        return self.value.factors[0]

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, UniversalBimoduleElement):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other):
        return UniversalBimoduleElement(self.value + other.value, check=False)

    def __sub__(self, other):
        return UniversalBimoduleElement(self.value - other.value, check=False)

    def __neg__(self):
        return UniversalBimoduleElement(-self.value, check=False)

    def scale(self, c) -> "UniversalBimoduleElement":
        return UniversalBimoduleElement(self.value.scale(c), check=False)

    def lmul(self, a: Element) -> "UniversalBimoduleElement":
        """a . (sum x (x) y) = sum a x (x) y"""
        return UniversalBimoduleElement(TensorElement.pure(a, self.pres.one()) * self.value, check=False)

    def rmul(self, a: Element) -> "UniversalBimoduleElement":
        """(sum x (x) y) . a = sum x (x) y a"""
        return UniversalBimoduleElement(self.value * TensorElement.pure(self.pres.one(), a), check=False)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"UniversalBimoduleElement({self.value})"


def _tensor(t) -> TensorElement:
    return t.value if isinstance(t, UniversalBimoduleElement) else t


def universal_d(a: Element) -> UniversalBimoduleElement:
    """D a = I (x) a - a (x) I."""
    one = a.pres.one()
    return UniversalBimoduleElement(TensorElement.pure(one, a) - TensorElement.pure(a, one), check=False)


def omega_univ(v: Element) -> UniversalBimoduleElement:
    """omega(v) = sum S(v_(1)) (x) v_(2) for v in ker eps."""
    if counit(v):
        raise ValueError(f"omega needs eps(v) = 0, got eps = {counit(v)}")
    d = coproduct(v)
    return UniversalBimoduleElement(d.map_factor(0, antipode, target=d.factors), check=False)


def r_map(q) -> TensorElement:
    """r(a (x) b) = sum a b_(1) (x) b_(2); inverse of omega on I (x) ker eps."""
    t = _tensor(q)
    p = t.factors[0]
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for (u, v), c in t.terms.items():
        for (b1, b2), cb in p._coproduct_map.word(v).terms.items():
            for w, s in p.nf_word(u + b1).items():
                _accumulate(out, (w, b2), c * cb * s)
    return TensorElement(t.factors, out)


class Coaction:
    """Algebra map A -> B (x) A (left) or A -> A (x) B (right), with its lift.

    ``images`` gives the image of each generator of A.
    """

    def __init__(self, A: Presentation, B: Presentation, images: Sequence[TensorElement], side: str = "left"):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.A, self.B, self.side = A, B, side
        self.factors = (B, A) if side == "left" else (A, B)
        self._map = WordMap(images, TensorElement.one(self.factors))

    def __call__(self, a: Element) -> TensorElement:
        if a.pres is not self.A:
            raise PresentationError("coaction applied to an element of the wrong algebra")
        r = self._map(a)
        return r if r.factors == self.factors else TensorElement.zero(self.factors)

    def word(self, w: Word) -> TensorElement:
        return self._map.word(w)

    @property
    def lifted_factors(self):
        A, B = self.A, self.B
        return (B, A, A) if self.side == "left" else (A, A, B)

    def lift(self, q) -> TensorElement:
        """Lift to A (x) A: sum a^k b^l (x) x^k (x) y^l (left) or the mirror."""
        t = _tensor(q)
        B = self.B
        out: Dict[Tuple[Word, ...], Scalar] = {}
        left = self.side == "left"
        for (u, v), c in t.terms.items():
            ru, rv = self.word(u), self.word(v)
            for ku, cu in ru.terms.items():
                for kv, cv in rv.terms.items():
                    cc = c * cu * cv
                    if left:
                        for w, s in B.nf_word(ku[0] + kv[0]).items():
                            _accumulate(out, (w, ku[1], kv[1]), cc * s)
                    else:
                        for w, s in B.nf_word(ku[1] + kv[1]).items():
                            _accumulate(out, (ku[0], kv[0], w), cc * s)
        return TensorElement(self.lifted_factors, out)

    def on_factor(self, t: TensorElement, k: int) -> TensorElement:
        """Apply the coaction to factor k of ``t`` (which must be A)."""
        if t.factors[k] is not self.A:
            raise PresentationError("factor is not the coacted algebra")
        out: Dict[Tuple[Word, ...], Scalar] = {}
        for key, c in t.terms.items():
            for sub, v in self.word(key[k]).terms.items():
                _accumulate(out, key[:k] + sub + key[k + 1:], c * v)
        return TensorElement(t.factors[:k] + self.factors + t.factors[k + 1:], out)

    def lift_on_factors(self, t: TensorElement, k: int) -> TensorElement:
        """Apply the lift to factors k, k+1 of ``t``."""
        out: Dict[Tuple[Word, ...], Scalar] = {}
        for key, c in t.terms.items():
            pair = TensorElement((self.A, self.A), {key[k:k + 2]: ONE})
            for sub, v in self.lift(pair).terms.items():
                _accumulate(out, key[:k] + sub + key[k + 2:], c * v)
        return TensorElement(t.factors[:k] + self.lifted_factors + t.factors[k + 2:], out)

    def embed(self, r: TensorElement, on_left: bool) -> TensorElement:
        """rho(x) placed in the lifted factors, I in the A-slot it does not touch.

        Multiplying from the left acts on the first A-slot, from the right on
        the second one (module structure of A^2).
        """
        out = {}
        for key, c in r.terms.items():
            if self.side == "left":
                b, a = key
                k = (b, a, ()) if on_left else (b, (), a)
            else:
                a, b = key
                k = (a, (), b) if on_left else ((), a, b)
            out[k] = c
        return TensorElement(self.lifted_factors, out)

    def act(self, r: TensorElement, q: TensorElement) -> TensorElement:
        """rho(x) . q"""
        return self.embed(r, True) * q

    def act_right(self, q: TensorElement, r: TensorElement) -> TensorElement:
        """q . rho(x)"""
        return q * self.embed(r, False)

    def d_on(self, r: TensorElement) -> TensorElement:
        """(id (x) D) r for a left coaction, (D (x) id) r for a right one."""
        k = 1 if self.side == "left" else 0
        return r.map_factor(k, lambda e: universal_d(e).value, target=self.lifted_factors)


class CoactionContext:
    """M_kappa and P_kappa for one metric, with every coaction between them."""

    def __init__(self, metric: Metric):
        self.metric = metric
        self.M = build_minkowski(metric)
        self.P = build_poincare(metric)
        m, p = self.M.presentation, self.P.presentation
        n = metric.n
        P = self.P
        images = []
        for mu in range(n):
            t = TensorElement.pure(P.a(mu), self.M.one())
            for nu in range(n):
                t = t + TensorElement.pure(P.L(mu, nu), self.M.x(nu))
            images.append(t)
        self.rho = Coaction(m, p, images, "left")
        pi_images = [self.M.x(mu) for mu in range(n)]
        pi_images += [self.M.one() if mu == nu else m.zero() for mu in range(n) for nu in range(n)]
        self._pi = WordMap(pi_images, self.M.one())
        delta = [coproduct(self.M.x(mu)) for mu in range(n)]
        self.self_left = Coaction(m, m, delta, "left")
        self.self_right = Coaction(m, m, delta, "right")

    def __repr__(self):
        return f"CoactionContext(n={self.metric.n}, metric={self.metric})"

    def pi(self, e: Element) -> Element:
        r = self._pi(e)
        return r if isinstance(r, Element) else self.M.presentation.zero()

    def reducer(self, lambda_degree: int = 4) -> OrthoReducer:
        return self.P.ortho_reducer(lambda_degree)


_CONTEXTS: Dict[Tuple[int, ...], CoactionContext] = {}
_BY_PRES: Dict[int, CoactionContext] = {}


def build_context(metric: Metric) -> CoactionContext:
    """Cached per metric, so every call shares one pair of presentations."""
    ctx = _CONTEXTS.get(metric.signature)
    if ctx is None:
        ctx = CoactionContext(metric)
        _CONTEXTS[metric.signature] = ctx
        _BY_PRES[id(ctx.M.presentation)] = ctx
        _BY_PRES[id(ctx.P.presentation)] = ctx
    return ctx


def context_of(pres: Presentation) -> CoactionContext:
    try:
        return _BY_PRES[id(pres)]
    except KeyError:
        raise PresentationError(f"{pres.name} was not built through build_context") from None


def rho_L(a: Element) -> TensorElement:
    """Left coaction of P_kappa: rho(x^mu) = L^mu_nu (x) x^nu + a^mu (x) I."""
    return context_of(a.pres).rho(a)


def lift_rho_L(q) -> TensorElement:
    """Lift of rho_L to A^2, landing in P (x) M (x) M."""
    return context_of(_tensor(q).factors[0]).rho.lift(q)


def pi_projection(p: Element) -> Element:
    """Pi(a^mu) = x^mu, Pi(L^mu_nu) = delta^mu_nu I."""
    return context_of(p.pres).pi(p)


def rho_R_self(a: Element) -> TensorElement:
    return context_of(a.pres).self_right(a)


def lift_rho_R_self(q) -> TensorElement:
    return context_of(_tensor(q).factors[0]).self_right.lift(q)


# ---- verification -----------------------------------------------------------


def random_bimodule_element(alg: MinkowskiAlgebra, rng: random.Random, max_degree: int = 3, terms: int = 3):
    """sum c_i x_i D y_i with random normal monomials; returns (element, pairs)."""
    p = alg.presentation
    words = p.normal_words(max_degree)
    pairs = []
    total = None
    for _ in range(rng.randint(1, terms)):
        while True:
            u, v = rng.choice(words), rng.choice(words)
            if v and len(u) + len(v) <= max_degree:
                break
        c = Scalar({rng.randint(0, 1): GaussianRational(rng.randint(-3, 3) or 1, rng.randint(-1, 1))})
        x = Element(p, {u: c})
        y = Element(p, {v: ONE})
        pairs.append((x, y))
        q = universal_d(y).lmul(x)
        total = q if total is None else total + q
    return total, pairs


class _Tally:
    """Collects per-check failures and exact-vs-modulo counts."""

    def __init__(self):
        self.bad: Dict[str, List[str]] = {}
        self.exact: Dict[str, int] = {}
        self.total: Dict[str, int] = {}

    def record(self, name: str, diff, label: str, red: Optional[OrthoReducer] = None):
        self.bad.setdefault(name, [])
        self.total[name] = self.total.get(name, 0) + 1
        if not diff:
            self.exact[name] = self.exact.get(name, 0) + 1
        elif red is None or not red.is_zero(diff):
            self.bad[name].append(label)

    def emit(self, rep: Report, what: str, modulo: Sequence[str] = ()):
        for name in sorted(self.bad):
            bad = self.bad[name]
            tot = self.total[name]
            detail = f"{tot} {what}" if not bad else f"first failure {bad[0]} ({len(bad)} of {tot} {what})"
            if name in modulo:
                ex = self.exact.get(name, 0)
                detail += "; all exact" if ex == tot else f"; {ex} exact, rest modulo orthogonality"
            rep.add(name, not bad, detail)


def verify_coaction_suite(ctx: CoactionContext, max_degree: int = 3, samples: int = 50, seed: int = 0,
                          lambda_degree: Optional[int] = None) -> Report:
    """Coaction axioms, the lift properties and the Pi intertwining relations.

    Identities that involve products in P_kappa are compared modulo the
    orthogonality ideal (Lambda-degree ``lambda_degree``, default
    max_degree + 2) and report how many cases already hold exactly.  The
    M_kappa self-coaction pair is checked exactly.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    M, P = ctx.M, ctx.P
    mp, pp = M.presentation, P.presentation
    red = ctx.reducer(lambda_degree if lambda_degree is not None else max_degree + 2)
    rho, rl, rr = ctx.rho, ctx.self_left, ctx.self_right
    rep = Report("coaction", {"n": M.n, "metric": str(ctx.metric), "maxDegree": max_degree, "seed": seed})
    tally = _Tally()
    mod = []

    def pm(name, diff, label):
        mod.append(name)
        tally.record(name, diff, label, red)

    def ex(name, diff, label):
        tally.record(name, diff, label)

    # coaction axioms, Pi intertwining and the lift of D, on monomials
    for w in mp.normal_words(max_degree):
        a = Element(mp, {w: ONE})
        lab = mp.format_word(w)
        r = rho(a)
        pm("coaction.axiom.coassociativity", rho.on_factor(r, 1) - coproduct_on_factor(r, 0), lab)
        ex("coaction.axiom.counit", counit_on_factor(r, 0).to_element() - a, lab)
        ex("coaction.pi.intertwines-delta", r.map_factor(0, ctx.pi, target=(mp, mp)) - coproduct(a), lab)
        pm("coaction.lift.d-compatible", rho.lift(universal_d(a)) - rho.d_on(r), lab)
        # right self-coaction: axioms and D-compatibility
        s = rr(a)
        ex("self.right.axiom.coassociativity", rr.on_factor(s, 0) - coproduct_on_factor(s, 1), lab)
        ex("self.right.axiom.counit", counit_on_factor(s, 1).to_element() - a, lab)
        ex("self.right.lift.d-compatible", rr.lift(universal_d(a)) - rr.d_on(s), lab)
        ex("self.pair.commute", rl.on_factor(rr(a), 0) - rr.on_factor(rl(a), 1), lab)

    for mu, nu in M.relations():
        lab = f"[x{mu},x{nu}]"
        pm("coaction.respects-relations", M.relation_image(mu, nu, lambda k: rho(M.x(k))), lab)

    # Pi is a Hopf map P -> M that kills the relations and orthogonality
    pwords = pp.normal_words(min(max_degree, 2))
    for w in pwords:
        e = Element(pp, {w: ONE})
        lhs = coproduct(ctx.pi(e))
        d = coproduct(e)
        rhs = d.map_factor(0, ctx.pi, target=(mp, pp)).map_factor(1, ctx.pi, target=(mp, mp))
        ex("coaction.pi.hopf-map", lhs - rhs, pp.format_word(w))
    for kind, idx in P.relations():
        img = P.relation_image(kind, idx, lambda m: ctx.pi(P.a(m)), lambda m, v: ctx.pi(P.L(m, v)))
        ex("coaction.pi.kills-relations", img, f"{kind}{idx}")
    for o in P.ortho_ideal:
        ex("coaction.pi.kills-orthogonality", ctx.pi(o), str(o))

    # lift properties on random universal one-forms sum x_i D y_i
    rng = random.Random(seed)
    for k in range(samples):
        q, pairs = random_bimodule_element(M, rng, max_degree)
        lab = f"sample {k}"
        lq = rho.lift(q)
        pm("coaction.lift.into-A2", lq.contract(1), lab)
        eq6 = None
        for x, y in pairs:
            t = rho.act(rho(x), rho.d_on(rho(y)))
            eq6 = t if eq6 is None else eq6 + t
        pm("coaction.lift.sum-x-dy", lq - eq6, lab)
        x = Element(mp, {rng.choice(mp.normal_words(1)): ONE})
        pm("coaction.lift.left-module", rho.lift(q.lmul(x)) - rho.act(rho(x), lq), lab)
        pm("coaction.lift.right-module", rho.lift(q.rmul(x)) - rho.act_right(lq, rho(x)), lab)
        pm("coaction.lift.coassociativity", rho.lift_on_factors(lq, 1) - coproduct_on_factor(lq, 0), lab)
        ex("coaction.lift.counit", counit_on_factor(lq, 0) - q.value, lab)
        # mirrors for the right self-coaction, and bicovariance of the pair
        rq = rr.lift(q)
        ex("self.right.lift.into-A2", rq.contract(0), lab)
        e13 = None
        for xx, y in pairs:
            t = rr.act(rr(xx), rr.d_on(rr(y)))
            e13 = t if e13 is None else e13 + t
        ex("self.right.lift.sum-x-dy", rq - e13, lab)
        ex("self.right.lift.left-module", rr.lift(q.lmul(x)) - rr.act(rr(x), rq), lab)
        ex("self.right.lift.right-module", rr.lift(q.rmul(x)) - rr.act_right(rq, rr(x)), lab)
        ex("self.right.lift.coassociativity", rr.lift_on_factors(rq, 0) - coproduct_on_factor(rq, 2), lab)
        ex("self.right.lift.counit", counit_on_factor(rq, 2) - q.value, lab)
        ex("self.pair.lift-commute", rr.lift_on_factors(rl.lift(q), 1) - rl.lift_on_factors(rq, 0), lab)

    tally.emit(rep, "cases", modulo=set(mod))
    return rep


def covariance_rhs(ctx: CoactionContext, mu: int, nu: int) -> TensorElement:
    """sum_{al,be} L^mu_al L^nu_be (x) omega(x^{al be})."""
    P, M = ctx.P, ctx.M
    n = M.n
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for al in range(n):
        for be in range(n):
            coeff = P.L(mu, al) * P.L(nu, be)
            om = omega_univ(M.x_munu(al, be)).value
            for pw, pc in coeff.terms.items():
                for (u, v), c in om.terms.items():
                    _accumulate(out, (pw, u, v), pc * c)
    return TensorElement(ctx.rho.lifted_factors, out)


def verify_x_munu_covariance(ctx: CoactionContext, lambda_degree: int = 4) -> Report:
    """The quadratic tensor omega(x^{mu nu}) transforms as a Lorentz tensor and omega(phi) is invariant."""
    M = ctx.M
    n = M.n
    red = ctx.reducer(lambda_degree)
    rep = Report("x-munu-covariance", {"n": n, "metric": str(ctx.metric), "maxDegree": lambda_degree})
    asym = [f"({mu},{nu})" for mu in range(n) for nu in range(mu + 1, n) if M.x_munu(mu, nu) != M.x_munu(nu, mu)]
    rep.add("covariance.x-munu-symmetric", not asym,
            f"{n * (n - 1) // 2} pairs" if not asym else f"x^(mu nu) != x^(nu mu) for {', '.join(asym)}")
    tally = _Tally()
    for mu in range(n):
        for nu in range(n):
            lhs = lift_rho_L(omega_univ(M.x_munu(mu, nu)))
            tally.record("covariance.x-munu", lhs - covariance_rhs(ctx, mu, nu), f"({mu},{nu})", red)
    om = omega_univ(M.phi())
    inv = TensorElement((ctx.P.presentation,) + om.value.factors, {((),) + k: c for k, c in om.value.terms.items()})
    tally.record("covariance.phi-invariant", lift_rho_L(om) - inv, "phi", red)
    tally.emit(rep, "cases", modulo={"covariance.x-munu", "covariance.phi-invariant"})
    return rep
