"""The n-dimensional kappa-Minkowski Hopf *-algebra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .engine import Element, Presentation, PresentationError, TensorElement, antipode, coproduct, counit, star
from .hopf import antipode_sides, coassociativity_sides, counit_sides, star_tensor
from .report import Report
from .scalars import IL, ONE, ZERO


@dataclass(frozen=True)
class Metric:
    """Diagonal metric g = diag(signature); index 0 is the time direction."""

    signature: Tuple[int, ...]

    def __post_init__(self):
        sig = tuple(int(s) for s in self.signature)
        if any(s not in (1, -1) for s in sig):
            raise ValueError("metric signature entries must be +1 or -1")
        if len(sig) < 2:
            raise ValueError("dimension n must be at least 2")
        object.__setattr__(self, "signature", sig)

    @classmethod
    def minkowski(cls, n: int, time_sign: int = 1) -> "Metric":
        if n < 2:
            raise ValueError("dimension n must be at least 2")
        return cls((time_sign,) + (-time_sign,) * (n - 1))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Metric":
        """'+---' style strings; a single sign pair like '+-' is extended to n."""
        sig = []
        for ch in text.strip():
            if ch == "+":
                sig.append(1)
            elif ch == "-":
                sig.append(-1)
            else:
                raise ValueError(f"bad metric character {ch!r}")
        if n is not None and len(sig) != n:
            if len(sig) == 2 and n > 2:
                sig = [sig[0]] + [sig[1]] * (n - 1)
            else:
                raise ValueError(f"metric {text!r} does not have {n} entries")
        return cls(tuple(sig))

    @property
    def n(self) -> int:
        return len(self.signature)

    def g(self, mu: int, nu: int) -> int:
        """g^{mu nu} = g_{mu nu} (diagonal, entries +-1)."""
        return self.signature[mu] if mu == nu else 0

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signature)


def x_name(mu: int) -> str:
    return f"x{mu}"


class MinkowskiAlgebra:
    """M_kappa: [x0, xk] = (i/kappa) xk, spatial generators commute.

    Delta x = I (x) x + x (x) I, S x = -x, eps x = 0, all x hermitian.
    """

    def __init__(self, metric: Metric):
        n = metric.n
        self.metric = metric
        self.n = n
        # x^k x^0 -> x^0 x^k - (i/kappa) x^k
        rules = {(k, 0): {(k,): -IL} for k in range(1, n)}
        p = Presentation(f"M{n}", [x_name(m) for m in range(n)], rules)
        gens = [p.gen(m) for m in range(n)]
        one = p.one()
        delta = [TensorElement.pure(one, x) + TensorElement.pure(x, one) for x in gens]
        p.attach_structure(
            counit=[ZERO] * n,
            antipode=[-x for x in gens],
            star=list(gens),
            coproduct=delta,
        )
        self.presentation = p

    def __repr__(self):
        return f"MinkowskiAlgebra(n={self.n}, metric={self.metric})"

    def one(self) -> Element:
        return self.presentation.one()

    def x(self, mu: int) -> Element:
        return self.presentation.gen(mu)

    def x_lower(self, mu: int) -> Element:
        return self.x(mu).scale(self.metric.g(mu, mu))

    def x_squared(self) -> Element:
        """g_{mu nu} x^mu x^nu."""
        return _sum([(self.x(m) * self.x(m)).scale(self.metric.g(m, m)) for m in range(self.n)], self.presentation)

    def phi(self) -> Element:
        """x^2 + (i/kappa)(n-1) x^0."""
        return self.x_squared() + self.x(0).scale(IL * (self.n - 1))

    def x_munu(self, mu: int, nu: int) -> Element:
        """x^mu x^nu + (i/kappa)(g^{mu nu} x^0 - g^{0 mu} x^nu)."""
        g = self.metric.g
        out = self.x(mu) * self.x(nu)
        corr = self.x(0).scale(g(mu, nu)) - self.x(nu).scale(g(0, mu))
        return out + corr.scale(IL)

    def relations(self):
        """Index pairs mu < nu of the defining commutation relations."""
        return [(mu, nu) for mu in range(self.n) for nu in range(mu + 1, self.n)]

    def relation_image(self, mu: int, nu: int, gen_image):
        """Image of the raw (mu, nu) relation under a multiplicative map.

        ``gen_image(k)`` is the image of x^k; the result is
        f(x^mu)f(x^nu) - f(x^nu)f(x^mu) - (i/kappa)(d0^mu f(x^nu) - d0^nu f(x^mu)),
        which vanishes iff the map respects the relation.
        """
        a, b = gen_image(mu), gen_image(nu)
        out = a * b - b * a
        if mu == 0:
            out = out - b.scale(IL)
        if nu == 0:
            out = out + a.scale(IL)
        return out


def _sum(items: Sequence[Element], p: Presentation) -> Element:
    total = p.zero()
    for e in items:
        total = total + e
    return total


def build_minkowski(metric: Metric) -> MinkowskiAlgebra:
    if metric.n < 2:
        raise PresentationError("n >= 2 required")
    return MinkowskiAlgebra(metric)


def x_squared(alg: MinkowskiAlgebra) -> Element:
    return alg.x_squared()


def phi(alg: MinkowskiAlgebra) -> Element:
    return alg.phi()


def verify_hopf_minkowski(alg: MinkowskiAlgebra, max_degree: int = 3) -> Report:
    """Hopf and *-axioms on every normal monomial of degree <= max_degree, exactly."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    p = alg.presentation
    rep = Report("hopf-minkowski", {"n": alg.n, "metric": str(alg.metric), "maxDegree": max_degree})
    failures = {k: [] for k in ("coassociativity", "counit", "antipode", "star-coproduct", "antipode-star")}
    words = p.normal_words(max_degree)
    for w in words:
        a = Element(p, {w: ONE})
        label = p.format_word(w)
        lhs, rhs = coassociativity_sides(a)
        if lhs != rhs:
            failures["coassociativity"].append(label)
        l, r = counit_sides(a)
        if l != a or r != a:
            failures["counit"].append(label)
        eps = p.scalar(counit(a))
        l, r = antipode_sides(a)
        if l != eps or r != eps:
            failures["antipode"].append(label)
        if coproduct(star(a)) != star_tensor(coproduct(a)):
            failures["star-coproduct"].append(label)
        if star(antipode(star(antipode(a)))) != a:
            failures["antipode-star"].append(label)
    for name, bad in failures.items():
        detail = f"{len(words)} monomials" if not bad else f"first failing monomial {bad[0]} ({len(bad)} total)"
        rep.add(f"minkowski.{name}", not bad, detail)

    # relations are respected by Delta, eps, S and *
    gen = alg.x
    for mu, nu in alg.relations():
        dr = alg.relation_image(mu, nu, lambda k: coproduct(gen(k)))
        er = alg.relation_image(mu, nu, lambda k: p.scalar(counit(gen(k))))
        sr = _anti_relation(alg, mu, nu, antipode, conj=False)
        st = _anti_relation(alg, mu, nu, star, conj=True)
        ok = not dr and not er and not sr and not st
        rep.add(f"minkowski.relation[{mu},{nu}]", ok, "Delta, eps, S, * kill the relation")
    return rep


def _anti_relation(alg: MinkowskiAlgebra, mu: int, nu: int, f, conj: bool) -> Element:
    """Image of the (mu,nu) relation under an (anti-linear) antihomomorphism f."""
    a, b = f(alg.x(mu)), f(alg.x(nu))
    out = b * a - a * b
    c = IL.conj() if conj else IL
    if mu == 0:
        out = out - b.scale(c)
    if nu == 0:
        out = out + a.scale(c)
    return out
