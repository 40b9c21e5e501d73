"""The (n+1)-dimensional bicovariant first-order calculus on kappa-Minkowski space.

One-forms are kept left-canonical, sum_b f_b * b, over the basis
t0 .. t{n-1} (the tau^mu) and tau.  Right multiplication by x^nu uses

    [tau^mu, x^nu] = (i/kappa) g^{0 mu} tau^nu - (i/kappa) g^{mu nu} tau^0 + (1/n) g^{mu nu} tau
    [tau, x^mu]    = -(n/kappa^2) tau^mu

Every commutator coefficient is a constant, which is what makes the flip on
basis pairs a bimodule map and the exterior square the plain antisymmetric one.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .coaction import CoactionContext, build_context, omega_univ
from .engine import Element, PresentationError, TensorElement, Word, _accumulate, star
from .minkowski import Metric, MinkowskiAlgebra
from .report import Report
from .scalars import IL, LAM, ONE, ZERO, GaussianRational, Scalar

__all__ = [
    "Calculus",
    "OneForm",
    "TwoForm",
    "FormTensor",
    "build_calculus",
    "right_mul",
    "d0",
    "d1",
    "d_phi_check",
    "star_form",
    "coact_form",
    "sigma",
    "wedge",
    "verify_calculus_suite",
]


class Calculus:
    """Basis data and commutation rules for one metric."""

    def __init__(self, ctx: CoactionContext):
        self.ctx = ctx
        self.M: MinkowskiAlgebra = ctx.M
        self.metric = ctx.metric
        n = self.n = ctx.M.n
        self.pres = ctx.M.presentation
        self.TAU = n
        self.basis = list(range(n + 1))
        self.names = [f"t{m}" for m in range(n)] + ["tau"]
        g = self.metric.g
        # comm[b][nu]: constant one-form [b, x^nu] as {basis: Scalar}
        self.comm: List[List[Dict[int, Scalar]]] = []
        for mu in range(n):
            row = []
            for nu in range(n):
                c: Dict[int, Scalar] = {}
                if g(0, mu):
                    _acc(c, nu, IL * g(0, mu))
                if g(mu, nu):
                    _acc(c, 0, -IL * g(mu, nu))
                    _acc(c, n, Scalar.const(Fraction(g(mu, nu), n)))
                row.append(c)
            self.comm.append(row)
        self.comm.append([{mu: -(LAM * LAM) * n} for mu in range(n)])
        self._basis_word: Dict[Tuple[int, Word], "OneForm"] = {}
        self._d_word: Dict[Word, "OneForm"] = {}
        self._d1_tau: Optional["TwoForm"] = None

    def __repr__(self):
        return f"Calculus(n={self.n}, metric={self.metric})"

    # construction helpers
    def zero(self) -> "OneForm":
        return OneForm(self, {})

    def form(self, b: int, coeff: Optional[Element] = None) -> "OneForm":
        return OneForm(self, {b: coeff if coeff is not None else self.pres.one()})

    def t(self, mu: int) -> "OneForm":
        return self.form(mu)

    @property
    def tau(self) -> "OneForm":
        return self.form(self.TAU)

    def name(self, b: int) -> str:
        return self.names[b]

    def star_sign(self, b: int) -> int:
        return -1 if b == self.TAU else 1

    def basis_times_gen(self, b: int, nu: int) -> "OneForm":
        """b * x^nu in left-canonical form."""
        out = {b: self.M.x(nu)}
        for c, s in self.comm[b][nu].items():
            e = self.pres.scalar(s)
            out[c] = out[c] + e if c in out else e
        return OneForm(self, out)

    def basis_times_word(self, b: int, w: Word) -> "OneForm":
        key = (b, w)
        r = self._basis_word.get(key)
        if r is None:
            if not w:
                r = self.form(b)
            else:
                r = _rmul_gen(self.basis_times_word(b, w[:-1]), w[-1])
            self._basis_word[key] = r
        return r

    def d_word(self, w: Word) -> "OneForm":
        """d of a word by the Leibniz rule: d(u x) = d(u) x + u dx."""
        r = self._d_word.get(w)
        if r is None:
            if not w:
                r = self.zero()
            else:
                head = w[:-1]
                u = Element(self.pres, {head: ONE})
                r = _rmul_gen(self.d_word(head), w[-1]) + self.t(w[-1]).lmul(u)
            self._d_word[w] = r
        return r


def _acc(d: Dict, k, c: Scalar) -> None:
    v = d.get(k, ZERO) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


_CALCULI: Dict[Tuple[int, ...], Calculus] = {}


def build_calculus(metric: Metric) -> Calculus:
    cal = _CALCULI.get(metric.signature)
    if cal is None:
        cal = _CALCULI[metric.signature] = Calculus(build_context(metric))
    return cal


class OneForm:
    """Left-canonical one-form sum_b f_b * b."""

    __slots__ = ("cal", "coeffs")

    def __init__(self, cal: Calculus, coeffs: Dict[int, Element]):
        self.cal = cal
        self.coeffs = {b: f for b, f in coeffs.items() if f}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, OneForm):
            return self.cal is other.cal and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((b, f) for b, f in self.coeffs.items())))

    def coefficient(self, b: int) -> Element:
        return self.coeffs.get(b, self.cal.pres.zero())

    def _combine(self, other, sign):
        if not isinstance(other, OneForm) or other.cal is not self.cal:
            raise PresentationError("one-forms over different calculi")
        out = dict(self.coeffs)
        for b, f in other.coeffs.items():
            f = f if sign > 0 else -f
            out[b] = out[b] + f if b in out else f
        return OneForm(self.cal, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return OneForm(self.cal, {b: -f for b, f in self.coeffs.items()})

    def scale(self, c) -> "OneForm":
        return OneForm(self.cal, {b: f.scale(c) for b, f in self.coeffs.items()})

    def lmul(self, a: Element) -> "OneForm":
        """a * (sum f_b b) = sum (a f_b) b"""
        return OneForm(self.cal, {b: a * f for b, f in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return right_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return self.lmul(other)
        return NotImplemented

    def __str__(self):
        parts = []
        for b in self.cal.basis:
            f = self.coeffs.get(b)
            if f is None:
                continue
            parts.append(_format_coeff(f, self.cal.name(b)))
        return _join(parts)

    def __repr__(self):
        return f"OneForm({self})"


def _format_coeff(f: Element, body: str) -> str:
    s = str(f)
    if len(f) > 1:
        return f"({s})*{body}"
    if s == "1":
        return body
    if s == "-1":
        return "-" + body
    return f"{s}*{body}"


def _join(parts: List[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _rmul_gen(f: OneForm, nu: int) -> OneForm:
    """f * x^nu for a single generator."""
    cal = f.cal
    x = cal.M.x(nu)
    out: Dict[int, Element] = {}
    for b, fb in f.coeffs.items():
        e = fb * x
        out[b] = out[b] + e if b in out else e
        for c, s in cal.comm[b][nu].items():
            e = fb.scale(s)
            out[c] = out[c] + e if c in out else e
    return OneForm(cal, out)


def right_mul(f: OneForm, a: Element) -> OneForm:
    """f * a rewritten to left-canonical form."""
    cal = f.cal
    if a.pres is not cal.pres:
        raise PresentationError("right multiplication by an element of another algebra")
    out = cal.zero()
    for b, fb in f.coeffs.items():
        for w, c in a.terms.items():
            out = out + cal.basis_times_word(b, w).lmul(fb.scale(c))
    return out


def d0(a: Element, cal: Optional[Calculus] = None) -> OneForm:
    """Exterior derivative on functions; d(x^mu) = tau^mu, Leibniz rule."""
    cal = cal or _calculus_of(a)
    out = cal.zero()
    for w, c in a.terms.items():
        out = out + cal.d_word(w).scale(c)
    return out


def d_raw_word(cal: Calculus, symbols: Iterable[int]) -> OneForm:
    """Leibniz d of an arbitrary (not necessarily normal) product of generators."""
    out = cal.zero()
    prefix = cal.pres.one()
    for s in symbols:
        out = _rmul_gen(out, s) + cal.t(s).lmul(prefix)
        prefix = prefix * cal.M.x(s)
    return out


def _calculus_of(a: Element) -> Calculus:
    from .coaction import context_of

    ctx = context_of(a.pres)
    return build_calculus(ctx.metric)


def d_phi_check(cal: Calculus) -> Tuple[bool, OneForm, OneForm]:
    """d(phi) == tau + 2 x_mu tau^mu; returns (ok, lhs, rhs)."""
    M = cal.M
    lhs = d0(M.phi(), cal)
    rhs = cal.tau
    for mu in range(cal.n):
        rhs = rhs + cal.t(mu).lmul(M.x_lower(mu)).scale(2)
    return lhs == rhs, lhs, rhs


def project(cal: Calculus, q) -> OneForm:
    """Image of a universal one-form sum a (x) b in Omega^1: sum a * d(b)."""
    t = q.value if hasattr(q, "value") else q
    out = cal.zero()
    for (u, v), c in t.terms.items():
        out = out + cal.d_word(v).lmul(Element(cal.pres, {u: c}))
    return out


def star_form(f: OneForm) -> OneForm:
    """(f_b b)* = b* f_b*, with (tau^mu)* = tau^mu and tau* = -tau."""
    cal = f.cal
    out = cal.zero()
    for b, fb in f.coeffs.items():
        out = out + right_mul(cal.form(b).scale(cal.star_sign(b)), star(fb))
    return out


# ---- two-tensors and two-forms ------------------------------------------


class FormTensor:
    """sum f_{bc} b (x) c over ordered basis pairs, left coefficients."""

    __slots__ = ("cal", "coeffs")

    def __init__(self, cal: Calculus, coeffs: Dict[Tuple[int, int], Element]):
        self.cal = cal
        self.coeffs = {k: f for k, f in coeffs.items() if f}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FormTensor):
            return self.cal is other.cal and self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, f in other.coeffs.items():
            out[k] = out[k] + f if k in out else f
        return FormTensor(self.cal, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "FormTensor":
        return FormTensor(self.cal, {k: f.scale(c) for k, f in self.coeffs.items()})

    def __str__(self):
        cal = self.cal
        parts = [_format_coeff(self.coeffs[k], f"{cal.name(k[0])}(x){cal.name(k[1])}") for k in sorted(self.coeffs)]
        return _join(parts)


def tensor_forms(f: OneForm, g: OneForm) -> FormTensor:
    """f (x) g over the algebra: b (x) g_c c = (b g_c) (x) c."""
    cal = f.cal
    out: Dict[Tuple[int, int], Element] = {}
    for c, gc in g.coeffs.items():
        for b, fb in f.coeffs.items():
            moved = right_mul(cal.form(b), gc).lmul(fb)
            for d, h in moved.coeffs.items():
                k = (d, c)
                out[k] = out[k] + h if k in out else h
    return FormTensor(cal, out)


def sigma(t: FormTensor) -> FormTensor:
    """Flip of basis pairs, extended left-linearly; sigma(tau (x) tau) = tau (x) tau."""
    return FormTensor(t.cal, {(c, b): f for (b, c), f in t.coeffs.items()})


def _wedge_key(cal: Calculus, b: int, c: int) -> Tuple[int, Tuple[int, int]]:
    """Canonical two-form basis key and sign: t_mu^t_nu (mu < nu), tau^t_mu."""
    if b == c:
        return 0, (b, c)
    order = lambda k: -1 if k == cal.TAU else k  # noqa: E731
    return (1, (b, c)) if order(b) < order(c) else (-1, (c, b))


class TwoForm:
    """sum f_k k over t_mu^t_nu (mu < nu) and tau^t_mu."""

    __slots__ = ("cal", "coeffs")

    def __init__(self, cal: Calculus, coeffs: Dict[Tuple[int, int], Element]):
        self.cal = cal
        self.coeffs = {k: f for k, f in coeffs.items() if f}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TwoForm):
            return self.cal is other.cal and self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, f in other.coeffs.items():
            out[k] = out[k] + f if k in out else f
        return TwoForm(self.cal, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TwoForm":
        return TwoForm(self.cal, {k: f.scale(c) for k, f in self.coeffs.items()})

    def lmul(self, a: Element) -> "TwoForm":
        return TwoForm(self.cal, {k: a * f for k, f in self.coeffs.items()})

    def _keys(self):
        cal = self.cal
        return sorted(self.coeffs, key=lambda k: tuple(-1 if i == cal.TAU else i for i in k))

    def __str__(self):
        cal = self.cal
        parts = [_format_coeff(self.coeffs[k], f"{cal.name(k[0])}^{cal.name(k[1])}") for k in self._keys()]
        return _join(parts)

    def __repr__(self):
        return f"TwoForm({self})"


def antisymmetrize(t: FormTensor) -> TwoForm:
    """Image in Gamma^(x)2 / ker(I - sigma)."""
    cal = t.cal
    out: Dict[Tuple[int, int], Element] = {}
    for (b, c), f in t.coeffs.items():
        sign, k = _wedge_key(cal, b, c)
        if sign:
            e = f.scale(sign)
            out[k] = out[k] + e if k in out else e
    return TwoForm(cal, out)


def wedge(f: OneForm, g: OneForm) -> TwoForm:
    return antisymmetrize(tensor_forms(f, g))


def d1_tau(cal: Calculus) -> TwoForm:
    """d(tau) from tau = d(phi) - 2 x_mu d(x^mu): d(tau) = -2 d(x_mu) ^ d(x^mu)."""
    if cal._d1_tau is None:
        out = TwoForm(cal, {})
        for mu in range(cal.n):
            out = out + wedge(d0(cal.M.x_lower(mu), cal), cal.t(mu)).scale(-2)
        cal._d1_tau = out
    return cal._d1_tau


def d1(f: OneForm) -> TwoForm:
    """d(f_b b) = d(f_b) ^ b + f_b d(b), with d(tau^mu) = 0."""
    cal = f.cal
    out = TwoForm(cal, {})
    for b, fb in f.coeffs.items():
        out = out + wedge(d0(fb, cal), cal.form(b))
        if b == cal.TAU:
            out = out + d1_tau(cal).lmul(fb)
    return out


# ---- coaction on forms --------------------------------------------------


class FormCoaction:
    """Element of P (x) Omega^1: sum over basis b of T_b (x) b, T_b in P (x) M."""

    __slots__ = ("cal", "parts")

    def __init__(self, cal: Calculus, parts: Dict[int, TensorElement]):
        self.cal = cal
        self.parts = {b: t for b, t in parts.items() if t}

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        return isinstance(other, FormCoaction) and self.parts == other.parts

    def __sub__(self, other):
        out = dict(self.parts)
        for b, t in other.parts.items():
            out[b] = out[b] - t if b in out else -t
        return FormCoaction(self.cal, out)

    def reduce(self, red) -> "FormCoaction":
        return FormCoaction(self.cal, {b: red.normal_form(t) for b, t in self.parts.items()})

    def __str__(self):
        cal = self.cal
        parts = [f"({t})*{cal.name(b)}" for b, t in sorted(self.parts.items())]
        return " + ".join(parts) if parts else "0"


def basis_coaction(cal: Calculus, b: int) -> Dict[int, TensorElement]:
    """rho(tau^mu) = L^mu_nu (x) tau^nu, rho(tau) = I (x) tau."""
    P, M = cal.ctx.P, cal.M
    if b == cal.TAU:
        return {b: TensorElement.pure(P.one(), M.one())}
    return {nu: TensorElement.pure(P.L(b, nu), M.one()) for nu in range(cal.n)}


def coact_form(f: OneForm) -> FormCoaction:
    """rho(f_b b) = rho_L(f_b) rho(b)."""
    cal = f.cal
    rho = cal.ctx.rho
    out: Dict[int, TensorElement] = {}
    for b, fb in f.coeffs.items():
        r = rho(fb)
        for c, t in basis_coaction(cal, b).items():
            e = r * t
            out[c] = out[c] + e if c in out else e
    return FormCoaction(cal, out)


def project_lifted(cal: Calculus, t: TensorElement) -> FormCoaction:
    """(id (x) pi) of an element of P (x) A^2."""
    groups: Dict[Word, Dict[Tuple[Word, Word], Scalar]] = {}
    for (pw, u, v), c in t.terms.items():
        groups.setdefault(pw, {})[(u, v)] = c
    out: Dict[int, TensorElement] = {}
    P = cal.ctx.P.presentation
    for pw, terms in groups.items():
        form = project(cal, TensorElement((cal.pres, cal.pres), terms))
        for b, fb in form.coeffs.items():
            e = TensorElement.pure(Element(P, {pw: ONE}), fb)
            out[b] = out[b] + e if b in out else e
    return FormCoaction(cal, out)


# ---- verification -------------------------------------------------------


def _random_element(cal: Calculus, rng: random.Random, max_degree: int, terms: int = 3) -> Element:
    words = cal.pres.normal_words(max_degree)
    out = cal.pres.zero()
    for _ in range(rng.randint(1, terms)):
        c = Scalar({rng.randint(0, 1): GaussianRational(rng.randint(-3, 3) or 1, rng.randint(-1, 1))})
        out = out + Element(cal.pres, {rng.choice(words): c})
    return out


def _random_form(cal: Calculus, rng: random.Random, max_degree: int) -> OneForm:
    return OneForm(cal, {b: _random_element(cal, rng, max_degree, 2) for b in cal.basis if rng.random() < 0.6})


def verify_calculus_suite(cal: Calculus, max_degree: int = 4, samples: int = 30, seed: int = 0,
                          lambda_degree: int = 4) -> Report:
    """Internal consistency of the calculus and its covariance."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    M, p, n = cal.M, cal.pres, cal.n
    rep = Report("calculus", {"n": n, "metric": str(cal.metric), "maxDegree": max_degree, "seed": seed})
    rep.add("calculus.dimension", len(cal.basis) == n + 1, f"{len(cal.basis)} basis one-forms")

    # (a) bimodule consistency: [[b,x^mu],x^nu] - [[b,x^nu],x^mu] = [b,[x^mu,x^nu]]
    bad = []
    for b in cal.basis:
        for mu in range(n):
            for nu in range(n):
                lhs = _rmul_gen(_rmul_gen(cal.form(b), mu), nu)
                rhs = right_mul(cal.form(b), M.x(mu) * M.x(nu))
                if lhs != rhs:
                    bad.append(f"{cal.name(b)},x{mu},x{nu}")
    rep.add("calculus.bimodule-jacobi", not bad, _detail(bad, (n + 1) * n * n, "(basis, mu, nu) triples"))

    # (b) d respects the defining relations
    bad = []
    for mu, nu in M.relations():
        lhs = d_raw_word(cal, (mu, nu)) - d_raw_word(cal, (nu, mu))
        rhs = cal.zero()
        if mu == 0:
            rhs = rhs + cal.t(nu).scale(IL)
        if nu == 0:
            rhs = rhs - cal.t(mu).scale(IL)
        if lhs != rhs:
            bad.append(f"[x{mu},x{nu}]")
    rep.add("calculus.d-relations", not bad, _detail(bad, len(M.relations()), "relations"))

    # Leibniz and right-action associativity on random data
    rng = random.Random(seed)
    bad_l, bad_r = [], []
    for k in range(samples):
        a = _random_element(cal, rng, 2)
        b = _random_element(cal, rng, 2)
        if d0(a * b, cal) != right_mul(d0(a, cal), b) + d0(b, cal).lmul(a):
            bad_l.append(f"sample {k}")
        f = _random_form(cal, rng, 1)
        if right_mul(right_mul(f, a), b) != right_mul(f, a * b):
            bad_r.append(f"sample {k}")
    rep.add("calculus.leibniz", not bad_l, _detail(bad_l, samples, "random pairs"))
    rep.add("calculus.right-action", not bad_r, _detail(bad_r, samples, "random triples"))

    # (c) d d = 0
    words = p.normal_words(max_degree)
    bad = [p.format_word(w) for w in words if d1(cal.d_word(w))]
    rep.add("calculus.d-squared", not bad, _detail(bad, len(words), "monomials"))
    ok_phi, lhs, rhs = d_phi_check(cal)
    rep.add("calculus.d-phi", ok_phi, f"d(phi) = {lhs}" if ok_phi else f"d(phi) = {lhs} but tau + 2 x_mu t_mu = {rhs}")
    dt = d1_tau(cal)
    dtm = [mu for mu in range(n) if d1(cal.t(mu))]
    rep.add("calculus.d-tau", not dt and not dtm, f"d(tau) = {dt}, d(tau^mu) = 0 for all mu" if not dtm
            else f"d(tau^mu) != 0 for mu in {dtm}")
    rep.note("calculus.d-tau.printed-formula",
             "the printed right-hand side -2 d(tau^mu) ^ d(tau_mu) vanishes because d(tau^mu) = 0; "
             "the computed d(tau) = -2 t_mu ^ t^mu is also 0, so the two agree, but the printed "
             "expression is probably meant as one in t^mu ^ t_mu")

    # (d) star: consistent with the commutation rules, involutive, commutes with d
    bad = []
    for b in cal.basis:
        for nu in range(n):
            lhs = star_form(_rmul_gen(cal.form(b), nu))
            rhs = cal.form(b).scale(cal.star_sign(b)).lmul(M.x(nu))
            if lhs != rhs:
                bad.append(f"{cal.name(b)},x{nu}")
    rep.add("calculus.star-rules", not bad, _detail(bad, (n + 1) * n, "commutation rules"))
    bad = []
    for k in range(samples):
        f = _random_form(cal, rng, 2)
        if star_form(star_form(f)) != f:
            bad.append(f"sample {k}")
    rep.add("calculus.star-involution", not bad, _detail(bad, samples, "random forms"))
    w3 = p.normal_words(min(max_degree, 3))
    bad = [p.format_word(w) for w in w3 if star_form(cal.d_word(w)) != d0(star(Element(p, {w: ONE})), cal)]
    rep.add("calculus.star-d", not bad, _detail(bad, len(w3), "monomials"))

    # sigma: involutive bimodule map
    bad = []
    for b in cal.basis:
        for c in cal.basis:
            t = FormTensor(cal, {(b, c): p.one()})
            if sigma(sigma(t)) != t:
                bad.append(f"{cal.name(b)}(x){cal.name(c)}")
            for nu in range(n):
                # sigma((b (x) c) x) = sigma(b (x) c) x
                tx = tensor_forms(cal.form(b), _rmul_gen(cal.form(c), nu))
                if sigma(tx) != _flip_times(cal, b, c, nu):
                    bad.append(f"{cal.name(b)}(x){cal.name(c)}*x{nu}")
    rep.add("calculus.sigma", not bad, _detail(bad, (n + 1) ** 2, "basis pairs"))

    # (e) (id (x) sigma) rho2 = rho2 sigma on basis pairs
    bad = []
    for b in cal.basis:
        for c in cal.basis:
            if _rho2_sigma(cal, b, c):
                bad.append(f"{cal.name(b)}(x){cal.name(c)}")
    rep.add("calculus.sigma-covariance", not bad, _detail(bad, (n + 1) ** 2, "basis pairs"))

    # coaction on forms: table matches the universal computation; coaction axioms
    red = cal.ctx.reducer(lambda_degree)
    bad = []
    gens = [(mu, M.x(mu)) for mu in range(n)] + [(cal.TAU, M.phi())]
    for b, v in gens:
        om = omega_univ(v)
        if project(cal, om) != cal.form(b):
            bad.append(f"pi(omega) for {cal.name(b)}")
        univ = project_lifted(cal, cal.ctx.rho.lift(om)).reduce(red)
        table = coact_form(cal.form(b)).reduce(red)
        if univ != table:
            bad.append(cal.name(b))
    rep.add("calculus.coaction-table", not bad, _detail(bad, n + 1, "basis forms") + "; modulo orthogonality")
    bad = []
    for k in range(samples):
        f = _random_form(cal, rng, 1)
        x = M.x(rng.randrange(n))
        lhs = coact_form(right_mul(f, x))
        rhs = _coact_times(coact_form(f), cal.ctx.rho(x))
        if (lhs - rhs).reduce(red):
            bad.append(f"sample {k}")
    rep.add("calculus.coaction-bimodule", not bad, _detail(bad, samples, "random forms") + "; modulo orthogonality")
    bad = []
    for b in cal.basis:
        if not _form_coaction_axioms(cal, b):
            bad.append(cal.name(b))
    rep.add("calculus.coaction-axioms", not bad, _detail(bad, n + 1, "basis forms"))

    # (f) tau^mu and tau are left and right invariant under the self-coactions
    bad = []
    rl, rr = cal.ctx.self_left, cal.ctx.self_right
    for b, v in gens:
        om = omega_univ(v).value
        pre = TensorElement((p,) + om.factors, {((),) + k: c for k, c in om.terms.items()})
        post = TensorElement(om.factors + (p,), {k + ((),): c for k, c in om.terms.items()})
        if rl.lift(om) != pre:
            bad.append(f"left {cal.name(b)}")
        if rr.lift(om) != post:
            bad.append(f"right {cal.name(b)}")
    rep.add("calculus.bi-invariance", not bad, _detail(bad, 2 * (n + 1), "cases"))
    return rep


def _flip_times(cal: Calculus, b: int, c: int, nu: int) -> FormTensor:
    """(c (x) b) x^nu = c (x) (b x^nu)."""
    return tensor_forms(cal.form(c), _rmul_gen(cal.form(b), nu))


def _rho2_sigma(cal: Calculus, b: int, c: int) -> bool:
    """True when (id (x) sigma) rho2 (b (x) c) != rho2 sigma (b (x) c)."""
    def rho2(x, y):
        out: Dict[Tuple[Word, int, int], Scalar] = {}
        for bx, tx in basis_coaction(cal, x).items():
            for by, ty in basis_coaction(cal, y).items():
                prod = tx * ty
                for (pw, mw), s in prod.terms.items():
                    _accumulate(out, (pw, bx, by), s)
        return out

    lhs = {(pw, y, x): s for (pw, x, y), s in rho2(b, c).items()}
    return lhs != rho2(c, b)


def _coact_times(fc: FormCoaction, r: TensorElement) -> FormCoaction:
    """(sum T_b (x) b) * rho(x): move x through b in the Omega^1 factor."""
    cal = fc.cal
    P, p = cal.ctx.P.presentation, cal.pres
    out: Dict[int, TensorElement] = {}
    for b, t in fc.parts.items():
        for (pw, mw), c in t.terms.items():
            for (rp, rm), rc in r.terms.items():
                moved = right_mul(cal.form(b), Element(p, {rm: ONE}))
                left = Element(P, {pw: c * rc}) * Element(P, {rp: ONE})
                for d, h in moved.coeffs.items():
                    e = TensorElement.pure(left, Element(p, {mw: ONE}) * h)
                    out[d] = out[d] + e if d in out else e
    return FormCoaction(cal, out)


def _form_coaction_axioms(cal: Calculus, b: int) -> bool:
    """(id (x) rho) rho = (Delta (x) id) rho and (eps (x) id) rho = id on a basis form."""
    from .engine import coproduct, counit

    table = basis_coaction(cal, b)
    lhs: Dict[Tuple[Word, Word, int], Scalar] = {}
    rhs: Dict[Tuple[Word, Word, int], Scalar] = {}
    eps: Dict[int, Scalar] = {}
    for c, t in table.items():
        for (pw, _), s in t.terms.items():
            pe = Element(cal.ctx.P.presentation, {pw: s})
            for d, t2 in basis_coaction(cal, c).items():
                for (pw2, _), s2 in t2.terms.items():
                    _accumulate(lhs, (pw, pw2, d), s * s2)
            for (u, v), s3 in coproduct(pe).terms.items():
                _accumulate(rhs, (u, v, c), s3)
            e = counit(pe)
            if e:
                eps[c] = eps.get(c, ZERO) + e
    eps = {k: v for k, v in eps.items() if v}
    return lhs == rhs and eps == {b: ONE}


def _detail(bad: List[str], total: int, what: str) -> str:
    if not bad:
        return f"{total} {what}"
    return f"first failure {bad[0]} ({len(bad)} of {total} {what})"
