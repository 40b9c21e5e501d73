"""Degree-truncated classification experiments for left-covariant calculi.

A left-covariant calculus on M_kappa is fixed by a right ideal R of ker eps.
The lab builds candidate ideals, closes them under the P_kappa coaction and
measures ker eps / R at a working truncation degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .coaction import CoactionContext, lift_rho_L, omega_univ, r_map
from .engine import Element, TensorElement, Word, antipode, counit, star
from .ideals import IdealSpan, graded_key
from .linalg import fraction_free_rank, unspecialize
from .minkowski import MinkowskiAlgebra
from .report import Report
from .scalars import ONE, Scalar

__all__ = [
    "GradedBasis",
    "QuotientReport",
    "x_munu",
    "traceless_generators",
    "full_tensor_generators",
    "right_ideal_span",
    "covariance_components",
    "covariant_closure",
    "quotient_dimension",
    "antipode_star_check",
    "classify",
]


@dataclass(frozen=True)
class GradedBasis:
    """Normal words of M_kappa of total degree exactly ``degree``."""

    degree: int
    words: Tuple[Word, ...]

    @classmethod
    def of(cls, alg: MinkowskiAlgebra, degree: int) -> "GradedBasis":
        return cls(degree, tuple(alg.presentation.normal_words(degree, degree)))

    @staticmethod
    def expected_size(n: int, degree: int) -> int:
        return comb(degree + n - 1, degree)


def x_munu(alg: MinkowskiAlgebra, mu: int, nu: int) -> Element:
    """x^mu x^nu + (i/kappa)(g^{mu nu} x^0 - g^{0 mu} x^nu)."""
    return alg.x_munu(mu, nu)


def traceless_generators(alg: MinkowskiAlgebra) -> List[Element]:
    """x^{mu nu} - (1/n) g^{mu nu} phi for all mu, nu (row-major)."""
    n, g = alg.n, alg.metric.g
    phi = alg.phi()
    out = []
    for mu in range(n):
        for nu in range(n):
            e = alg.x_munu(mu, nu)
            if g(mu, nu):
                e = e - phi.scale(Fraction(g(mu, nu), n))
            out.append(e)
    return out


def full_tensor_generators(alg: MinkowskiAlgebra) -> List[Element]:
    return [alg.x_munu(mu, nu) for mu in range(alg.n) for nu in range(alg.n)]


def right_ideal_span(gens: Sequence[Element], max_degree: int, alg: Optional[MinkowskiAlgebra] = None) -> IdealSpan:
    """Exact echelon basis of span{g m : deg(g m) <= max_degree}."""
    pres = alg.presentation if alg is not None else None
    return IdealSpan(list(gens), "right", max_degree, pres=pres)


def span_elements(span: IdealSpan, max_degree: Optional[int] = None) -> List[Element]:
    """Echelon rows as Elements, optionally only those of degree <= max_degree.

    Rows are specialised vectors; each is lifted back with the weight of its
    longest word, which recovers an element of the span up to a unit.
    """
    p = span.pres
    out = []
    for piv in span.echelon.pivot_columns():
        if max_degree is not None and len(piv) > max_degree:
            continue
        vec = span.echelon.pivots[piv]
        top = max(len(w) for w in vec)
        out.append(Element(p, unspecialize(vec, top, p.word_weight)))
    return out


@dataclass
class QuotientReport:
    truncation: int
    dim_ker_eps: int
    dim_ideal: int
    quotient_dim: int
    representatives: List[Element] = field(default_factory=list)
    span: Optional[IdealSpan] = None

    def is_basis(self, candidates: Sequence[Element]) -> bool:
        """True when the candidates' cosets form a basis of the truncated quotient."""
        if len(candidates) != self.quotient_dim or any(counit(c) for c in candidates):
            return False
        rows = [(self.span.normal_form(c) if self.span is not None else c).terms for c in candidates]
        return fraction_free_rank(rows) == len(candidates)

    def to_dict(self) -> Dict[str, object]:
        return {
            "truncation": self.truncation,
            "dimKerEps": self.dim_ker_eps,
            "dimIdeal": self.dim_ideal,
            "quotientDim": self.quotient_dim,
            "representatives": [str(r) for r in self.representatives],
        }


def quotient_dimension(alg: MinkowskiAlgebra, gens: Sequence[Element], max_degree: int = 4) -> QuotientReport:
    """dim (ker eps)_{<=d} - dim R_{<=d}, with monomial representatives of the quotient."""
    p = alg.presentation
    ker = p.normal_words(max_degree, 1)
    span = right_ideal_span(gens, max_degree, alg)
    pivots = set(span.echelon.pivots)
    reps = [Element(p, {w: ONE}) for w in ker if w not in pivots]
    return QuotientReport(max_degree, len(ker), span.dimension, len(ker) - span.dimension, reps, span)


def covariance_components(ctx: CoactionContext, g: Element, lambda_degree: int = 2) -> List[Element]:
    """Elements v_j of ker eps with rho~(omega(g)) in P (x) N iff every v_j lies in R.

    rho~(omega(g)) is reduced modulo orthogonality in the P factor and split
    over the remaining independent P monomials; each piece q is mapped by r to
    M (x) ker eps and split over the M monomials of its first factor.
    """
    red = ctx.reducer(lambda_degree)
    lifted = red.normal_form(lift_rho_L(omega_univ(g)))
    m = ctx.M.presentation
    by_p: Dict[Word, Dict[Tuple[Word, Word], Scalar]] = {}
    for (pw, u, v), c in lifted.terms.items():
        by_p.setdefault(pw, {})[(u, v)] = c
    out: List[Element] = []
    for pw in sorted(by_p, key=graded_key):
        rq = r_map(TensorElement((m, m), by_p[pw]))
        by_first: Dict[Word, Dict[Word, Scalar]] = {}
        for (u, v), c in rq.terms.items():
            by_first.setdefault(u, {})[v] = c
        for u in sorted(by_first, key=graded_key):
            e = Element(m, by_first[u])
            if e:
                out.append(e)
    return out


def covariant_closure(ctx: CoactionContext, gens: Sequence[Element], max_degree: int = 4,
                      max_iter: int = 10, lambda_degree: int = 2) -> List[Element]:
    """Smallest generator list containing ``gens`` whose truncated right ideal is covariant.

    Each round examines the generators and every span element of degree at
    most the largest generator degree, adds the covariance components not yet
    in the truncated span, and stops at a fixpoint.
    """
    alg = ctx.M
    out = list(gens)
    for _ in range(max_iter):
        span = right_ideal_span(out, max_degree, alg)
        top = max((e.degree() for e in out), default=0)
        cands = list(out) + span_elements(span, top)
        added = False
        for g in cands:
            for v in covariance_components(ctx, g, lambda_degree):
                if not span.contains(v):
                    out.append(v)
                    span = right_ideal_span(out, max_degree, alg)
                    added = True
        if not added:
            return out
    raise RuntimeError(f"covariant closure did not converge in {max_iter} rounds")


def antipode_star_check(alg: MinkowskiAlgebra, max_degree: int = 3) -> Tuple[bool, List[str]]:
    """S(q)* lies in the traceless right ideal for every generator q."""
    gens = traceless_generators(alg)
    span = right_ideal_span(gens, max_degree, alg)
    bad = [str(q) for q in gens if not span.contains(star(antipode(q)))]
    return not bad, bad


def classify(ctx: CoactionContext, max_degree: int = 4) -> Report:
    """Quotient dimensions for the traceless ideal, the full tensor and single degree-1 seeds."""
    alg = ctx.M
    n = alg.n
    rep = Report("classify", {"n": n, "metric": str(ctx.metric), "maxDegree": max_degree})

    gb = [GradedBasis.of(alg, d) for d in range(max_degree + 1)]
    bad = [str(b.degree) for b in gb if len(b.words) != GradedBasis.expected_size(n, b.degree)]
    rep.add("classify.graded-basis", not bad, f"degrees 0..{max_degree} match binomial counts"
            if not bad else f"count mismatch at degree {bad[0]}")

    tl = traceless_generators(alg)
    closure = covariant_closure(ctx, tl, max_degree)
    rep.add("classify.traceless.covariant", len(closure) == len(tl),
            "closure adds nothing" if len(closure) == len(tl) else f"closure added {len(closure) - len(tl)} elements")
    q = quotient_dimension(alg, tl, max_degree)
    reps = [alg.x(mu) for mu in range(n)] + [alg.phi()]
    rep.add("classify.traceless.quotient-dim", q.quotient_dim == n + 1,
            f"dim ker eps = {q.dim_ker_eps}, dim R = {q.dim_ideal}, quotient = {q.quotient_dim}")
    rep.add("classify.traceless.representatives", q.is_basis(reps), "x^mu and phi span the quotient")
    low = span_elements(q.span, 1)
    rep.add("classify.traceless.mu-R", not low, "no degree-1 element in R" if not low else f"{low[0]} in R")
    for d in range(2, max_degree):
        qd = quotient_dimension(alg, tl, d)
        rep.add(f"classify.traceless.quotient-dim[d={d}]", qd.quotient_dim == n + 1, f"quotient = {qd.quotient_dim}")
    ok, bad = antipode_star_check(alg, min(max_degree, 3))
    rep.add("classify.traceless.antipode-star", ok, f"{len(tl)} generators" if ok else f"S(q)* not in R for {bad[0]}")

    full = covariant_closure(ctx, full_tensor_generators(alg), max_degree)
    qf = quotient_dimension(alg, full, max_degree)
    rep.add("classify.full-tensor.quotient-dim", qf.quotient_dim == 0, f"quotient = {qf.quotient_dim}")
    for mu in range(n):
        seed = [alg.x(mu)]
        qs = quotient_dimension(alg, covariant_closure(ctx, seed, max_degree), max_degree)
        rep.add(f"classify.seed[x{mu}].quotient-dim", qs.quotient_dim == 0, f"quotient = {qs.quotient_dim}")
    return rep
