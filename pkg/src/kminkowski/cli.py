"""Command-line front end: expression parser, suite runner and report emitter.

Expressions follow a small grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' (nat | atom))*
    atom   := xN | a[i] | L[i,j] | tN | tau | phi | scalar | '(' expr ')'
    scalar := nat ['/' nat] | i | k ['^' int]

``k`` is kappa, so ``k^-m`` is lam**m.  ``^`` followed by a one-form is the
wedge product, which is how two-forms print.  Whitespace is ignored.
Constants (and zero) carry no generator and always parse into M_kappa.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .calculus import Calculus, OneForm, TwoForm, build_calculus, coact_form, d0, d1, right_mul, verify_calculus_suite, wedge
from .coaction import CoactionContext, build_context, rho_L, verify_coaction_suite, verify_x_munu_covariance
from .engine import Element, PresentationError
from .ideal_lab import classify
from .minkowski import Metric, verify_hopf_minkowski
from .poincare import verify_hopf_poincare
from .report import Report
from .scalars import GaussianRational, Scalar, as_scalar

__all__ = ["ParseError", "Parser", "parse_expression", "poincare_degree", "run", "main", "VERBS"]

EXPRESSION_VERBS = ("normalize", "comm", "d", "wedge", "coact")
SUITE_VERBS = ("hopf-check", "calculus-check", "classify", "full-suite")
VERBS = EXPRESSION_VERBS + SUITE_VERBS

# coaction samples used by the suites (randomised over --seed)
COACTION_SAMPLES = 50
CALCULUS_SAMPLES = 30


class ParseError(ValueError):
    def __init__(self, pos: int, msg: str):
        super().__init__(f"position {pos}: {msg}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(tau|phi|[xt]\d+|[aLik])|([-+*^/()\[\],]))")


def _tokenize(text: str):
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(start, f"unexpected character {text[start]!r}")
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class Parser:
    """Recursive-descent parser producing Scalars, Elements, OneForms or TwoForms."""

    def __init__(self, ctx: CoactionContext, cal: Optional[Calculus] = None):
        self.ctx = ctx
        self.cal = cal if cal is not None else build_calculus(ctx.metric)
        self.n = ctx.metric.n

    def parse(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0
        if self.toks[0][0] == "end":
            raise ParseError(0, "empty expression")
        v = self.expr()
        kind, tok, pos = self.toks[self.k]
        if kind != "end":
            raise ParseError(pos, f"unexpected {tok!r}")
        return self._finish(v, 0)

    # token helpers
    def _peek(self):
        return self.toks[self.k]

    def _next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def _accept(self, op: str) -> bool:
        kind, tok, _ = self._peek()
        if kind == "op" and tok == op:
            self.k += 1
            return True
        return False

    def _expect(self, op: str):
        kind, tok, pos = self._peek()
        if not (kind == "op" and tok == op):
            raise ParseError(pos, f"expected {op!r}, found {tok or 'end of input'!r}")
        self.k += 1

    def _nat(self) -> int:
        kind, tok, pos = self._next()
        if kind != "num":
            raise ParseError(pos, f"expected a number, found {tok or 'end of input'!r}")
        return int(tok)

    def _index(self) -> int:
        pos = self._peek()[2]
        v = self._nat()
        if v >= self.n:
            raise ParseError(pos, f"index {v} out of range for n={self.n}")
        return v

    # grammar
    def expr(self):
        neg = self._accept("-")
        v = self.term()
        if neg:
            v = _scale(v, -1)
        while True:
            pos = self._peek()[2]
            if self._accept("+"):
                v = self._add(v, self.term(), pos)
            elif self._accept("-"):
                v = self._add(v, _scale(self.term(), -1), pos)
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            pos = self._peek()[2]
            if not self._accept("*"):
                return v
            v = self._mul(v, self.factor(), pos)

    def factor(self):
        v = self.atom()
        while True:
            pos = self._peek()[2]
            if not self._accept("^"):
                return v
            kind, tok, p2 = self._peek()
            if kind == "num":
                v = self._pow(v, self._nat(), pos)
            elif kind == "op" and tok == "-" and _is_kappa(v):
                self.k += 1
                v = Scalar({self._nat(): GaussianRational(1)})
            else:
                w = self.atom()
                if not (isinstance(v, OneForm) and isinstance(w, OneForm)):
                    raise ParseError(pos, "'^' needs a natural exponent or two one-forms")
                v = wedge(v, w)

    def atom(self):
        kind, tok, pos = self._next()
        if kind == "num":
            num = int(tok)
            if self._accept("/"):
                p2 = self._peek()[2]
                den = self._nat()
                if den == 0:
                    raise ParseError(p2, "division by zero")
                return as_scalar(Fraction(num, den))
            return as_scalar(num)
        if kind == "op" and tok == "(":
            v = self.expr()
            self._expect(")")
            return v
        if kind != "name":
            raise ParseError(pos, f"unexpected {tok or 'end of input'!r}")
        M, P = self.ctx.M, self.ctx.P
        if tok == "i":
            return Scalar({0: GaussianRational(0, 1)})
        if tok == "k":
            return Scalar({-1: GaussianRational(1)})
        if tok == "phi":
            return M.phi()
        if tok == "tau":
            return self.cal.tau
        if tok[0] in "xt":
            mu = int(tok[1:])
            if mu >= self.n:
                raise ParseError(pos, f"index {mu} out of range for n={self.n}")
            return M.x(mu) if tok[0] == "x" else self.cal.t(mu)
        if tok == "a":
            self._expect("[")
            mu = self._index()
            self._expect("]")
            return P.a(mu)
        self._expect("[")
        mu = self._index()
        self._expect(",")
        nu = self._index()
        self._expect("]")
        return P.L(mu, nu)

    # typed arithmetic
    def _lift(self, s: Scalar, like):
        if isinstance(like, Element):
            return like.pres.one().scale(s)
        if isinstance(like, (OneForm, TwoForm)):
            raise TypeError("scalars and forms cannot be added")
        return s

    def _add(self, a, b, pos):
        try:
            if isinstance(a, Scalar) and not isinstance(b, Scalar):
                a = self._lift(a, b)
            elif isinstance(b, Scalar) and not isinstance(a, Scalar):
                b = self._lift(b, a)
            if type(a) is not type(b):
                raise TypeError(f"cannot add {_kind(a)} and {_kind(b)}")
            return a + b
        except (TypeError, PresentationError) as e:
            raise ParseError(pos, str(e)) from None

    def _mul(self, a, b, pos):
        if isinstance(a, Scalar):
            return a * b if isinstance(b, Scalar) else _scale(b, a)
        if isinstance(b, Scalar):
            return _scale(a, b)
        if isinstance(a, Element) and isinstance(b, Element):
            if a.pres is not b.pres:
                raise ParseError(pos, "cannot multiply elements of different algebras")
            return a * b
        if isinstance(a, Element) and isinstance(b, (OneForm, TwoForm)):
            self._need_m(a, pos)
            return b.lmul(a)
        if isinstance(a, OneForm) and isinstance(b, Element):
            self._need_m(b, pos)
            return right_mul(a, b)
        raise ParseError(pos, f"cannot multiply {_kind(a)} by {_kind(b)}")

    def _need_m(self, a: Element, pos):
        if a.pres is not self.ctx.M.presentation:
            raise ParseError(pos, "forms have coefficients in M_kappa only")

    def _pow(self, v, e: int, pos):
        if isinstance(v, Scalar):
            out = as_scalar(1)
            for _ in range(e):
                out = out * v
            return out
        if isinstance(v, Element):
            return v ** e
        raise ParseError(pos, f"cannot raise {_kind(v)} to a power")

    def _finish(self, v, pos):
        if isinstance(v, Scalar):
            return self.ctx.M.presentation.one().scale(v)
        return v


def _is_kappa(v) -> bool:
    return isinstance(v, Scalar) and v == Scalar({-1: GaussianRational(1)})


def _scale(v, c):
    if isinstance(v, Scalar):
        return v * as_scalar(c)
    return v.scale(c)


def _kind(v) -> str:
    if isinstance(v, Scalar):
        return "a scalar"
    if isinstance(v, Element):
        return f"an element of {v.pres.name}"
    if isinstance(v, OneForm):
        return "a one-form"
    if isinstance(v, TwoForm):
        return "a two-form"
    return type(v).__name__


def parse_expression(text: str, ctx: CoactionContext):
    """Parse and normalise ``text`` in the algebras attached to ``ctx``."""
    return Parser(ctx).parse(text)


def poincare_degree(n: int, max_degree: int) -> int:
    """Monomial degree used for the P_kappa Hopf suite.

    The laws hold only modulo orthogonality, and the reducer cost grows
    steeply with n; degree 2 (Lambda truncation 4) is the working depth for
    n <= 3, degree 1 beyond.
    """
    return max(1, min(max_degree, 2 if n <= 3 else 1))


class UsageError(Exception):
    pass


def _metric(args) -> Metric:
    if args.metric is None:
        return Metric.minkowski(args.n)
    try:
        return Metric.parse(args.metric, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _params(args, metric: Metric):
    return {"n": args.n, "metric": str(metric), "maxDegree": args.max_degree, "seed": args.seed}


def _expr_report(args, ctx: CoactionContext) -> Report:
    parser = Parser(ctx)
    try:
        vals = [parser.parse(t) for t in args.exprs]
    except ParseError as e:
        raise UsageError(str(e)) from None
    want = {"normalize": 1, "d": 1, "coact": 1, "comm": 2, "wedge": 2}[args.verb]
    if len(vals) != want:
        raise UsageError(f"{args.verb} takes {want} expression(s), got {len(vals)}")
    M = ctx.M.presentation
    v = vals[0]
    if args.verb == "normalize":
        out = v
    elif args.verb == "d":
        if isinstance(v, Element) and v.pres is M:
            out = d0(v, parser.cal)
        elif isinstance(v, OneForm):
            out = d1(v)
        else:
            raise UsageError("d expects an element of M_kappa or a one-form")
    elif args.verb == "coact":
        if isinstance(v, Element) and v.pres is M:
            out = rho_L(v)
        elif isinstance(v, OneForm):
            out = coact_form(v)
        else:
            raise UsageError("coact expects an element of M_kappa or a one-form")
    elif args.verb == "wedge":
        if not all(isinstance(w, OneForm) for w in vals):
            raise UsageError("wedge expects two one-forms")
        out = wedge(*vals)
    else:
        a, b = vals
        try:
            out = parser._add(parser._mul(a, b, 0), _scale(parser._mul(b, a, 0), -1), 0)
        except ParseError as e:
            raise UsageError(f"comm: {str(e).split(': ', 1)[1]}") from None
    rep = Report(args.verb, _params(args, ctx.metric))
    rep.add(args.verb, True, str(out))
    return rep


def _suite_report(args, ctx: CoactionContext) -> Report:
    verb, d, seed = args.verb, args.max_degree, args.seed
    rep = Report(verb, _params(args, ctx.metric))
    if verb in ("hopf-check", "full-suite"):
        rep.extend(verify_hopf_minkowski(ctx.M, min(d, 3)))
        rep.extend(verify_hopf_poincare(ctx.P, poincare_degree(ctx.metric.n, d)))
    if verb == "full-suite":
        rep.extend(verify_coaction_suite(ctx, min(d, 3), COACTION_SAMPLES, seed))
        rep.extend(verify_x_munu_covariance(ctx))
    if verb in ("calculus-check", "full-suite"):
        rep.extend(verify_calculus_suite(build_calculus(ctx.metric), d, CALCULUS_SAMPLES, seed))
    if verb in ("classify", "full-suite"):
        rep.extend(classify(ctx, d))
    return rep


def run(args) -> Report:
    """Execute a parsed command; raises UsageError for bad input."""
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    metric = _metric(args)
    try:
        ctx = build_context(metric)
    except (ValueError, PresentationError) as e:
        raise UsageError(f"metric {metric}: {e}") from None
    if args.verb in EXPRESSION_VERBS:
        return _expr_report(args, ctx)
    if args.exprs:
        raise UsageError(f"{args.verb} takes no expressions")
    return _suite_report(args, ctx)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kminkowski", description="Exact kappa-Minkowski calculus engine.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("exprs", nargs="*", metavar="EXPR")
    ap.add_argument("--n", type=int, default=4, help="spacetime dimension (default 4)")
    ap.add_argument("--metric", default=None, help="signature such as +--- (default: time-plus Minkowski)")
    ap.add_argument("--max-degree", type=int, default=4, dest="max_degree")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_intermixed_args(argv)
    try:
        rep = run(args)
    except UsageError as e:
        print(f"{ap.prog}: error: {e}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(rep.to_json())
    elif args.verb in EXPRESSION_VERBS:
        print(rep.checks[0].detail)
    else:
        print(rep.to_text())
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
