"""Exact coefficients: Laurent polynomials in lam = 1/kappa over Q(i).

Everything here is immutable and compared structurally.  ``kappa`` is treated
as a formal parameter, so a Scalar is zero only when every coefficient is.
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

# Rational backend: gmpy2.mpq when available (and not disabled through
# KMINKOWSKI_PURE=1), else fractions.Fraction.  Both hash and compare like
# Python rationals, so results are identical either way.
try:
    if os.environ.get("KMINKOWSKI_PURE"):
        raise ImportError
    from gmpy2 import mpq as _Q

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised via KMINKOWSKI_PURE
    _Q = Fraction
    BACKEND = "fractions"

__all__ = [
    "GaussianRational",
    "Scalar",
    "ZERO",
    "ONE",
    "I_UNIT",
    "LAM",
    "IL",
    "as_scalar",
    "scalar_add",
    "scalar_mul",
    "scalar_conj",
    "BACKEND",
]

RationalLike = Union[int, Fraction]


_QTYPE = type(_Q(0))


def _frac(v):
    if type(v) is _QTYPE:
        return v
    if isinstance(v, Fraction):
        return _Q(v.numerator, v.denominator)
    if isinstance(v, (int, Rational)) and not isinstance(v, bool):
        return _Q(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


def _gr(re, im) -> "GaussianRational":
    # trusted constructor: re, im already backend rationals
    g = object.__new__(GaussianRational)
    g.re = re
    g.im = im
    g._hash = None
    return g


class GaussianRational:
    """re + im*i with re, im exact rationals."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = _frac(re)
        self.im = _frac(im)
        self._hash = None

    @classmethod
    def coerce(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, complex):
            raise TypeError("floating-point complex numbers are not exact")
        return cls(v, 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, _QTYPE)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return _gr(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            o = _frac(other)
            return _gr(self.re * o, self.im * o)
        if not other.im:
            return _gr(self.re * other.re, self.im * other.re)
        if not self.im:
            return _gr(self.re * other.re, self.re * other.im)
        return _gr(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "GaussianRational":
        return _gr(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("GaussianRational division by zero")
        if not self.im:
            return GaussianRational(1 / self.re, 0)
        n = self.norm()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(c: GaussianRational) -> str:
    if not c.im:
        return _fmt_rational(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_rational(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    im_s = "i" if mag == 1 else f"{_fmt_rational(mag)}*i"
    return f"({_fmt_rational(c.re)} {sign} {im_s})"


_G0 = GaussianRational(0, 0)
_G1 = GaussianRational(1, 0)


class Scalar:
    """Finite sum of c_k * lam**k, lam = 1/kappa, c_k nonzero Gaussian rationals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: Dict[int, GaussianRational] = {}
        if terms:
            for k, v in terms.items():
                g = GaussianRational.coerce(v)
                if g:
                    clean[int(k)] = g
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, GaussianRational]) -> "Scalar":
        s = cls.__new__(cls)
        s.terms = terms
        s._hash = None
        return s

    @classmethod
    def const(cls, re: RationalLike = 0, im: RationalLike = 0) -> "Scalar":
        return cls({0: GaussianRational(re, im)})

    @classmethod
    def monomial(cls, coeff, exp: int = 0) -> "Scalar":
        return cls({exp: coeff})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == _G1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(0, _G0)

    def exponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self.terms))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, _QTYPE, GaussianRational)):
            return self == as_scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = as_scalar(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                s = cur + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction, _QTYPE, GaussianRational)):
                other = as_scalar(other)
            else:
                return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1:
            (k2, v2), = other.terms.items()
            if k2 == 0 and v2 == _G1:
                return self
            return Scalar._raw({k + k2: v * v2 for k, v in self.terms.items()})
        out: Dict[int, GaussianRational] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                cur = out.get(k)
                out[k] = v1 * v2 if cur is None else cur + v1 * v2
        return Scalar._raw({k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar._raw({k: v.conj() for k, v in self.terms.items()})

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the nonzero monomials."""
        return len(self.terms) == 1

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not invertible in the Laurent ring")
        (k, v), = self.terms.items()
        return Scalar._raw({-k: v.inverse()})

    def divmod_exact(self, other: "Scalar") -> "Scalar":
        """Exact quotient self/other in the Laurent ring; raises if it does not exist."""
        other = as_scalar(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero Scalar")
        if not self.terms:
            return ZERO
        if other.is_unit():
            return self * other.inverse()
        # shift both to ordinary polynomials, then long division
        lo_a, lo_b = min(self.terms), min(other.terms)
        a = {k - lo_a: v for k, v in self.terms.items()}
        b = {k - lo_b: v for k, v in other.terms.items()}
        db = max(b)
        lead_inv = b[db].inverse()
        quot: Dict[int, GaussianRational] = {}
        while a:
            da = max(a)
            if da < db:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            c = a[da] * lead_inv
            shift = da - db
            quot[shift] = c
            for k, v in b.items():
                kk = k + shift
                nv = a.get(kk, _G0) - c * v
                if nv:
                    a[kk] = nv
                else:
                    a.pop(kk, None)
        return Scalar._raw({k + lo_a - lo_b: v for k, v in quot.items()})

    def __truediv__(self, other):
        return self.divmod_exact(as_scalar(other))

    def evaluate(self, lam: GaussianRational) -> GaussianRational:
        """Value at a specific lam (exact).  Negative powers need lam != 0."""
        lam = GaussianRational.coerce(lam)
        total = _G0
        for k, v in self.terms.items():
            if k >= 0:
                p = _G1
                for _ in range(k):
                    p = p * lam
            else:
                inv = lam.inverse()
                p = _G1
                for _ in range(-k):
                    p = p * inv
            total = total + v * p
        return total

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


def _fmt_lam(k: int) -> str:
    # lam**k = kappa**(-k)
    if k == 1:
        return "k^-1"
    if k == -1:
        return "k"
    if k > 0:
        return f"k^-{k}"
    return f"k^{-k}"


def format_monomial(c: GaussianRational, k: int) -> str:
    """Render c*lam**k; the result never starts with a sign unless c is negative."""
    if k == 0:
        return format_gaussian(c)
    lam = _fmt_lam(k)
    if c == 1:
        return lam
    if c == -1:
        return "-" + lam
    return f"{format_gaussian(c)}*{lam}"


def format_scalar(s: Scalar) -> str:
    if not s.terms:
        return "0"
    parts = []
    for k in sorted(s.terms):
        c = s.terms[k]
        neg = (not c.im and c.re < 0) or (not c.re and c.im < 0)
        body = format_monomial(-c if neg else c, k)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def as_scalar(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, GaussianRational):
        return Scalar({0: v}) if v else ZERO
    if isinstance(v, (int, Fraction, _QTYPE)):
        return Scalar({0: GaussianRational(v)}) if v else ZERO
    raise TypeError(f"cannot convert {type(v).__name__} to Scalar")


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) + as_scalar(b)


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) * as_scalar(b)


def scalar_conj(a: Scalar) -> Scalar:
    return as_scalar(a).conj()


def sum_scalars(items: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for s in items:
        total = total + s
    return total


ZERO = Scalar()
ONE = Scalar.const(1)
I_UNIT = Scalar.const(0, 1)
LAM = Scalar.monomial(1, 1)
#: i/kappa, the deformation unit that appears in every commutator
IL = Scalar.monomial(GaussianRational(0, 1), 1)
