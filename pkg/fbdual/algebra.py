from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import NamedTuple

from sympy import QQ, Expr, Poly, Pow, Rational, S, expand, radsimp, sqrt
from sympy.abc import z
from sympy.polys.domains import Domain

from fbdual.errors import (
    BothZeroError,
    EvaluationAtZeroError,
    FieldMismatchError,
    InfiniteMultiplicityError,
    InvalidArgumentError,
    NotAUnitError,
    UnitFactorError,
)

_RATIONAL_REGEX = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_QSQRTQ_REGEX = re.compile(
    r"^\s*(?P<rat>[+-]?\d+(?:/\d+)?)\s*\+\s*(?P<irr>[+-]?\d+(?:/\d+)?)"
    r"\s*\*\s*sqrt\(\s*(?P<q>\d+)\s*\)\s*$"
)

# rationals stay Fraction, elements of Q(sqrt(q)) are sympy expressions
Scalar = Fraction | Expr


def parse_rational(text: str) -> Fraction:
    """Parse 'num/den' (or a bare integer); decimals are rejected"""
    if isinstance(text, int):
        return Fraction(text)

    match = _RATIONAL_REGEX.match(str(text))
    if match is None:
        msg = f"'{text}' is not an exact rational of the form num/den"
        raise InvalidArgumentError(msg)

    num, den = match.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        msg = f"'{text}' has a zero denominator"
        raise InvalidArgumentError(msg)
    return Fraction(int(num), den)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def to_sympy(value: Scalar | int) -> Expr:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, QSqrtQ):
        return value.to_expr()
    return S(value)


def narrow(value: Scalar | int) -> Scalar:
    """Canonical scalar: Fraction when rational, expanded sympy otherwise"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    value = expand(to_sympy(value))
    if value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    return value


def sqrt_base(value: Scalar) -> int | None:
    """q of the single sqrt(q) a scalar involves, None for rationals"""
    if isinstance(value, Fraction | int):
        return None
    bases = {p.base for p in to_sympy(value).atoms(Pow) if p.exp == S.Half}
    if len(bases) > 1:
        raise FieldMismatchError(*sorted(int(b) for b in bases)[:2])
    return int(bases.pop()) if bases else None


def common_field(values: Iterable[Scalar]) -> int | None:
    q = None
    for value in values:
        base = sqrt_base(value)
        if base is None:
            continue
        if q is not None and base != q:
            raise FieldMismatchError(q, base)
        q = base
    return q


@lru_cache(maxsize=None)
def field(q: int | None) -> Domain:
    """QQ, or the algebraic field QQ<sqrt(q)>"""
    if q is None:
        return QQ
    return QQ.algebraic_field(sqrt(q))


class QSqrtQ(NamedTuple):
    """Coordinates rat + irr*sqrt(q) of an element of Q(sqrt(q))"""

    rat: Fraction
    irr: Fraction
    q: int

    @classmethod
    def of(cls, value: Scalar, q: int | None = None) -> QSqrtQ:
        expr = expand(to_sympy(value))
        q = sqrt_base(expr) or q or 1
        root = sqrt(q)
        irr = expr.coeff(root) if root != 1 else S.Zero
        rat = expand(expr - irr * root)
        if not (rat.is_Rational and irr.is_Rational):
            msg = f"{value} is not an element of Q(sqrt({q}))"
            raise InvalidArgumentError(msg)
        return cls(narrow(rat), narrow(irr), q)

    def to_expr(self) -> Expr:
        return to_sympy(self.rat) + to_sympy(self.irr) * sqrt(self.q)

    def is_rational(self) -> bool:
        return self.irr == 0

    def is_pure_irrational(self) -> bool:
        return self.rat == 0

    def __str__(self) -> str:
        return (
            f"{format_rational(self.rat)}+{format_rational(self.irr)}"
            f"*sqrt({self.q})"
        )

    @classmethod
    def parse(cls, text: str) -> QSqrtQ:
        match = _QSQRTQ_REGEX.match(text)
        if match is None:
            msg = f"'{text}' is not of the form rat+irr*sqrt(q)"
            raise InvalidArgumentError(msg)
        return cls(
            parse_rational(match.group("rat")),
            parse_rational(match.group("irr")),
            int(match.group("q")),
        )


def format_scalar(value: Scalar) -> str:
    value = narrow(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(QSqrtQ.of(value))


def parse_scalar(text: str) -> Scalar:
    if "sqrt" in str(text):
        return narrow(QSqrtQ.parse(text).to_expr())
    return parse_rational(text)


def _times_z(poly: Poly, power: int) -> Poly:
    if power == 0:
        return poly
    return poly * Poly(z**power, z, domain=poly.get_domain())


class LaurentPoly:
    """Finitely supported polynomial in z and 1/z with exact coefficients.

    Held as z^lo * P(z) with P a sympy Poly over QQ or QQ<sqrt(q)> and
    P(0) != 0. Coefficients are exposed by exponent with zeros dropped.
    Instances are immutable.
    """

    __slots__ = ("_terms", "_poly", "_lo", "_q")

    def __init__(self, terms: Mapping[int, Scalar | int] | None = None):
        cleaned: dict[int, Scalar] = {}
        for k, c in sorted((terms or {}).items()):
            c = narrow(c)
            if c != 0:
                cleaned[int(k)] = c
        self._terms = cleaned
        self._q = common_field(cleaned.values())
        self._lo = min(cleaned, default=0)
        self._poly = Poly.from_dict(
            {(k - self._lo,): to_sympy(c) for k, c in cleaned.items()}
            or {(0,): 0},
            z,
            domain=field(self._q),
        )

    @classmethod
    def from_poly(cls, poly: Poly, lo: int = 0) -> LaurentPoly:
        """z^lo * poly for a sympy Poly in z"""
        return cls({m + lo: c for (m,), c in poly.terms()})

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: Fraction(1)})

    @classmethod
    def constant(cls, value: Scalar | int) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def monomial(cls, value: Scalar | int, exponent: int) -> LaurentPoly:
        return cls({exponent: value})

    @classmethod
    def z(cls) -> LaurentPoly:
        return cls({1: Fraction(1)})

    @property
    def terms(self) -> Mapping[int, Scalar]:
        return MappingProxyType(self._terms)

    @property
    def lo(self) -> int:
        """Lowest exponent (0 for the zero polynomial)"""
        return self._lo

    @property
    def hi(self) -> int:
        """Highest exponent (0 for the zero polynomial)"""
        return max(self._terms, default=0)

    @property
    def sqrt_field(self) -> int | None:
        return self._q

    def as_poly(self, offset: int = 0) -> Poly:
        """z^offset * self as an ordinary sympy Poly"""
        if self._terms and self._lo + offset < 0:
            msg = f"z^{offset} * ({self}) has negative exponents"
            raise InvalidArgumentError(msg)
        return _times_z(self._poly, self._lo + offset if self._terms else 0)

    def coefficient(self, exponent: int) -> Scalar:
        return self._terms.get(exponent, Fraction(0))

    def leading_coefficient(self) -> Scalar:
        return self._terms[self.hi]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_monomial(self) -> bool:
        """Nonzero single term c*z^k, i.e. a unit of the Laurent ring"""
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _lift(self, other: object) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            other_q = other.sqrt_field
        elif isinstance(other, int | Fraction | Expr | QSqrtQ):
            other = LaurentPoly.constant(other)
            other_q = other.sqrt_field
        else:
            return None
        if None not in (self._q, other_q) and self._q != other_q:
            raise FieldMismatchError(self._q, other_q)
        return other

    def __add__(self, other: object) -> LaurentPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        lo = min(self._lo, other.lo)
        total = _times_z(self._poly, self._lo - lo) + other.as_poly(-lo)
        return LaurentPoly.from_poly(total, lo)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly.from_poly(-self._poly, self._lo)

    def __sub__(self, other: object) -> LaurentPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> LaurentPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return LaurentPoly.zero()
        return LaurentPoly.from_poly(
            self._poly * other.as_poly(-other.lo), self._lo + other.lo
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly:
        if exponent < 0:
            return self.inverse_monomial() ** (-exponent)
        if exponent == 0:
            return LaurentPoly.one()
        return LaurentPoly.from_poly(self._poly**exponent, self._lo * exponent)

    def scale(self, value: Scalar | int) -> LaurentPoly:
        return self * LaurentPoly.constant(value)

    def shift(self, offset: int) -> LaurentPoly:
        """Multiply by z^offset"""
        return LaurentPoly({k + offset: c for k, c in self._terms.items()})

    def reflect(self) -> LaurentPoly:
        """Substitute z -> 1/z"""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def dilate(self, factor: int) -> LaurentPoly:
        """Substitute z -> z^factor"""
        return LaurentPoly({k * factor: c for k, c in self._terms.items()})

    def inverse_monomial(self) -> LaurentPoly:
        if not self.is_monomial():
            raise NotAUnitError(self)
        ((k, c),) = self._terms.items()
        return LaurentPoly({-k: radsimp(1 / to_sympy(c))})

    def normalized(self) -> tuple[LaurentPoly, int]:
        """Shift so the lowest exponent is 0, returns (poly, removed lo)"""
        return self.shift(-self._lo), self._lo

    def evaluate(self, x: Fraction | int) -> Scalar:
        return poly_eval(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly | int | Fraction | Expr):
            return NotImplemented
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self._terms == dict(other.terms)

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms.items():
            coeff = format_scalar(c)
            if k == 0:
                parts.append(coeff)
            elif k == 1:
                parts.append(f"{coeff}*z")
            else:
                parts.append(f"{coeff}*z^{k}")
        return " + ".join(parts)

    def to_json(self) -> dict[str, str]:
        return {str(k): format_scalar(c) for k, c in self._terms.items()}

    @staticmethod
    def from_json(data: Mapping[str, str]) -> LaurentPoly:
        return LaurentPoly({int(k): parse_scalar(v) for k, v in data.items()})


class ArithOp(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


def poly_arith(
    p: LaurentPoly, r: LaurentPoly, op: ArithOp | str
) -> LaurentPoly:
    match ArithOp(op):
        case ArithOp.ADD:
            return p + r
        case ArithOp.SUB:
            return p - r
        case ArithOp.MUL:
            return p * r


def poly_eval(p: LaurentPoly, x: Fraction | int) -> Scalar:
    x = Fraction(x)
    if x == 0:
        raise EvaluationAtZeroError
    if p.is_zero():
        return Fraction(0)
    point = to_sympy(x)
    return narrow(p.as_poly(-p.lo).eval(point) * point**p.lo)


def poly_divmod(
    a: LaurentPoly, b: LaurentPoly
) -> tuple[LaurentPoly, LaurentPoly]:
    """Long division of ordinary polynomials (non-negative exponents)"""
    if b.is_zero():
        msg = "polynomial division by zero"
        raise ZeroDivisionError(msg)
    quotient, remainder = a.as_poly().div(b.as_poly())
    return LaurentPoly.from_poly(quotient), LaurentPoly.from_poly(remainder)


def factor_multiplicity(p: LaurentPoly, f: LaurentPoly) -> int:
    """Largest m with f^m | p in the Laurent ring (units ignored)"""
    if p.is_zero():
        raise InfiniteMultiplicityError
    if f.is_zero() or f.is_monomial():
        raise UnitFactorError(f)

    rest = p.as_poly(-p.lo)
    factor = f.as_poly(-f.lo)

    multiplicity = 0
    while True:
        quotient, remainder = rest.div(factor)
        if not remainder.is_zero:
            return multiplicity
        multiplicity += 1
        rest = quotient


class BezoutTriple(NamedTuple):
    gcd: LaurentPoly
    u: LaurentPoly
    v: LaurentPoly

    def is_unit(self) -> bool:
        return self.gcd == LaurentPoly.one()


def extended_euclid(p: LaurentPoly, r: LaurentPoly) -> BezoutTriple:
    """Return (gcd, u, v) with u*p + v*r = gcd.

    The gcd is monic with its monomial unit stripped, so it equals 1
    exactly when p and r have no common root in the punctured plane.
    The cofactors are the minimal-degree pair from sympy's gcdex.
    """
    if p.is_zero() and r.is_zero():
        raise BothZeroError

    one = LaurentPoly.one()
    zero = LaurentPoly.zero()

    if p.is_monomial():
        return BezoutTriple(one, p.inverse_monomial(), zero)
    if r.is_monomial():
        return BezoutTriple(one, zero, r.inverse_monomial())
    if p.is_zero() or r.is_zero():
        nonzero = p or r
        gcd, _ = nonzero.normalized()
        lead = radsimp(1 / to_sympy(gcd.leading_coefficient()))
        cofactor = LaurentPoly.monomial(lead, -nonzero.lo)
        if p:
            return BezoutTriple(gcd.scale(lead), cofactor, zero)
        return BezoutTriple(gcd.scale(lead), zero, cofactor)

    s, t, gcd = p.as_poly(-p.lo).gcdex(r.as_poly(-r.lo))
    return BezoutTriple(
        LaurentPoly.from_poly(gcd),
        LaurentPoly.from_poly(s, -p.lo),
        LaurentPoly.from_poly(t, -r.lo),
    )
