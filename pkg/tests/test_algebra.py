import random
from fractions import Fraction

import pytest
from sympy import sqrt

from fbdual.algebra import (
    ArithOp,
    LaurentPoly,
    QSqrtQ,
    common_field,
    extended_euclid,
    factor_multiplicity,
    format_rational,
    format_scalar,
    narrow,
    parse_rational,
    parse_scalar,
    poly_arith,
    poly_divmod,
    poly_eval,
    sqrt_base,
)
from fbdual.errors import (
    BothZeroError,
    EvaluationAtZeroError,
    FieldMismatchError,
    InfiniteMultiplicityError,
    InvalidArgumentError,
    UnitFactorError,
)
from tests.filter_composer import random_poly

ONE_PLUS_Z = LaurentPoly({0: 1, 1: 1})
ONE_MINUS_Z = LaurentPoly({0: 1, 1: -1})

# even and odd phases of the Burt-Adelson filter at a = 3/5
BA_EVEN = LaurentPoly(
    {-1: Fraction(-1, 20), 0: Fraction(3, 5), 1: Fraction(-1, 20)}
)
BA_ODD = LaurentPoly({0: Fraction(1, 4), -1: Fraction(1, 4)})


def zero_order_at_one(p: LaurentPoly) -> int:
    """Smallest m with sum c_k k^m != 0, the root order of p at z = 1"""
    for m in range(len(p.terms) + 1):
        if sum(c * k**m for k, c in p.terms.items()) != 0:
            return m
    raise AssertionError(f"{p} vanishes identically")


def test_parse_rational():
    for text, expected in [
        ("3/5", Fraction(3, 5)),
        ("-1/20", Fraction(-1, 20)),
        (" 4 ", Fraction(4)),
        ("6/4", Fraction(3, 2)),
    ]:
        assert parse_rational(text) == expected

    for text in ["0.6", "1/0", "abc", "3/-5", ""]:
        with pytest.raises(InvalidArgumentError):
            parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(3, 5)) == "3/5"
    assert format_rational(4) == "4/1"
    assert format_rational(Fraction(-1, 20)) == "-1/20"


def test_sqrt_field_scalars():
    root2 = sqrt(2)
    assert narrow(root2 * root2) == Fraction(2)
    assert isinstance(narrow(root2 * root2), Fraction)
    assert sqrt_base(root2 / 2) == 2
    assert sqrt_base(sqrt(8)) == 2
    assert sqrt_base(Fraction(1, 2)) is None
    assert abs(float(root2) - 2**0.5) < 1e-15

    x = QSqrtQ(1, 2, 3).to_expr()
    y = QSqrtQ(3, 4, 3).to_expr()
    assert QSqrtQ.of(x * y) == QSqrtQ(27, 10, 3)
    assert narrow(x - x) == 0
    assert LaurentPoly.constant(x).inverse_monomial() * x == 1
    assert QSqrtQ.of(root2).is_pure_irrational()
    assert QSqrtQ.of(Fraction(1, 2), 2).is_rational()

    with pytest.raises(FieldMismatchError):
        common_field([sqrt(2), Fraction(1, 3), sqrt(3)])
    with pytest.raises(FieldMismatchError):
        _ = LaurentPoly.constant(sqrt(2)) + LaurentPoly.constant(sqrt(3))


def test_sqrt_field_text():
    value = QSqrtQ(Fraction(1, 2), -1, 2)
    assert str(value) == "1/2+-1/1*sqrt(2)"
    assert QSqrtQ.parse(str(value)) == value
    assert parse_scalar("0/1+1/2*sqrt(2)") == sqrt(2) / 2
    assert format_scalar(sqrt(2) / 2) == "0/1+1/2*sqrt(2)"
    assert parse_scalar("7/3") == Fraction(7, 3)
    assert isinstance(parse_scalar("7/3+0/1*sqrt(2)"), Fraction)
    assert narrow(QSqrtQ(Fraction(7, 3), 0, 2)) == Fraction(7, 3)
    assert isinstance(narrow(QSqrtQ(Fraction(7, 3), 0, 2)), Fraction)


def test_sqrt_field_polys():
    root2 = sqrt(2)
    p = LaurentPoly({0: root2 / 2, -1: root2 / 2})
    assert p.sqrt_field == 2
    assert p * p == LaurentPoly({0: Fraction(1, 2), -1: 1, -2: Fraction(1, 2)})
    assert (p * p).sqrt_field is None
    assert p.evaluate(1) == root2
    assert LaurentPoly.from_json(p.to_json()) == p

    # gcd over Q(sqrt(2)) is found although the inputs are not rational
    factor = LaurentPoly({0: 1, 1: root2})
    triple = extended_euclid(factor * ONE_PLUS_Z, factor * ONE_MINUS_Z)
    assert triple.gcd == LaurentPoly({0: root2 / 2, 1: 1})


def test_poly_arith():
    z = LaurentPoly.z()
    assert poly_arith(z + 1, 1 + z**-1, ArithOp.MUL) == LaurentPoly(
        {-1: 1, 0: 2, 1: 1}
    )
    assert poly_arith(
        LaurentPoly({0: 1, -1: -1}),
        LaurentPoly({0: 1, -1: 1, -2: 1}),
        "mul",
    ) == LaurentPoly({0: 1, -3: -1})
    assert poly_arith(z, LaurentPoly.zero(), ArithOp.MUL).is_zero()
    assert poly_arith(z, z, ArithOp.SUB).is_zero()
    assert poly_arith(z, z, ArithOp.ADD) == LaurentPoly({1: 2})


def test_poly_ring_laws():
    rng = random.Random(1234)
    for _ in range(100):
        p, r, s = (random_poly(rng) for _ in range(3))
        assert (p * r) * s == p * (r * s)
        assert p * (r + s) == p * r + p * s
        assert p * r == r * p
        assert p + r - r == p


def test_poly_eval():
    assert poly_eval(LaurentPoly({-1: 1, 0: 2, 1: 1}), 1) == 4
    assert poly_eval(LaurentPoly.zero(), 5) == 0
    sevenths = LaurentPoly({0: Fraction(1, 7), 1: Fraction(1, 7)})
    assert poly_eval(sevenths, 1) == Fraction(2, 7)
    assert poly_eval(LaurentPoly({-1: 1}), 2) == Fraction(1, 2)

    with pytest.raises(EvaluationAtZeroError):
        poly_eval(LaurentPoly.one(), 0)


def test_factor_multiplicity():
    assert factor_multiplicity(LaurentPoly({0: 1, -1: 1}), ONE_PLUS_Z) == 1
    assert factor_multiplicity(LaurentPoly.one(), ONE_PLUS_Z) == 0
    assert factor_multiplicity(ONE_PLUS_Z**3 * ONE_MINUS_Z, ONE_PLUS_Z) == 3

    h = BA_EVEN.dilate(2) + BA_ODD.dilate(2).shift(1)
    residual = LaurentPoly.one() - h * h.reflect()
    assert factor_multiplicity(residual, ONE_MINUS_Z) == 2
    assert zero_order_at_one(residual) == 2

    with pytest.raises(InfiniteMultiplicityError):
        factor_multiplicity(LaurentPoly.zero(), ONE_PLUS_Z)
    with pytest.raises(UnitFactorError):
        factor_multiplicity(ONE_PLUS_Z, LaurentPoly({3: 2}))
    with pytest.raises(UnitFactorError):
        factor_multiplicity(ONE_PLUS_Z, LaurentPoly.zero())


def test_factor_multiplicity_is_exact():
    rng = random.Random(99)
    for _ in range(50):
        p = random_poly(rng, nonzero=True) * ONE_MINUS_Z ** rng.randint(0, 3)
        m = factor_multiplicity(p, ONE_MINUS_Z)
        assert m == zero_order_at_one(p)

        rest, _ = p.normalized()
        factor, _ = ONE_MINUS_Z.normalized()
        for _ in range(m):
            rest, remainder = poly_divmod(rest, factor)
            assert remainder.is_zero()
        _, remainder = poly_divmod(rest, factor)
        assert not remainder.is_zero()


def test_extended_euclid():
    triple = extended_euclid(LaurentPoly.one(), ONE_PLUS_Z)
    assert triple.is_unit()
    assert triple.u == LaurentPoly.one()
    assert triple.v.is_zero()

    # polyphase pair of the singular member a = 1/4 shares the root z = -1
    h0 = LaurentPoly({-1: Fraction(1, 8), 0: Fraction(1, 4), 1: Fraction(1, 8)})
    triple = extended_euclid(h0, BA_ODD)
    assert not triple.is_unit()
    assert triple.gcd == ONE_PLUS_Z

    triple = extended_euclid(BA_EVEN, BA_ODD)
    assert triple.is_unit()
    assert triple.u * BA_EVEN + triple.v * BA_ODD == LaurentPoly.one()

    with pytest.raises(BothZeroError):
        extended_euclid(LaurentPoly.zero(), LaurentPoly.zero())


def test_extended_euclid_identity():
    rng = random.Random(7)
    for _ in range(100):
        p = random_poly(rng, nonzero=True)
        r = random_poly(rng, -2, 2, nonzero=True)
        triple = extended_euclid(p, r)
        assert triple.u * p + triple.v * r == triple.gcd
        assert triple.gcd.lo == 0
        assert triple.gcd.leading_coefficient() == 1
