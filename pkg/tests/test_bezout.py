import random
from fractions import Fraction

import pytest

from fbdual.algebra import LaurentPoly
from fbdual.bezout import (
    find_cofilter,
    resolve_cofilter,
    unit_phase_cofilter,
    unit_phase_index,
    validate_cofilter,
)
from fbdual.errors import (
    NoFirDualError,
    NotLowpassError,
    UnsupportedDilationError,
)
from fbdual.filterkit import (
    Filter,
    Role,
    burt_adelson,
    burt_adelson_cofilter,
    delta,
    haar,
    is_biorthogonal,
)
from tests.filter_composer import random_fraction, random_lowpass

BOX3 = Filter(3, {k: Fraction(1, 3) for k in range(3)})
# every analysis phase holds two taps
BOX6 = Filter(3, {k: Fraction(1, 6) for k in range(6)})


def test_find_cofilter():
    for n in range(1, 20):
        a = Fraction(n, 20)
        if a == Fraction(1, 4):
            continue
        h = burt_adelson(a)
        f = find_cofilter(h)
        assert is_biorthogonal(f, h), f"no cofilter for a = {a}"
        assert f.tap_sum() == 1

    assert find_cofilter(haar()) == delta()
    assert find_cofilter(burt_adelson(Fraction(1, 2))) == delta()


def test_find_cofilter_is_deterministic():
    h = burt_adelson(Fraction(3, 5))
    assert find_cofilter(h) == find_cofilter(h)


def test_find_cofilter_fails():
    with pytest.raises(NoFirDualError):
        find_cofilter(burt_adelson(Fraction(1, 4)))
    with pytest.raises(UnsupportedDilationError):
        find_cofilter(BOX3)
    with pytest.raises(NotLowpassError):
        find_cofilter(Filter(2, {0: Fraction(1, 2), 1: Fraction(-1, 2)}))


def with_shared_phase_factor(h: Filter, c: Fraction) -> Filter:
    """h times (1 + c z^2) / (1 + c), so both phases share 1 + c z"""
    factor = LaurentPoly({0: 1, 2: c}).scale(1 / (1 + c))
    product = LaurentPoly(h.taps) * factor
    return Filter(h.dilation, dict(product.terms), role=Role.LOWPASS)


def test_find_cofilter_needs_coprime_phases():
    rng = random.Random(5)
    for _ in range(10):
        h = random_lowpass(rng)
        assert is_biorthogonal(find_cofilter(h), h)

        c = random_fraction(rng)
        if c in (0, -1):
            continue
        with pytest.raises(NoFirDualError):
            find_cofilter(with_shared_phase_factor(h, c))


def test_unit_phase_cofilter():
    assert unit_phase_cofilter(burt_adelson(Fraction(1, 2))) == delta()
    assert unit_phase_cofilter(burt_adelson(Fraction(3, 5))) is None

    f = unit_phase_cofilter(BOX3)
    assert f == delta(3)
    assert is_biorthogonal(f, BOX3)


def test_resolve_cofilter():
    h = burt_adelson(Fraction(3, 5))
    assert resolve_cofilter(h) == find_cofilter(h)
    assert resolve_cofilter(BOX3) == delta(3)

    with pytest.raises(UnsupportedDilationError):
        resolve_cofilter(BOX6)


def test_validate_cofilter():
    h = burt_adelson(Fraction(3, 5))
    report = validate_cofilter(burt_adelson_cofilter(Fraction(3, 5)), h)
    assert report.biorthogonal
    assert report.accuracy == 0
    assert report.unit_component
    assert report.unit_phase == 0

    report = validate_cofilter(haar().time_reversed(), haar())
    assert report.biorthogonal
    assert report.accuracy == 1
    assert report.unit_component

    report = validate_cofilter(delta(), h)
    assert not report.biorthogonal
    assert report.to_json() == {
        "biorthogonal": False,
        "accuracy": 0,
        "unit_component": True,
        "unit_phase": 0,
    }

    assert validate_cofilter(Filter(2, {}), h).accuracy == 0


def test_unit_phase_index():
    f = burt_adelson_cofilter(Fraction(3, 4))
    # hat filter: phase 0 is 1/2, phase 1 is (1 + z)/4
    assert unit_phase_index(f) == 0
    odd_only = Filter(2, {-1: Fraction(1, 2), 1: Fraction(1, 2)})
    assert unit_phase_index(odd_only) is None
