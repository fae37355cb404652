import random
from fractions import Fraction

import pytest

from fbdual.algebra import LaurentPoly
from fbdual.errors import (
    DilationMismatchError,
    FilterRoleMismatchError,
    InvalidDilationError,
    MalformedInputError,
    SingularParameterError,
    ZeroFilterError,
)
from fbdual.filterkit import (
    Convention,
    Filter,
    Normalization,
    Role,
    accuracy,
    biorthogonality_product,
    burt_adelson,
    burt_adelson_cofilter,
    delta,
    from_polyphase,
    has_unit_phase,
    haar,
    is_biorthogonal,
    polyphase_analysis,
    polyphase_synthesis,
    vanishing_moments,
)
from tests import FilterComposer
from tests.filter_composer import random_fraction

A_GRID = [
    Fraction(n, 40) for n in range(-20, 41) if Fraction(n, 40) != Fraction(1, 4)
]


def order_at_minus_one(filt: Filter) -> int:
    """Root order of the tap transform at z = -1, by signed moments"""
    for m in range(filt.tap_count() + 1):
        if sum((-1) ** k * c * k**m for k, c in filt.taps.items()) != 0:
            return m
    raise AssertionError(f"{filt} vanishes identically")


def random_filter(rng: random.Random, dilation: int) -> Filter:
    start = rng.randint(-6, 6)
    taps = {start + i: random_fraction(rng) for i in range(rng.randint(1, 9))}
    return Filter(dilation, taps, role=Role.GENERAL)


def test_filter_validation():
    with pytest.raises(InvalidDilationError):
        Filter(1, {0: Fraction(1)})
    with pytest.raises(FilterRoleMismatchError):
        Filter(2, {0: Fraction(1, 2)}, role=Role.LOWPASS)
    with pytest.raises(FilterRoleMismatchError):
        Filter(2, {0: Fraction(1)}, role=Role.HIGHPASS)
    with pytest.raises(FilterRoleMismatchError):
        Filter(
            2,
            {0: Fraction(1)},
            role=Role.LOWPASS,
            normalization=Normalization.NONE,
        )

    assert haar().role is Role.LOWPASS
    assert Filter(2, {0: Fraction(1, 2), 1: Fraction(-1, 2)}).role is (
        Role.HIGHPASS
    )
    assert Filter(2, {0: Fraction(3)}).role is Role.GENERAL
    assert Filter(2, {0: Fraction(0), 1: Fraction(1)}).taps == {1: 1}

    with pytest.raises(ZeroFilterError):
        Filter(2, {}).support()


def test_polyphase_components():
    h = burt_adelson(Fraction(3, 5))
    h0, h1 = polyphase_analysis(h)
    assert h0 == LaurentPoly(
        {-1: Fraction(-1, 20), 0: Fraction(3, 5), 1: Fraction(-1, 20)}
    )
    assert h1 == LaurentPoly({-1: Fraction(1, 4), 0: Fraction(1, 4)})

    assert tuple(polyphase_analysis(haar())) == (
        LaurentPoly.constant(Fraction(1, 2)),
        LaurentPoly.monomial(Fraction(1, 2), -1),
    )
    assert tuple(polyphase_synthesis(haar())) == (
        LaurentPoly.constant(Fraction(1, 2)),
        LaurentPoly.constant(Fraction(1, 2)),
    )
    assert tuple(polyphase_analysis(delta())) == (
        LaurentPoly.one(),
        LaurentPoly.zero(),
    )

    f = burt_adelson_cofilter(Fraction(3, 5))
    assert f.taps == {
        -1: Fraction(1, 7),
        0: Fraction(5, 7),
        1: Fraction(1, 7),
    }
    f0, f1 = polyphase_synthesis(f)
    assert f0 == LaurentPoly.constant(Fraction(5, 7))
    assert f1 == LaurentPoly({0: Fraction(1, 7), 1: Fraction(1, 7)})
    assert from_polyphase((f0, f1), Convention.SYNTHESIS, 2) == f


def test_polyphase_semantic_scale():
    semantic = polyphase_analysis(haar()).semantic()
    root2_half = LaurentPoly.constant(Fraction(1, 2)).scale(
        haar().scale()
    )
    assert semantic[0] == root2_half


def test_polyphase_zero_entries():
    zero = LaurentPoly.zero()
    filt = from_polyphase((zero, zero, zero), Convention.ANALYSIS, 3)
    assert filt.is_zero()
    assert filt.role is Role.GENERAL


def test_polyphase_reconstruction():
    rng = random.Random(42)
    for _ in range(200):
        dilation = rng.choice([2, 3, 4])
        filt = random_filter(rng, dilation)
        for convention, split in [
            (Convention.ANALYSIS, polyphase_analysis),
            (Convention.SYNTHESIS, polyphase_synthesis),
        ]:
            entries = tuple(split(filt))
            rebuilt = from_polyphase(
                entries, convention, dilation, role=Role.GENERAL
            )
            assert rebuilt.taps == filt.taps


def test_polyphase_recombines_transform():
    rng = random.Random(5)
    for _ in range(50):
        dilation = rng.choice([2, 3])
        filt = random_filter(rng, dilation)
        x = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        expected = filt.z_transform().evaluate(x)

        analysis = sum(
            (
                x**nu * entry.evaluate(x**dilation)
                for nu, entry in enumerate(polyphase_analysis(filt))
            ),
            Fraction(0),
        )
        synthesis = sum(
            (
                x**-nu * entry.evaluate(x**dilation)
                for nu, entry in enumerate(polyphase_synthesis(filt))
            ),
            Fraction(0),
        )
        assert analysis == expected
        assert synthesis == expected


def test_accuracy():
    assert accuracy(haar()) == 1
    assert accuracy(delta()) == 0
    assert accuracy(burt_adelson(Fraction(3, 5))) == 2
    assert accuracy(burt_adelson(Fraction(3, 8))) == 4
    assert accuracy(burt_adelson_cofilter(Fraction(3, 4))) == 2

    for a in A_GRID:
        h = burt_adelson(a)
        assert h.tap_sum() == 1
        assert accuracy(h) >= 2
        assert accuracy(h) == order_at_minus_one(h)

    with pytest.raises(ZeroFilterError):
        accuracy(Filter(2, {}))


def test_accuracy_three_channels():
    box = Filter(3, {k: Fraction(1, 3) for k in range(3)})
    assert accuracy(box) == 1
    assert accuracy(delta(3)) == 0


def test_vanishing_moments():
    wavelet = Filter(2, {0: Fraction(1, 2), 1: Fraction(-1, 2)})
    assert vanishing_moments(wavelet) == 1
    assert vanishing_moments(haar()) == 0

    second = Filter(
        2,
        {-1: Fraction(-1, 4), 0: Fraction(1, 2), 1: Fraction(-1, 4)},
        normalization=Normalization.NONE,
    )
    assert vanishing_moments(second) == 2


def test_has_unit_phase():
    assert has_unit_phase(burt_adelson(Fraction(1, 2))) == 1
    assert has_unit_phase(burt_adelson(Fraction(3, 5))) is None
    assert has_unit_phase(haar()) == 1


def test_biorthogonality():
    h = burt_adelson(Fraction(3, 5))
    f = burt_adelson_cofilter(Fraction(3, 5))
    assert is_biorthogonal(f, h)
    assert not is_biorthogonal(delta(), h)

    # haar is biorthogonal to its reverse in this convention, not to itself
    assert is_biorthogonal(haar().time_reversed(), haar())
    assert not is_biorthogonal(haar(), haar())
    assert biorthogonality_product(haar(), haar()) == LaurentPoly(
        {0: Fraction(1, 2), -1: Fraction(1, 2)}
    )

    with pytest.raises(DilationMismatchError):
        is_biorthogonal(delta(3), h)


def test_burt_adelson_family():
    assert burt_adelson(Fraction(1, 2)).taps == {
        -1: Fraction(1, 4),
        0: Fraction(1, 2),
        1: Fraction(1, 4),
    }
    assert burt_adelson_cofilter(Fraction(1, 2)) == delta()
    assert burt_adelson_cofilter(Fraction(3, 4)).taps == {
        -1: Fraction(1, 4),
        0: Fraction(1, 2),
        1: Fraction(1, 4),
    }

    for a in A_GRID:
        f = burt_adelson_cofilter(a)
        assert is_biorthogonal(f, burt_adelson(a))
        assert f.tap_sum() == 1

    for a in [Fraction(3, 5), Fraction(1, 2), Fraction(9, 10)]:
        assert accuracy(burt_adelson_cofilter(a)) == 0

    with pytest.raises(SingularParameterError):
        burt_adelson_cofilter(Fraction(1, 4))


def test_filter_json():
    composer = FilterComposer()
    composer.setup("test_filter_json")

    h = burt_adelson(Fraction(3, 5))
    path = composer.write_filter("h.json", h)
    assert Filter.from_path(path) == h

    for data in [
        [],
        {"taps": {"0": "1/1"}},
        {"dilation": 2},
        {"dilation": 2, "taps": {"0": "0.6"}},
        {"dilation": 2, "taps": {"x": "1/1"}},
        {"dilation": 1, "taps": {"0": "1/1"}},
        {"dilation": 2, "taps": {"0": "1/2"}, "role": "lowpass"},
        {"dilation": 2, "taps": {"0": "1/1"}, "normalization": "unit"},
    ]:
        with pytest.raises(MalformedInputError):
            Filter.from_json(data)

    composer.teardown()


def test_time_reversed():
    assert haar().time_reversed().taps == {
        -1: Fraction(1, 2),
        0: Fraction(1, 2),
    }
    h = burt_adelson(Fraction(3, 5))
    assert h.time_reversed() == h
