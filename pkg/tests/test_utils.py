from fractions import Fraction

import pytest
from sympy import sqrt

from fbdual.errors import MalformedInputError
from fbdual.utils import (
    dump_json,
    read_json,
    read_signal_csv,
    write_json,
    write_signal_csv,
)
from tests import FilterComposer


def test_dump_json():
    assert dump_json({"b": 1, "a": [1, 2]}) == (
        '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    )
    assert dump_json({"b": 1, "a": 2}) == dump_json({"a": 2, "b": 1})


def test_read_json():
    composer = FilterComposer()
    composer.setup("test_read_json")

    path = write_json(composer.path("nested/data.json"), {"x": "1/2"})
    assert read_json(path) == {"x": "1/2"}

    with pytest.raises(MalformedInputError):
        read_json(composer.path("missing.json"))
    with pytest.raises(MalformedInputError):
        read_json(composer.write_text("broken.json", "{not json"))
    with pytest.raises(MalformedInputError):
        read_json(composer.write_bytes("binary.json", b"\xff\xfe{"))
    with pytest.raises(MalformedInputError):
        read_json(composer.path("nested"))

    composer.teardown()


def test_signal_csv():
    composer = FilterComposer()
    composer.setup("test_signal_csv")

    signal = {-2: Fraction(1, 3), 0: Fraction(-5), 7: Fraction(2, 9)}
    path = composer.write_signal("signal.csv", signal)
    assert path.read_text().splitlines()[0] == "index,value"
    assert read_signal_csv(path) == signal

    headerless = composer.write_text("plain.csv", "0,1/2\n1,3\n")
    assert read_signal_csv(headerless) == {0: Fraction(1, 2), 1: Fraction(3)}

    for name, text in [
        ("decimal.csv", "0,0.5\n"),
        ("columns.csv", "0,1,2\n"),
        ("index.csv", "x,1\n"),
    ]:
        with pytest.raises(MalformedInputError):
            read_signal_csv(composer.write_text(name, text))
    with pytest.raises(MalformedInputError):
        read_signal_csv(composer.path("missing.csv"))
    with pytest.raises(MalformedInputError):
        read_signal_csv(composer.write_bytes("binary.csv", b"0,\xff\n"))
    with pytest.raises(MalformedInputError):
        read_signal_csv(composer.temp_dir)

    composer.teardown()


def test_write_signal_csv_values():
    composer = FilterComposer()
    composer.setup("test_write_signal_csv_values")

    signal = {1: sqrt(2) / 2, 0: Fraction(1, 4)}
    exact = write_signal_csv(composer.path("exact.csv"), signal)
    assert exact.read_text().splitlines() == [
        "index,value",
        "0,1/4",
        "1,0/1+1/2*sqrt(2)",
    ]

    assert read_signal_csv(exact) == signal
    mixed = composer.write_text("mixed.csv", "0,1/2+3/1*sqrt(5)\n1,2/4\n")
    assert read_signal_csv(mixed) == {
        0: Fraction(1, 2) + 3 * sqrt(5),
        1: Fraction(1, 2),
    }
    with pytest.raises(MalformedInputError):
        read_signal_csv(composer.write_text("radical.csv", "0,sqrt(2)\n"))

    floats = write_signal_csv(composer.path("floats.csv"), signal, True)
    assert floats.read_text().splitlines()[1] == "0,0.25"

    composer.teardown()
