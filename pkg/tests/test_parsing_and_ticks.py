from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from misleadviz import vocab
from misleadviz.parsing import (
    numeric_or_temporal_values,
    parse_number,
    parse_range,
    parse_temporal,
    temporal_ordinals,
)
from misleadviz.ticks import format_tick, format_ticks, nice_step, nice_ticks


@pytest.mark.parametrize("text, value", [
    ("42", 42.0), ("-3.5", -3.5), ("1,234", 1234.0), ("12.5%", 12.5), ("$1,200", 1200.0),
    ("€3", 3.0), (" 7 ", 7.0), ("−2", -2.0), ("1e3", 1000.0),
])
def test_parse_number(text, value):
    assert parse_number(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1,23", "12-14", "nan", "inf", "1.2.3"])
def test_parse_number_rejects(text):
    assert parse_number(text) is None


def test_parse_temporal_kinds():
    assert parse_temporal("2010") == ("year", (2010,))
    assert parse_temporal("2019-03") == ("year-month", (2019, 3))
    assert parse_temporal("Mar 2019") == ("year-month", (2019, 3))
    assert parse_temporal("2020-02-29") == ("date", (2020, 2, 29))
    assert parse_temporal("February") == ("month", (2,))
    assert parse_temporal("2021-02-30") is None
    assert parse_temporal("1234") is None  # outside the plausible year window
    assert parse_temporal("2019-13") is None


def test_temporal_ordinals_keep_real_spacing():
    assert temporal_ordinals(["2019-11", "2019-12", "2020-01"])[1] == [24238, 24239, 24240]
    kind, days = temporal_ordinals(["2021-01-04", "2021-01-11", "2021-01-18"])
    assert kind == "date" and days[1] - days[0] == 7 and days[2] - days[1] == 7
    assert temporal_ordinals(["2021-01-01", "2021-02-01"])[0] == "month-start"
    assert temporal_ordinals(["2010", "2011-02"]) is None  # mixed kinds


def test_numeric_or_temporal_prefers_temporal():
    assert numeric_or_temporal_values(["Jan", "Feb", "Apr"]) == [1.0, 2.0, 4.0]
    assert numeric_or_temporal_values(["0", "1,000", "2,000"]) == [0.0, 1000.0, 2000.0]
    assert numeric_or_temporal_values(["North", "South"]) is None


@pytest.mark.parametrize("text, width", [
    ("1990–1999", 10), ("2000-2004", 5), ("20 to 29", 10), ("0.5-1.5", 1.0),
])
def test_parse_range(text, width):
    assert parse_range(text)[2] == width


def test_parse_range_rejects():
    assert parse_range("North") is None
    assert parse_range("2005") is None
    assert parse_range("2010–2000") is None


def test_alphabetical_puts_3d_last():
    names = vocab.alphabetical(vocab.MISLEADERS)
    assert names[0] == vocab.DISCRETIZED
    assert names[-1] == vocab.THREE_D
    assert names[:-1] == sorted(names[:-1])


def test_vocab_sizes():
    assert len(vocab.MISLEADERS) == 12 and len(set(vocab.MISLEADERS)) == 12
    assert set(vocab.SYNTHETIC_MISLEADERS) == set(vocab.MISLEADERS) - {vocab.DISCRETIZED}
    assert vocab.LINTER_COVERED < set(vocab.MISLEADERS) and len(vocab.LINTER_COVERED) == 6
    with pytest.raises(ValueError, match="bogus"):
        vocab.validate_names({"bogus", "3d"})


def test_nice_ticks_max_47():
    assert nice_ticks(0, 47) == [Decimal(v) for v in (0, 10, 20, 30, 40, 50)]


@pytest.mark.parametrize("span, intervals, step", [
    (47, 5, "10"), (1, 5, "0.2"), (0.9, 4, "0.25"), (9000, 5, "2000"), (23, 8, "5"),
])
def test_nice_step_ladder(span, intervals, step):
    assert nice_step(span, intervals) == Decimal(step)


def test_format_ticks():
    assert format_ticks([Decimal("0"), Decimal("2.5"), Decimal("5.0")]) == ["0.0", "2.5", "5.0"]
    assert format_ticks([Decimal(0), Decimal(5000), Decimal(10000)]) == ["0", "5,000", "10,000"]
    assert format_ticks([Decimal(0), Decimal(20)], percent=True) == ["0%", "20%"]
    assert format_tick(Decimal("-0.0"), 1) == "0.0"


@given(st.floats(0.001, 1e9, allow_nan=False), st.integers(2, 8))
def test_nice_ticks_cover_and_are_uniform(hi, intervals):
    ticks = nice_ticks(0.0, hi, intervals)
    assert ticks[0] == 0 and float(ticks[-1]) >= hi * (1 - 1e-9)
    gaps = {b - a for a, b in zip(ticks, ticks[1:])}
    assert len(gaps) == 1
    assert len(ticks) - 1 <= intervals + 1
