import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from misleadviz.tables import (
    CATEGORICAL,
    COUNTRY,
    EVEN_TEMPORAL,
    NUMERICAL,
    NUMERICAL_PERCENTAGE,
    PART_OF_WHOLE,
    POTENTIAL_PERCENTAGE,
    TEMPORAL,
    UNIQUE_OBJECT,
    DataTable,
    PreparedTable,
    TableError,
    enumerate_prepared_tables,
    profile_column,
    read_table,
    read_tables,
    render_title,
)


def test_profile_year_column():
    p = profile_column("Year", ["2010", "2011", "2012"])
    assert p.primary == TEMPORAL
    assert p.secondary == {EVEN_TEMPORAL, UNIQUE_OBJECT}


def test_profile_share_column():
    p = profile_column("Share", ["25", "30", "45"])
    assert p.primary == NUMERICAL
    assert p.secondary == {PART_OF_WHOLE, POTENTIAL_PERCENTAGE}


def test_profile_duplicate_categories():
    p = profile_column("Club", ["Ajax", "PSV", "Ajax"])
    assert p.primary == CATEGORICAL and p.secondary == frozenset()


def test_profile_countries_and_percentages():
    assert COUNTRY in profile_column("Country", ["France", "Germany", "Japan", "Kenya"]).secondary
    assert COUNTRY not in profile_column("Club", ["Ajax", "PSV", "Benfica"]).secondary
    pct = profile_column("Rate", ["10%", "20%", "5%"])
    assert pct.primary == NUMERICAL and NUMERICAL_PERCENTAGE in pct.secondary
    assert PART_OF_WHOLE not in pct.secondary
    fractions = profile_column("Share", ["0.2", "0.3", "0.499"])
    assert PART_OF_WHOLE in fractions.secondary


def test_profile_irregular_years_not_even():
    p = profile_column("Year", ["1950", "1960", "1975"])
    assert p.primary == TEMPORAL and EVEN_TEMPORAL not in p.secondary


def test_profile_mixture_falls_back_to_categorical():
    assert profile_column("x", ["2010", "abc", "12"]).primary == CATEGORICAL


@given(st.lists(st.floats(0, 1000, allow_nan=False), min_size=2, max_size=10))
def test_part_of_whole_implies_sum_window(values):
    p = profile_column("v", [f"{v:.3f}" for v in values])
    if PART_OF_WHOLE in p.secondary:
        s = sum(p.parsed_values)
        assert 0.995 <= s <= 1.005 or 99.5 <= s <= 100.5


@given(st.lists(st.sampled_from(["2010", "Ajax", "12", "3.5%", "", "March", "2020-01"]), min_size=1, max_size=8))
def test_profile_is_deterministic_and_consistent(cells):
    a, b = profile_column("h", cells), profile_column("h", cells)
    assert a == b
    if a.primary == NUMERICAL:
        assert not a.secondary & {EVEN_TEMPORAL, COUNTRY, UNIQUE_OBJECT}
    else:
        assert not a.secondary & {PART_OF_WHOLE, NUMERICAL_PERCENTAGE, POTENTIAL_PERCENTAGE}


def test_datatable_invariants():
    with pytest.raises(TableError):
        DataTable("t", (("a", ("1",)), ("b", ("2",))))  # fewer than two cells
    with pytest.raises(TableError):
        DataTable.from_rows("t", ["a", "a"], [["1", "2"], ["3", "4"]])
    with pytest.raises(TableError):
        DataTable.from_rows("t", ["a", ""], [["1", "2"], ["3", "4"]])


def test_club_year_table_fixes_one_column():
    rows = [[c, str(y), str(v)] for c, y, v in [
        ("Ajax", 2020, 60), ("PSV", 2020, 55), ("AZ", 2020, 50),
        ("Ajax", 2021, 70), ("PSV", 2021, 52), ("AZ", 2021, 48),
        ("Ajax", 2022, 61), ("PSV", 2022, 58), ("AZ", 2022, 45),
    ]]
    preps = enumerate_prepared_tables(DataTable.from_rows("wr", ["Club", "Year", "Win ratio"], rows))
    combos = {(p.key_header, p.fixed_columns) for p in preps}
    assert ("Club", (("Year", "2021"),)) in combos
    assert ("Year", (("Club", "Ajax"),)) in combos
    by_2021 = next(p for p in preps if p.fixed_columns == (("Year", "2021"),))
    assert by_2021.title == "Win ratio by club (Year: 2021)"
    assert by_2021.keys == ["Ajax", "PSV", "AZ"]


def test_single_key_single_value():
    t = DataTable.from_rows("t", ["Club", "Goals"], [["A", "1"], ["B", "2"], ["C", "3"]])
    assert len(enumerate_prepared_tables(t)) == 1


def test_text_only_table():
    t = DataTable.from_rows("t", ["Club", "City"], [["A", "x"], ["B", "y"], ["C", "z"]])
    assert enumerate_prepared_tables(t) == []


def test_two_value_columns_title():
    t = DataTable.from_rows("t", ["Year", "Exports", "Imports"], [[str(2000 + i), str(i), str(2 * i)] for i in range(4)])
    pair = [p for p in enumerate_prepared_tables(t) if len(p.value_columns) == 2][0]
    assert render_title(pair) == "Exports and imports by year"
    for seed in range(8):
        title = render_title(pair, seed).lower()
        assert "exports" in title and "imports" in title and "year" in title


def test_empty_cells_dropped_and_min_rows():
    t = DataTable.from_rows("t", ["City", "Rain"], [["A", "1"], ["B", ""], ["C", "3"], ["D", "4"]])
    (p,) = enumerate_prepared_tables(t)
    assert p.keys == ["A", "C", "D"]
    short = DataTable.from_rows("t", ["City", "Rain"], [["A", "1"], ["B", ""], ["C", "3"]])
    assert enumerate_prepared_tables(short) == []


def test_max_rows_keeps_latest_years():
    t = DataTable.from_rows("t", ["Year", "v"], [[str(1990 + i), str(i)] for i in range(30)])
    (p, *_) = enumerate_prepared_tables(t, max_rows=10)
    assert p.keys == [str(y) for y in range(2010, 2020)]


def test_max_per_table_cap():
    rows = [[c, str(y), str(v)] for c in "ABCDEF" for y, v in zip(range(2000, 2006), range(6))]
    t = DataTable.from_rows("t", ["Club", "Year", "Goals"], rows)
    assert len(enumerate_prepared_tables(t, max_per_table=3)) == 3
    assert len(enumerate_prepared_tables(t)) == 8


def test_prepared_table_invariants():
    key = ("Club", profile_column("Club", ["A", "A"]))
    val = (("v", profile_column("v", ["1", "2"])),)
    with pytest.raises(TableError):
        PreparedTable("t", key, (), val, (("A", 1.0), ("A", 2.0)))
    with pytest.raises(TableError):
        PreparedTable("t", key, (), (), (("A", 1.0),))
    with pytest.raises(TableError):
        PreparedTable("t", key, (), val, (("A", float("nan")), ("B", 2.0)))


cell = st.sampled_from(["A", "B", "C", "2010", "2011", "2012", "1", "2", "3.5", ""])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.lists(st.lists(cell, min_size=4, max_size=4), min_size=3, max_size=9))
def test_prepared_tables_always_valid(ncols, rows):
    headers = ["a", "b", "c", "d"][:ncols]
    t = DataTable.from_rows("rand", headers, [r[:ncols] for r in rows])
    for p in enumerate_prepared_tables(t):
        assert len(set(p.keys)) == len(p.keys)
        assert len(p.rows) >= 3
        PreparedTable(p.source, p.key_column, p.fixed_columns, p.value_columns, p.rows, p.title)


def test_read_tables(tmp_path):
    (tmp_path / "b.csv").write_text("Year,v\n2010,1\n2011,2\n", encoding="utf-8")
    (tmp_path / "a.csv").write_text("Club,v\nX,1\nY,2\n", encoding="utf-8")
    (tmp_path / "notes.txt").write_text("ignored")
    assert [t.name for t in read_tables(tmp_path)] == ["a", "b"]
    assert read_table(tmp_path / "a.csv").column("Club") == ("X", "Y")
