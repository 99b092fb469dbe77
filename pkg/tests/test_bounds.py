import csv
import io
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gallai_ramsey.bounds import (
    BoundOrderingError,
    HypothesisError,
    bound_row,
    compare_table,
    even_cycle_bound,
    exact_value,
    f_value,
    fox_conjecture_value,
    integer_bound,
    lower_bound,
    ramsey_two_cycles,
    upper_bound_chen,
    upper_bound_new,
    upper_bound_old,
)

mpmath.mp.dps = 50


def mp_f(k, n):
    return mpmath.mpf(n) * mpmath.log(n) * 2**k - (k + 1) * n + 1


def test_f_cases():
    assert f_value(1, 8) == 17
    assert f_value(2, 8) == 33
    assert math.isclose(f_value(3, 8), float(64 * mpmath.log(8) - 31), rel_tol=1e-12)
    assert 102.084 < f_value(3, 8) < 102.085
    with pytest.raises(HypothesisError):
        f_value(0, 8)
    with pytest.raises(HypothesisError):
        f_value(3, 1)


@given(st.integers(3, 25), st.integers(2, 500))
def test_f_matches_high_precision(k, n):
    assert math.isclose(f_value(k, n), float(mp_f(k, n)), rel_tol=1e-12)


def test_upper_bound_examples():
    assert upper_bound_new(3, 8) == f_value(3, 8)
    assert integer_bound(upper_bound_new(3, 8)) == (102, False)
    chen = upper_bound_chen(3, 8)
    assert math.isclose(chen, float((32 + 8 * mpmath.log(8)) * 8), rel_tol=1e-12)
    assert 389.08 < chen < 389.09
    old = upper_bound_old(3, 8)
    assert math.isclose(old, float(8 * mpmath.log(8) * 61), rel_tol=1e-12)


@pytest.mark.parametrize(
    "fn,args,clause",
    [
        (upper_bound_new, (2, 8), "k >= 3"),
        (upper_bound_new, (3, 7), "n >= 8"),
        (upper_bound_chen, (1, 8), "k >= 2"),
        (upper_bound_old, (0, 8), "k >= 1"),
        (upper_bound_old, (3, 1), "n >= 2"),
    ],
)
def test_out_of_hypothesis_is_rejected_with_reason(fn, args, clause):
    with pytest.raises(HypothesisError, match=clause):
        fn(*args)


def test_integer_bound_flags_near_integers():
    assert integer_bound(10.0) == (10, True)
    assert integer_bound(10.0 - 1e-12) == (9, True)
    assert integer_bound(10.5) == (10, False)


def test_exact_values():
    assert exact_value(3, 2) == 17
    assert exact_value(4, 7) == 113
    assert exact_value(3, 8) is None
    assert exact_value(5, 1) is None
    with pytest.raises(HypothesisError):
        exact_value(0, 3)


@pytest.mark.parametrize("n", range(2, 8))
@pytest.mark.parametrize("k", range(1, 21))
def test_lower_bound_is_tight_for_small_n(n, k):
    assert lower_bound(k, n) == exact_value(k, n) == n * 2**k + 1


def test_even_cycle_bound():
    assert even_cycle_bound(3, 6) == 33
    assert even_cycle_bound(1, 2) == 7
    with pytest.raises(HypothesisError):
        even_cycle_bound(0, 3)


def test_ramsey_two_cycles():
    assert ramsey_two_cycles(5, 5) == 9 == f_value(2, 2)
    assert ramsey_two_cycles(6, 6) == 8
    assert ramsey_two_cycles(4, 4) == 6
    assert ramsey_two_cycles(4, 7) == ramsey_two_cycles(7, 4) == 8
    assert ramsey_two_cycles(8, 8) == 11
    assert ramsey_two_cycles(9, 9) == 17
    assert ramsey_two_cycles(3, 3) is None
    assert ramsey_two_cycles(5, 7) is None
    with pytest.raises(HypothesisError):
        ramsey_two_cycles(2, 5)


@given(st.integers(2, 60))
def test_odd_cycle_formula_matches_f_at_two_colors(n):
    assert ramsey_two_cycles(2 * n + 1, 2 * n + 1) == f_value(2, n) == 4 * n + 1


def test_fox_values():
    assert fox_conjecture_value(1, 5, 43) == 5
    assert fox_conjecture_value(2, 3, 6) == 6
    assert fox_conjecture_value(3, 4, 18) == 52
    with pytest.raises(HypothesisError):
        fox_conjecture_value(2, 4, 3)


def test_compare_table_examples():
    report = compare_table(range(8, 31), range(3, 13))
    assert len(report) == 23 * 10
    assert all(r.ordering_holds() for r in report.rows)

    row = compare_table(range(8, 9), range(3, 4)).rows[0]
    assert row.value("lower") == 65
    assert abs(row.value("upperNew") - 102.08) < 0.01

    assert len(compare_table(range(0), range(3, 5))) == 0


def test_cells_outside_hypotheses_are_blank_with_reason():
    row = bound_row(4, 2)
    assert row.cells["upperNew"].blank and "k >= 3" in row.cells["upperNew"].source
    assert row.value("upperChen") is not None
    assert row.value("exact") == 17
    assert row.ordering_holds() is None
    assert not bound_row(9, 3).cells["exact"].source.startswith("GR")


def test_every_populated_cell_names_its_formula():
    for row in compare_table(range(2, 12), range(1, 6)).rows:
        for name, cell in row.cells.items():
            assert cell.source
            if not cell.blank:
                assert not cell.source.startswith("blank")


def test_exact_within_bounds_where_ranges_overlap():
    for n in range(2, 8):
        for k in range(3, 10):
            row = bound_row(n, k)
            assert row.value("lower") <= row.value("exact")


def test_csv_and_text_outputs():
    report = compare_table(range(8, 10), range(3, 5))
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert len(rows) == 4
    assert rows[0]["n"] == "8" and rows[0]["k"] == "3" and rows[0]["lower"] == "65"
    assert rows[0]["upperNew_source"]
    lines = report.to_text().splitlines()
    assert len(lines) == 5 and "upperNew" in lines[0]


def test_ordering_violation_raises(monkeypatch):
    import gallai_ramsey.bounds as b

    monkeypatch.setitem(b._FORMULAS, "upperChen", (lambda k, n: 1.0, "broken"))
    with pytest.raises(BoundOrderingError):
        compare_table(range(8, 9), range(3, 4))
