import json
from fractions import Fraction

import pytest

from multcalc.errors import SpecError
from multcalc.jsonio import (
    dumps,
    has_float,
    parse_matrix,
    parse_nilmat,
    parse_polypath,
    parse_scalar,
    parse_signed,
    parse_unipotent,
    summary_csv,
    tables_csv,
)
from multcalc.matgroup import heis, nil3


@pytest.mark.parametrize("lit, want", [(3, 3), ("1/3", Fraction(1, 3)), ("-2/4", Fraction(-1, 2)), ("0.25", Fraction(1, 4))])
def test_parse_scalar_exact(lit, want):
    assert parse_scalar(lit, True) == want


@pytest.mark.parametrize("lit", [True, None, [1], "x", "1/0", float("nan"), float("inf")])
def test_parse_scalar_rejects(lit):
    with pytest.raises(SpecError):
        parse_scalar(lit, True)


def test_parse_scalar_float_mode():
    assert parse_scalar("1/4", False) == 0.25 and isinstance(parse_scalar(1, False), float)


def test_has_float():
    assert has_float({"a": [1, [2, 0.5]]})
    assert not has_float({"a": [1, "1/2"]})


def test_parse_matrix_forms():
    rows = [[1, "1/2", 0], [0, 1, 2], [0, 0, 1]]
    assert parse_matrix({"dim": 3, "rows": rows}, True) == parse_matrix(rows, True)
    assert parse_unipotent(rows, True) == heis(Fraction(1, 2), 2, 0)
    assert parse_nilmat([[0, 1, 0], [0, 0, 0], [0, 0, 0]], True) == nil3(1, 0, 0)


@pytest.mark.parametrize(
    "obj",
    [
        {"dim": 2, "rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        {"rows": [[1, 0], [0]]},
        {"rows": [[1]], "extra": 1},
        [],
        [[1, 2]],
        {"dim": 2},
    ],
)
def test_parse_matrix_rejects(obj):
    with pytest.raises(SpecError):
        parse_matrix(obj, True)


def test_parse_unipotent_validates_structure():
    with pytest.raises(SpecError):
        parse_unipotent([[2, 0], [0, 1]], True)
    with pytest.raises(SpecError):
        parse_nilmat([[1, 0], [0, 0]], True)


def test_parse_signed():
    s = parse_signed({"sign": -1, "body": [[1, 1], [0, 1]]}, True)
    assert s.sign == -1
    for bad in ({"sign": 2, "body": [[1]]}, {"sign": 1}, {"sign": 1, "body": [[1]], "x": 0}):
        with pytest.raises(SpecError):
            parse_signed(bad, True)


def test_parse_polypath():
    e12 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    p = parse_polypath({"dim": 3, "coeffs": [e12, {"rows": e12}]}, True)
    assert p.degree == 1
    for bad in ({"coeffs": []}, {"dim": 2, "coeffs": [e12]}, {"coeffs": [e12], "deg": 1}, []):
        with pytest.raises(SpecError):
            parse_polypath(bad, True)


def test_dumps_is_canonical_and_rejects_nan():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and json.loads(text) == {"b": 1, "a": [1, 2]}
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})


def test_tables_csv_single_and_multi():
    rows = [{"n": 4, "value_frobnorm": 1.5, "delta": None, "order_est": None},
            {"n": 8, "value_frobnorm": 1.25, "delta": 0.25, "order_est": None}]
    single = tables_csv([("integral", rows)]).splitlines()
    assert single[0] == "n,value_frobnorm,delta,order_est"
    assert single[1] == "4,1.5,,"
    multi = tables_csv([("a", rows), ("b", rows)]).splitlines()
    assert multi[0] == "series,n,value_frobnorm,delta,order_est"
    assert multi[3].startswith("b,4,")


def test_summary_csv():
    lines = summary_csv([("status", "pass"), ("tolerance", 0.0)]).splitlines()
    assert lines[0] == "field,value" and lines[1] == "status,pass"
