import json

import pytest

from jetstrata.parse import ParseError, load_scheme_text, parse_polynomial


def test_parse_basic_polynomial():
    f = parse_polynomial("y^2 - x^3", ["x", "y"])
    assert f.terms == {(0, 2): 1, (3, 0): -1}
    g = parse_polynomial("2*(x + y)^2 - 4*x*y", ["x", "y"])
    assert g == parse_polynomial("2*x^2 + 2*y^2", ["x", "y"])


def test_parse_implicit_and_unary():
    assert parse_polynomial("-x", ["x"]) == parse_polynomial("0 - x", ["x"])
    # juxtaposition is not multiplication
    with pytest.raises(ParseError):
        parse_polynomial("3x", ["x"])


@pytest.mark.parametrize(
    "text, column",
    [("x^^3", 3), ("x + ", 4), ("x*(y", 5), ("z", 1), ("x^-1", 3)],
)
def test_parse_errors_report_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, ["x", "y"])
    assert info.value.line == 1
    assert info.value.column == column


def test_scheme_defaults_and_aliases():
    X = load_scheme_text(json.dumps({"nvars": 2, "generators": ["y^2 - x^3"], "dim": 1}))
    assert X.var_names == ("x1", "x2") and X.m == 1 and X.r == 1
    Y = load_scheme_text(json.dumps({"nvars": 3, "generators": ["x1*x2", "x2*x3"], "dim": 1}))
    assert Y.N == 3


def test_scheme_error_positions_are_file_relative():
    text = '{\n  "nvars": 2,\n  "generators": ["y^2 - x^^3"],\n  "dim": 1\n}\n'
    with pytest.raises(ParseError) as info:
        load_scheme_text(text, "bad.json")
    assert (info.value.line, info.value.column) == (3, 27)
    assert "generator 1" in str(info.value)


def test_scheme_json_errors():
    with pytest.raises(ParseError) as info:
        load_scheme_text('{"nvars": 2,\n "generators": [}')
    assert info.value.line == 2
    with pytest.raises(ParseError):
        load_scheme_text('{"nvars": 2, "generators": ["x"]}')
    with pytest.raises(ParseError):
        load_scheme_text('{"nvars": 2, "vars": ["a"], "generators": ["a"], "dim": 1}')
