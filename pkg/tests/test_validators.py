"""
Tests for instance file parsing and field validation.
"""

from fractions import Fraction

import pytest

from hypertoric.models.entities import PolarizedArrangement, QuantizedPolarizedArrangement
from hypertoric.utils.validators import InputValidator, ParseError, ValidationError, load_instance

DIAGONAL_3 = {"n": 3, "lambda0_basis": [[1, -1, 0], [0, 1, -1]], "eta": [1, 0, 0], "xi": [1, 1]}


@pytest.fixture
def validator():
    return InputValidator()


def test_parse_error_location(validator):
    with pytest.raises(ParseError) as excinfo:
        validator.parse_json('{\n  "n": 3,\n  oops\n}')
    assert excinfo.value.line == 3
    assert excinfo.value.column == 3
    assert "line 3, column 3" in str(excinfo.value)


def test_parse_requires_object(validator):
    with pytest.raises(ParseError) as excinfo:
        validator.parse_json("[1, 2]")
    assert excinfo.value.to_dict()["line"] == 1


def test_polarized_instance(validator):
    arrangement = validator.validate_instance(DIAGONAL_3)
    assert isinstance(arrangement, PolarizedArrangement)
    assert arrangement.eta == (1, 0, 0)
    assert arrangement.xi == (1, 1)


def test_quantized_instance(validator):
    data = {"n": 2, "lambda0_basis": [[1, -1]], "basepoint": ["1/2", 0], "xi": [1]}
    arrangement = validator.validate_instance(data)
    assert isinstance(arrangement, QuantizedPolarizedArrangement)
    assert arrangement.basepoint == (Fraction(1, 2), Fraction(0))
    assert arrangement.integral_indices == (1,)


def test_missing_xi_defaults_to_zero(validator):
    data = {key: value for key, value in DIAGONAL_3.items() if key != "xi"}
    assert validator.validate_instance(data).xi == (0, 0)


@pytest.mark.parametrize(
    "changes,field,code",
    [
        ({"n": True}, "n", "INVALID_TYPE"),
        ({"n": 0}, "n", "INVALID_VALUE"),
        ({"lambda0_basis": "rows"}, "lambda0_basis", "INVALID_TYPE"),
        ({"lambda0_basis": [[1, -1]]}, "lambda0_basis", "INVALID_LENGTH"),
        ({"lambda0_basis": [[2, -2, 0]]}, "lambda0_basis", "INVALID_LATTICE"),
        ({"lambda0_basis": [[1, -1, 0], [2, -2, 0]]}, "lambda0_basis", "DEPENDENT_ROWS"),
        ({"lambda0_basis": [[1, 0, 0], [0, 1, -1]]}, "lambda0_basis", "INVALID_LATTICE"),
        ({"eta": [1, 0]}, "eta", "INVALID_LENGTH"),
        ({"eta": [1, 0, "a"]}, "eta", "INVALID_TYPE"),
        ({"xi": [1]}, "xi", "INVALID_LENGTH"),
        ({"basepoint": [0, 0, 0]}, "eta", "REQUIRED"),
        ({"colour": "red"}, "colour", "UNKNOWN_FIELD"),
    ],
)
def test_invalid_instances(validator, changes, field, code):
    with pytest.raises(ValidationError) as excinfo:
        validator.validate_instance({**DIAGONAL_3, **changes})
    assert excinfo.value.field == field
    assert excinfo.value.code == code


def test_eta_or_basepoint_required(validator):
    data = {key: value for key, value in DIAGONAL_3.items() if key != "eta"}
    with pytest.raises(ValidationError) as excinfo:
        validator.validate_instance(data)
    assert excinfo.value.code == "REQUIRED"


@pytest.mark.parametrize(
    "value,expected",
    [(3, Fraction(3)), ("-2", Fraction(-2)), ("3/4", Fraction(3, 4)), (" 1 / 2 ", Fraction(1, 2))],
)
def test_rationals(validator, value, expected):
    assert validator.validate_rational(value, "basepoint") == expected


@pytest.mark.parametrize("value,code", [("1/0", "INVALID_VALUE"), ("half", "INVALID_FORMAT"), (0.5, "INVALID_FORMAT")])
def test_invalid_rationals(validator, value, code):
    with pytest.raises(ValidationError) as excinfo:
        validator.validate_rational(value, "basepoint")
    assert excinfo.value.code == code


def test_secondary_parameters(validator):
    lattice = validator.validate_instance(DIAGONAL_3).lambda0
    assert validator.validate_secondary({"eta_prime": [-5, 0, 0]}, lattice) == {
        "eta_prime": [-5, 0, 0],
        "xi_prime": None,
    }
    with pytest.raises(ValidationError):
        validator.validate_secondary({"xi_prime": [1, 1, 1]}, lattice)


def test_max_degree(validator):
    assert validator.validate_max_degree(None) is None
    assert validator.validate_max_degree("6") == 6
    with pytest.raises(ValidationError):
        validator.validate_max_degree("six")
    with pytest.raises(ValidationError):
        validator.validate_max_degree(-1)


def test_load_instance(write_instance):
    assert load_instance(write_instance(DIAGONAL_3)) == DIAGONAL_3
    with pytest.raises(ParseError):
        load_instance(write_instance("not json"))
