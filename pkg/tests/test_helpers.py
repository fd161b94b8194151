"""
Tests for rendering helpers, configuration and CLI error mapping.
"""

import json
import logging
from fractions import Fraction

import pytest
import sympy

from hypertoric import get_settings
from hypertoric.config.settings import Config, TestingConfig, config
from hypertoric.models.entities import SignVector
from hypertoric.utils.errors import NotRegular
from hypertoric.utils.helpers import canonical_json, flatten_results, render_polynomial, render_table, to_jsonable
from hypertoric.utils.logging_config import RunContextFilter, run_context
from hypertoric.utils.validators import ParseError, ValidationError
from hypertoric.views.errors import (
    EXIT_ASSERTION_FAILED,
    EXIT_DOMAIN_ERROR,
    EXIT_INVALID_INPUT,
    handle_exception,
)

t = sympy.Symbol("t")


def test_canonical_json_is_sorted():
    text = canonical_json({"b": Fraction(1, 2), "a": [Fraction(3), SignVector.full("+-")]})
    assert list(json.loads(text)) == ["a", "b"]
    assert json.loads(text) == {"a": ["3", "+-"], "b": "1/2"}
    assert canonical_json({"a": 1, "b": 2}) == canonical_json({"b": 2, "a": 1})


def test_to_jsonable_sets():
    assert to_jsonable({3, 1, 2}) == [1, 2, 3]
    assert to_jsonable(frozenset({"b", "a"})) == ["a", "b"]
    assert to_jsonable((True, None)) == [True, None]


@pytest.mark.parametrize(
    "expression,expected",
    [
        (sympy.Integer(0), "0"),
        (sympy.Integer(2), "2"),
        (t, "t"),
        ((1 + t) ** 2, "1 + 2*t + t**2"),
        (t**3 + 3 * t, "3*t + t**3"),
    ],
)
def test_render_polynomial(expression, expected):
    assert render_polynomial(expression) == expected


def test_render_table():
    table = render_table([["counts.feasible", "7"], ["h_vector", "[1, 1, 1]"]], ["key", "value"])
    lines = table.splitlines()
    assert lines[0] == "key              value"
    assert set(lines[1]) == {"-", " "}
    assert lines[2] == "counts.feasible  7"


def test_flatten_results():
    rows = flatten_results({"counts": {"feasible": 7, "bounded": 4}, "h_vector": [1, 1, 1], "empty": {}})
    assert rows == [
        ["counts.bounded", "4"],
        ["counts.feasible", "7"],
        ["empty", "{}"],
        ["h_vector", "[1, 1, 1]"],
    ]


def test_testing_settings_installed():
    settings = get_settings()
    assert settings is TestingConfig
    assert settings.TESTING
    assert settings.MAX_DEGREE == 12
    assert config["default"] is config["development"]


def test_validate_config_rejects_non_positive_budgets():
    class BrokenConfig(Config):
        MAX_DEGREE = 0

    with pytest.raises(ValueError, match="MAX_DEGREE"):
        BrokenConfig.validate_config()


def test_validate_config_rejects_unknown_log_format():
    class BrokenConfig(Config):
        LOG_FORMAT = "xml"

    with pytest.raises(ValueError, match="LOG_FORMAT"):
        BrokenConfig.validate_config()


def test_run_context_tags_records():
    record = logging.LogRecord("hypertoric.test", logging.INFO, __file__, 1, "message", None, None)
    with run_context("analyze") as correlation_id:
        RunContextFilter().filter(record)
    assert len(correlation_id) == 8
    assert record.correlation_id == correlation_id
    assert record.command == "analyze"

    RunContextFilter().filter(record)
    assert record.correlation_id == "no-run"
    assert record.command == "library"


def test_exception_mapping():
    payload, code = handle_exception(ParseError("Expecting value", 1, 1))
    assert code == EXIT_INVALID_INPUT
    assert payload["line"] == 1

    payload, code = handle_exception(ValidationError("bad", "eta", "INVALID_LENGTH"))
    assert (payload["code"], code) == ("INVALID_LENGTH", EXIT_INVALID_INPUT)

    payload, code = handle_exception(FileNotFoundError(2, "No such file", "missing.json"))
    assert (payload["error"], payload["path"], code) == ("FileNotFoundError", "missing.json", EXIT_INVALID_INPUT)

    payload, code = handle_exception(NotRegular("not regular"))
    assert (payload["code"], code) == ("NOT_REGULAR", EXIT_DOMAIN_ERROR)

    _, code = handle_exception(AssertionError("check failed"))
    assert code == EXIT_ASSERTION_FAILED

    with pytest.raises(KeyError):
        handle_exception(KeyError("unexpected"))
