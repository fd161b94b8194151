"""
Input parsing and validation for instance files.

An instance file is a JSON object

    {"n": 3, "lambda0_basis": [[1, -1, 0], [0, 1, -1]], "eta": [1, 0, 0], "xi": [1, 1]}

with either "eta" (a polarized arrangement) or "basepoint" (a quantized one, rationals
written as "p/q"). "eta_prime" and "xi_prime" are optional second parameters used by the
bimodule commands.
"""

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from hypertoric.models.entities import Lattice, PolarizedArrangement, QuantizedPolarizedArrangement
from hypertoric.services.exact import validate_lattice
from hypertoric.utils.errors import HypertoricError

Arrangement = Union[PolarizedArrangement, QuantizedPolarizedArrangement]


class ValidationError(Exception):
    """Custom exception for validation errors"""

    def __init__(self, message: str, field: Optional[str] = None, code: Optional[str] = None):
        self.message = message
        self.field = field
        self.code = code or "VALIDATION_ERROR"
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        return {"error": "ValidationError", "code": self.code, "message": self.message, "field": self.field}


class ParseError(Exception):
    """Malformed input text, located by line and column (1-based)"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}")

    def to_dict(self) -> Dict[str, Any]:
        return {"error": "ParseError", "message": self.message, "line": self.line, "column": self.column}


class InputValidator:
    """Validation of instance files and their fields"""

    RATIONAL_PATTERN = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")
    KNOWN_FIELDS = {"n", "lambda0_basis", "eta", "xi", "basepoint", "eta_prime", "xi_prime", "name"}

    def parse_json(self, text: str) -> Dict[str, Any]:
        """
        Parse instance text

        Raises:
            ParseError: the text is not a JSON object
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno)
        if not isinstance(data, dict):
            raise ParseError("Instance must be a JSON object", 1, 1)
        return data

    def validate_integer(self, value: Any, field_name: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{field_name} must be an integer", field_name, "INVALID_TYPE")
        return value

    def validate_integer_vector(self, value: Any, field_name: str, length: Optional[int] = None) -> List[int]:
        if not isinstance(value, list):
            raise ValidationError(f"{field_name} must be a list of integers", field_name, "INVALID_TYPE")
        vector = [self.validate_integer(x, field_name) for x in value]
        if length is not None and len(vector) != length:
            raise ValidationError(
                f"{field_name} must have length {length}, got {len(vector)}", field_name, "INVALID_LENGTH"
            )
        return vector

    def validate_rational(self, value: Any, field_name: str) -> Fraction:
        """Integers or strings 'p' / 'p/q'"""
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        if not isinstance(value, str) or not self.RATIONAL_PATTERN.match(value):
            raise ValidationError(
                f"{field_name} entries must be integers or 'p/q' strings", field_name, "INVALID_FORMAT"
            )
        numerator, _, denominator = value.replace(" ", "").partition("/")
        if denominator and int(denominator) == 0:
            raise ValidationError(f"Zero denominator in {field_name}", field_name, "INVALID_VALUE")
        return Fraction(int(numerator), int(denominator) if denominator else 1)

    def validate_lattice(self, data: Dict[str, Any]) -> Lattice:
        n = self.validate_integer(data.get("n"), "n")
        if n <= 0:
            raise ValidationError("n must be positive", "n", "INVALID_VALUE")
        rows = data.get("lambda0_basis")
        if not isinstance(rows, list):
            raise ValidationError("lambda0_basis must be a list of rows", "lambda0_basis", "INVALID_TYPE")
        basis = [self.validate_integer_vector(row, "lambda0_basis", n) for row in rows]
        try:
            return validate_lattice(Lattice.from_rows(basis, n))
        except HypertoricError as e:
            raise ValidationError(e.message, "lambda0_basis", e.code)

    def validate_instance(self, data: Dict[str, Any]) -> Arrangement:
        """
        Build the arrangement described by an instance dictionary

        Raises:
            ValidationError: missing, malformed or inconsistent fields
        """
        unknown = sorted(set(data) - self.KNOWN_FIELDS)
        if unknown:
            raise ValidationError(f"Unknown fields: {', '.join(unknown)}", unknown[0], "UNKNOWN_FIELD")
        lattice = self.validate_lattice(data)
        xi_value = data.get("xi")
        xi = [0] * lattice.rank if xi_value is None else self.validate_integer_vector(xi_value, "xi", lattice.rank)
        eta, basepoint = data.get("eta"), data.get("basepoint")
        if (eta is None) == (basepoint is None):
            raise ValidationError("Exactly one of eta and basepoint is required", "eta", "REQUIRED")
        if eta is not None:
            return PolarizedArrangement(lattice, tuple(self.validate_integer_vector(eta, "eta", lattice.n)), tuple(xi))
        if not isinstance(basepoint, list) or len(basepoint) != lattice.n:
            raise ValidationError(f"basepoint must be a list of length {lattice.n}", "basepoint", "INVALID_LENGTH")
        point = tuple(self.validate_rational(x, "basepoint") for x in basepoint)
        return QuantizedPolarizedArrangement(lattice, point, tuple(xi))

    def validate_secondary(self, data: Dict[str, Any], lattice: Lattice) -> Dict[str, Optional[List[int]]]:
        """Optional eta_prime / xi_prime"""
        result: Dict[str, Optional[List[int]]] = {}
        for field_name, length in (("eta_prime", lattice.n), ("xi_prime", lattice.rank)):
            value = data.get(field_name)
            result[field_name] = None if value is None else self.validate_integer_vector(value, field_name, length)
        return result

    def validate_max_degree(self, value: Optional[Union[str, int]]) -> Optional[int]:
        if value is None:
            return None
        try:
            degree = int(value)
        except (TypeError, ValueError):
            raise ValidationError("max-degree must be an integer", "max_degree", "INVALID_TYPE")
        if degree < 0:
            raise ValidationError("max-degree cannot be negative", "max_degree", "INVALID_VALUE")
        return degree


# Global validator instance
validator = InputValidator()


def load_instance(path: str) -> Dict[str, Any]:
    """Read and parse an instance file (no field validation)"""
    with open(path, encoding="utf-8") as handle:
        return validator.parse_json(handle.read())
