"""
Helper functions for rendering results.

Canonical JSON (sorted keys, rationals as 'p/q'), Hilbert series rendering with
sympy and plain-text tables for `--format table`.
"""

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence

import sympy

from hypertoric.models.entities import SignVector, format_fraction


def to_jsonable(value: Any) -> Any:
    """Convert results to JSON-compatible data with deterministic ordering"""
    if isinstance(value, SignVector):
        return str(value)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, sympy.Basic):
        return render_polynomial(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def canonical_json(data: Any) -> str:
    """Byte-stable JSON rendering"""
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)


def render_polynomial(expression: Any) -> str:
    """Polynomial in t with ascending powers, e.g. '1 + 2*t + t**2'"""
    expression = sympy.expand(expression)
    if expression == 0:
        return "0"
    t = sorted(expression.free_symbols, key=str)
    if not t:
        return str(expression)
    poly = sympy.Poly(expression, *t)
    terms = []
    for (power, *_), coefficient in sorted(poly.terms()):
        if power == 0:
            terms.append(str(coefficient))
        else:
            monomial = str(t[0]) if power == 1 else f"{t[0]}**{power}"
            terms.append(monomial if coefficient == 1 else f"{coefficient}*{monomial}")
    return " + ".join(terms).replace("+ -", "- ")


def hilbert_series_matrix(matrix: sympy.Matrix) -> List[List[str]]:
    """Rendered entries of a matrix of Hilbert polynomials"""
    return [[render_polynomial(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def render_table(rows: Sequence[Sequence[Any]], headers: Sequence[str]) -> str:
    """Left-aligned plain-text table"""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def flatten_results(results: Dict[str, Any], prefix: str = "") -> List[List[str]]:
    """(key, value) rows for table output; nested dictionaries become dotted keys"""
    rows = []
    for key in sorted(results):
        value = results[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            rows.extend(flatten_results(value, prefix=f"{name}."))
        else:
            rows.append([name, json.dumps(to_jsonable(value), sort_keys=True, ensure_ascii=False)])
    return rows
