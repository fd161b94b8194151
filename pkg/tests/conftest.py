"""
Pytest configuration and fixtures for the hypertoric toolkit tests.
"""

import json

import pytest

from hypertoric import create_app
from hypertoric.config.settings import TestingConfig
from hypertoric.models.entities import Lattice
from hypertoric.services.instances import (
    determinant_one_quantized,
    diagonal_instance,
    diagonal_lattice,
    diagonal_quantized,
)


@pytest.fixture(scope="session", autouse=True)
def app():
    """Install the testing configuration once per session."""
    return create_app(TestingConfig)


@pytest.fixture
def diagonal2():
    """n=2 diagonal polarized arrangement: Λ₀ = span{(1,-1)}, η = (1,0), ξ = (1)."""
    return diagonal_instance(2)


@pytest.fixture
def diagonal3():
    """n=3 diagonal polarized arrangement with η-sum 1 and ξ = (1,1)."""
    return diagonal_instance(3)


@pytest.fixture
def diagonal3_quantized():
    """Integral quantization Λ_c, c = 1, linked to diagonal3."""
    return diagonal_quantized(3, 1)


@pytest.fixture
def lattice3():
    return diagonal_lattice(3)


@pytest.fixture
def line_lattice3():
    """span{(1,1,1)} ⊂ Z^3."""
    return Lattice.from_rows([[1, 1, 1]], 3)


@pytest.fixture
def theta_instance():
    """Non-regular quantized arrangement whose algebra is C[θ]/θ^n, n = 3."""
    return determinant_one_quantized(3)


@pytest.fixture
def write_instance(tmp_path):
    """Write an instance dictionary to a JSON file and return its path."""

    def _write(data, name="instance.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
