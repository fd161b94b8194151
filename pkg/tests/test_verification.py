"""
Tests for instance preparation and the acceptance checks.
"""

import random

import pytest

from hypertoric.services.exact import validate_lattice
from hypertoric.services.instances import named_instances, random_lattice, random_suite
from hypertoric.services.verification import (
    _run,
    check_chamber_count,
    check_chamber_sets,
    check_h_vectors,
    prepare,
    run_gale_suite,
    run_instance_suite,
    verify,
)
from hypertoric.utils.errors import NotRegular

SKIPPED_ON_NON_REGULAR = {
    "gale_duality",
    "algebra",
    "decomposition_cartan",
    "koszul",
    "koszul_dual_dims",
    "cells_duality",
    "bbd_filtration",
    "grothendieck_pairing",
    "cartesian",
    "shuffling_identity",
}


def test_prepare_regular(diagonal3):
    prepared = prepare(diagonal3)
    assert prepared.regular
    assert prepared.has_dual
    assert prepared.polarized is diagonal3
    assert prepared.quantized.is_integral
    assert prepared.dual.lambda0.basis == ((1, 1, 1),)
    assert prepared.quantized_dual is not None


def test_prepare_quantized(diagonal3_quantized):
    prepared = prepare(diagonal3_quantized)
    assert prepared.quantized is diagonal3_quantized
    assert prepared.polarized.lambda0 == diagonal3_quantized.lambda0


def test_prepare_non_regular(theta_instance):
    prepared = prepare(theta_instance)
    assert not prepared.regular
    assert not prepared.has_dual
    assert prepared.quantized is None


def test_chamber_checks(diagonal3, theta_instance):
    result = check_chamber_sets(prepare(diagonal3))
    assert result.passed
    assert result.details["feasible"] == 7
    count = check_chamber_count(prepare(theta_instance))
    assert count.passed
    assert count.details == {"count": 2, "bound": 4, "equal": False, "lambda_regular": False}


def test_inconsistent_chamber_count_fails_check(theta_instance, monkeypatch):
    prepared = prepare(theta_instance)
    monkeypatch.setattr("hypertoric.services.arrangement.lambda_regular", lambda arrangement: True)
    result = _run("chamber_count", lambda: check_chamber_count(prepared))
    assert not result.passed
    assert result.details["error"] == "AssertionError"


def test_h_vector_check(theta_instance):
    assert check_h_vectors(prepare(theta_instance)).passed


def test_domain_errors_become_failed_checks():
    def failing():
        raise NotRegular("not regular")

    result = _run("failing", failing)
    assert not result.passed
    assert result.details["error"] == "NotRegular"


def test_non_regular_instance_skips_algebraic_checks(theta_instance):
    results = run_instance_suite(theta_instance)
    assert all(r.passed for r in results)
    assert {r.name for r in results if r.skipped} == SKIPPED_ON_NON_REGULAR


@pytest.mark.slow
def test_two_line_instance_passes_every_check(diagonal2):
    results = run_instance_suite(diagonal2)
    assert [r.name for r in results if not r.passed] == []
    assert not any(r.skipped for r in results)


@pytest.mark.slow
def test_verify_with_random_suite(diagonal2):
    results = verify(diagonal2, seed=11, size=3)
    assert results[-1].name == "random_gale_suite"
    assert results[-1].passed


def test_gale_suite():
    result = run_gale_suite(seed=1, size=4, n_max=4)
    assert result.passed
    assert result.details["failures"] == []


@pytest.mark.slow
def test_gale_suite_at_full_scale():
    """Two hundred seeded instances with n <= 6."""
    result = run_gale_suite(seed=0, size=200, n_max=6)
    assert result.passed, result.details["failures"]


def test_random_lattices_pass_validation():
    rng = random.Random(9)
    for n, k in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 3), (6, 2)]:
        for _ in range(20):
            lattice = random_lattice(rng, n, k)
            assert validate_lattice(lattice) is lattice
            assert lattice.rank == k


@pytest.mark.slow
def test_random_suite_lattices_pass_validation():
    """No suite lattice contains a coordinate axis."""
    for arrangement in random_suite(seed=0, size=200, n_max=6):
        assert validate_lattice(arrangement.lambda0) is arrangement.lambda0


def test_random_suite_is_seeded():
    first = [a.to_dict() for a in random_suite(seed=5, size=4, n_max=4)]
    second = [a.to_dict() for a in random_suite(seed=5, size=4, n_max=4)]
    assert first == second
    assert all(2 <= a["n"] <= 4 for a in first)


def test_named_instances():
    instances = named_instances([2])
    assert sorted(instances) == ["determinant_one_2", "diagonal_2", "diagonal_quantized_2"]
