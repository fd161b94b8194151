"""
Tests for shuffling and twisting bimodules and the cartesian isomorphism.
"""

import pytest

from hypertoric.services.algebra import build_algebra, cartan_matrix
from hypertoric.services.arrangement import bounded_signs, feasible_signs
from hypertoric.services.bimodules import (
    cartesian_check,
    is_invertible,
    projection_kernel_check,
    shuffling_bimodule,
    transfer_matrix,
    translation_bimodule,
    translation_round_trip,
    twisting_bimodule,
)
from hypertoric.services.instances import random_suite
from hypertoric.utils.errors import NotRegular


def test_shuffling_with_same_polarization_is_regular_bimodule(diagonal2):
    lattice = diagonal2.lambda0
    bimodule = shuffling_bimodule(lattice, diagonal2.eta, diagonal2.eta, diagonal2.xi, max_degree=4)
    algebra = build_algebra(lattice, feasible_signs(diagonal2), bounded_signs(lattice, diagonal2.xi), max_degree=4)
    assert bimodule.dimension == algebra.dimension
    assert transfer_matrix(bimodule) == cartan_matrix(algebra)
    assert bimodule.check_actions()


def test_shuffling_across_walls_is_invertible(diagonal3):
    lattice = diagonal3.lambda0
    bimodule = shuffling_bimodule(lattice, diagonal3.eta, (-5, 0, 0), diagonal3.xi, max_degree=4)
    assert [str(v) for v in bimodule.left.vertices] == ["-++", "--+", "---"]
    assert [str(v) for v in bimodule.right.vertices] == ["+++", "-++", "--+"]
    assert is_invertible(transfer_matrix(bimodule))


def test_shuffling_needs_regular_polarization(diagonal2):
    with pytest.raises(NotRegular):
        shuffling_bimodule(diagonal2.lambda0, diagonal2.eta, (0, 0), diagonal2.xi, max_degree=4)


def test_twisting_bimodule(diagonal2):
    bimodule = twisting_bimodule(diagonal2.lambda0, diagonal2.eta, diagonal2.xi, (-1,), max_degree=4)
    assert [str(v) for v in bimodule.left.vertices] == ["++", "+-"]
    assert not bimodule.right.finite
    assert bimodule.check_actions(up_to_degree=4)


def test_twisting_needs_regular_covector(diagonal2):
    with pytest.raises(NotRegular):
        twisting_bimodule(diagonal2.lambda0, diagonal2.eta, diagonal2.xi, (0,), max_degree=4)


def test_projection_kernel_is_idempotent_ideal(diagonal3):
    lattice = diagonal3.lambda0
    feasible = feasible_signs(diagonal3)
    bounded = bounded_signs(lattice, diagonal3.xi)
    deformation = build_algebra(lattice, feasible=feasible, max_degree=4)
    target = build_algebra(lattice, feasible=feasible, bounded=bounded, max_degree=4)
    killed = [gamma for gamma in feasible if gamma not in set(bounded)]
    assert projection_kernel_check(deformation, target, killed)


@pytest.mark.parametrize("fixture", ["diagonal2", "diagonal3"])
def test_cartesian_isomorphism(fixture, request):
    arrangement = request.getfixturevalue(fixture)
    assert cartesian_check(arrangement.lambda0, arrangement.eta, arrangement.xi, max_degree=4)


def test_is_invertible():
    assert is_invertible([[1, 1], [0, 1]])
    assert not is_invertible([[1, 1], [1, 1]])
    assert not is_invertible([])


def test_cartesian_default_degree(diagonal2):
    assert cartesian_check(diagonal2.lambda0, diagonal2.eta, diagonal2.xi)


def test_cartesian_detects_missing_tensor_relations(diagonal2, monkeypatch):
    """Without the relations through killed vertices, R e_η is far larger than A(-,ξ) e_η."""
    monkeypatch.setattr(
        "hypertoric.services.bimodules.through_vertices", lambda quotient, blocks, vertices: lambda *key: []
    )
    assert not cartesian_check(diagonal2.lambda0, diagonal2.eta, diagonal2.xi, max_degree=3)


def test_cartesian_requires_regular_parameters(diagonal2):
    with pytest.raises(NotRegular):
        cartesian_check(diagonal2.lambda0, diagonal2.eta, [0])


@pytest.mark.slow
def test_cartesian_isomorphism_on_random_suite():
    for arrangement in random_suite(seed=4, size=10, n_max=4):
        assert cartesian_check(arrangement.lambda0, arrangement.eta, arrangement.xi), arrangement.to_dict()


def test_translation_to_itself_is_the_deformed_algebra(diagonal2):
    lattice = diagonal2.lambda0
    bimodule = translation_bimodule(lattice, diagonal2.eta, diagonal2.eta, max_degree=4)
    deformation = build_algebra(lattice, feasible=feasible_signs(diagonal2), max_degree=4)
    assert bimodule.dimension == deformation.dimension
    assert bimodule.left.graded_dims() == deformation.graded_dims()
    assert bimodule.check_actions()


def test_translation_between_different_chambers(diagonal2):
    """F for η = (1,0) is {++, +-, -+}; for η' = (-1,0) it is {--, +-, -+}."""
    lattice = diagonal2.lambda0
    bimodule = translation_bimodule(lattice, (1, 0), (-1, 0), max_degree=4)
    assert sorted(str(v) for v in bimodule.left.vertices) == ["+-", "-+", "--"]
    assert sorted(str(v) for v in bimodule.right.vertices) == ["++", "+-", "-+"]
    assert bimodule.check_actions()


@pytest.mark.parametrize(
    "eta_prime, onto",
    [((1, 0), True), ((2, 0), True), ((-1, 0), False)],
)
def test_translation_round_trip(diagonal2, eta_prime, onto):
    assert translation_round_trip(diagonal2.lambda0, diagonal2.eta, eta_prime, max_degree=4) is onto


def test_translation_needs_regular_polarization(diagonal2):
    with pytest.raises(NotRegular):
        translation_bimodule(diagonal2.lambda0, diagonal2.eta, (0, 0), max_degree=4)
