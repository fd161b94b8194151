"""
Tests for decomposition matrices, BGG reciprocity and the Grothendieck pairing.
"""

from fractions import Fraction

import pytest

from hypertoric.models.entities import SignVector
from hypertoric.services.algebra import build_algebra, cartan_matrix
from hypertoric.services.arrangement import bounded, feasible, linked_polarization
from hypertoric.services.gale import gale_dual_quantized
from hypertoric.services.highest_weight import (
    bbd_orthogonality,
    check_dual_pair,
    decomposition_matrix,
    grothendieck_pairing,
    reciprocity_cartan,
    unitriangular_order,
    xi_maximal_vertex,
)
from hypertoric.services.instances import diagonal_quantized
from hypertoric.utils.errors import NotDualPair, NotRegular


def _strings(signs):
    return [str(a) for a in signs]


def test_two_point_decomposition_matrix():
    vertices, matrix = decomposition_matrix(diagonal_quantized(2, 1))
    assert _strings(vertices) == ["++", "-+"]
    assert matrix == [[1, 1], [0, 1]]
    assert _strings(unitriangular_order(vertices, matrix)) == ["++", "-+"]


def test_reciprocity_matches_cartan_matrix():
    quantized = diagonal_quantized(2, 1)
    _, matrix = decomposition_matrix(quantized)
    polarized = linked_polarization(quantized)
    algebra = build_algebra(polarized.lambda0, feasible(polarized), bounded(polarized))
    assert reciprocity_cartan(matrix) == cartan_matrix(algebra) == [[1, 1], [1, 2]]


def test_three_line_decomposition_is_unitriangular(diagonal3_quantized):
    vertices, matrix = decomposition_matrix(diagonal3_quantized)
    assert _strings(vertices) == ["+++", "-++", "--+"]
    assert all(matrix[i][i] == 1 for i in range(3))
    assert unitriangular_order(vertices, matrix) is not None


def test_unitriangular_order_rejects_cycles():
    vertices = [SignVector.full("++"), SignVector.full("-+")]
    assert unitriangular_order(vertices, [[1, 1], [1, 1]]) is None
    assert unitriangular_order(vertices, [[0, 1], [0, 1]]) is None


def test_xi_maximal_vertex(diagonal2):
    point, active = xi_maximal_vertex(diagonal2, SignVector.full("-+"))
    assert point == (Fraction(-1),)
    assert active == frozenset({0})


def test_decomposition_needs_regular(theta_instance):
    with pytest.raises(NotRegular):
        decomposition_matrix(theta_instance)


@pytest.mark.parametrize("n", [2, 3])
def test_pairing_three_basis_identity(n):
    quantized = diagonal_quantized(n, 1)
    pairing = grothendieck_pairing(quantized, gale_dual_quantized(quantized))
    assert pairing["three_basis_identity"]


def test_projective_pairing_signs(diagonal3_quantized):
    pairing = grothendieck_pairing(diagonal3_quantized, gale_dual_quantized(diagonal3_quantized))
    assert _strings(pairing["vertices"]) == ["+++", "-++", "--+"]
    diagonal = [pairing["projective"][i][i] for i in range(3)]
    assert diagonal == [Fraction(1), Fraction(-1), Fraction(1)]


def test_pairing_rejects_non_dual_pair(diagonal3_quantized):
    with pytest.raises(NotDualPair):
        check_dual_pair(diagonal3_quantized, diagonal3_quantized)
    with pytest.raises(NotDualPair):
        grothendieck_pairing(diagonal3_quantized, diagonal3_quantized)


def test_bbd_orthogonality(diagonal3_quantized):
    assert bbd_orthogonality(diagonal3_quantized, gale_dual_quantized(diagonal3_quantized))
