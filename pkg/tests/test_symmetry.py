"""
Tests for circuits, the discriminantal arrangement, Deligne quivers and the groups W and V.
"""

import pytest

from hypertoric.models.entities import Circuit, SignedPermutation, SignVector
from hypertoric.services.instances import diagonal_lattice
from hypertoric.services.symmetry import (
    act_on_parameters,
    act_on_signs,
    action_check,
    algebra_transport_check,
    circuits,
    deligne_quiver,
    deligne_quiver_to_dict,
    deligne_relations_check,
    discriminantal_walls,
    is_group,
    minimal_path_check,
    weyl_groups,
)
from hypertoric.utils.errors import BudgetExceeded, NotASymmetry, NotRegular

SWAP = SignedPermutation((1, 0), (1, 1))


def test_circuits(lattice3):
    assert circuits(lattice3) == [Circuit((0, 1, 2), (1, 1, 1))]
    assert circuits(diagonal_lattice(2)) == [Circuit((0, 1), (1, 1))]


def test_walls_vanish_on_lattice(lattice3, line_lattice3):
    assert discriminantal_walls(lattice3) == [(1, 1, 1)]
    assert len(discriminantal_walls(line_lattice3)) == 3


def test_single_wall_quiver(lattice3):
    quiver = deligne_quiver(lattice3)
    assert quiver.number_of_nodes() == 2
    assert quiver.number_of_edges() == 2
    data = deligne_quiver_to_dict(quiver)
    assert data["walls"] == [[1, 1, 1]]
    assert data["vertices"] == [
        {"chamber": "+", "representative": [-1, 1, 1]},
        {"chamber": "-", "representative": [-1, -1, -1]},
    ]
    assert data["edges"] == [["+", "-", 0], ["-", "+", 0]]


def test_braid_quiver(line_lattice3):
    """Three walls through a line: six chambers, each adjacent to two others."""
    quiver = deligne_quiver(line_lattice3)
    assert quiver.number_of_nodes() == 6
    assert quiver.number_of_edges() == 12


@pytest.mark.parametrize("fixture", ["lattice3", "line_lattice3"])
def test_deligne_relations(fixture, request):
    assert deligne_relations_check(request.getfixturevalue(fixture))


def test_minimal_path_needs_regular_parameters(lattice3):
    with pytest.raises(NotRegular):
        minimal_path_check(lattice3, (0, 0, 0), (1, 0, 0), (-1, 0, 0))


def test_weyl_groups_two_lines():
    groups = weyl_groups(diagonal_lattice(2))
    assert groups["W"] == [SignedPermutation((0, 1), (1, 1)), SignedPermutation((1, 0), (-1, -1))]
    assert groups["V"] == [SignedPermutation((0, 1), (1, 1)), SignedPermutation((1, 0), (1, 1))]
    assert is_group(groups["W"]) and is_group(groups["V"])


def test_weyl_groups_three_lines(lattice3):
    groups = weyl_groups(lattice3)
    assert groups["W"] == [SignedPermutation.identity(3)]
    assert len(groups["V"]) == 6
    assert all(g.signs == (1, 1, 1) for g in groups["V"])
    assert is_group(groups["V"])


def test_weyl_groups_budget(lattice3):
    with pytest.raises(BudgetExceeded):
        weyl_groups(lattice3, budget=2)


def test_is_group_rejects_non_closed_sets():
    assert not is_group([])
    assert not is_group([SWAP])


def test_act_on_signs():
    assert str(act_on_signs(SWAP, SignVector.full("+-"))) == "-+"
    flip = SignedPermutation((0, 1), (-1, 1))
    assert str(act_on_signs(flip, SignVector.full("++"))) == "-+"
    with pytest.raises(NotASymmetry):
        act_on_signs(SWAP, SignVector((0,), "+"))


def test_act_on_parameters(diagonal2):
    moved = act_on_parameters(SWAP, diagonal2)
    assert moved.eta == (0, 1)
    assert moved.xi == (-1,)


def test_act_on_parameters_rejects_non_symmetry(diagonal3):
    with pytest.raises(NotASymmetry):
        act_on_parameters(SignedPermutation((0, 1, 2), (-1, 1, 1)), diagonal3)


def test_action_on_chambers(diagonal2, diagonal3):
    assert action_check(diagonal2, SWAP)
    for g in weyl_groups(diagonal3.lambda0)["V"]:
        assert action_check(diagonal3, g)


def test_algebra_transport(diagonal2):
    assert algebra_transport_check(diagonal2, SWAP, max_degree=4)
