"""
Tests for the graded algebras A(η,ξ), their truncated deformations and invariants.
"""

from fractions import Fraction

import pytest
import sympy

from hypertoric.models.entities import SignVector
from hypertoric.services.algebra import (
    build_algebra,
    cartan_matrix,
    center_graded_dims,
    free_rank_one_dims,
    graded_dims,
    quiver_presentation,
    rank_one_freeness_check,
)
from hypertoric.services.arrangement import bounded, feasible
from hypertoric.services.gale import gale_dual
from hypertoric.services.instances import diagonal_lattice, random_suite
from hypertoric.services.quadratic import arrow_relation_scalar, path_model_algebra
from hypertoric.utils.errors import DegreeBudgetExceeded, ParameterMismatch
from hypertoric.utils.helpers import hilbert_series_matrix


def _sv(signs):
    return SignVector.full(signs)


def _algebra(arrangement, max_degree=None):
    return build_algebra(arrangement.lambda0, feasible(arrangement), bounded(arrangement), max_degree=max_degree)


def _arrow(algebra, source, target):
    for index in algebra.starting_at(_sv(source)):
        element = algebra.basis[index]
        if element.degree == 1 and element.target == _sv(target):
            return index
    raise KeyError((source, target))


def test_two_point_algebra(diagonal2):
    algebra = _algebra(diagonal2)
    assert [str(v) for v in algebra.vertices] == ["++", "-+"]
    assert algebra.dimension == 5
    assert algebra.graded_dims() == [2, 2, 1]
    assert cartan_matrix(algebra) == [[1, 1], [1, 2]]


def test_two_point_hilbert_series(diagonal2):
    matrix = graded_dims(_algebra(diagonal2))
    t = sympy.Symbol("t")
    assert matrix == sympy.Matrix([[1, t], [t, 1 + t**2]])
    assert hilbert_series_matrix(matrix) == [["1", "t"], ["t", "1 + t**2"]]


def test_two_point_relations(diagonal2):
    algebra = _algebra(diagonal2)
    down, up = _arrow(algebra, "++", "-+"), _arrow(algebra, "-+", "++")
    assert algebra.product(down, up) == {}
    assert algebra.product(up, down) != {}


def test_single_vertex_truncated_polynomial(theta_instance):
    """One vertex, e A e = Q[u]/u³ with u in degree 2."""
    algebra = _algebra(theta_instance)
    assert len(algebra.vertices) == 1
    assert algebra.graded_dims() == [1, 0, 1, 0, 1]
    assert algebra.check_associativity()


def test_degree_budget(theta_instance):
    with pytest.raises(DegreeBudgetExceeded):
        _algebra(theta_instance, max_degree=3)


def test_sign_vectors_must_cover_all_coordinates(lattice3):
    with pytest.raises(ParameterMismatch):
        build_algebra(lattice3, feasible=[SignVector((0, 1), "++")])


def test_three_line_algebra(diagonal3):
    algebra = _algebra(diagonal3)
    assert [str(v) for v in algebra.vertices] == ["+++", "-++", "--+"]
    assert algebra.check_idempotents()
    assert algebra.check_associativity()
    assert algebra.pair_dims(_sv("+++"), _sv("+++")) == [1] + [0] * algebra.max_degree
    assert algebra.pair_dims(_sv("-++"), _sv("-++"))[:3] == [1, 0, 1]


def test_centers_of_dual_algebras(diagonal3):
    """Centers of the algebras of a dual pair have the cohomology dimensions of two different varieties."""
    assert center_graded_dims(_algebra(diagonal3)) == [1, 0, 2]
    assert center_graded_dims(_algebra(gale_dual(diagonal3))) == [1, 0, 1, 0, 1]


def test_center_dimension_counts_vertices(diagonal2):
    algebra = _algebra(diagonal2)
    assert sum(center_graded_dims(algebra)) == len(algebra.vertices)


def test_free_rank_one_dims():
    assert free_rank_one_dims(1, 0, 4) == [1, 0, 1, 0, 1]
    assert free_rank_one_dims(2, 1, 5) == [0, 1, 0, 2, 0, 3]
    assert free_rank_one_dims(0, 2, 3) == [0, 0, 1, 0]


def test_deformation_is_free_of_rank_one(diagonal3, lattice3):
    deformation = build_algebra(lattice3, feasible(diagonal3), max_degree=4)
    assert not deformation.finite
    assert rank_one_freeness_check(deformation, variables=lattice3.rank)


def test_killed_idempotents_break_freeness(diagonal3, lattice3):
    assert not rank_one_freeness_check(_algebra(diagonal3, max_degree=4), variables=lattice3.rank)


def test_cube_relations():
    """Paths around a square commute, and the two loops at a vertex differ by the central relation."""
    algebra = build_algebra(diagonal_lattice(2), max_degree=4)
    first = (_arrow(algebra, "++", "+-"), _arrow(algebra, "+-", "--"))
    second = (_arrow(algebra, "++", "-+"), _arrow(algebra, "-+", "--"))
    assert arrow_relation_scalar(algebra, first, second) == Fraction(1)
    loop_first = (_arrow(algebra, "++", "-+"), _arrow(algebra, "-+", "++"))
    loop_second = (_arrow(algebra, "++", "+-"), _arrow(algebra, "+-", "++"))
    assert arrow_relation_scalar(algebra, loop_first, loop_second) == Fraction(-1)


def test_quiver_presentation(diagonal2):
    presentation = quiver_presentation(diagonal2.lambda0, feasible(diagonal2), bounded(diagonal2))
    assert [str(v) for v in presentation.vertices] == ["++", "-+"]
    assert [str(v) for v in presentation.killed] == ["+-"]
    assert len(presentation.arrows) == 2
    assert [tuple(abs(x) for x in r) for r in presentation.central_relations] == [(1, 1)]

def _path_model(arrangement, max_degree):
    return path_model_algebra(arrangement.lambda0, feasible(arrangement), bounded(arrangement), max_degree=max_degree)


@pytest.mark.parametrize("fixture", ["diagonal2", "diagonal3", "theta_instance"])
def test_path_model_matches_build_algebra(fixture, request):
    arrangement = request.getfixturevalue(fixture)
    algebra = _algebra(arrangement)
    model = _path_model(arrangement, algebra.top_degree + 3)
    assert model.finite
    assert [str(v) for v in model.vertices] == [str(v) for v in algebra.vertices]
    assert graded_dims(model) == graded_dims(algebra)
    assert cartan_matrix(model) == cartan_matrix(algebra)


def test_path_model_two_point_algebra(diagonal2):
    model = _path_model(diagonal2, 5)
    assert model.graded_dims() == [2, 2, 1]
    assert model.check_associativity()
    down, up = _arrow(model, "++", "-+"), _arrow(model, "-+", "++")
    assert model.product(down, up) == {}
    assert model.product(up, down) != {}


def test_path_model_of_deformation(diagonal3, lattice3):
    deformation = build_algebra(lattice3, feasible(diagonal3), max_degree=4)
    model = path_model_algebra(lattice3, feasible(diagonal3), max_degree=4)
    assert not model.finite
    assert graded_dims(model) == graded_dims(deformation)


def test_path_model_degree_budget(theta_instance):
    with pytest.raises(DegreeBudgetExceeded):
        _path_model(theta_instance, 5)


@pytest.mark.slow
def test_path_model_on_random_suite():
    for arrangement in random_suite(seed=2, size=5, n_max=4):
        algebra = _algebra(arrangement)
        model = _path_model(arrangement, algebra.top_degree + 2)
        assert graded_dims(model) == graded_dims(algebra), arrangement.to_dict()
        assert cartan_matrix(model) == cartan_matrix(algebra)
