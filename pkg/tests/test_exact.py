"""
Tests for exact integer and rational linear algebra.
"""

from fractions import Fraction

import pytest

from hypertoric.models.entities import AffineLattice, Inequality, Lattice, RationalPolyhedron
from hypertoric.services.arrangement import delta_polyhedron
from hypertoric.services.exact import (
    functional_bounded_on_cone,
    hermite_normal_form,
    is_direct_summand,
    lattice_points_in_polytope,
    matrix_rank,
    orthogonal_complement_lattice,
    polyhedron_feasible,
    smallest_lift,
    smith_normal_form,
    solve_integer,
    validate_lattice,
)
from hypertoric.utils.errors import (
    BudgetExceeded,
    DependentRows,
    InvalidLattice,
    NonHomogeneous,
    UnboundedEnumeration,
)


def _multiply(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@pytest.mark.parametrize(
    "matrix, diagonal",
    [
        ([[1, 0], [0, 1]], [1, 1]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[1, -1, 0], [0, 1, -1]], [1, 1]),
        ([[2, 4], [6, 8]], [2, 4]),
    ],
)
def test_smith_normal_form(matrix, diagonal):
    """Test that U·M·V = S with the expected invariant factors."""
    S, U, V = smith_normal_form(matrix)
    assert _multiply(_multiply(U, matrix), V) == S
    assert [S[i][i] for i in range(len(diagonal))] == diagonal
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)


def test_direct_summand():
    assert is_direct_summand([[1, -1]])
    assert not is_direct_summand([[2, 0]])
    assert is_direct_summand([[1, 1, 1]])
    with pytest.raises(DependentRows):
        is_direct_summand([[1, 2], [2, 4]])


def test_orthogonal_complement():
    """Test complements of the diagonal lattices and the involution."""
    line = Lattice.from_rows([[1, -1]])
    assert [list(r) for r in orthogonal_complement_lattice(line).basis] == [[1, 1]]
    plane = Lattice.from_rows([[1, -1, 0], [0, 1, -1]])
    complement = orthogonal_complement_lattice(plane)
    assert [list(r) for r in complement.basis] == [[1, 1, 1]]
    assert hermite_normal_form(orthogonal_complement_lattice(complement).basis) == hermite_normal_form(plane.basis)


def test_matrix_rank():
    assert matrix_rank([[0, 0], [0, 0]]) == 0
    assert matrix_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_solve_integer():
    assert solve_integer([[1, -1]], [-1], 2) is not None
    solution = solve_integer([[1, -1]], [-1], 2)
    assert solution[0] - solution[1] == -1
    assert solve_integer([[2, 0]], [1], 2) is None


def test_validate_lattice_rejects_bad_input():
    with pytest.raises(InvalidLattice):
        validate_lattice(Lattice.from_rows([[2, 0, 2]]))
    with pytest.raises(InvalidLattice):
        validate_lattice(Lattice.from_rows([[1, 1, 0]]))
    with pytest.raises(DependentRows):
        validate_lattice(Lattice.from_rows([[1, -1, 0], [2, -2, 0]]))


def test_validate_lattice_relaxations():
    scaled = Lattice.from_rows([[2, 2, 2]])
    with pytest.raises(InvalidLattice):
        validate_lattice(scaled)
    assert validate_lattice(scaled, require_summand=False) is scaled

    with_axis = Lattice.from_rows([[1, 0, 0], [0, 1, -1]])
    with pytest.raises(InvalidLattice):
        validate_lattice(with_axis)
    assert validate_lattice(with_axis, allow_coordinate_axes=True) is with_axis


def _interval(lower, upper):
    return RationalPolyhedron(1, (Inequality((1,), -Fraction(lower), ">="), Inequality((1,), -Fraction(upper), "<=")))


def test_polyhedron_feasible():
    """Test witnesses for feasible systems and None for empty ones."""
    witness = polyhedron_feasible(_interval(0, 1))
    assert witness is not None and 0 <= witness[0] <= 1
    assert polyhedron_feasible(_interval(1, 0)) is None

    strict = RationalPolyhedron(1, (Inequality((1,), 0, ">"), Inequality((1,), 0, "<=")))
    assert polyhedron_feasible(strict) is None


def test_all_minus_chamber_is_empty(lattice3):
    """Nonpositive coordinates cannot sum to 1."""
    offsets = [Fraction(1), Fraction(0), Fraction(0)]
    assert polyhedron_feasible(delta_polyhedron(lattice3, offsets, {0: "-", 1: "-", 2: "-"})) is None
    assert polyhedron_feasible(delta_polyhedron(lattice3, offsets, {0: "+", 1: "+", 2: "+"})) is not None


def test_functional_bounded_on_cone():
    ray = RationalPolyhedron(1, (Inequality((1,), 0, ">="),))
    assert functional_bounded_on_cone([-1], ray)
    assert not functional_bounded_on_cone([1], ray)
    origin = RationalPolyhedron(1, (Inequality((1,), 0, ">="), Inequality((1,), 0, "<=")))
    assert functional_bounded_on_cone([0], origin)
    with pytest.raises(NonHomogeneous):
        functional_bounded_on_cone([1], _interval(0, 1))


def test_lattice_points_in_segment():
    points = lattice_points_in_polytope(AffineLattice((0,), ((1,),)), _interval(0, Fraction(5, 2)))
    assert points == [(0,), (1,), (2,)]
    assert lattice_points_in_polytope(AffineLattice((0,), ((1,),)), _interval(1, 0)) == []


def test_lattice_points_in_triangle():
    triangle = RationalPolyhedron(
        2,
        (
            Inequality((1, 0), 0, ">="),
            Inequality((0, 1), 0, ">="),
            Inequality((-1, -1), 1, ">="),
        ),
    )
    points = lattice_points_in_polytope(AffineLattice((0, 0), ((1, 0), (0, 1))), triangle)
    assert sorted(points) == [(0, 0), (0, 1), (1, 0)]


def test_lattice_points_shifted_basepoint():
    """Half-integral basepoint: 1/2 + Z inside [0, 2] gives 1/2 and 3/2."""
    points = lattice_points_in_polytope(AffineLattice((Fraction(1, 2),), ((1,),)), _interval(0, 2))
    assert points == [(Fraction(1, 2),), (Fraction(3, 2),)]


def test_lattice_points_unbounded_and_budget():
    ray = RationalPolyhedron(1, (Inequality((1,), 0, ">="),))
    affine = AffineLattice((0,), ((1,),))
    with pytest.raises(UnboundedEnumeration):
        lattice_points_in_polytope(affine, ray)
    assert lattice_points_in_polytope(affine, ray, witness=True) == [(0,)]
    with pytest.raises(BudgetExceeded):
        lattice_points_in_polytope(affine, _interval(0, 100), budget=10)


def test_smallest_lift():
    """Test the smallest max-norm representative modulo span{(1,1)}."""
    assert smallest_lift([3, 2], [[1, 1]]) == [0, -1]
    assert smallest_lift([5, 1], [[1, 1]]) == [2, -2]
    assert smallest_lift([0, -1], [[1, 1]]) == [0, -1]
