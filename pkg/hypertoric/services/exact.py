"""
Exact integer and rational linear algebra.

Smith and Hermite normal forms, lattice complements, Fourier-Motzkin
feasibility with witnesses, cone boundedness and lattice-point search.
No floating point is used anywhere in this module.
"""

import math
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from hypertoric.models.entities import AffineLattice, Inequality, Lattice, RationalPolyhedron
from hypertoric.utils.errors import (
    BudgetExceeded,
    DependentRows,
    DimensionMismatch,
    InvalidLattice,
    NonHomogeneous,
    UnboundedEnumeration,
)

IntRows = List[List[int]]

# A constraint is (coefficients, constant, strict) meaning coeffs·x + constant >= 0 (> 0 when strict)
_Constraint = Tuple[Tuple[Fraction, ...], Fraction, bool]


# ---------------------------------------------------------------------------
# Rational matrices
# ---------------------------------------------------------------------------


def _to_domain_matrix(rows: Sequence[Sequence[Any]], ncols: int) -> DomainMatrix:
    elements = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch("Ragged matrix", details={"expected": ncols, "found": len(row)})
        converted = []
        for value in row:
            f = Fraction(value)
            converted.append(QQ(f.numerator, f.denominator))
        elements.append(converted)
    return DomainMatrix(elements, (len(elements), ncols), QQ)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def matrix_rank(rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> int:
    """Exact rank of a rational matrix"""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    return int(_to_domain_matrix(rows, ncols).rank())


def rref(rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns"""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _to_domain_matrix(rows, ncols).rref()
    matrix = reduced.to_Matrix()
    result = [[to_fraction(matrix[i, j]) for j in range(ncols)] for i in range(len(pivots))]
    return result, tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence[Any]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : M x = 0} over Q, one vector per free column"""
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * ncols
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r][f]
        basis.append(vector)
    return basis


def solve_rational(rows: Sequence[Sequence[Any]], rhs: Sequence[Any], ncols: int) -> Optional[List[Fraction]]:
    """One solution of M x = b over Q (free variables set to 0), or None"""
    if not rows:
        return [Fraction(0)] * ncols
    augmented = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r][ncols]
    return solution


def primitive_integer_vector(vector: Sequence[Any]) -> List[int]:
    """Scale a rational vector to a primitive integer vector with first nonzero entry positive"""
    fractions = [Fraction(v) for v in vector]
    denominator = 1
    for f in fractions:
        denominator = denominator * f.denominator // math.gcd(denominator, f.denominator)
    integers = [int(f * denominator) for f in fractions]
    g = 0
    for x in integers:
        g = math.gcd(g, x)
    if g == 0:
        return integers
    integers = [x // g for x in integers]
    leading = next(x for x in integers if x != 0)
    return [-x for x in integers] if leading < 0 else integers


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------


def _identity(size: int) -> IntRows:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[IntRows, IntRows, IntRows]:
    """Smith normal form with transforms.

    Args:
        matrix: m×n integer matrix M

    Returns:
        (S, U, V) with U·M·V = S, S diagonal with d_1 | d_2 | ..., d_i >= 0, U and V unimodular
    """
    S = [[int(x) for x in row] for row in matrix]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def add_row(target: int, source: int, factor: int):
        S[target] = [a + factor * b for a, b in zip(S[target], S[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_col(target: int, source: int, factor: int):
        for row in S:
            row[target] += factor * row[source]
        for row in V:
            row[target] += factor * row[source]

    def swap_rows(i: int, j: int):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            candidates = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j] != 0]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            swap_rows(t, pi)
            swap_cols(t, pj)

            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        done = False
            if not done:
                continue

            offending = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t] != 0),
                None,
            )
            if offending is not None:
                add_row(t, offending, 1)
                continue
            break

        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    return S, U, V


def invariant_factors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form"""
    if not matrix or not matrix[0]:
        return []
    S, _, _ = smith_normal_form(matrix)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i] != 0]


def is_direct_summand(matrix: Sequence[Sequence[int]]) -> bool:
    """Whether the row span of an integer matrix with independent rows is a direct summand.

    Raises:
        DependentRows: if the rows are linearly dependent
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return True
    if matrix_rank(rows) < len(rows):
        raise DependentRows("Rows are linearly dependent", details={"rows": len(rows)})
    return all(d == 1 for d in invariant_factors(rows))


def hermite_normal_form(matrix: Sequence[Sequence[int]]) -> IntRows:
    """Row-style Hermite normal form of the integer row span (nonzero rows only)"""
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if A[i][c] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: (abs(A[i][c]), i))
            A[r], A[pivot] = A[pivot], A[r]
            changed = False
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        changed = True
            if not changed:
                break
        if A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return A[:r]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> IntRows:
    """Z-basis (Hermite form) of {w ∈ Z^n : M w = 0}"""
    rows = [list(r) for r in matrix if any(r)]
    if not rows:
        return _identity(ncols)
    S, _, V = smith_normal_form(rows)
    rank = sum(1 for i in range(min(len(S), ncols)) if S[i][i] != 0)
    kernel = [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]
    return hermite_normal_form(kernel) if kernel else []


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int], ncols: int) -> Optional[List[int]]:
    """One integer solution of M w = b, or None"""
    rows = [list(r) for r in matrix]
    if not rows:
        return [0] * ncols
    S, U, V = smith_normal_form(rows)
    transformed = [sum(U[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rows))]
    y = [0] * ncols
    for i, value in enumerate(transformed):
        d = S[i][i] if i < ncols else 0
        if d == 0:
            if value != 0:
                return None
            continue
        if value % d != 0:
            return None
        y[i] = value // d
    return [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


def in_rational_span(rows: Sequence[Sequence[int]], vector: Sequence[Any]) -> bool:
    rows = [list(r) for r in rows]
    if not rows:
        return not any(vector)
    return matrix_rank(rows + [list(vector)]) == matrix_rank(rows)


def validate_lattice(
    lattice: Lattice,
    require_summand: bool = True,
    allow_coordinate_axes: bool = False,
) -> Lattice:
    """Check the lattice invariants.

    Args:
        lattice: Lattice to check
        require_summand: Require invariant factors all equal to 1
        allow_coordinate_axes: Skip the check that no e_i lies in the row span

    Returns:
        The lattice, unchanged

    Raises:
        DependentRows: rows are linearly dependent
        InvalidLattice: a summand, zero-column or coordinate-axis condition fails
    """
    rows = [list(r) for r in lattice.basis]
    if lattice.rank == 0:
        raise InvalidLattice("Lattice basis is empty")
    if matrix_rank(rows) < lattice.rank:
        raise DependentRows("Lattice basis rows are linearly dependent", details={"basis": rows})
    if require_summand and not is_direct_summand(rows):
        raise InvalidLattice("Lattice is not a direct summand", details={"invariant_factors": invariant_factors(rows)})
    for i, column in enumerate(lattice.columns):
        if not any(column):
            raise InvalidLattice("Lattice lies in a coordinate hyperplane", details={"coordinate": i})
    if not allow_coordinate_axes:
        for i in range(lattice.n):
            axis = [1 if j == i else 0 for j in range(lattice.n)]
            if in_rational_span(rows, axis):
                raise InvalidLattice("Lattice contains a coordinate axis", details={"coordinate": i})
    return lattice


def orthogonal_complement_lattice(lattice: Lattice) -> Lattice:
    """Basis (Hermite form) of {w ∈ Z^n : ⟨w, v⟩ = 0 for all v ∈ Λ₀}"""
    kernel = integer_kernel(lattice.basis, lattice.n)
    return Lattice(n=lattice.n, basis=tuple(tuple(r) for r in kernel))


def same_row_span(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]) -> bool:
    return hermite_normal_form(first) == hermite_normal_form(second)


def lattice_coordinates(lattice: Lattice, vector: Sequence[Any]) -> Optional[List[Fraction]]:
    """Coordinates c with Σ c_j b_j = vector, or None when the vector is outside the rational span"""
    transposed = [[lattice.basis[j][i] for j in range(lattice.rank)] for i in range(lattice.n)]
    return solve_rational(transposed, list(vector), lattice.rank)


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------


def _normalize(constraint: _Constraint) -> _Constraint:
    coeffs, constant, strict = constraint
    leading = next((abs(c) for c in coeffs if c != 0), None)
    if leading is None or leading == 1:
        return constraint
    return tuple(c / leading for c in coeffs), constant / leading, strict


def _to_constraints(polyhedron: RationalPolyhedron) -> List[_Constraint]:
    constraints = []
    for inequality in polyhedron.inequalities:
        if inequality.sense in (">=", ">"):
            constraints.append((inequality.coeffs, inequality.constant, inequality.strict))
        else:
            constraints.append((tuple(-c for c in inequality.coeffs), -inequality.constant, inequality.strict))
    return constraints


def _simplify(constraints: List[_Constraint]) -> Optional[List[_Constraint]]:
    """Drop trivial rows, keep the tightest row per direction; None when a constant row is violated"""
    tightest = {}
    for constraint in constraints:
        coeffs, constant, strict = _normalize(constraint)
        if not any(coeffs):
            if constant < 0 or (constant == 0 and strict):
                return None
            continue
        current = tightest.get(coeffs)
        if current is None or constant < current[0] or (constant == current[0] and strict and not current[1]):
            tightest[coeffs] = (constant, strict)
    return [(coeffs, constant, strict) for coeffs, (constant, strict) in tightest.items()]


def _eliminate(constraints: List[_Constraint], variable: int) -> Optional[List[_Constraint]]:
    positive, negative, rest = [], [], []
    for constraint in constraints:
        a = constraint[0][variable]
        if a > 0:
            positive.append(constraint)
        elif a < 0:
            negative.append(constraint)
        else:
            rest.append(constraint)
    for p_coeffs, p_const, p_strict in positive:
        a = p_coeffs[variable]
        for q_coeffs, q_const, q_strict in negative:
            b = -q_coeffs[variable]
            coeffs = tuple(b * x + a * y for x, y in zip(p_coeffs, q_coeffs))
            rest.append((coeffs, b * p_const + a * q_const, p_strict or q_strict))
    return _simplify(rest)


def _project(constraints: List[_Constraint], keep: Sequence[int], dimension: int) -> Optional[List[_Constraint]]:
    current: Optional[List[_Constraint]] = _simplify(constraints)
    for variable in reversed(range(dimension)):
        if current is None:
            return None
        if variable in keep:
            continue
        current = _eliminate(current, variable)
    return current


def _substitute(constraints: List[_Constraint], variable: int, value: Fraction) -> Optional[List[_Constraint]]:
    result = []
    for coeffs, constant, strict in constraints:
        a = coeffs[variable]
        if a == 0:
            result.append((coeffs, constant, strict))
        else:
            new_coeffs = coeffs[:variable] + (Fraction(0),) + coeffs[variable + 1 :]
            result.append((new_coeffs, constant + a * value, strict))
    return _simplify(result)


def _bounds(constraints: List[_Constraint], variable: int):
    """Interval for one variable from constraints mentioning only that variable"""
    lower, lower_strict, upper, upper_strict = None, False, None, False
    for coeffs, constant, strict in constraints:
        a = coeffs[variable]
        if a == 0:
            continue
        bound = -constant / a
        if a > 0:
            if lower is None or bound > lower:
                lower, lower_strict = bound, strict
            elif bound == lower:
                lower_strict = lower_strict or strict
        else:
            if upper is None or bound < upper:
                upper, upper_strict = bound, strict
            elif bound == upper:
                upper_strict = upper_strict or strict
    return lower, lower_strict, upper, upper_strict


def _pick_value(lower, lower_strict, upper, upper_strict) -> Fraction:
    def admissible(x: Fraction) -> bool:
        if lower is not None and (x < lower or (lower_strict and x == lower)):
            return False
        if upper is not None and (x > upper or (upper_strict and x == upper)):
            return False
        return True

    if admissible(Fraction(0)):
        return Fraction(0)
    if lower is not None and upper is not None:
        if not lower_strict:
            return lower
        if not upper_strict:
            return upper
        above = Fraction(math.floor(lower) + 1)
        return above if admissible(above) else (lower + upper) / 2
    if lower is not None:
        return lower if not lower_strict else Fraction(math.floor(lower) + 1)
    if upper is not None:
        return upper if not upper_strict else Fraction(math.ceil(upper) - 1)
    return Fraction(0)


def polyhedron_feasible(polyhedron: RationalPolyhedron) -> Optional[Tuple[Fraction, ...]]:
    """Exact feasibility by Fourier-Motzkin elimination.

    Returns:
        A rational point satisfying every inequality, or None when the system is empty
    """
    dimension = polyhedron.dimension
    constraints = _simplify(_to_constraints(polyhedron))
    if constraints is None:
        return None
    stages: List[List[_Constraint]] = [constraints]
    current = constraints
    for variable in reversed(range(dimension)):
        eliminated = _eliminate(current, variable)
        if eliminated is None:
            return None
        stages.append(eliminated)
        current = eliminated
    # stages[dimension - j] mentions only variables 0..j-1
    point: List[Fraction] = []
    for variable in range(dimension):
        system = stages[dimension - variable - 1]
        for fixed, value in enumerate(point):
            reduced = _substitute(system, fixed, value)
            assert reduced is not None, "Fourier-Motzkin back-substitution left an infeasible row"
            system = reduced
        point.append(_pick_value(*_bounds(system, variable)))
    witness = tuple(point)
    assert polyhedron.contains(witness), "feasibility witness violates the system"
    return witness


def functional_bounded_on_cone(xi: Sequence[Any], cone: RationalPolyhedron) -> bool:
    """Whether ξ is strictly negative on C∖{0}, i.e. {v ∈ C : ξ(v) >= 0} = {0}.

    Raises:
        NonHomogeneous: if the cone has a nonzero constant term
        DimensionMismatch: if ξ has the wrong length
    """
    if not cone.is_homogeneous:
        raise NonHomogeneous("Cone inequalities must have zero constants")
    if len(xi) != cone.dimension:
        raise DimensionMismatch("Covector length differs from cone dimension")
    dimension = cone.dimension
    nonnegative = cone.with_inequalities([Inequality(tuple(Fraction(x) for x in xi), 0, ">=")])
    for variable in range(dimension):
        for sign in (1, -1):
            coeffs = tuple(Fraction(sign) if j == variable else Fraction(0) for j in range(dimension))
            if polyhedron_feasible(nonnegative.with_inequalities([Inequality(coeffs, -1, ">=")])) is not None:
                return False
    return True


# ---------------------------------------------------------------------------
# Lattice points
# ---------------------------------------------------------------------------


class _SearchBudget:
    def __init__(self, limit: int):
        self.limit = limit
        self.visited = 0

    def tick(self):
        self.visited += 1
        if self.visited > self.limit:
            raise BudgetExceeded("Lattice-point search budget exhausted", details={"budget": self.limit})


def _coefficient_constraints(affine: AffineLattice, polyhedron: RationalPolyhedron) -> List[_Constraint]:
    """Rewrite the system in the coordinates c of basepoint + Σ c_j g_j"""
    constraints = []
    for coeffs, constant, strict in _to_constraints(polyhedron):
        new_coeffs = tuple(
            sum((a * g for a, g in zip(coeffs, generator)), Fraction(0)) for generator in affine.generators
        )
        new_constant = constant + sum((a * b for a, b in zip(coeffs, affine.basepoint)), Fraction(0))
        constraints.append((new_coeffs, new_constant, strict))
    return constraints


def _integer_range(lower, lower_strict, upper, upper_strict) -> range:
    start = math.ceil(lower)
    if lower_strict and start == lower:
        start += 1
    stop = math.floor(upper)
    if upper_strict and stop == upper:
        stop -= 1
    return range(start, stop + 1)


def _search(
    constraints: List[_Constraint],
    dimension: int,
    depth: int,
    prefix: List[int],
    found: List[Tuple[int, ...]],
    witness: bool,
    budget: _SearchBudget,
) -> bool:
    """Depth-first search in lexicographic order; returns True to stop early"""
    budget.tick()
    if depth == dimension:
        found.append(tuple(prefix))
        return witness
    projected = _project(constraints, [depth], dimension)
    if projected is None:
        return False
    lower, lower_strict, upper, upper_strict = _bounds(projected, depth)
    if lower is None or upper is None:
        raise UnboundedEnumeration("Polyhedron is unbounded in lattice coordinates", details={"coordinate": depth})
    for value in _integer_range(lower, lower_strict, upper, upper_strict):
        reduced = _substitute(constraints, depth, Fraction(value))
        if reduced is None:
            continue
        if _search(reduced, dimension, depth + 1, prefix + [value], found, witness, budget):
            return True
    return False


def _is_bounded(constraints: List[_Constraint], dimension: int) -> bool:
    for variable in range(dimension):
        projected = _project(constraints, [variable], dimension)
        if projected is None:
            return True
        lower, _, upper, _ = _bounds(projected, variable)
        if lower is None or upper is None:
            return False
    return True


def _search_radius_cap(constraints: List[_Constraint], dimension: int) -> int:
    """Size bound for a smallest integer solution, from a Hadamard estimate of the scaled system"""
    largest = 1
    for coeffs, constant, _ in constraints:
        denominator = 1
        for value in coeffs + (constant,):
            denominator = denominator * value.denominator // math.gcd(denominator, value.denominator)
        squares = sum(int(v * denominator) ** 2 for v in coeffs + (constant,))
        largest = max(largest, math.isqrt(squares) + 1)
    return (dimension + 1) * largest ** (dimension + 1)


def lattice_points_in_polytope(
    affine: AffineLattice,
    polyhedron: RationalPolyhedron,
    witness: bool = False,
    budget: Optional[int] = None,
) -> List[Tuple[Fraction, ...]]:
    """Points of an affine lattice inside a rational polyhedron.

    Args:
        affine: basepoint + Z-span of generators (generators linearly independent)
        polyhedron: system in the ambient coordinates of the affine lattice
        witness: Stop at the first point found; unbounded polyhedra are searched in growing boxes
        budget: Maximum number of search nodes

    Returns:
        Ambient points in lexicographic order of lattice coordinates (at most one in witness mode)

    Raises:
        UnboundedEnumeration: full enumeration requested on an unbounded polyhedron
        BudgetExceeded: more than `budget` search nodes were needed
    """
    if polyhedron.dimension != affine.dimension:
        raise DimensionMismatch("Polyhedron and affine lattice live in different spaces")
    if budget is None:
        from hypertoric import get_settings

        budget = get_settings().LATTICE_SEARCH_BUDGET
    counter = _SearchBudget(budget)
    dimension = len(affine.generators)
    constraints = _simplify(_coefficient_constraints(affine, polyhedron))
    if constraints is None:
        return []
    if dimension == 0:
        return [affine.point(())]

    found: List[Tuple[int, ...]] = []
    if not witness or _is_bounded(constraints, dimension):
        _search(constraints, dimension, 0, [], found, witness, counter)
        return [affine.point(c) for c in found]

    if polyhedron_feasible(RationalPolyhedron(dimension, tuple(_as_inequalities(constraints)))) is None:
        return []
    cap = _search_radius_cap(constraints, dimension)
    radius = 1
    while True:
        box = []
        for variable in range(dimension):
            unit = tuple(Fraction(1) if j == variable else Fraction(0) for j in range(dimension))
            box.append((unit, Fraction(radius), False))
            box.append((tuple(-x for x in unit), Fraction(radius), False))
        boxed = _simplify(constraints + box)
        if boxed is not None and _search(boxed, dimension, 0, [], found, True, counter):
            return [affine.point(found[0])]
        if radius >= cap:
            return []
        radius = min(2 * radius, cap)


def _as_inequalities(constraints: List[_Constraint]) -> List[Inequality]:
    return [Inequality(coeffs, constant, ">" if strict else ">=") for coeffs, constant, strict in constraints]


def box_polyhedron(dimension: int, radius: int) -> RationalPolyhedron:
    inequalities = []
    for variable in range(dimension):
        unit = tuple(Fraction(1) if j == variable else Fraction(0) for j in range(dimension))
        inequalities.append(Inequality(unit, radius, ">="))
        inequalities.append(Inequality(tuple(-x for x in unit), radius, ">="))
    return RationalPolyhedron(dimension, tuple(inequalities))


def smallest_lift(vector: Sequence[int], lattice_rows: Sequence[Sequence[int]]) -> List[int]:
    """Element of vector + Z-span(rows) with smallest max-norm, ties broken lexicographically"""
    n = len(vector)
    if not lattice_rows:
        return list(vector)
    affine = AffineLattice(tuple(Fraction(v) for v in vector), tuple(tuple(r) for r in lattice_rows))
    limit = max((abs(v) for v in vector), default=0)
    for radius in range(limit + 1):
        points = lattice_points_in_polytope(affine, box_polyhedron(n, radius))
        if points:
            return [int(x) for x in min(points)]
    return list(vector)
