"""
Highest-weight combinatorics: decomposition matrices and Grothendieck pairings.
"""

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import sympy

from hypertoric.models.entities import (
    Inequality,
    PolarizedArrangement,
    QuantizedPolarizedArrangement,
    SignVector,
)
from hypertoric.services.arrangement import (
    bounded_feasible,
    bounded_signs,
    delta_polyhedron,
    feasible_signs,
    is_regular,
    linked_polarization,
    quantized_feasible_signs,
)
from hypertoric.services.cells import CellStructure, Matroid, coloop_free_flats
from hypertoric.services.exact import (
    matrix_rank,
    orthogonal_complement_lattice,
    polyhedron_feasible,
    same_row_span,
    solve_rational,
    to_fraction,
)
from hypertoric.utils.errors import NotDualPair, NotRegular
from hypertoric.utils.logging_config import get_logger, log_computation, log_verification_event

logger = get_logger("services.highest_weight")

Matrix = List[List[Fraction]]


def xi_maximal_vertex(
    arrangement: PolarizedArrangement, alpha: SignVector
) -> Tuple[Tuple[Fraction, ...], FrozenSet[int]]:
    """Vertex of the bounded chamber Δ_α where ξ is largest, with the hyperplanes through it"""
    lattice = arrangement.lambda0
    normals = lattice.columns
    chamber = delta_polyhedron(lattice, arrangement.eta, alpha.as_dict())
    best = None
    for subset in itertools.combinations(range(lattice.n), lattice.rank):
        rows = [list(normals[i]) for i in subset]
        if matrix_rank(rows, lattice.rank) < lattice.rank:
            continue
        point = solve_rational(rows, [-arrangement.eta[i] for i in subset], lattice.rank)
        if point is None or not chamber.contains(point):
            continue
        value = sum(x * p for x, p in zip(arrangement.xi, point))
        if best is None or value > best[0]:
            best = (value, tuple(point))
    if best is None:
        raise NotRegular(f"Chamber {alpha} has no vertex", details={"sign_vector": str(alpha)})
    point = best[1]
    active = frozenset(
        i for i in range(lattice.n) if sum(a * p for a, p in zip(normals[i], point)) + arrangement.eta[i] == 0
    )
    return point, active


def _chamber_in_cone(arrangement: PolarizedArrangement, beta: SignVector, alpha: SignVector, active) -> bool:
    """Δ_β ⊆ Σ_α, the cone at the ξ-maximal vertex of Δ_α cut out by α on the active hyperplanes"""
    lattice = arrangement.lambda0
    chamber = delta_polyhedron(lattice, arrangement.eta, beta.as_dict())
    for i in active:
        sense = "<" if alpha.get(i) == "+" else ">"
        violating = chamber.with_inequalities([Inequality(lattice.columns[i], arrangement.eta[i], sense)])
        if polyhedron_feasible(violating) is not None:
            return False
    return True


def decomposition_matrix(arrangement: QuantizedPolarizedArrangement) -> Tuple[List[SignVector], List[List[int]]]:
    """[S_α : L_β] over P × P in canonical order.

    The entry is 1 when β agrees with α on every hyperplane through the ξ-maximal vertex
    of Δ_α, cross-checked by Δ_β ⊆ Σ_α, and 0 otherwise.

    Raises:
        NotRegular: the arrangement is not regular and integral
    """
    if not arrangement.is_integral or not is_regular(arrangement):
        raise NotRegular("Decomposition matrix needs a regular integral arrangement")
    polarized = linked_polarization(arrangement)
    vertices = list(bounded_feasible(arrangement))
    feasible = set(feasible_signs(polarized))
    matrix = []
    for alpha in vertices:
        _, active = xi_maximal_vertex(polarized, alpha)
        row = []
        for beta in vertices:
            agrees = beta in feasible and all(alpha.get(i) == beta.get(i) for i in active)
            if agrees != _chamber_in_cone(polarized, beta, alpha, active):
                raise AssertionError(f"Cone containment disagrees with sign agreement for {alpha}, {beta}")
            row.append(1 if agrees else 0)
        matrix.append(row)
    log_computation("decomposition_matrix", subject=str(arrangement.lambda0.basis), size=len(vertices))
    return vertices, matrix


def unitriangular_order(vertices: List[SignVector], matrix: List[List[int]]) -> Optional[List[SignVector]]:
    """An order in which the matrix is upper unitriangular, or None"""
    if any(matrix[i][i] != 1 for i in range(len(vertices))):
        return None
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    for i, j in itertools.permutations(range(len(vertices)), 2):
        if matrix[i][j]:
            graph.add_edge(vertices[i], vertices[j])
    if not nx.is_directed_acyclic_graph(graph):
        return None
    return list(nx.lexicographical_topological_sort(graph))


def reciprocity_cartan(matrix: List[List[int]]) -> List[List[int]]:
    """C = Dᵀ·D"""
    size = len(matrix)
    return [[sum(matrix[k][i] * matrix[k][j] for k in range(size)) for j in range(size)] for i in range(size)]


def _to_sympy(matrix) -> sympy.Matrix:
    return sympy.Matrix(matrix) if matrix else sympy.zeros(0, 0)


def _to_fractions(matrix: sympy.Matrix) -> Matrix:
    return [[to_fraction(sympy.Rational(matrix[i, j])) for j in range(matrix.cols)] for i in range(matrix.rows)]


def check_dual_pair(first: QuantizedPolarizedArrangement, second: QuantizedPolarizedArrangement):
    """Raise NotDualPair unless the lattices are complementary and F, B are exchanged"""
    complement = orthogonal_complement_lattice(first.lambda0)
    if first.n != second.n or not same_row_span(complement.basis, second.lambda0.basis):
        raise NotDualPair("Lattices are not orthogonal complements")
    if set(quantized_feasible_signs(first)) != set(bounded_signs(second.lambda0, second.xi)):
        raise NotDualPair("F of the first arrangement differs from B of the second")
    if set(quantized_feasible_signs(second)) != set(bounded_signs(first.lambda0, first.xi)):
        raise NotDualPair("F of the second arrangement differs from B of the first")


def grothendieck_pairing(
    arrangement: QuantizedPolarizedArrangement, dual: QuantizedPolarizedArrangement
) -> Dict[str, object]:
    """Pairing between the Grothendieck groups of a Gale dual pair.

    In the projective bases the pairing is diag((-1)^{d_α}) with d_α the number of minus
    signs. The simple and standard bases are reached through the Cartan and decomposition
    matrices: G_L = C⁻¹ G (C^!)^{-T} and G_S = D G_L (D^!)ᵀ.

    Returns:
        vertices, the three matrices and whether they coincide

    Raises:
        NotDualPair: the arrangements are not Gale dual
    """
    check_dual_pair(arrangement, dual)
    vertices, decomposition = decomposition_matrix(arrangement)
    dual_vertices, dual_decomposition = decomposition_matrix(dual)
    if dual_vertices != vertices:
        raise NotDualPair("Bounded feasible sets differ")

    G = sympy.diag(*[(-1) ** alpha.minus_count for alpha in vertices]) if vertices else sympy.zeros(0, 0)
    D = _to_sympy(decomposition)
    D_dual = _to_sympy(dual_decomposition)
    C = D.T * D
    C_dual = D_dual.T * D_dual
    G_simple = C.inv() * G * C_dual.inv().T if vertices else G
    G_standard = D * G_simple * D_dual.T if vertices else G

    identity = G_simple == G and G_standard == G
    log_verification_event("grothendieck_three_basis_identity", identity, size=len(vertices))
    return {
        "vertices": vertices,
        "projective": _to_fractions(G),
        "simple": _to_fractions(G_simple),
        "standard": _to_fractions(G_standard),
        "three_basis_identity": identity,
    }


def bbd_orthogonality(arrangement: QuantizedPolarizedArrangement, dual: QuantizedPolarizedArrangement) -> bool:
    """span{P_α : F ⊆ F_α} pairs to zero with span{P^!_β : F^c ⊊ F^!_β} for every coloop-free flat F"""
    check_dual_pair(arrangement, dual)
    cells = CellStructure(arrangement)
    dual_cells = CellStructure(dual)
    ground = frozenset(range(arrangement.n))
    for flat in coloop_free_flats(Matroid.from_lattice(arrangement.lambda0)):
        indices = frozenset(flat.indices)
        complement = ground - indices
        for alpha in cells.bounded_feasible:
            # the projective pairing is diagonal, so only a common α can pair nontrivially
            contains = cells.cone(alpha).I_alpha <= indices
            dual_strict = dual_cells.cone(alpha).I_alpha < complement
            if contains and dual_strict:
                return False
    return True
