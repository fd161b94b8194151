"""
Symmetries of a lattice: circuits, the discriminantal arrangement, the Deligne quiver
and the signed-permutation groups 𝕎 and 𝕍.

The parameter η lives in Z^n / Λ₀. A circuit C with dependency c (Σ c_i h_i|Λ₀ = 0)
gives the wall {η : Σ c_i η_i = 0}, well defined because c annihilates Λ₀. The
hyperplanes indexed by C meet non-transversely exactly on that wall.
"""

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from hypertoric.models.entities import (
    AffineLattice,
    Circuit,
    Inequality,
    Lattice,
    PolarizedArrangement,
    QuantizedPolarizedArrangement,
    RationalPolyhedron,
    SignedPermutation,
    SignVector,
)
from hypertoric.services.algebra import build_algebra
from hypertoric.services.arrangement import _pruned_enumeration, bounded_signs, eta_regular, feasible_signs
from hypertoric.services.cells import Matroid
from hypertoric.services.exact import (
    box_polyhedron,
    in_rational_span,
    lattice_coordinates,
    lattice_points_in_polytope,
    polyhedron_feasible,
)
from hypertoric.utils.errors import BudgetExceeded, NotASymmetry, NotRegular
from hypertoric.utils.logging_config import get_logger, log_computation, log_verification_event

logger = get_logger("services.symmetry")

Arrangement = Union[PolarizedArrangement, QuantizedPolarizedArrangement]


def circuits(lattice: Lattice) -> List[Circuit]:
    """Circuits of the matroid of restricted normals with primitive dependencies"""
    return Matroid.from_lattice(lattice).circuits()


def discriminantal_walls(lattice: Lattice) -> List[Tuple[int, ...]]:
    """One covector on Z^n / Λ₀ per circuit"""
    walls = []
    for circuit in circuits(lattice):
        covector = [0] * lattice.n
        for i, c in zip(circuit.indices, circuit.dependency):
            covector[i] = c
        if any(sum(a * b for a, b in zip(covector, row)) for row in lattice.basis):
            raise AssertionError(f"Wall of circuit {circuit.indices} does not vanish on Λ₀")
        walls.append(tuple(covector))
    return walls


def _chamber_polyhedron(n: int, walls: Sequence[Sequence[int]], assignment: Dict[int, str]) -> RationalPolyhedron:
    inequalities = [Inequality(walls[j], 0, ">" if sign == "+" else "<") for j, sign in sorted(assignment.items())]
    return RationalPolyhedron(n, tuple(inequalities))


def _smallest_integral_point(polyhedron: RationalPolyhedron, budget: Optional[int] = None) -> Tuple[int, ...]:
    """Integer point of an open cone with the smallest max-norm, ties broken lexicographically"""
    n = polyhedron.dimension
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    affine = AffineLattice(tuple(Fraction(0) for _ in range(n)), identity)
    radius = 0
    while True:
        boxed = polyhedron.with_inequalities(box_polyhedron(n, radius).inequalities)
        points = lattice_points_in_polytope(affine, boxed, budget=budget)
        if points:
            return tuple(int(x) for x in min(points))
        radius += 1


def deligne_quiver(lattice: Lattice) -> nx.DiGraph:
    """Chambers of the discriminantal arrangement, with edges both ways across single walls.

    Nodes are sign vectors over the walls; each carries a regular integral representative η
    (node attribute ``representative``). The graph attribute ``walls`` holds the covectors.
    """
    walls = discriminantal_walls(lattice)
    n = lattice.n

    def partial_ok(assignment):
        return polyhedron_feasible(_chamber_polyhedron(n, walls, assignment)) is not None

    chambers = _pruned_enumeration(range(len(walls)), partial_ok)
    quiver = nx.DiGraph(walls=walls)
    for chamber in chambers:
        representative = _smallest_integral_point(_chamber_polyhedron(n, walls, chamber.as_dict()))
        quiver.add_node(chamber, representative=representative)

    present = set(chambers)
    for chamber in chambers:
        for j in range(len(walls)):
            other = chamber.flip(j)
            if other not in present or other < chamber:
                continue
            # shared facet: the other walls strict, wall j an equality
            assignment = {i: s for i, s in chamber.as_dict().items() if i != j}
            facet = _chamber_polyhedron(n, walls, assignment).with_inequalities(
                [Inequality(walls[j], 0, ">="), Inequality(walls[j], 0, "<=")]
            )
            if polyhedron_feasible(facet) is not None:
                quiver.add_edge(chamber, other, wall=j)
                quiver.add_edge(other, chamber, wall=j)
    log_computation(
        "deligne_quiver",
        subject=str(lattice.basis),
        walls=len(walls),
        vertices=quiver.number_of_nodes(),
        edges=quiver.number_of_edges(),
    )
    return quiver


def deligne_quiver_to_dict(quiver: nx.DiGraph) -> Dict:
    return {
        "walls": [list(w) for w in quiver.graph["walls"]],
        "vertices": [
            {"chamber": str(node), "representative": list(data["representative"])}
            for node, data in sorted(quiver.nodes(data=True))
        ],
        "edges": [[str(s), str(t), data["wall"]] for s, t, data in sorted(quiver.edges(data=True))],
    }


# ---------------------------------------------------------------------------
# Weyl groups
# ---------------------------------------------------------------------------


def _in_lattice(lattice: Lattice, vector: Sequence[int]) -> bool:
    # integral vectors of the rational span lie in Λ₀ since it is a direct summand
    return in_rational_span(lattice.basis, vector)


def _unit(n: int, i: int, sign: int = 1) -> List[int]:
    return [sign if j == i else 0 for j in range(n)]


def preserves_lattice(lattice: Lattice, g: SignedPermutation) -> bool:
    return all(_in_lattice(lattice, g.apply(row)) for row in lattice.basis)


def fixes_lattice(lattice: Lattice, g: SignedPermutation) -> bool:
    return all(tuple(g.apply(row)) == tuple(row) for row in lattice.basis)


def trivial_on_quotient(lattice: Lattice, g: SignedPermutation) -> bool:
    n = lattice.n
    for i in range(n):
        image = g.apply(_unit(n, i))
        if not _in_lattice(lattice, [a - b for a, b in zip(image, _unit(n, i))]):
            return False
    return True


def _enumerate(n: int, coordinate_ok) -> List[SignedPermutation]:
    """Signed permutations whose every coordinate choice (i ↦ signs[i]·e_{perm[i]}) passes the test"""
    found = []

    def extend(perm: List[int], signs: List[int]):
        i = len(perm)
        if i == n:
            found.append(SignedPermutation(tuple(perm), tuple(signs)))
            return
        for target in range(n):
            if target in perm:
                continue
            for sign in (1, -1):
                if coordinate_ok(i, target, sign):
                    extend(perm + [target], signs + [sign])

    extend([], [])
    return sorted(found)


def weyl_groups(lattice: Lattice, budget: Optional[int] = None) -> Dict[str, List[SignedPermutation]]:
    """𝕎 (fixing Λ₀ pointwise) and 𝕍 (trivial on Z^n / Λ₀).

    Coordinates are matched one at a time: g ∈ 𝕎 forces column perm(i) = sign·column i of the
    basis matrix, and g ∈ 𝕍 forces sign·e_perm(i) − e_i ∈ Λ₀.

    Raises:
        BudgetExceeded: n is larger than the enumeration budget
    """
    if budget is None:
        from hypertoric import get_settings

        budget = get_settings().ENUMERATION_BUDGET
    n = lattice.n
    if n > budget:
        raise BudgetExceeded("Signed-permutation enumeration over budget", details={"n": n, "budget": budget})
    columns = lattice.columns

    def w_ok(i: int, target: int, sign: int) -> bool:
        return tuple(sign * x for x in columns[i]) == tuple(columns[target])

    def v_ok(i: int, target: int, sign: int) -> bool:
        return _in_lattice(lattice, [a - b for a, b in zip(_unit(n, target, sign), _unit(n, i))])

    groups = {"W": _enumerate(n, w_ok), "V": _enumerate(n, v_ok)}
    for name, check in (("W", fixes_lattice), ("V", trivial_on_quotient)):
        for g in groups[name]:
            if not check(lattice, g) or not preserves_lattice(lattice, g):
                raise AssertionError(f"{g} violates the defining property of {name}")
    log_computation("weyl_groups", subject=str(lattice.basis), W=len(groups["W"]), V=len(groups["V"]))
    return groups


def is_group(elements: Sequence[SignedPermutation]) -> bool:
    """Closed under composition and inverses, identity included"""
    members = set(elements)
    if not members:
        return False
    n = next(iter(members)).n
    if SignedPermutation.identity(n) not in members:
        return False
    return all(g.inverse() in members for g in members) and all(
        g.compose(h) in members for g, h in itertools.product(members, repeat=2)
    )


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------


def act_on_signs(g: SignedPermutation, alpha: SignVector) -> SignVector:
    """(g·α)(perm(i)) = α(i), flipped where signs[i] = -1"""
    if alpha.indices != tuple(range(g.n)):
        raise NotASymmetry("Signed permutations act on full sign vectors", details={"sign_vector": str(alpha)})
    result = [""] * g.n
    for i, sign in enumerate(alpha.signs):
        if g.signs[i] < 0:
            sign = "-" if sign == "+" else "+"
        result[g.perm[i]] = sign
    return SignVector.full("".join(result))


def act_on_xi(lattice: Lattice, g: SignedPermutation, xi: Sequence[int]) -> Tuple[int, ...]:
    """ξ ∘ g⁻¹ in the coordinates of the basis of Λ₀"""
    inverse = g.inverse()
    image = []
    for row in lattice.basis:
        coordinates = lattice_coordinates(lattice, inverse.apply(row))
        if coordinates is None:
            raise NotASymmetry(f"{g} does not preserve Λ₀")
        value = sum(c * x for c, x in zip(coordinates, xi))
        image.append(int(value))
    return tuple(image)


def act_on_parameters(g: SignedPermutation, arrangement: Arrangement) -> Arrangement:
    """g·(Λ₀, η, ξ) = (Λ₀, g·η, ξ∘g⁻¹); the basepoint of a quantized arrangement moves like η.

    Raises:
        NotASymmetry: g does not preserve Λ₀
    """
    lattice = arrangement.lambda0
    if g.n != lattice.n or not preserves_lattice(lattice, g):
        raise NotASymmetry(f"{g} does not preserve Λ₀", details={"perm": list(g.perm), "signs": list(g.signs)})
    xi = act_on_xi(lattice, g, arrangement.xi)
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        # h⁻ = h⁺ + 1, so a sign flip exchanges the two hyperplanes of the pair
        basepoint = [Fraction(0)] * lattice.n
        for i, value in enumerate(arrangement.basepoint):
            basepoint[g.perm[i]] = value if g.signs[i] > 0 else -value - 1
        return QuantizedPolarizedArrangement(lattice, tuple(basepoint), xi)
    return PolarizedArrangement(lattice, g.apply(arrangement.eta), xi)


def action_check(arrangement: PolarizedArrangement, g: SignedPermutation) -> bool:
    """α ↦ g·α maps F_η onto F_{g·η} and B_ξ onto B_{g·ξ}"""
    moved = act_on_parameters(g, arrangement)
    lattice = arrangement.lambda0
    feasible_ok = {act_on_signs(g, a) for a in feasible_signs(arrangement)} == set(feasible_signs(moved))
    bounded_ok = {act_on_signs(g, a) for a in bounded_signs(lattice, arrangement.xi)} == set(
        bounded_signs(lattice, moved.xi)
    )
    log_verification_event("symmetry_action", feasible_ok and bounded_ok, perm=list(g.perm), signs=list(g.signs))
    return feasible_ok and bounded_ok


def algebra_transport_check(
    arrangement: PolarizedArrangement, g: SignedPermutation, max_degree: Optional[int] = None
) -> bool:
    """A(η,ξ) and A(g·η, g·ξ) have the same graded pieces under α ↦ g·α"""
    moved = act_on_parameters(g, arrangement)
    lattice = arrangement.lambda0
    source = build_algebra(
        lattice, feasible_signs(arrangement), bounded_signs(lattice, arrangement.xi), max_degree=max_degree
    )
    target = build_algebra(lattice, feasible_signs(moved), bounded_signs(lattice, moved.xi), max_degree=max_degree)
    if {act_on_signs(g, v) for v in source.vertices} != set(target.vertices):
        return False
    return all(
        source.pair_dims(a, b) == target.pair_dims(act_on_signs(g, a), act_on_signs(g, b))
        for a, b in itertools.product(source.vertices, repeat=2)
    )


# ---------------------------------------------------------------------------
# Deligne relations
# ---------------------------------------------------------------------------


def _feasible(lattice: Lattice, eta: Sequence[int]):
    arrangement = PolarizedArrangement(lattice, tuple(eta), (0,) * lattice.rank)
    if not eta_regular(arrangement):
        raise NotRegular("η is not regular", details={"eta": list(eta)})
    return set(feasible_signs(arrangement))


def minimal_path_check(lattice: Lattice, eta: Sequence[int], eta_mid: Sequence[int], eta_end: Sequence[int]) -> bool:
    """F_η ∩ F_η'' ⊆ F_η'

    Raises:
        NotRegular: one of the parameters lies on a wall
    """
    return _feasible(lattice, eta) & _feasible(lattice, eta_end) <= _feasible(lattice, eta_mid)


def deligne_relations_check(lattice: Lattice, quiver: Optional[nx.DiGraph] = None) -> bool:
    """minimal_path_check on every path σ → μ → τ with σ, τ separated by exactly two walls"""
    if quiver is None:
        quiver = deligne_quiver(lattice)
    representative = nx.get_node_attributes(quiver, "representative")
    for start in quiver.nodes:
        for middle in quiver.successors(start):
            for end in quiver.successors(middle):
                if len(start.differences(end)) != 2:
                    continue
                if not minimal_path_check(lattice, representative[start], representative[middle], representative[end]):
                    log_verification_event(
                        "deligne_relations", False, start=str(start), middle=str(middle), end=str(end)
                    )
                    return False
    log_verification_event("deligne_relations", True, subject=str(lattice.basis))
    return True
