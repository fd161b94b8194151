"""
Matroid data and cell structures of a quantized polarized arrangement.

Left cells live on F_𝚲, right cells on B_ξ and two-sided cells on P. Each
preorder is computed from the cone data of its sign vectors; the cell keys
are cross-checked against the strongly connected components of the relation.
"""

import itertools
from fractions import Fraction
from math import comb
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from hypertoric.models.entities import (
    AffineLattice,
    CellPartition,
    Circuit,
    ConeData,
    Flat,
    Inequality,
    Lattice,
    QuantizedPolarizedArrangement,
    RationalPolyhedron,
    SignVector,
)
from hypertoric.services.arrangement import (
    bounded,
    bounded_feasible,
    cone_polyhedron,
    delta_polyhedron,
    is_regular,
    quantized_feasible_signs,
)
from hypertoric.services.exact import (
    hermite_normal_form,
    lattice_points_in_polytope,
    matrix_rank,
    nullspace,
    polyhedron_feasible,
    primitive_integer_vector,
)
from hypertoric.utils.errors import NotBounded, NotFeasible, NotRegularIntegral
from hypertoric.utils.logging_config import get_logger, log_computation

logger = get_logger("services.cells")

IndexSet = FrozenSet[int]


class Matroid:
    """Matroid on {0, ..., n-1} given by a rank oracle.

    Built from a lattice the oracle is the rank of the restricted normals; `dual()`
    returns the combinatorial dual r*(S) = |S| - r(E) + r(E ∖ S).
    """

    def __init__(self, n: int, rank_function: Callable[[IndexSet], int], lattice: Optional[Lattice] = None):
        self.n = n
        self.lattice = lattice
        self._rank_function = rank_function
        self._cache: Dict[IndexSet, int] = {}

    @classmethod
    def from_lattice(cls, lattice: Lattice) -> "Matroid":
        normals = lattice.columns

        def rank(subset: IndexSet) -> int:
            return matrix_rank([list(normals[i]) for i in sorted(subset)], lattice.rank)

        return cls(lattice.n, rank, lattice)

    @property
    def ground_set(self) -> IndexSet:
        return frozenset(range(self.n))

    def rank(self, subset: Iterable[int]) -> int:
        key = frozenset(subset)
        if key not in self._cache:
            self._cache[key] = self._rank_function(key)
        return self._cache[key]

    @property
    def full_rank(self) -> int:
        return self.rank(self.ground_set)

    def closure(self, subset: Iterable[int]) -> IndexSet:
        base = frozenset(subset)
        r = self.rank(base)
        return frozenset(i for i in range(self.n) if i in base or self.rank(base | {i}) == r)

    def is_independent(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return self.rank(subset) == len(subset)

    def independent_sets(self) -> List[Tuple[int, ...]]:
        return [
            subset
            for size in range(self.full_rank + 1)
            for subset in itertools.combinations(range(self.n), size)
            if self.is_independent(subset)
        ]

    def bases(self) -> List[Tuple[int, ...]]:
        return [s for s in itertools.combinations(range(self.n), self.full_rank) if self.is_independent(s)]

    def circuit_sets(self) -> List[Tuple[int, ...]]:
        """Minimal dependent sets in size-then-lexicographic order"""
        circuits = []
        for size in range(1, self.full_rank + 2):
            for subset in itertools.combinations(range(self.n), size):
                if self.rank(subset) != size - 1:
                    continue
                if all(self.is_independent(subset[:j] + subset[j + 1 :]) for j in range(size)):
                    circuits.append(subset)
        return circuits

    def circuits(self) -> List[Circuit]:
        """Circuits with their primitive integer dependency (first entry positive)"""
        if self.lattice is None:
            raise ValueError("Circuit dependencies need a lattice-backed matroid")
        normals = self.lattice.columns
        result = []
        for subset in self.circuit_sets():
            # dependency among the normals = kernel of the k × |C| matrix of columns
            rows = [[normals[i][j] for i in subset] for j in range(self.lattice.rank)]
            dependency = primitive_integer_vector(nullspace(rows, len(subset))[0])
            if dependency[0] < 0:
                dependency = [-x for x in dependency]
            result.append(Circuit(tuple(subset), tuple(dependency)))
        return result

    def flats(self) -> List[Flat]:
        """All closed sets, ordered by rank then index set"""
        seen = set()
        for subset in self.independent_sets():
            seen.add(self.closure(subset))
        return sorted((Flat(tuple(sorted(s)), self.rank(s)) for s in seen), key=lambda f: (f.rank, f.indices))

    def restriction_has_coloops(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        r = self.rank(subset)
        return any(self.rank(subset - {i}) < r for i in subset)

    def dual(self) -> "Matroid":
        total = self.full_rank
        ground = self.ground_set

        def rank(subset: IndexSet) -> int:
            return len(subset) - total + self.rank(ground - subset)

        return Matroid(self.n, rank)


# ---------------------------------------------------------------------------
# h-vectors
# ---------------------------------------------------------------------------


def _h_from_f(f_vector: Sequence[int], dimension: int) -> List[int]:
    """h_j = Σ_s (-1)^{j-s} C(d-s, j-s) f_s for a complex whose facets have d elements"""
    f = list(f_vector) + [0] * (dimension + 1 - len(f_vector))
    return [
        sum((-1) ** (j - s) * comb(dimension - s, j - s) * f[s] for s in range(j + 1)) for j in range(dimension + 1)
    ]


def h_vector(matroid: Matroid) -> List[int]:
    """h-vector of the independence complex"""
    d = matroid.full_rank
    f = [0] * (d + 1)
    for subset in matroid.independent_sets():
        f[len(subset)] += 1
    return _h_from_f(f, d)


def broken_circuits(matroid: Matroid, ordering: Optional[Sequence[int]] = None) -> List[IndexSet]:
    position = {e: p for p, e in enumerate(ordering if ordering is not None else range(matroid.n))}
    result = []
    for circuit in matroid.circuit_sets():
        smallest = min(circuit, key=lambda e: position[e])
        result.append(frozenset(circuit) - {smallest})
    return result


def broken_circuit_h_vector(matroid: Matroid, ordering: Optional[Sequence[int]] = None) -> List[int]:
    """h-vector of the broken-circuit complex for a ground-set ordering (natural order by default)"""
    d = matroid.full_rank
    broken = broken_circuits(matroid, ordering)
    f = [0] * (d + 1)
    for subset in matroid.independent_sets():
        faces = frozenset(subset)
        if not any(b <= faces for b in broken):
            f[len(subset)] += 1
    return _h_from_f(f, d)


def h_vector_identity(matroid: Matroid, ordering: Optional[Sequence[int]] = None) -> bool:
    """Top h-number of M equals the sum of the broken-circuit h-numbers of M*"""
    top = h_vector(matroid)[-1]
    total = sum(broken_circuit_h_vector(matroid.dual(), ordering))
    log_computation("h_vector_identity", top=top, dual_broken_circuit_sum=total)
    return top == total


# ---------------------------------------------------------------------------
# Flats and cone data
# ---------------------------------------------------------------------------


def _compact_localized_chamber(arrangement: QuantizedPolarizedArrangement, flat: IndexSet) -> bool:
    lattice = arrangement.lambda0
    indices = sorted(flat)
    normals = lattice.columns
    for signs in itertools.product("+-", repeat=len(indices)):
        assignment = dict(zip(indices, signs))
        polyhedron = delta_polyhedron(lattice, arrangement.basepoint, assignment, quantized=True)
        if polyhedron_feasible(polyhedron) is None:
            continue
        cone = cone_polyhedron(lattice, assignment)
        compact = True
        for i, sign in assignment.items():
            # recession cone must vanish modulo the flat
            direction = normals[i] if sign == "+" else tuple(-x for x in normals[i])
            if polyhedron_feasible(cone.with_inequalities([Inequality(direction, -1, ">=")])) is not None:
                compact = False
                break
        if compact:
            return True
    return False


def coloop_free_flats(
    matroid: Matroid, arrangement: Optional[QuantizedPolarizedArrangement] = None
) -> List[Flat]:
    """Flats whose localization has a compact chamber.

    Without an arrangement this is the matroid test (the restriction to the flat has no
    coloops). With one, the compact-chamber test is run by exact feasibility, and on
    regular input the two answers are asserted equal.
    """
    by_matroid = [flat for flat in matroid.flats() if not matroid.restriction_has_coloops(flat.indices)]
    if arrangement is None:
        return by_matroid
    by_chambers = [flat for flat in matroid.flats() if _compact_localized_chamber(arrangement, frozenset(flat.indices))]
    if is_regular(arrangement):
        assert by_chambers == by_matroid, "compact-chamber and coloop tests disagree on a regular arrangement"
    return by_chambers


def cone_data(lattice: Lattice, alpha: SignVector) -> ConeData:
    """I_α = {i : h_i vanishes on Δ_{0,α}} and dim F_α = k - rank(I_α)"""
    cone = cone_polyhedron(lattice, alpha.as_dict())
    normals = lattice.columns
    vanishing = []
    for i in alpha.indices:
        direction = normals[i] if alpha.get(i) == "+" else tuple(-x for x in normals[i])
        if polyhedron_feasible(cone.with_inequalities([Inequality(direction, -1, ">=")])) is None:
            vanishing.append(i)
    rank = matrix_rank([list(normals[i]) for i in vanishing], lattice.rank)
    return ConeData(frozenset(vanishing), lattice.rank - rank)


def cone_flat(lattice: Lattice, alpha: SignVector) -> Flat:
    data = cone_data(lattice, alpha)
    return Flat(tuple(sorted(data.I_alpha)), lattice.rank - data.dim_F_alpha)


# ---------------------------------------------------------------------------
# Preorders and cells
# ---------------------------------------------------------------------------


class CellStructure:
    """Cone data and cell preorders of a regular integral quantized arrangement.

    Raises:
        NotRegularIntegral: on construction if the arrangement is not regular and integral
    """

    def __init__(self, arrangement: QuantizedPolarizedArrangement):
        if not arrangement.is_integral or not is_regular(arrangement):
            raise NotRegularIntegral("Cells need a regular integral arrangement")
        self.arrangement = arrangement
        self.lattice = arrangement.lambda0
        self.feasible = quantized_feasible_signs(arrangement)
        self.bounded = bounded(arrangement)
        self.bounded_feasible = bounded_feasible(arrangement)
        self._cone_data: Dict[SignVector, ConeData] = {}

    def cone(self, alpha: SignVector) -> ConeData:
        if alpha not in self._cone_data:
            self._cone_data[alpha] = cone_data(self.lattice, alpha)
        return self._cone_data[alpha]

    def left_leq(self, alpha: SignVector, beta: SignVector) -> bool:
        """α ≤_L β: I_β ⊆ I_α and α, β agree on I_β"""
        for x in (alpha, beta):
            if x not in self.feasible:
                raise NotFeasible(f"Sign vector {x} is not feasible", details={"sign_vector": str(x)})
        i_alpha, i_beta = self.cone(alpha).I_alpha, self.cone(beta).I_alpha
        return i_beta <= i_alpha and all(alpha.get(i) == beta.get(i) for i in i_beta)

    def right_leq(self, alpha: SignVector, beta: SignVector) -> bool:
        """α ≤_R β: I_β ⊆ I_α and α, β agree off I_α"""
        for x in (alpha, beta):
            if x not in self.bounded:
                raise NotBounded(f"Sign vector {x} is not bounded", details={"sign_vector": str(x)})
        i_alpha, i_beta = self.cone(alpha).I_alpha, self.cone(beta).I_alpha
        return i_beta <= i_alpha and all(alpha.get(i) == beta.get(i) for i in alpha.indices if i not in i_alpha)

    def right_leq_by_cones(self, alpha: SignVector, beta: SignVector) -> bool:
        """Δ_{0,α} ⊆ Δ_{0,β}"""
        cone = cone_polyhedron(self.lattice, alpha.as_dict())
        normals = self.lattice.columns
        for i in beta.indices:
            # β_i·h_i <= -1 somewhere on the cone means the cone leaves the β half-space
            direction = tuple(-x for x in normals[i]) if beta.get(i) == "+" else normals[i]
            if polyhedron_feasible(cone.with_inequalities([Inequality(direction, -1, ">=")])) is not None:
                return False
        return True

    def left_key(self, alpha: SignVector) -> Hashable:
        i_alpha = self.cone(alpha).I_alpha
        return (tuple(sorted(i_alpha)), alpha.restrict(i_alpha).signs)

    def right_key(self, alpha: SignVector) -> Hashable:
        i_alpha = self.cone(alpha).I_alpha
        outside = [i for i in alpha.indices if i not in i_alpha]
        return (tuple(sorted(i_alpha)), alpha.restrict(outside).signs)

    def two_sided_key(self, alpha: SignVector) -> Hashable:
        return tuple(sorted(self.cone(alpha).I_alpha))

    def left_cells(self) -> CellPartition:
        return _partition(self.feasible, self.left_leq, self.left_key)

    def right_cells(self) -> CellPartition:
        return _partition(self.bounded, self.right_leq, self.right_key)

    def two_sided_cells(self) -> CellPartition:
        def leq(alpha, beta):
            return self.left_leq(alpha, beta) or self.right_leq(alpha, beta)

        return _partition(self.bounded_feasible, leq, self.two_sided_key)

    def cell_partitions(self) -> Dict[str, CellPartition]:
        partitions = {"left": self.left_cells(), "right": self.right_cells(), "two_sided": self.two_sided_cells()}
        log_computation(
            "cell_partitions",
            subject=str(self.lattice.basis),
            **{f"{name}_blocks": len(p.blocks) for name, p in partitions.items()},
        )
        return partitions

    def goldie_rank(self, alpha: SignVector) -> int:
        """Lattice points of the compact localized polytope determined by α on I_α"""
        if alpha not in self.feasible:
            raise NotFeasible(f"Sign vector {alpha} is not feasible", details={"sign_vector": str(alpha)})
        indices = sorted(self.cone(alpha).I_alpha)
        if not indices:
            return 1
        generators = hermite_normal_form([[row[i] for i in indices] for row in self.lattice.basis])
        affine = AffineLattice(tuple(self.arrangement.basepoint[i] for i in indices), tuple(map(tuple, generators)))
        inequalities = []
        for position, i in enumerate(indices):
            unit = tuple(Fraction(1) if j == position else Fraction(0) for j in range(len(indices)))
            if alpha.get(i) == "+":
                inequalities.append(Inequality(unit, 0, ">="))
            else:
                inequalities.append(Inequality(unit, 1, "<="))
        points = lattice_points_in_polytope(affine, RationalPolyhedron(len(indices), tuple(inequalities)))
        return len(points)

    def bbd_dimensions(self) -> Dict[Flat, int]:
        """For each coloop-free flat, the number of α ∈ P with F_α equal to it"""
        matroid = Matroid.from_lattice(self.lattice)
        counts = {flat: 0 for flat in coloop_free_flats(matroid)}
        for alpha in self.bounded_feasible:
            flat = Flat(self.two_sided_key(alpha), matroid.rank(self.cone(alpha).I_alpha))
            if flat not in counts:
                raise AssertionError(f"Cone flat {flat} of {alpha} is not coloop-free")
            counts[flat] += 1
        return counts


def _partition(
    elements: Sequence[SignVector],
    leq: Callable[[SignVector, SignVector], bool],
    key: Callable[[SignVector], Hashable],
) -> CellPartition:
    """Blocks of a preorder keyed by `key`, checked against the SCCs of the relation"""
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for alpha, beta in itertools.permutations(elements, 2):
        if leq(alpha, beta):
            graph.add_edge(alpha, beta)

    grouped: Dict[Hashable, List[SignVector]] = {}
    for alpha in elements:
        grouped.setdefault(key(alpha), []).append(alpha)
    blocks = sorted((tuple(sorted(group)) for group in grouped.values()), key=lambda b: b[0])
    components = {frozenset(c) for c in nx.strongly_connected_components(graph)}
    assert components == {frozenset(b) for b in blocks}, "cell keys disagree with the preorder"

    index = {alpha: position for position, block in enumerate(blocks) for alpha in block}
    closure = nx.transitive_closure_dag(nx.condensation(graph))
    members = nx.get_node_attributes(closure, "members")
    order = set()
    for u, v in closure.edges():
        lower = index[next(iter(members[u]))]
        upper = index[next(iter(members[v]))]
        order.add((lower, upper))
    return CellPartition(blocks=list(blocks), order=sorted(order))


# Module-level entry points


def left_leq(arrangement: QuantizedPolarizedArrangement, alpha: SignVector, beta: SignVector) -> bool:
    return CellStructure(arrangement).left_leq(alpha, beta)


def right_leq(arrangement: QuantizedPolarizedArrangement, alpha: SignVector, beta: SignVector) -> bool:
    return CellStructure(arrangement).right_leq(alpha, beta)


def cell_partitions(arrangement: QuantizedPolarizedArrangement) -> Dict[str, CellPartition]:
    return CellStructure(arrangement).cell_partitions()


def goldie_rank(arrangement: QuantizedPolarizedArrangement, alpha: SignVector) -> int:
    return CellStructure(arrangement).goldie_rank(alpha)


def bbd_dimensions(arrangement: QuantizedPolarizedArrangement) -> Dict[Flat, int]:
    return CellStructure(arrangement).bbd_dimensions()
