"""
Polarized and quantized polarized arrangements.

Chamber sets F, B and P by exact feasibility, the regularity flags, linkage
between the two kinds of arrangement, equivalence keys and essentialization.
Arrangements are handled in the coordinates of the lattice basis: a point of
η + Λ₀ ⊗ R is η + Σ c_j b_j and h_i(c) = η_i + (column i)·c.
"""

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from hypertoric.models.entities import (
    AffineLattice,
    ChamberCountReport,
    Inequality,
    Lattice,
    LinkageReport,
    PolarizedArrangement,
    QuantizedPolarizedArrangement,
    RationalPolyhedron,
    RegularityReport,
    SignVector,
)
from hypertoric.services.exact import (
    functional_bounded_on_cone,
    hermite_normal_form,
    invariant_factors,
    lattice_coordinates,
    lattice_points_in_polytope,
    matrix_rank,
    nullspace,
    polyhedron_feasible,
    same_row_span,
)
from hypertoric.utils.errors import Inessential, NotRegular, ParameterMismatch
from hypertoric.utils.logging_config import get_logger, log_computation

logger = get_logger("services.arrangement")

Arrangement = Union[PolarizedArrangement, QuantizedPolarizedArrangement]
SignSet = Tuple[SignVector, ...]


def restricted_normals(lattice: Lattice) -> List[Tuple[int, ...]]:
    """Normals of the central hyperplanes H_{0,i}, as covectors in lattice-basis coordinates"""
    return list(lattice.columns)


def delta_polyhedron(
    lattice: Lattice,
    offsets: Sequence[Fraction],
    assignment: Dict[int, str],
    quantized: bool = False,
) -> RationalPolyhedron:
    """Chamber Δ_α (or 𝚫_α when quantized) in lattice-basis coordinates.

    Args:
        lattice: Λ₀
        offsets: value of h_i (or h_i⁺) at the basepoint, one per coordinate
        assignment: partial sign vector {i: '+'|'-'}
        quantized: use the doubled hyperplanes h_i⁺ >= 0 / h_i⁻ = h_i⁺ + 1 <= 0

    Returns:
        RationalPolyhedron of dimension k
    """
    normals = lattice.columns
    inequalities = []
    for i in sorted(assignment):
        sign = assignment[i]
        constant = Fraction(offsets[i])
        if sign == "+":
            inequalities.append(Inequality(normals[i], constant, ">="))
        else:
            inequalities.append(Inequality(normals[i], constant + (1 if quantized else 0), "<="))
    return RationalPolyhedron(lattice.rank, tuple(inequalities))


def cone_polyhedron(lattice: Lattice, assignment: Dict[int, str]) -> RationalPolyhedron:
    """Recession cone Δ_{0,α}"""
    return delta_polyhedron(lattice, [Fraction(0)] * lattice.n, assignment)


def _pruned_enumeration(indices: Sequence[int], partial_ok) -> SignSet:
    """All sign vectors on `indices` whose every prefix passes `partial_ok`, in canonical order"""
    results: List[SignVector] = []

    def extend(prefix: str):
        if len(prefix) == len(indices):
            results.append(SignVector(tuple(indices), prefix))
            return
        for sign in "+-":
            candidate = prefix + sign
            if partial_ok(dict(zip(indices, candidate))):
                extend(candidate)

    extend("")
    return tuple(results)


@lru_cache(maxsize=None)
def feasible_signs(arrangement: PolarizedArrangement) -> SignSet:
    """F_η = {α : Δ_α ≠ ∅}"""
    lattice = arrangement.lambda0
    offsets = [Fraction(x) for x in arrangement.eta]

    def partial_ok(assignment):
        return polyhedron_feasible(delta_polyhedron(lattice, offsets, assignment)) is not None

    result = _pruned_enumeration(range(lattice.n), partial_ok)
    log_computation("feasible_signs", subject=str(lattice.basis), count=len(result))
    return result


def bounded_signs(lattice: Lattice, xi: Sequence[int], indices: Optional[Sequence[int]] = None) -> SignSet:
    """B_ξ = {α : ξ is strictly negative on Δ_{0,α} ∖ {0}}, optionally on an index subset"""
    return _bounded_signs(lattice, tuple(int(x) for x in xi), tuple(range(lattice.n) if indices is None else indices))


@lru_cache(maxsize=None)
def _bounded_signs(lattice: Lattice, xi: Tuple[int, ...], indices: Tuple[int, ...]) -> SignSet:
    results: List[SignVector] = []

    # Shrinking the cone keeps ξ bounded, so a bounded prefix accepts all completions
    def extend(prefix: str):
        assignment = dict(zip(indices, prefix))
        if functional_bounded_on_cone(xi, cone_polyhedron(lattice, assignment)):
            for tail in itertools.product("+-", repeat=len(indices) - len(prefix)):
                results.append(SignVector(indices, prefix + "".join(tail)))
            return
        if len(prefix) == len(indices):
            return
        for sign in "+-":
            extend(prefix + sign)

    extend("")
    log_computation("bounded_signs", subject=str(lattice.basis), xi=list(xi), count=len(results))
    return tuple(results)


def _has_lattice_point(lattice: Lattice, basepoint: Sequence[Fraction], assignment: Dict[int, str]) -> bool:
    polyhedron = delta_polyhedron(lattice, basepoint, assignment, quantized=True)
    coefficient_lattice = AffineLattice(
        tuple(Fraction(0) for _ in range(lattice.rank)),
        tuple(tuple(1 if i == j else 0 for j in range(lattice.rank)) for i in range(lattice.rank)),
    )
    return bool(lattice_points_in_polytope(coefficient_lattice, polyhedron, witness=True))


@lru_cache(maxsize=None)
def quantized_feasible_signs(arrangement: QuantizedPolarizedArrangement) -> SignSet:
    """F_𝚲 = {α ∈ {+,-}^{I_Λ} : 𝚫_α contains a point of 𝚲}"""
    lattice = arrangement.lambda0
    basepoint = arrangement.basepoint

    def partial_ok(assignment):
        return _has_lattice_point(lattice, basepoint, assignment)

    result = _pruned_enumeration(arrangement.integral_indices, partial_ok)
    log_computation("quantized_feasible_signs", subject=str(lattice.basis), count=len(result))
    return result


@lru_cache(maxsize=None)
def rationally_feasible_quantized_signs(arrangement: QuantizedPolarizedArrangement) -> SignSet:
    """{α ∈ {+,-}^{I_Λ} : 𝚫_α ≠ ∅} ignoring the lattice"""
    lattice = arrangement.lambda0

    def partial_ok(assignment):
        polyhedron = delta_polyhedron(lattice, arrangement.basepoint, assignment, quantized=True)
        return polyhedron_feasible(polyhedron) is not None

    return _pruned_enumeration(arrangement.integral_indices, partial_ok)


def feasible(arrangement: Arrangement) -> SignSet:
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        return quantized_feasible_signs(arrangement)
    return feasible_signs(arrangement)


def bounded(arrangement: Arrangement) -> SignSet:
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        return bounded_signs(arrangement.lambda0, arrangement.xi, arrangement.integral_indices)
    return bounded_signs(arrangement.lambda0, arrangement.xi)


def bounded_feasible(arrangement: Arrangement) -> SignSet:
    """P = F ∩ B in canonical order"""
    bounded_set = set(bounded(arrangement))
    return tuple(alpha for alpha in feasible(arrangement) if alpha in bounded_set)


# ---------------------------------------------------------------------------
# Regularity
# ---------------------------------------------------------------------------


def _eta_regular(lattice: Lattice, offsets: Sequence[int]) -> bool:
    normals = lattice.columns
    k = lattice.rank
    for subset in itertools.combinations(range(lattice.n), k + 1):
        rows = [list(normals[i]) for i in subset]
        augmented = [list(normals[i]) + [-offsets[i]] for i in subset]
        if matrix_rank(rows, k) == matrix_rank(augmented, k + 1):
            return False
    return True


def xi_regular(lattice: Lattice, xi: Sequence[int]) -> bool:
    """ξ is not constant on any one-dimensional flat of the central arrangement"""
    normals = lattice.columns
    k = lattice.rank
    for size in range(k):
        for subset in itertools.combinations(range(lattice.n), size):
            rows = [list(normals[i]) for i in subset]
            if matrix_rank(rows, k) != k - 1:
                continue
            direction = nullspace(rows, k)[0]
            if sum(Fraction(x) * d for x, d in zip(xi, direction)) == 0:
                return False
    return True


def unimodular(lattice: Lattice) -> bool:
    """Every coordinate projection of Λ₀ has saturated image"""
    for size in range(1, lattice.n + 1):
        for subset in itertools.combinations(range(lattice.n), size):
            rows = [[row[i] for i in subset] for row in lattice.basis]
            if any(d != 1 for d in invariant_factors(rows)):
                return False
    return True


def essential_on(lattice: Lattice, indices: Iterable[int]) -> bool:
    normals = lattice.columns
    rows = [list(normals[i]) for i in indices]
    return matrix_rank(rows, lattice.rank) == lattice.rank


def quasi_regular(arrangement: QuantizedPolarizedArrangement) -> bool:
    """Essential, and no point lies strictly between more than k pairs"""
    lattice = arrangement.lambda0
    indices = arrangement.integral_indices
    if not essential_on(lattice, indices):
        return False
    normals = lattice.columns
    for subset in itertools.combinations(indices, lattice.rank + 1):
        inequalities = []
        for i in subset:
            constant = arrangement.basepoint[i]
            inequalities.append(Inequality(normals[i], constant, "<"))
            inequalities.append(Inequality(normals[i], constant + 1, ">"))
        if polyhedron_feasible(RationalPolyhedron(lattice.rank, tuple(inequalities))) is not None:
            return False
    return True


@lru_cache(maxsize=None)
def lambda_regular(arrangement: QuantizedPolarizedArrangement) -> bool:
    if not quasi_regular(arrangement):
        return False
    return set(rationally_feasible_quantized_signs(arrangement)) == set(quantized_feasible_signs(arrangement))


@lru_cache(maxsize=None)
def eta_regular(arrangement: PolarizedArrangement) -> bool:
    return _eta_regular(arrangement.lambda0, arrangement.eta)


def regularity_report(arrangement: Arrangement) -> RegularityReport:
    """Regularity flags of a polarized or quantized arrangement"""
    lattice = arrangement.lambda0
    report = RegularityReport(xi_regular=xi_regular(lattice, arrangement.xi), unimodular=unimodular(lattice))
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        report.integral = arrangement.is_integral
        report.essential = essential_on(lattice, arrangement.integral_indices)
        report.quasi_regular = quasi_regular(arrangement)
        report.lambda_regular = lambda_regular(arrangement)
    else:
        report.essential = essential_on(lattice, range(lattice.n))
        report.eta_regular = eta_regular(arrangement)
    log_computation("regularity_report", subject=str(lattice.basis), **report.to_dict())
    return report


def is_regular(arrangement: Arrangement) -> bool:
    """η- (or Λ-) regular and ξ-regular"""
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        return lambda_regular(arrangement) and xi_regular(arrangement.lambda0, arrangement.xi)
    return eta_regular(arrangement) and xi_regular(arrangement.lambda0, arrangement.xi)


# ---------------------------------------------------------------------------
# Linkage and equivalence
# ---------------------------------------------------------------------------


def same_functional(first: Lattice, xi_first: Sequence[int], second: Lattice, xi_second: Sequence[int]) -> bool:
    """Same lattice and the same covector on it, allowing different bases"""
    if first.n != second.n or not same_row_span(first.basis, second.basis):
        return False
    for row, value in zip(second.basis, xi_second):
        coordinates = lattice_coordinates(first, row)
        if coordinates is None or sum(c * x for c, x in zip(coordinates, xi_first)) != value:
            return False
    return True


def _project_signs(signs: Iterable[SignVector], indices: Sequence[int]) -> set:
    return {alpha.restrict(indices) for alpha in signs}


def is_linked(
    polarized: PolarizedArrangement,
    quantized: QuantizedPolarizedArrangement,
    search_limit: Optional[int] = None,
) -> LinkageReport:
    """Linkage π(F_η) = F_𝚲, with the translation criterion F_𝚲 = F_{𝚲 + r·t·η} as a cross-check.

    Raises:
        ParameterMismatch: Λ₀ or ξ differ
        NotRegular: either arrangement is not regular
    """
    if not same_functional(polarized.lambda0, polarized.xi, quantized.lambda0, quantized.xi):
        raise ParameterMismatch("Arrangements have different Λ₀ or ξ")
    if not eta_regular(polarized) or not lambda_regular(quantized):
        raise NotRegular("Linkage is only defined for regular arrangements")
    if search_limit is None:
        from hypertoric import get_settings

        search_limit = get_settings().LINKAGE_SEARCH_LIMIT

    indices = quantized.integral_indices
    linked = _project_signs(feasible_signs(polarized), indices) == set(quantized_feasible_signs(quantized))

    reference = set(quantized_feasible_signs(quantized))
    factor = None
    for t in range(1, search_limit + 1):
        translates = []
        for r in (1, 2):
            shifted = tuple(v + r * t * e for v, e in zip(quantized.basepoint, polarized.eta))
            translates.append(
                QuantizedPolarizedArrangement(quantized.lambda0, shifted, quantized.xi)
            )
        if all(set(quantized_feasible_signs(q)) == reference for q in translates):
            factor = t
            break
    report = LinkageReport(
        linked=linked, translation_factor=factor, translation_verified=(factor is not None) == linked
    )
    log_computation("is_linked", subject=str(polarized.lambda0.basis), **report.to_dict())
    return report


def linked_quantization(
    polarized: PolarizedArrangement, search_limit: Optional[int] = None
) -> QuantizedPolarizedArrangement:
    """Regular integral quantized arrangement linked to a regular polarized one, with basepoint N·η.

    Raises:
        NotRegular: X is not regular, or no scaling up to the search limit links
    """
    if not eta_regular(polarized):
        raise NotRegular("η is not regular", details={"eta": list(polarized.eta)})
    if search_limit is None:
        from hypertoric import get_settings

        search_limit = get_settings().LINKAGE_SEARCH_LIMIT
    factors = list(range(1, search_limit + 1))
    while factors[-1] < 8 * search_limit:
        factors.append(2 * factors[-1])
    target = set(feasible_signs(polarized))
    for factor in factors:
        candidate = QuantizedPolarizedArrangement(
            polarized.lambda0, tuple(Fraction(factor * e) for e in polarized.eta), polarized.xi
        )
        if lambda_regular(candidate) and set(quantized_feasible_signs(candidate)) == target:
            logger.debug(
                "Found linked quantization",
                extra={"event": "linked_quantization", "factor": factor, "eta": list(polarized.eta)},
            )
            return candidate
    raise NotRegular("No linked integral quantization found", details={"eta": list(polarized.eta)})


def linked_polarization(quantized: QuantizedPolarizedArrangement) -> PolarizedArrangement:
    """Regular polarized arrangement linked to a regular integral one: η = 2·v₀ + 𝟙.

    Each pair H_i^± is replaced by the hyperplane halfway between them, scaled by two.

    Raises:
        NotRegular: 𝚲 is not regular and integral
    """
    if not quantized.is_integral or not lambda_regular(quantized):
        raise NotRegular("Linked polarization needs a regular integral arrangement")
    eta = tuple(int(2 * v + 1) for v in quantized.basepoint)
    polarized = PolarizedArrangement(quantized.lambda0, eta, quantized.xi)
    linked = set(feasible_signs(polarized)) == set(quantized_feasible_signs(quantized))
    assert linked, "midpoint polarization not linked"
    return polarized


def equivalence_key(arrangement: Arrangement) -> Tuple:
    """Canonical key: Hermite basis of Λ₀, F, B (and I_Λ for quantized arrangements)"""
    lattice_key = tuple(tuple(row) for row in hermite_normal_form(arrangement.lambda0.basis))
    chamber_key = (
        tuple(str(a) for a in feasible(arrangement)),
        tuple(str(a) for a in bounded(arrangement)),
    )
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        return (lattice_key,) + chamber_key + (arrangement.integral_indices,)
    return (lattice_key,) + chamber_key


def essentialize(arrangement: QuantizedPolarizedArrangement) -> QuantizedPolarizedArrangement:
    """Project onto the coordinates I_Λ.

    Raises:
        Inessential: the doubled arrangement has no vertex
    """
    lattice = arrangement.lambda0
    indices = arrangement.integral_indices
    if not indices or not essential_on(lattice, indices):
        raise Inessential("Quantized arrangement has no vertex", details={"integral_indices": list(indices)})
    if len(indices) == lattice.n:
        return arrangement
    projected_lattice = Lattice(n=len(indices), basis=tuple(tuple(row[i] for i in indices) for row in lattice.basis))
    result = QuantizedPolarizedArrangement(
        projected_lattice, tuple(arrangement.basepoint[i] for i in indices), arrangement.xi
    )
    for original, reduced in (
        (quantized_feasible_signs(arrangement), quantized_feasible_signs(result)),
        (bounded(arrangement), bounded(result)),
        (bounded_feasible(arrangement), bounded_feasible(result)),
    ):
        assert [a.signs for a in original] == [a.signs for a in reduced], "essentialization changed chamber data"
    log_computation("essentialize", subject=str(lattice.basis), n_prime=len(indices))
    return result


def independent_subset_count(lattice: Lattice, indices: Sequence[int]) -> int:
    normals = lattice.columns
    count = 0
    for size in range(len(indices) + 1):
        for subset in itertools.combinations(indices, size):
            if matrix_rank([list(normals[i]) for i in subset], lattice.rank) == size:
                count += 1
    return count


def chamber_count_check(arrangement: QuantizedPolarizedArrangement) -> ChamberCountReport:
    """
    |F_𝚲| against the number of independent subsets of I_Λ

    Asserts count <= bound, and count == bound exactly when 𝚲 is regular. The second
    assertion needs 𝓗 essential on I_Λ; an inessential 𝓗 only gets the bound.
    """
    lattice = arrangement.lambda0
    count = len(quantized_feasible_signs(arrangement))
    bound = independent_subset_count(lattice, arrangement.integral_indices)
    regular = lambda_regular(arrangement)
    assert count <= bound, f"feasible count {count} exceeds independent-set bound {bound}"
    if essential_on(lattice, arrangement.integral_indices):
        assert (count == bound) == regular, f"count == bound is {count == bound} but lambda_regular is {regular}"
    return ChamberCountReport(count=count, bound=bound, equal=count == bound, lambda_regular=regular)


def chamber_graph(arrangement: PolarizedArrangement) -> nx.Graph:
    """Graph on F_η joining chambers that share a facet on a single hyperplane"""
    lattice = arrangement.lambda0
    offsets = [Fraction(x) for x in arrangement.eta]
    chambers = feasible_signs(arrangement)
    graph = nx.Graph()
    graph.add_nodes_from(chambers)
    present = set(chambers)
    for alpha in chambers:
        for i in range(lattice.n):
            beta = alpha.flip(i)
            if beta not in present or beta < alpha:
                continue
            face = delta_polyhedron(lattice, offsets, {j: s for j, s in zip(alpha.indices, alpha.signs) if j != i})
            face = face.with_inequalities([Inequality(lattice.columns[i], offsets[i], ">=")])
            face = face.with_inequalities([Inequality(lattice.columns[i], offsets[i], "<=")])
            if polyhedron_feasible(face) is not None:
                graph.add_edge(alpha, beta, coordinate=i)
    return graph


def chamber_graph_connected(arrangement: PolarizedArrangement) -> bool:
    graph = chamber_graph(arrangement)
    return graph.number_of_nodes() == 0 or nx.is_connected(graph)
