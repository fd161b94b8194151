"""
Translation, shuffling and twisting bimodules, and the cartesian isomorphism behind them.

Translation uses the corner e_{η'} R e_η of the cube algebra R. Shuffling uses the corner
e_{η'} A(-,ξ) e_η of the algebra A(-,ξ) on all bounded sign vectors. Twisting uses A(η,ξ')
with the right action of A(η,-) through the quotient map A(η,-) → A(η,ξ').
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from hypertoric.models.entities import Lattice, PolarizedArrangement, SignVector
from hypertoric.services.algebra import BasisElement, Element, GradedAlgebra, build_algebra
from hypertoric.services.arrangement import bounded_signs, eta_regular, feasible_signs, xi_regular
from hypertoric.services.exact import integer_kernel, matrix_rank
from hypertoric.services.quadratic import cube_quiver, quotient_pieces, through_vertices
from hypertoric.utils.errors import NotRegular
from hypertoric.utils.logging_config import get_logger, log_computation, log_verification_event

logger = get_logger("services.bimodules")


@dataclass
class GradedBimodule:
    """(left, right)-bimodule with a homogeneous basis and sparse action tables"""

    left: GradedAlgebra
    right: GradedAlgebra
    basis: List[BasisElement]
    left_action: Dict[Tuple[int, int], Element] = field(default_factory=dict)
    right_action: Dict[Tuple[int, int], Element] = field(default_factory=dict)
    name: str = "M"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def act_left(self, a: int, m: Element) -> Element:
        result: Dict[int, Fraction] = defaultdict(Fraction)
        for i, c in m.items():
            for k, d in self.left_action.get((a, i), {}).items():
                result[k] += c * d
        return {k: v for k, v in result.items() if v}

    def act_right(self, m: Element, b: int) -> Element:
        result: Dict[int, Fraction] = defaultdict(Fraction)
        for i, c in m.items():
            for k, d in self.right_action.get((i, b), {}).items():
                result[k] += c * d
        return {k: v for k, v in result.items() if v}

    def check_actions(self, up_to_degree: Optional[int] = None) -> bool:
        """Degrees add and (a·m)·b = a·(m·b) on basis triples"""
        bound = up_to_degree
        for table, first, second in (
            (self.left_action, self.left.basis, self.basis),
            (self.right_action, self.basis, self.right.basis),
        ):
            for (i, j), value in table.items():
                expected = first[i].degree + second[j].degree
                if any(self.basis[k].degree != expected for k in value):
                    return False
        dims = (range(self.left.dimension), range(self.dimension), range(self.right.dimension))
        for a, m, b in itertools.product(*dims):
            if bound is not None and (
                self.left.basis[a].degree + self.basis[m].degree + self.right.basis[b].degree > bound
            ):
                continue
            if self.left.basis[a].target != self.basis[m].source or self.basis[m].target != self.right.basis[b].source:
                continue
            if self.act_right(self.act_left(a, {m: Fraction(1)}), b) != self.act_left(
                a, self.act_right({m: Fraction(1)}, b)
            ):
                return False
        return True

    def pair_dims(self, source: Hashable, target: Hashable) -> int:
        return sum(1 for b in self.basis if b.source == source and b.target == target)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "left": self.left.name,
            "right": self.right.name,
            "left_vertices": [str(v) for v in self.left.vertices],
            "right_vertices": [str(v) for v in self.right.vertices],
            "basis": [b.to_dict() for b in self.basis],
        }


def transfer_matrix(bimodule: GradedBimodule) -> List[List[int]]:
    """Entry (α', α) = dim e_{α'} M e_α: the image of the projective P_α under M ⊗ -, in simple multiplicities"""
    return [[bimodule.pair_dims(s, t) for t in bimodule.right.vertices] for s in bimodule.left.vertices]


def is_invertible(matrix: List[List[int]]) -> bool:
    return bool(matrix) and len(matrix) == len(matrix[0]) and matrix_rank(matrix, len(matrix[0])) == len(matrix)


def _require_regular(lattice: Lattice, etas: Sequence[Sequence[int]], xis: Sequence[Sequence[int]]):
    for eta in etas:
        if not eta_regular(PolarizedArrangement(lattice, tuple(eta), tuple(xis[0]))):
            raise NotRegular("η is not regular", details={"eta": list(eta)})
    for xi in xis:
        if not xi_regular(lattice, xi):
            raise NotRegular("ξ is not regular", details={"xi": list(xi)})


def _corner_bimodule(
    ambient: GradedAlgebra,
    left: Tuple[GradedAlgebra, List[int]],
    right: Tuple[GradedAlgebra, List[int]],
    name: str,
) -> GradedBimodule:
    """e_s A e_t for corners e_s A e_s and e_t A e_t of `ambient`, acting by multiplication in A"""
    (left_algebra, left_indices), (right_algebra, right_indices) = left, right
    module_indices = ambient.corner(left_algebra.vertices, right_algebra.vertices)
    position = {i: p for p, i in enumerate(module_indices)}
    basis = [ambient.basis[i] for i in module_indices]

    left_action = {}
    for a, original in enumerate(left_indices):
        for m, element in enumerate(module_indices):
            value = ambient.product(original, element)
            if value:
                left_action[(a, m)] = {position[k]: c for k, c in value.items()}
    right_action = {}
    for m, element in enumerate(module_indices):
        for b, original in enumerate(right_indices):
            value = ambient.product(element, original)
            if value:
                right_action[(m, b)] = {position[k]: c for k, c in value.items()}
    return GradedBimodule(left_algebra, right_algebra, basis, left_action, right_action, name=name)


def shuffling_bimodule(
    lattice: Lattice,
    eta: Sequence[int],
    eta_prime: Sequence[int],
    xi: Sequence[int],
    max_degree: Optional[int] = None,
) -> GradedBimodule:
    """e_{η'} A(-,ξ) e_η as an (A(η',ξ), A(η,ξ))-bimodule.

    The acting algebras are the corners of A(-,ξ) on P_{η'} and P_η, which are checked to have
    the graded dimensions of A(η',ξ) and A(η,ξ).

    Raises:
        NotRegular: η, η' or ξ is not regular
    """
    _require_regular(lattice, [eta, eta_prime], [xi])
    bounded = bounded_signs(lattice, xi)
    ambient = build_algebra(lattice, feasible=None, bounded=bounded, max_degree=max_degree, name="A(-,xi)")
    source_set = set(feasible_signs(PolarizedArrangement(lattice, tuple(eta_prime), tuple(xi)))) & set(bounded)
    target_set = set(feasible_signs(PolarizedArrangement(lattice, tuple(eta), tuple(xi)))) & set(bounded)

    left, left_indices = ambient.corner_algebra(source_set, name="A(eta',xi)")
    right, right_indices = ambient.corner_algebra(target_set, name="A(eta,xi)")
    for corner, polarization in ((left, eta_prime), (right, eta)):
        direct = build_algebra(
            lattice,
            feasible=feasible_signs(PolarizedArrangement(lattice, tuple(polarization), tuple(xi))),
            bounded=bounded,
            max_degree=max_degree,
        )
        if corner.graded_dims() != direct.graded_dims():
            raise AssertionError(f"Corner of A(-,ξ) at η = {list(polarization)} differs from A(η,ξ)")
    bimodule = _corner_bimodule(ambient, (left, left_indices), (right, right_indices), "shuffling")
    log_computation("shuffling_bimodule", subject=str(lattice.basis), dimension=bimodule.dimension)
    return bimodule


def twisting_bimodule(
    lattice: Lattice,
    eta: Sequence[int],
    xi: Sequence[int],
    xi_prime: Sequence[int],
    max_degree: Optional[int] = None,
) -> GradedBimodule:
    """A(η,ξ') as an (A(η,ξ'), A(η,-))-bimodule, the right action through the quotient map.

    Raises:
        NotRegular: η, ξ or ξ' is not regular
    """
    _require_regular(lattice, [eta], [xi, xi_prime])
    feasible = feasible_signs(PolarizedArrangement(lattice, tuple(eta), tuple(xi)))
    target = build_algebra(
        lattice, feasible=feasible, bounded=bounded_signs(lattice, xi_prime), max_degree=max_degree, name="A(eta,xi')"
    )
    deformation = build_algebra(lattice, feasible=feasible, bounded=None, max_degree=max_degree, name="A(eta,-)")
    projection = quotient_projection(deformation, target)

    left_action = {}
    for (a, m), value in target.products.items():
        left_action[(a, m)] = dict(value)
    right_action = {}
    for m in range(target.dimension):
        for b in deformation.starting_at(target.basis[m].target):
            value = target.multiply({m: Fraction(1)}, projection[b])
            if value:
                right_action[(m, b)] = value

    bimodule = GradedBimodule(target, deformation, list(target.basis), left_action, right_action, name="twisting")
    log_computation("twisting_bimodule", subject=str(lattice.basis), dimension=bimodule.dimension)
    return bimodule


def _polarized_feasible(lattice: Lattice, eta: Sequence[int]) -> List[SignVector]:
    arrangement = PolarizedArrangement(lattice, tuple(eta), (0,) * lattice.rank)
    if not eta_regular(arrangement):
        raise NotRegular("η is not regular", details={"eta": list(eta)})
    return feasible_signs(arrangement)


def translation_bimodule(
    lattice: Lattice, eta: Sequence[int], eta_prime: Sequence[int], max_degree: Optional[int] = None
) -> GradedBimodule:
    """e_{η'} R e_η as an (A(η',-), A(η,-))-bimodule, truncated at D.

    R is the cube algebra modulo ϑ(𝔨); tensoring with this bimodule is translation between the
    deformed blocks of η and η'. Shuffling is the same construction after the quotient by ξ.

    Raises:
        NotRegular: η or η' is not regular
    """
    target_set = _polarized_feasible(lattice, eta)
    source_set = _polarized_feasible(lattice, eta_prime)
    ambient = build_algebra(lattice, max_degree=max_degree, name="R")
    left = ambient.corner_algebra(source_set, name="A(eta',-)")
    right = ambient.corner_algebra(target_set, name="A(eta,-)")
    bimodule = _corner_bimodule(ambient, left, right, "translation")
    log_computation("translation_bimodule", subject=str(lattice.basis), dimension=bimodule.dimension)
    return bimodule


def translation_round_trip(
    lattice: Lattice, eta: Sequence[int], eta_prime: Sequence[int], max_degree: Optional[int] = None
) -> bool:
    """e_η R e_{η'} ⊗ e_{η'} R e_η → e_η R e_η is onto through degree D.

    Onto exactly when F_η ⊆ F_{η'}: e_α for α ∈ F_η ∖ F_{η'} is never a product through F_{η'}.

    Raises:
        NotRegular: η or η' is not regular
    """
    feasible = _polarized_feasible(lattice, eta)
    through = _polarized_feasible(lattice, eta_prime)
    ambient = build_algebra(lattice, max_degree=max_degree, name="R")
    for alpha, beta in itertools.product(feasible, repeat=2):
        for degree in range(ambient.max_degree + 1):
            codomain = [i for i in ambient.corner([alpha], [beta]) if ambient.basis[i].degree == degree]
            if not codomain:
                continue
            column = {i: p for p, i in enumerate(codomain)}
            rows = []
            for gamma in through:
                for x in ambient.corner([alpha], [gamma]):
                    for y in ambient.corner([gamma], [beta]):
                        if ambient.basis[x].degree + ambient.basis[y].degree != degree:
                            continue
                        value = ambient.product(x, y)
                        if value:
                            row = [Fraction(0)] * len(codomain)
                            for k, c in value.items():
                                row[column[k]] += c
                            rows.append(row)
            if matrix_rank(rows, len(codomain)) < len(codomain):
                log_verification_event(
                    "translation_round_trip", False, source=str(alpha), target=str(beta), degree=degree
                )
                return False
    log_verification_event("translation_round_trip", True, subject=str(lattice.basis))
    return True


def quotient_projection(source: GradedAlgebra, target: GradedAlgebra) -> List[Element]:
    """Images of the basis of A(η,-) in A(η,ξ'), by reducing each label in the target"""
    return [target.normal_form(b.source, b.target, b.label) for b in source.basis]


def projection_kernel_check(
    source: GradedAlgebra, target: GradedAlgebra, killed: Sequence[SignVector], up_to_degree: Optional[int] = None
) -> bool:
    """The quotient map is onto and its kernel is the ideal generated by the killed idempotents, degree by degree"""
    projection = quotient_projection(source, target)
    bound = min(source.max_degree, target.max_degree) if up_to_degree is None else up_to_degree
    killed_set = set(killed)
    for degree in range(bound + 1):
        domain = source.degree_indices(degree)
        codomain = target.degree_indices(degree)
        position = {k: p for p, k in enumerate(codomain)}
        image_rows = []
        for i in domain:
            row = [Fraction(0)] * len(codomain)
            for k, c in projection[i].items():
                row[position[k]] = c
            image_rows.append(row)
        image_rank = matrix_rank(image_rows, len(codomain)) if codomain and image_rows else 0
        if image_rank != len(codomain):
            return False

        ideal_rows = []
        for gamma in killed_set:
            for x in source.ending_at(gamma):
                for y in source.starting_at(gamma):
                    if source.basis[x].degree + source.basis[y].degree == degree:
                        value = source.product(x, y)
                        if value:
                            ideal_rows.append(value)
        for row in ideal_rows:
            image: Dict[int, Fraction] = defaultdict(Fraction)
            for i, c in row.items():
                for k, d in projection[i].items():
                    image[k] += c * d
            if any(v for v in image.values()):
                return False
        dense = [[row.get(i, Fraction(0)) for i in domain] for row in ideal_rows]
        ideal_rank = matrix_rank(dense, len(domain)) if dense and domain else 0
        if ideal_rank != len(domain) - image_rank:
            logger.debug(
                "Kernel larger than the idempotent ideal",
                extra={"event": "kernel_check", "degree": degree, "ideal_rank": ideal_rank},
            )
            return False
    return True


def cartesian_check(
    lattice: Lattice, eta: Sequence[int], xi: Sequence[int], max_degree: Optional[int] = None
) -> bool:
    """R e_η ⊗_{A(η,-)} A(η,ξ) → A(-,ξ) e_η is an isomorphism of graded spaces through degree D.

    R is the cube quiver algebra modulo ϑ(𝔨), computed from paths. The tensor product is
    built as R e_η / R e_K R e_η with K = F_η ∖ B_ξ, and the target as e_B R e_η modulo paths
    through vertices outside B_ξ. The multiplication map sends the class of r to the class of r;
    it must kill the relations of the source and be bijective on every e_α (-)_d e_β.
    D defaults to two above the top degree of A(-,ξ).

    Raises:
        NotRegular: η or ξ is not regular
        DegreeBudgetExceeded: A(-,ξ) does not vanish within the configured budget
    """
    _require_regular(lattice, [eta], [xi])
    feasible = set(feasible_signs(PolarizedArrangement(lattice, tuple(eta), tuple(xi))))
    bounded = set(bounded_signs(lattice, xi))
    if max_degree is None:
        max_degree = build_algebra(lattice, bounded=sorted(bounded)).top_degree + 2
    everything = [SignVector.full("".join(s)) for s in itertools.product("+-", repeat=lattice.n)]
    quotient = cube_quiver(lattice.n, integer_kernel(lattice.basis, lattice.n)).quotient(max_degree)
    blocks = quotient.blocks()

    columns = sorted(feasible)
    deformation_killed = [g for g in columns if g not in bounded]
    source = quotient_pieces(
        blocks,
        itertools.product(everything, columns),
        through_vertices(quotient, blocks, deformation_killed),
        max_degree,
    )
    target = quotient_pieces(
        blocks,
        itertools.product(sorted(bounded), [b for b in columns if b in bounded]),
        through_vertices(quotient, blocks, [g for g in everything if g not in bounded]),
        max_degree,
    )

    for (alpha, beta, degree), piece in source.items():
        domain = piece.standard
        image = target.get((alpha, beta, degree))
        codomain = image.standard if image is not None else []
        if image is not None:
            well_defined = all(not image.reduce(row) for row in piece.subspace())
            rows = [[image.reduce({r: Fraction(1)}).get(c, Fraction(0)) for c in codomain] for r in domain]
            rank = matrix_rank(rows, len(codomain)) if rows and codomain else 0
        else:
            well_defined, rank = True, 0
        if not well_defined or not rank == len(domain) == len(codomain):
            log_verification_event(
                "cartesian_check",
                False,
                source=str(alpha),
                target=str(beta),
                degree=degree,
                domain=len(domain),
                codomain=len(codomain),
                rank=rank,
            )
            return False
    log_verification_event("cartesian_check", True, subject=str(lattice.basis), max_degree=max_degree)
    return True
