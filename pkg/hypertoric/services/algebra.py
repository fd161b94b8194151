"""
Graded algebras of hypertoric category O.

The cube-quiver algebra Q_n modulo the central relations ϑ(𝔨) has
e_α Q e_β ≅ R·p_{αβ}, where R = Q[u_1..u_k] and θ_i acts as the restricted
coordinate ℓ_i = h_i|Λ₀. Composition multiplies by ℓ_i for every coordinate
flipped and flipped back:

    p_{αβ} · p_{βγ} = (∏_{i : α_i ≠ β_i ≠ γ_i} ℓ_i) · p_{αγ}

Killing the idempotent e_γ makes e_α A e_β = R / ⟨∏_{i ∈ S_γ} ℓ_i⟩ with
S_γ = {i : α_i = β_i ≠ γ_i}. The algebras are built from this description
degree by degree with exact linear algebra.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb
from operator import mul
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import sympy
from sympy import QQ, Poly

from hypertoric.models.entities import IntVector, Lattice, SignVector, format_fraction
from hypertoric.services.exact import integer_kernel, matrix_rank, rref, to_fraction
from hypertoric.utils.errors import DegreeBudgetExceeded, ParameterMismatch
from hypertoric.utils.logging_config import get_logger, log_computation, log_performance_metric

logger = get_logger("services.algebra")

Monomial = Tuple[int, ...]
Polynomial = Dict[Monomial, Fraction]
Element = Dict[int, Fraction]


@dataclass(frozen=True)
class BasisElement:
    """Homogeneous basis element of e_source A e_target"""

    source: Hashable
    target: Hashable
    degree: int
    label: Tuple[Any, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": str(self.source),
            "target": str(self.target),
            "degree": self.degree,
            "label": [str(x) for x in self.label],
        }


class GradedAlgebra:
    """Finite (or degree-truncated) graded algebra with vertex idempotents.

    Products are stored eagerly as a sparse table (i, j) -> {k: coefficient}; a missing
    entry is zero. When `finite` is False every degree above `max_degree` is discarded.
    """

    def __init__(
        self,
        vertices: Sequence[Hashable],
        basis: Sequence[BasisElement],
        products: Dict[Tuple[int, int], Element],
        max_degree: int,
        finite: bool,
        name: str = "A",
        normal_form: Optional[Callable[[Hashable, Hashable, Tuple[Any, ...]], "Element"]] = None,
    ):
        self.vertices = tuple(vertices)
        self._normal_form = normal_form
        self.basis = list(basis)
        self.products = products
        self.max_degree = max_degree
        self.finite = finite
        self.name = name
        self._by_source: Dict[Hashable, List[int]] = defaultdict(list)
        self._by_target: Dict[Hashable, List[int]] = defaultdict(list)
        for index, element in enumerate(self.basis):
            self._by_source[element.source].append(index)
            self._by_target[element.target].append(index)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def top_degree(self) -> int:
        return max((b.degree for b in self.basis), default=-1)

    def degree_indices(self, degree: int) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b.degree == degree]

    def starting_at(self, vertex: Hashable) -> List[int]:
        return list(self._by_source.get(vertex, []))

    def ending_at(self, vertex: Hashable) -> List[int]:
        return list(self._by_target.get(vertex, []))

    def idempotent(self, vertex: Hashable) -> int:
        for index in self._by_source.get(vertex, []):
            element = self.basis[index]
            if element.target == vertex and element.degree == 0:
                return index
        raise KeyError(f"No idempotent at {vertex}")

    def product(self, i: int, j: int) -> Element:
        return self.products.get((i, j), {})

    def multiply(self, x: Element, y: Element) -> Element:
        result: Dict[int, Fraction] = defaultdict(Fraction)
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product(i, j).items():
                    result[k] += a * b * c
        return {k: v for k, v in result.items() if v != 0}

    def normal_form(self, source: Hashable, target: Hashable, label: Tuple[Any, ...]) -> Element:
        """Image in this algebra of a label that need not be a basis label (zero off the vertex set)"""
        if self._normal_form is None:
            raise NotImplementedError(f"{self.name} has no normal form map")
        return self._normal_form(source, target, label)

    def corner_algebra(
        self, vertices: Iterable[Hashable], name: Optional[str] = None
    ) -> Tuple["GradedAlgebra", List[int]]:
        """e A e for a vertex subset, with the positions of its basis in this algebra"""
        keep = set(vertices)
        indices = [i for i, b in enumerate(self.basis) if b.source in keep and b.target in keep]
        position = {i: p for p, i in enumerate(indices)}
        products = {}
        for (i, j), value in self.products.items():
            if i in position and j in position:
                products[(position[i], position[j])] = {position[k]: c for k, c in value.items()}
        corner = GradedAlgebra(
            [v for v in self.vertices if v in keep],
            [self.basis[i] for i in indices],
            products,
            self.max_degree,
            self.finite,
            name=name or f"e{self.name}e",
        )
        return corner, indices

    def corner(self, sources: Iterable[Hashable], targets: Iterable[Hashable]) -> List[int]:
        """Basis indices of ⊕ e_s A e_t"""
        targets = set(targets)
        return sorted(i for s in set(sources) for i in self._by_source.get(s, []) if self.basis[i].target in targets)

    def pair_dims(self, source: Hashable, target: Hashable) -> List[int]:
        dims = [0] * (self.max_degree + 1)
        for index in self._by_source.get(source, []):
            element = self.basis[index]
            if element.target == target:
                dims[element.degree] += 1
        return dims

    def graded_dims(self) -> List[int]:
        dims = [0] * (self.max_degree + 1)
        for element in self.basis:
            dims[element.degree] += 1
        while len(dims) > 1 and dims[-1] == 0 and self.finite:
            dims.pop()
        return dims

    def check_idempotents(self) -> bool:
        for v in self.vertices:
            e = self.idempotent(v)
            for index in self._by_source.get(v, []):
                if self.product(e, index) != {index: Fraction(1)}:
                    return False
            for index in self._by_target.get(v, []):
                if self.product(index, e) != {index: Fraction(1)}:
                    return False
        return True

    def check_associativity(self, up_to_degree: Optional[int] = None) -> bool:
        """(xy)z = x(yz) and degrees add on every composable basis triple"""
        bound = self.max_degree if up_to_degree is None else up_to_degree
        for (i, j), xy in self.products.items():
            expected = self.basis[i].degree + self.basis[j].degree
            if any(self.basis[k].degree != expected for k in xy):
                return False
        for x, xe in enumerate(self.basis):
            for y in self._by_source.get(xe.target, []):
                ye = self.basis[y]
                for z in self._by_source.get(ye.target, []):
                    if xe.degree + ye.degree + self.basis[z].degree > bound:
                        continue
                    left = self.multiply(self.product(x, y), {z: Fraction(1)})
                    right = self.multiply({x: Fraction(1)}, self.product(y, z))
                    if left != right:
                        logger.warning(
                            "Associativity fails",
                            extra={"event": "associativity_failure", "triple": [x, y, z], "algebra": self.name},
                        )
                        return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "vertices": [str(v) for v in self.vertices],
            "finite": self.finite,
            "max_degree": self.max_degree,
            "basis": [b.to_dict() for b in self.basis],
            "products": [
                [i, j, k, format_fraction(c)]
                for (i, j), entries in sorted(self.products.items())
                for k, c in sorted(entries.items())
            ],
        }


# ---------------------------------------------------------------------------
# Polynomial quotients R / I
# ---------------------------------------------------------------------------


def monomials_of_degree(variables: int, degree: int) -> List[Monomial]:
    result = []
    for combination in itertools.combinations_with_replacement(range(variables), degree):
        exponents = [0] * variables
        for v in combination:
            exponents[v] += 1
        result.append(tuple(exponents))
    return sorted(result, reverse=True)


def _poly_to_dict(poly: Poly) -> Polynomial:
    return {tuple(m): to_fraction(c) for m, c in poly.terms() if c != 0}


def _shift(poly: Polynomial, monomial: Monomial) -> Polynomial:
    return {tuple(a + b for a, b in zip(m, monomial)): c for m, c in poly.items()}


class QuotientRing:
    """R / I for a homogeneous ideal I given by generators, one graded piece at a time"""

    def __init__(self, variables: int, generators: Sequence[Polynomial]):
        self.variables = variables
        self.generators = [(g, sum(next(iter(g)))) for g in generators if g]
        self._pieces: Dict[int, Tuple[List[List[Fraction]], Tuple[int, ...], List[Monomial], List[Monomial]]] = {}

    def _piece(self, degree: int):
        if degree not in self._pieces:
            monomials = monomials_of_degree(self.variables, degree)
            position = {m: i for i, m in enumerate(monomials)}
            rows = []
            for generator, generator_degree in self.generators:
                if generator_degree > degree:
                    continue
                for shift in monomials_of_degree(self.variables, degree - generator_degree):
                    row = [Fraction(0)] * len(monomials)
                    for m, c in _shift(generator, shift).items():
                        row[position[m]] += c
                    rows.append(row)
            reduced, pivots = rref(rows, len(monomials)) if rows else ([], ())
            standard = [m for i, m in enumerate(monomials) if i not in pivots]
            self._pieces[degree] = (reduced, pivots, monomials, standard)
        return self._pieces[degree]

    def standard_monomials(self, degree: int) -> List[Monomial]:
        return self._piece(degree)[3]

    def dimension(self, degree: int) -> int:
        return len(self.standard_monomials(degree))

    def reduce(self, poly: Polynomial, degree: int) -> Polynomial:
        """Coordinates of a homogeneous polynomial on the standard monomials"""
        reduced, pivots, monomials, standard = self._piece(degree)
        vector = [Fraction(0)] * len(monomials)
        position = {m: i for i, m in enumerate(monomials)}
        for m, c in poly.items():
            vector[position[m]] += c
        for row, pivot in zip(reduced, pivots):
            factor = vector[pivot]
            if factor:
                vector = [v - factor * r for v, r in zip(vector, row)]
        return {m: vector[position[m]] for m in standard if vector[position[m]] != 0}


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


@dataclass
class QuiverPresentation:
    """Vertices, arrows (source, target, flipped coordinate), basis of 𝔨 and killed idempotents"""

    vertices: Tuple[SignVector, ...]
    arrows: Tuple[Tuple[SignVector, SignVector, int], ...]
    central_relations: Tuple[IntVector, ...]
    killed: Tuple[SignVector, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [str(v) for v in self.vertices],
            "arrows": [[str(s), str(t), i] for s, t, i in self.arrows],
            "central_relations": [list(r) for r in self.central_relations],
            "killed": [str(v) for v in self.killed],
        }


def _vertex_sets(
    lattice: Lattice, feasible: Optional[Iterable[SignVector]], bounded: Optional[Iterable[SignVector]]
) -> Tuple[List[SignVector], List[SignVector]]:
    everything = [SignVector.full("".join(s)) for s in itertools.product("+-", repeat=lattice.n)]
    full_indices = tuple(range(lattice.n))
    feasible_set = set(everything) if feasible is None else set(feasible)
    bounded_set = set(everything) if bounded is None else set(bounded)
    for alpha in feasible_set | bounded_set:
        if alpha.indices != full_indices:
            raise ParameterMismatch(
                "Sign vectors must cover every coordinate; essentialize first", details={"sign_vector": str(alpha)}
            )
    retained = [a for a in everything if a in feasible_set and a in bounded_set]
    killed = [a for a in everything if a in feasible_set and a not in bounded_set]
    return retained, killed


def quiver_presentation(
    lattice: Lattice,
    feasible: Optional[Iterable[SignVector]] = None,
    bounded: Optional[Iterable[SignVector]] = None,
) -> QuiverPresentation:
    retained, killed = _vertex_sets(lattice, feasible, bounded)
    present = set(retained)
    arrows = []
    for alpha in retained:
        for i in range(lattice.n):
            beta = alpha.flip(i)
            if beta in present:
                arrows.append((alpha, beta, i))
    kernel = integer_kernel(lattice.basis, lattice.n)
    return QuiverPresentation(tuple(retained), tuple(arrows), tuple(tuple(r) for r in kernel), tuple(killed))


class _CubeQuotientBuilder:
    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.k = lattice.rank
        self.gens = sympy.symbols(f"u1:{self.k + 1}")
        self.linear_forms = [
            Poly(sum(row[i] * g for row, g in zip(lattice.basis, self.gens)), *self.gens, domain=QQ)
            for i in range(lattice.n)
        ]
        self._products: Dict[Tuple[int, ...], Polynomial] = {}

    def linear_product(self, indices: Iterable[int]) -> Polynomial:
        key = tuple(sorted(indices))
        if key not in self._products:
            one = Poly(1, *self.gens, domain=QQ)
            self._products[key] = _poly_to_dict(reduce(mul, (self.linear_forms[i] for i in key), one))
        return self._products[key]


def _hamming(alpha: SignVector, beta: SignVector) -> int:
    return sum(1 for a, b in zip(alpha.signs, beta.signs) if a != b)


def build_algebra(
    lattice: Lattice,
    feasible: Optional[Iterable[SignVector]] = None,
    bounded: Optional[Iterable[SignVector]] = None,
    max_degree: Optional[int] = None,
    name: str = "A",
) -> GradedAlgebra:
    """e_F Q_n e_F / ⟨ϑ(𝔨), e_γ : γ ∈ F ∖ B⟩ on the vertices F ∩ B.

    Args:
        lattice: Λ₀
        feasible: vertex set F (all sign vectors when omitted)
        bounded: vertex set B (all sign vectors when omitted)
        max_degree: degree budget D

    Returns:
        A(η,ξ), A(-,ξ) or A(η,-) depending on which restrictions are given. With `bounded`
        the algebra is finite-dimensional and is built completely; without it the algebra
        is truncated at D.

    Raises:
        DegreeBudgetExceeded: a finite algebra has not vanished by degree D
    """
    if max_degree is None:
        from hypertoric import get_settings

        max_degree = get_settings().MAX_DEGREE
    finite = bounded is not None
    retained, killed = _vertex_sets(lattice, feasible, bounded)
    builder = _CubeQuotientBuilder(lattice)

    quotients: Dict[Tuple[SignVector, SignVector], QuotientRing] = {}
    degrees: Dict[Tuple[SignVector, SignVector], int] = {}
    basis: List[BasisElement] = []
    for alpha, beta in itertools.product(retained, repeat=2):
        supports = {
            frozenset(i for i in range(lattice.n) if alpha.signs[i] == beta.signs[i] != gamma.signs[i])
            for gamma in killed
        }
        ring = QuotientRing(builder.k, [builder.linear_product(s) for s in sorted(supports, key=sorted)])
        quotients[(alpha, beta)] = ring
        distance = _hamming(alpha, beta)
        r_degree = 0
        vanished = False
        while distance + 2 * r_degree <= max_degree:
            standard = ring.standard_monomials(r_degree)
            if not standard:
                vanished = True
                break
            for monomial in standard:
                basis.append(BasisElement(alpha, beta, distance + 2 * r_degree, monomial))
            r_degree += 1
        if finite and not vanished:
            raise DegreeBudgetExceeded(
                "Algebra did not vanish within the degree budget",
                details={"source": str(alpha), "target": str(beta), "max_degree": max_degree},
            )
        degrees[(alpha, beta)] = r_degree

    order = {v: i for i, v in enumerate(retained)}
    basis.sort(key=lambda b: (b.degree, order[b.source], order[b.target], tuple(-e for e in b.label)))
    index = {(b.source, b.target, b.label): i for i, b in enumerate(basis)}

    products: Dict[Tuple[int, int], Element] = {}
    by_source: Dict[SignVector, List[int]] = defaultdict(list)
    for i, b in enumerate(basis):
        by_source[b.source].append(i)
    for i, x in enumerate(basis):
        for j in by_source[x.target]:
            y = basis[j]
            overlap = [
                c for c in range(lattice.n) if x.source.signs[c] != x.target.signs[c] != y.target.signs[c]
            ]
            r_degree = sum(x.label) + sum(y.label) + len(overlap)
            if r_degree >= degrees[(x.source, y.target)]:
                continue
            poly = _shift(builder.linear_product(overlap), tuple(a + b for a, b in zip(x.label, y.label)))
            reduced = quotients[(x.source, y.target)].reduce(poly, r_degree)
            if reduced:
                products[(i, j)] = {index[(x.source, y.target, m)]: c for m, c in reduced.items()}

    def normal_form(source: SignVector, target: SignVector, monomial: Monomial) -> Element:
        if (source, target) not in quotients or sum(monomial) >= degrees[(source, target)]:
            return {}
        reduced = quotients[(source, target)].reduce({tuple(monomial): Fraction(1)}, sum(monomial))
        return {index[(source, target, m)]: c for m, c in reduced.items()}

    algebra = GradedAlgebra(retained, basis, products, max_degree, finite, name=name, normal_form=normal_form)
    log_computation(
        "build_algebra",
        subject=str(lattice.basis),
        algebra=name,
        vertices=len(retained),
        killed=len(killed),
        dimension=algebra.dimension,
        finite=finite,
    )
    log_performance_metric("algebra_products", len(products), unit="entries", algebra=name)
    return algebra


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

t = sympy.Symbol("t")


def graded_dims(algebra: GradedAlgebra) -> sympy.Matrix:
    """Matrix of Hilbert polynomials, entry (α, β) for e_α A e_β"""
    size = len(algebra.vertices)
    entries = [[sympy.Integer(0)] * size for _ in range(size)]
    for a, source in enumerate(algebra.vertices):
        for b, target in enumerate(algebra.vertices):
            dims = algebra.pair_dims(source, target)
            entries[a][b] = sum((d * t**degree for degree, d in enumerate(dims)), sympy.Integer(0))
    return sympy.Matrix(entries) if size else sympy.zeros(0, 0)


def cartan_matrix(algebra: GradedAlgebra) -> List[List[int]]:
    return [[sum(algebra.pair_dims(s, v)) for v in algebra.vertices] for s in algebra.vertices]


def free_rank_one_dims(variables: int, offset: int, max_degree: int) -> List[int]:
    """Truncated coefficients of t^offset / (1 - t²)^variables"""
    dims = [0] * (max_degree + 1)
    j = 0
    while offset + 2 * j <= max_degree:
        dims[offset + 2 * j] = comb(j + variables - 1, variables - 1) if variables else int(j == 0)
        j += 1
    return dims


def rank_one_freeness_check(algebra: GradedAlgebra, variables: int) -> bool:
    """Every corner e_α A e_β has the Hilbert series of a rank-one free module over k variables"""
    for source, target in itertools.product(algebra.vertices, repeat=2):
        expected = free_rank_one_dims(variables, _hamming(source, target), algebra.max_degree)
        if algebra.pair_dims(source, target) != expected:
            return False
    return True


def center_graded_dims(algebra: GradedAlgebra) -> List[int]:
    """Graded dimensions of Z(A): elements of ⊕ e_v A e_v commuting with every basis element"""
    dims = []
    for degree in range(algebra.max_degree + 1):
        candidates = [i for i in algebra.degree_indices(degree) if algebra.basis[i].source == algebra.basis[i].target]
        if not candidates:
            dims.append(0)
            continue
        equations: Dict[Tuple[int, int], Dict[int, Fraction]] = defaultdict(dict)
        for position, z in enumerate(candidates):
            for b in range(algebra.dimension):
                commutator: Dict[int, Fraction] = defaultdict(Fraction)
                for k, c in algebra.product(z, b).items():
                    commutator[k] += c
                for k, c in algebra.product(b, z).items():
                    commutator[k] -= c
                for k, c in commutator.items():
                    if c:
                        equations[(b, k)][position] = c
        rows = [[row.get(p, Fraction(0)) for p in range(len(candidates))] for row in equations.values()]
        dims.append(len(candidates) - matrix_rank(rows, len(candidates)))
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims if any(dims) else []


def proportional(x: Element, y: Element) -> Optional[Fraction]:
    """Scalar c with x = c·y, or None"""
    if not x or not y or set(x) != set(y):
        return None
    ratios: Set[Fraction] = {x[k] / y[k] for k in x}
    return ratios.pop() if len(ratios) == 1 else None
