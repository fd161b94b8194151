"""
Quadratic duality and Koszul complexes for graded quiver algebras.

Path algebras modulo homogeneous relations are built degree by degree, which also
gives a path model of A(X) on the cube quiver. The quadratic dual of a graded algebra
generated in degree one is presented on the same quiver with the orthogonal relations.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from hypertoric.models.entities import KoszulReport, Lattice, SignVector
from hypertoric.services.algebra import BasisElement, GradedAlgebra, proportional, quiver_presentation
from hypertoric.services.exact import matrix_rank, nullspace, rref
from hypertoric.utils.errors import DegreeBudgetExceeded, NotQuadratic
from hypertoric.utils.logging_config import get_logger, log_computation, log_verification_event

logger = get_logger("services.quadratic")

Path = Tuple[int, ...]
Relation = Dict[Path, Fraction]


@dataclass
class Arrow:
    name: str
    source: Hashable
    target: Hashable


@dataclass
class PathQuotient:
    """Graded pieces of a path algebra modulo homogeneous relations, with right multiplication by arrows"""

    vertices: Tuple[Hashable, ...]
    basis: List[BasisElement]
    paths: List[Path]
    by_degree: List[List[int]]
    right: Dict[Tuple[int, int], Dict[int, Fraction]]
    max_degree: int
    finite: bool

    def multiply_path(self, vector: Dict[int, Fraction], path: Path) -> Dict[int, Fraction]:
        for arrow in path:
            result: Dict[int, Fraction] = defaultdict(Fraction)
            for b, c in vector.items():
                for k, v in self.right.get((b, arrow), {}).items():
                    result[k] += c * v
            vector = {k: v for k, v in result.items() if v}
        return vector

    def blocks(self) -> Dict[Tuple[Hashable, Hashable, int], List[int]]:
        """Basis indices of each e_α R_d e_β"""
        result: Dict[Tuple[Hashable, Hashable, int], List[int]] = defaultdict(list)
        for degree, indices in enumerate(self.by_degree):
            for r in indices:
                result[(self.basis[r].source, self.basis[r].target, degree)].append(r)
        return dict(result)

    def product(self, i: int, j: int) -> Dict[int, Fraction]:
        """Zero when the product leaves the computed degrees"""
        if self.basis[i].target != self.basis[j].source:
            return {}
        if not self.paths[j]:
            return {i: Fraction(1)}
        return self.multiply_path({i: Fraction(1)}, self.paths[j])


@dataclass
class QuiverWithRelations:
    """Path algebra of a quiver (arrows in degree 1) modulo homogeneous relations"""

    vertices: Tuple[Hashable, ...]
    arrows: List[Arrow]
    relations: List[Relation] = field(default_factory=list)

    def quotient(self, max_degree: int) -> PathQuotient:
        """Standard basis of each degree up to `max_degree`.

        A_d is presented as (A_{d-1} ⊗ A_1) modulo b·r for b in the standard basis of A_{d-l}
        and r a relation of length l; the remaining ideal terms already vanish in A_{d-1} ⊗ A_1.
        """
        outgoing: Dict[Hashable, List[int]] = defaultdict(list)
        for i, arrow in enumerate(self.arrows):
            outgoing[arrow.source].append(i)
        relations_at: Dict[Hashable, List[Relation]] = defaultdict(list)
        for relation in self.relations:
            if relation:
                relations_at[self.arrows[next(iter(relation))[0]].source].append(relation)

        basis = [BasisElement(v, v, 0, ()) for v in self.vertices]
        result = PathQuotient(self.vertices, basis, [()] * len(basis), [list(range(len(basis)))], {}, max_degree, False)
        for degree in range(1, max_degree + 1):
            groups: Dict[Tuple[Hashable, Hashable], List[Tuple[int, int]]] = defaultdict(list)
            for b in result.by_degree[degree - 1]:
                for arrow in outgoing[basis[b].target]:
                    groups[(basis[b].source, self.arrows[arrow].target)].append((b, arrow))
            relation_rows: Dict[Tuple[Hashable, Hashable], List[Dict[Tuple[int, int], Fraction]]] = defaultdict(list)
            for source, relations in relations_at.items():
                for relation in relations:
                    first = next(iter(relation))
                    if len(first) > degree:
                        continue
                    for b in result.by_degree[degree - len(first)]:
                        if basis[b].target != source:
                            continue
                        row: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
                        for path, c in relation.items():
                            for k, v in result.multiply_path({b: Fraction(1)}, path[:-1]).items():
                                row[(k, path[-1])] += c * v
                        relation_rows[(basis[b].source, self.arrows[first[-1]].target)].append(row)

            current = []
            for key, candidates in groups.items():
                column = {candidate: j for j, candidate in enumerate(candidates)}
                rows = []
                for row in relation_rows.get(key, []):
                    dense = [Fraction(0)] * len(candidates)
                    for candidate, c in row.items():
                        dense[column[candidate]] += c
                    rows.append(dense)
                reduced, pivots = rref(rows, len(candidates)) if rows else ([], ())
                standard = {}
                for j, (b, arrow) in enumerate(candidates):
                    if j in pivots:
                        continue
                    standard[j] = len(basis)
                    result.paths.append(result.paths[b] + (arrow,))
                    label = tuple(self.arrows[i].name for i in result.paths[-1])
                    basis.append(BasisElement(key[0], key[1], degree, label))
                    result.right[(b, arrow)] = {standard[j]: Fraction(1)}
                    current.append(standard[j])
                for row, pivot in zip(reduced, pivots):
                    value = {standard[j]: -row[j] for j in standard if row[j]}
                    if value:
                        result.right[candidates[pivot]] = value
            result.by_degree.append(current)
            if not current:
                result.finite = True
                break
        return result

    def to_algebra(self, max_degree: int, name: str = "A") -> GradedAlgebra:
        """Quotient by the two-sided ideal of the relations, built up to `max_degree`"""
        quotient = self.quotient(max_degree)
        products: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        by_source: Dict[Hashable, List[int]] = defaultdict(list)
        for i, b in enumerate(quotient.basis):
            by_source[b.source].append(i)
        for i, x in enumerate(quotient.basis):
            for j in by_source[x.target]:
                value = quotient.product(i, j)
                if value:
                    products[(i, j)] = value
        log_computation("quiver_quotient", algebra=name, dimension=len(quotient.basis), finite=quotient.finite)
        return GradedAlgebra(self.vertices, quotient.basis, products, max_degree, quotient.finite, name=name)


# ---------------------------------------------------------------------------
# Path model of A(X)
# ---------------------------------------------------------------------------


@dataclass
class QuotientPiece:
    """e_α R_d e_β modulo a subspace, kept as an rref over the R basis `span`"""

    span: List[int]
    reduced: List[List[Fraction]]
    pivots: Tuple[int, ...]

    @property
    def standard(self) -> List[int]:
        return [r for j, r in enumerate(self.span) if j not in self.pivots]

    def subspace(self) -> List[Dict[int, Fraction]]:
        return [{self.span[j]: c for j, c in enumerate(row) if c} for row in self.reduced]

    def reduce(self, value: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Normal form of `value`, in coordinates on the standard R indices"""
        vector = [value.get(r, Fraction(0)) for r in self.span]
        for row, pivot in zip(self.reduced, self.pivots):
            factor = vector[pivot]
            if factor:
                vector = [v - factor * e for v, e in zip(vector, row)]
        return {self.span[j]: c for j, c in enumerate(vector) if c and j not in self.pivots}


Generators = Callable[[Hashable, Hashable, int], List[Dict[int, Fraction]]]
Blocks = Dict[Tuple[Hashable, Hashable, int], List[int]]


def through_vertices(quotient: PathQuotient, blocks: Blocks, vertices: Iterable[Hashable]) -> Generators:
    """Products x·y in R with x ending and y starting at one of `vertices`"""
    vertices = tuple(vertices)

    def generators(alpha: Hashable, beta: Hashable, degree: int) -> List[Dict[int, Fraction]]:
        values = []
        for gamma in vertices:
            for first in range(degree + 1):
                for x in blocks.get((alpha, gamma, first), []):
                    for y in blocks.get((gamma, beta, degree - first), []):
                        value = quotient.product(x, y)
                        if value:
                            values.append(value)
        return values

    return generators


def quotient_pieces(
    blocks: Blocks,
    pairs: Iterable[Tuple[Hashable, Hashable]],
    generators: Generators,
    max_degree: int,
) -> Dict[Tuple[Hashable, Hashable, int], QuotientPiece]:
    """e_α R_d e_β modulo the span of generators(α, β, d), for each nonzero piece"""
    pairs = list(pairs)
    pieces: Dict[Tuple[Hashable, Hashable, int], QuotientPiece] = {}
    for degree in range(max_degree + 1):
        for alpha, beta in pairs:
            span = blocks.get((alpha, beta, degree), [])
            if not span:
                continue
            rows = [[value.get(r, Fraction(0)) for r in span] for value in generators(alpha, beta, degree)]
            reduced, pivots = rref(rows, len(span)) if rows else ([], ())
            pieces[(alpha, beta, degree)] = QuotientPiece(span, reduced, tuple(pivots))
    return pieces


def cube_quiver(n: int, central_relations: Sequence[Sequence[int]]) -> QuiverWithRelations:
    """Q_n modulo square commutativity and ϑ(𝔨).

    One arrow α → α^i per sign vector and coordinate; θ_{α,i} is the loop α → α^i → α and
    ϑ(x) = Σ_i x_i θ_i is imposed at every vertex.
    """
    vertices = tuple(SignVector.full("".join(s)) for s in itertools.product("+-", repeat=n))
    arrows: List[Arrow] = []
    position: Dict[Tuple[SignVector, int], int] = {}
    for alpha in vertices:
        for i in range(n):
            position[(alpha, i)] = len(arrows)
            arrows.append(Arrow(f"{alpha}/{i}", alpha, alpha.flip(i)))
    relations: List[Relation] = []
    for alpha in vertices:
        for i, j in itertools.combinations(range(n), 2):
            relations.append(
                {
                    (position[(alpha, i)], position[(alpha.flip(i), j)]): Fraction(1),
                    (position[(alpha, j)], position[(alpha.flip(j), i)]): Fraction(-1),
                }
            )
        for x in central_relations:
            relations.append(
                {(position[(alpha, i)], position[(alpha.flip(i), i)]): Fraction(c) for i, c in enumerate(x) if c}
            )
    return QuiverWithRelations(vertices, arrows, relations)


def path_model_algebra(
    lattice: Lattice,
    feasible: Optional[Iterable[SignVector]] = None,
    bounded: Optional[Iterable[SignVector]] = None,
    max_degree: Optional[int] = None,
    name: str = "A_path",
) -> GradedAlgebra:
    """e_F Q_n e_F / ⟨ϑ(𝔨), e_γ : γ ∈ F ∖ B⟩ computed from paths in the cube quiver.

    Paths are normalized by the square and ϑ relations, then in each degree e_α R_d e_β is
    cut down by the span of x·y with x ending and y starting at a killed vertex γ. Nothing
    about the shape of e_α A e_β is assumed, so this checks build_algebra. Every degree up to
    `max_degree` is computed; the result is finite when the two pieces above its top vanish.

    Raises:
        DegreeBudgetExceeded: `bounded` is given and the algebra has not vanished by `max_degree`
    """
    if max_degree is None:
        from hypertoric import get_settings

        max_degree = get_settings().MAX_DEGREE
    presentation = quiver_presentation(lattice, feasible, bounded)
    retained, killed = presentation.vertices, presentation.killed
    quotient = cube_quiver(lattice.n, presentation.central_relations).quotient(max_degree)
    blocks = quotient.blocks()
    pairs = list(itertools.product(retained, repeat=2))
    pieces = quotient_pieces(blocks, pairs, through_vertices(quotient, blocks, killed), max_degree)

    basis: List[BasisElement] = []
    model_index: Dict[int, int] = {}
    origin: List[int] = []
    for (alpha, beta, degree), piece in sorted(pieces.items(), key=lambda item: item[0][2]):
        for r in piece.standard:
            model_index[r] = len(basis)
            origin.append(r)
            basis.append(BasisElement(alpha, beta, degree, quotient.basis[r].label))
    top = max((b.degree for b in basis), default=-1)
    finite = bounded is not None and top <= max_degree - 2
    if bounded is not None and not finite:
        raise DegreeBudgetExceeded(
            "Path model did not vanish within the degree budget", details={"max_degree": max_degree}
        )

    def reduce_to_model(value: Dict[int, Fraction], key: Tuple[Hashable, Hashable, int]) -> Dict[int, Fraction]:
        return {model_index[r]: c for r, c in pieces[key].reduce(value).items()}

    products: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    by_source: Dict[Hashable, List[int]] = defaultdict(list)
    for i, b in enumerate(basis):
        by_source[b.source].append(i)
    for i, x in enumerate(basis):
        for j in by_source[x.target]:
            key = (x.source, basis[j].target, x.degree + basis[j].degree)
            if key not in pieces:
                continue
            value = reduce_to_model(quotient.product(origin[i], origin[j]), key)
            if value:
                products[(i, j)] = value

    log_computation("path_model_algebra", subject=str(lattice.basis), algebra=name, dimension=len(basis), finite=finite)
    return GradedAlgebra(retained, basis, products, max_degree, finite, name=name)


# ---------------------------------------------------------------------------
# Quadratic structure of a graded algebra
# ---------------------------------------------------------------------------


def _check_generated_in_degree_one(algebra: GradedAlgebra):
    degree_zero = algebra.degree_indices(0)
    if len(degree_zero) != len(algebra.vertices) or any(
        algebra.basis[i].source != algebra.basis[i].target for i in degree_zero
    ):
        raise NotQuadratic("Degree-zero part is not spanned by the vertex idempotents")
    arrows = algebra.degree_indices(1)
    top = algebra.top_degree
    for degree in range(2, top + 1):
        target = algebra.degree_indices(degree)
        if not target:
            continue
        position = {k: p for p, k in enumerate(target)}
        rows = []
        for a in arrows:
            for b in algebra.degree_indices(degree - 1):
                value = algebra.product(a, b)
                if value:
                    row = [Fraction(0)] * len(target)
                    for k, c in value.items():
                        row[position[k]] = c
                    rows.append(row)
        if matrix_rank(rows, len(target)) < len(target):
            raise NotQuadratic("Algebra is not generated in degree one", details={"degree": degree})


def arrow_sign(algebra: GradedAlgebra, arrow: int) -> int:
    """(-1)^{#{j < i : source_j = -}} for an arrow flipping coordinate i; 1 off the cube quiver"""
    element = algebra.basis[arrow]
    if not isinstance(element.source, SignVector) or not isinstance(element.target, SignVector):
        return 1
    flipped = element.source.differences(element.target)
    if len(flipped) != 1:
        return 1
    position = element.source.indices.index(flipped[0])
    return -1 if element.source.signs[:position].count("-") % 2 else 1


def _two_paths(algebra: GradedAlgebra) -> Dict[Tuple[Hashable, Hashable], List[Tuple[int, int]]]:
    components: Dict[Tuple[Hashable, Hashable], List[Tuple[int, int]]] = defaultdict(list)
    for a in algebra.degree_indices(1):
        for b in algebra.starting_at(algebra.basis[a].target):
            if algebra.basis[b].degree == 1:
                components[(algebra.basis[a].source, algebra.basis[b].target)].append((a, b))
    return components


def quadratic_relations(algebra: GradedAlgebra) -> Dict[Tuple[Hashable, Hashable], List[List[Fraction]]]:
    """R = ker(A_1 ⊗_{A_0} A_1 → A_2), per vertex pair, in coordinates of the composable arrow pairs"""
    relations = {}
    degree_two = algebra.degree_indices(2)
    position = {k: p for p, k in enumerate(degree_two)}
    for key, pairs in _two_paths(algebra).items():
        columns = []
        for a, b in pairs:
            column = [Fraction(0)] * len(degree_two)
            for k, c in algebra.product(a, b).items():
                column[position[k]] = c
            columns.append(column)
        matrix = [[columns[j][i] for j in range(len(pairs))] for i in range(len(degree_two))]
        if not matrix:
            matrix = [[Fraction(0)] * len(pairs)]
        relations[key] = nullspace(matrix, len(pairs))
    return relations


def arrow_relation_scalar(
    algebra: GradedAlgebra, first: Tuple[int, int], second: Tuple[int, int]
) -> Optional[Fraction]:
    """c with xy = c·zw for arrow pairs (x, y), (z, w), or None when the products are not proportional"""
    left, right = algebra.product(*first), algebra.product(*second)
    if not left:
        return Fraction(0)
    return proportional(left, right)


def _arrow_quiver(algebra: GradedAlgebra) -> Tuple[List[Arrow], Dict[int, int]]:
    arrows = []
    lookup = {}
    for position, a in enumerate(algebra.degree_indices(1)):
        element = algebra.basis[a]
        arrows.append(Arrow(f"x{position}", element.source, element.target))
        lookup[a] = position
    return arrows, lookup


def quadratic_closure(algebra: GradedAlgebra, max_degree: Optional[int] = None) -> GradedAlgebra:
    """T_{A_0}(A_1) / ⟨R⟩"""
    _check_generated_in_degree_one(algebra)
    arrows, lookup = _arrow_quiver(algebra)
    relations = []
    pairs_by_key = _two_paths(algebra)
    for key, vectors in quadratic_relations(algebra).items():
        pairs = pairs_by_key[key]
        for vector in vectors:
            relations.append({(lookup[a], lookup[b]): c for (a, b), c in zip(pairs, vector) if c})
    quiver = QuiverWithRelations(algebra.vertices, arrows, relations)
    return quiver.to_algebra(algebra.max_degree if max_degree is None else max_degree, name=f"{algebra.name}_quad")


def is_quadratic(algebra: GradedAlgebra) -> bool:
    try:
        closure = quadratic_closure(algebra)
    except NotQuadratic:
        return False
    return _padded(closure.graded_dims(), algebra.max_degree) == _padded(algebra.graded_dims(), algebra.max_degree)


def _padded(dims: Sequence[int], max_degree: int) -> List[int]:
    result = list(dims)[: max_degree + 1]
    return result + [0] * (max_degree + 1 - len(result))


def quadratic_dual(algebra: GradedAlgebra, max_degree: Optional[int] = None) -> GradedAlgebra:
    """A^!: same vertices and arrows, relations R^⊥ under the signed pairing of arrow pairs.

    This is the opposite of the quadratic dual, so arrow directions agree with A.

    Raises:
        NotQuadratic: A_0 is not the span of idempotents, A is not generated in degree one,
            or A differs from its quadratic closure
    """
    if not is_quadratic(algebra):
        raise NotQuadratic("Algebra is not quadratic", details={"algebra": algebra.name})
    arrows, lookup = _arrow_quiver(algebra)
    pairs_by_key = _two_paths(algebra)
    relations = quadratic_relations(algebra)
    dual_relations = []
    for key, pairs in pairs_by_key.items():
        signs = [arrow_sign(algebra, a) * arrow_sign(algebra, b) for a, b in pairs]
        rows = [[s * c for s, c in zip(signs, vector)] for vector in relations[key]]
        if rows:
            orthogonal = nullspace(rows, len(pairs))
        else:
            orthogonal = [[Fraction(int(i == j)) for j in range(len(pairs))] for i in range(len(pairs))]
        for vector in orthogonal:
            dual_relations.append({(lookup[a], lookup[b]): c for (a, b), c in zip(pairs, vector) if c})
    if max_degree is None:
        from hypertoric import get_settings

        max_degree = get_settings().MAX_DEGREE
    dual = QuiverWithRelations(algebra.vertices, arrows, dual_relations).to_algebra(max_degree, name=f"{algebra.name}!")
    log_computation("quadratic_dual", algebra=algebra.name, dual_dimension=dual.dimension, finite=dual.finite)
    return dual


# ---------------------------------------------------------------------------
# Koszul complex
# ---------------------------------------------------------------------------

Tensor = Dict[Tuple, Fraction]


def _tensor_endpoints(arrows: List[Arrow], tensor: Tensor) -> Tuple[Hashable, Hashable]:
    key = next(iter(tensor))
    if key and key[0] == "vertex":
        return key[1], key[1]
    return arrows[key[0]].source, arrows[key[-1]].target


def koszul_spaces(algebra: GradedAlgebra, up_to: int) -> Dict[int, List[Tensor]]:
    """K_i ⊆ A_1^{⊗i}: tensors killed by multiplication at every adjacent pair of positions.

    K_i = ker(K_{i-1} ⊗ A_1 → A_1^{⊗(i-2)} ⊗ A_2), so each K_i costs one kernel per vertex
    pair over |K_{i-1}| × |arrows| columns. Stops after the first K_i = 0.
    """
    arrows, lookup = _arrow_quiver(algebra)
    arrow_index = {position: a for a, position in lookup.items()}
    outgoing: Dict[Hashable, List[int]] = defaultdict(list)
    for position, arrow in enumerate(arrows):
        outgoing[arrow.source].append(position)
    spaces: Dict[int, List[Tensor]] = {0: [{("vertex", v): Fraction(1)} for v in algebra.vertices]}
    if up_to >= 1:
        spaces[1] = [{(i,): Fraction(1)} for i in range(len(arrows))]
    for length in range(2, up_to + 1):
        previous = spaces[length - 1]
        if not previous:
            break
        grouped: Dict[Tuple[Hashable, Hashable], List[Tuple[int, int]]] = defaultdict(list)
        for position, tensor in enumerate(previous):
            source, target = _tensor_endpoints(arrows, tensor)
            for arrow in outgoing[target]:
                grouped[(source, arrows[arrow].target)].append((position, arrow))
        spaces[length] = []
        for candidates in grouped.values():
            images: Dict[Tuple, Dict[int, Fraction]] = defaultdict(dict)
            for column, (position, arrow) in enumerate(candidates):
                for path, coefficient in previous[position].items():
                    for k, c in algebra.product(arrow_index[path[-1]], arrow_index[arrow]).items():
                        entry = images[(path[:-1], k)]
                        entry[column] = entry.get(column, Fraction(0)) + coefficient * c
            rows = [[row.get(c, Fraction(0)) for c in range(len(candidates))] for row in images.values()]
            if rows:
                kernel = nullspace(rows, len(candidates))
            else:
                kernel = [[Fraction(int(i == j)) for j in range(len(candidates))] for i in range(len(candidates))]
            for vector in kernel:
                tensor: Tensor = defaultdict(Fraction)
                for (position, arrow), v in zip(candidates, vector):
                    if v:
                        for path, coefficient in previous[position].items():
                            tensor[path + (arrow,)] += v * coefficient
                spaces[length].append({p: c for p, c in tensor.items() if c})
    return spaces


def koszul_check(algebra: GradedAlgebra, up_to_degree: Optional[int] = None) -> KoszulReport:
    """Exactness of ... → A ⊗ K_2 → A ⊗ K_1 → A → A_0 → 0 in each internal degree.

    d(a ⊗ x_1 ⊗ ... ⊗ x_i) = a·x_1 ⊗ x_2 ⊗ ... ⊗ x_i; homology is computed from ranks in
    the ambient spaces A ⊗ A_1^{⊗(i-1)}, one block per (source of a, target of the tensor).
    When A is finite and K_{m+1} = 0, the complex vanishes above internal degree top(A) + m
    and the check stops there.

    Raises:
        NotQuadratic: A_0 is not spanned by idempotents or A is not generated in degree one
    """
    _check_generated_in_degree_one(algebra)
    cap = algebra.max_degree if up_to_degree is None else min(up_to_degree, algebra.max_degree)
    arrows, lookup = _arrow_quiver(algebra)
    arrow_index = {position: a for a, position in lookup.items()}
    spaces = koszul_spaces(algebra, cap + 1)
    last = max((i for i, tensors in spaces.items() if tensors), default=0)
    terminated = last < max(spaces)
    bound = min(cap, algebra.top_degree + last) if algebra.finite and terminated else cap
    endpoints = {i: [_tensor_endpoints(arrows, tensor) for tensor in tensors] for i, tensors in spaces.items()}
    by_degree = {d: algebra.degree_indices(d) for d in range(bound + 1)}

    def chain_blocks(i: int, d: int) -> Dict[Tuple[Hashable, Hashable], List[Tuple[int, Tensor]]]:
        blocks: Dict[Tuple[Hashable, Hashable], List[Tuple[int, Tensor]]] = defaultdict(list)
        if d - i < 0 or i not in spaces:
            return blocks
        for a in by_degree[d - i]:
            element = algebra.basis[a]
            for tensor, (source, target) in zip(spaces[i], endpoints[i]):
                if element.target == source:
                    blocks[(element.source, target)].append((a, tensor))
        return blocks

    def differential_rank(i: int, d: int, blocks: Dict) -> int:
        if i == 0:
            return len(algebra.vertices) if d == 0 else 0
        total = 0
        for chains in blocks.values():
            images: Dict[Tuple, Dict[int, Fraction]] = defaultdict(dict)
            for column, (a, tensor) in enumerate(chains):
                for path, coefficient in tensor.items():
                    for k, c in algebra.product(a, arrow_index[path[0]]).items():
                        entry = images[(k, path[1:])]
                        entry[column] = entry.get(column, Fraction(0)) + coefficient * c
            rows = [[row.get(c, Fraction(0)) for c in range(len(chains))] for row in images.values()]
            total += matrix_rank(rows, len(chains)) if rows else 0
        return total

    exact_degrees = []
    failed_at = None
    failed_internal = None
    for d in range(bound + 1):
        blocks = [chain_blocks(i, d) for i in range(d + 2)]
        sizes = [sum(len(chains) for chains in b.values()) for b in blocks]
        ranks = [differential_rank(i, d, blocks[i]) for i in range(d + 2)]
        exact = True
        for i in range(d + 1):
            if sizes[i] - ranks[i] - ranks[i + 1] != 0:
                exact = False
                if failed_at is None:
                    failed_at, failed_internal = i + 1, d
                break
        if exact:
            exact_degrees.append(d)
    report = KoszulReport(exact_degrees, bound, failed_at, failed_internal)
    log_verification_event("koszul_check", report.koszul, algebra=algebra.name, **report.to_dict())
    return report


def dims_match(first: GradedAlgebra, second: GradedAlgebra, up_to: Optional[int] = None) -> bool:
    """Equal Hilbert series on every vertex pair, vertices matched by equality"""
    if set(first.vertices) != set(second.vertices):
        return False
    bound = min(first.max_degree, second.max_degree) if up_to is None else up_to
    for s, t in itertools.product(first.vertices, repeat=2):
        if _padded(first.pair_dims(s, t), bound) != _padded(second.pair_dims(s, t), bound):
            return False
    return True
