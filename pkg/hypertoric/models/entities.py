"""
Data models and entities for the hypertoric toolkit.

This module defines the data structures shared by the services: lattices,
inequality systems, sign vectors, arrangements and the report records
returned by the checks.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from hypertoric.utils.errors import DimensionMismatch, InvalidLattice

Vector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]

SENSES = (">=", "<=", ">", "<")
SIGNS = ("+", "-")


def format_fraction(value: Fraction) -> str:
    """Render a rational as 'p/q' (or 'p' when integral)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Lattice:
    """Direct summand of Z^n given by the rows of an integer basis matrix"""

    n: int
    basis: IntMatrix

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        if self.n <= 0:
            raise InvalidLattice("Ambient rank must be positive", details={"n": self.n})
        for row in basis:
            if len(row) != self.n:
                raise InvalidLattice(
                    "Basis row length differs from ambient rank", details={"n": self.n, "row_length": len(row)}
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: Optional[int] = None) -> "Lattice":
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise InvalidLattice("Cannot infer ambient rank from an empty basis")
            n = len(rows[0])
        return cls(n=n, basis=tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def columns(self) -> Tuple[IntVector, ...]:
        """Column i is the restriction of the coordinate h_i to Λ₀ in basis coordinates"""
        return tuple(tuple(row[i] for row in self.basis) for i in range(self.n))

    def point(self, coefficients: Sequence[Any]) -> Tuple[Any, ...]:
        """Ambient vector Σ c_j b_j"""
        return tuple(sum((c * row[i] for c, row in zip(coefficients, self.basis)), 0) for i in range(self.n))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "basis": [list(row) for row in self.basis]}


@dataclass(frozen=True)
class Inequality:
    """Affine inequality coeffs·x + constant (sense) 0"""

    coeffs: Vector
    constant: Fraction = Fraction(0)
    sense: str = ">="

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", Fraction(self.constant))
        if self.sense not in SENSES:
            raise ValueError(f"Unknown inequality sense '{self.sense}'")

    @property
    def strict(self) -> bool:
        return self.sense in (">", "<")

    def evaluate(self, point: Sequence[Any]) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.coeffs, point)), Fraction(0)) + self.constant

    def holds(self, point: Sequence[Any]) -> bool:
        value = self.evaluate(point)
        return {">=": value >= 0, "<=": value <= 0, ">": value > 0, "<": value < 0}[self.sense]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coeffs": [format_fraction(c) for c in self.coeffs],
            "constant": format_fraction(self.constant),
            "sense": self.sense,
        }


@dataclass(frozen=True)
class RationalPolyhedron:
    """Finite system of affine inequalities over Q^dimension"""

    dimension: int
    inequalities: Tuple[Inequality, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        for inequality in self.inequalities:
            if len(inequality.coeffs) != self.dimension:
                raise DimensionMismatch(
                    "Inequality length differs from ambient dimension",
                    details={"dimension": self.dimension, "length": len(inequality.coeffs)},
                )

    @property
    def is_homogeneous(self) -> bool:
        return all(inequality.constant == 0 for inequality in self.inequalities)

    def contains(self, point: Sequence[Any]) -> bool:
        if len(point) != self.dimension:
            raise DimensionMismatch("Point length differs from ambient dimension")
        return all(inequality.holds(point) for inequality in self.inequalities)

    def with_inequalities(self, extra: Iterable[Inequality]) -> "RationalPolyhedron":
        return RationalPolyhedron(self.dimension, self.inequalities + tuple(extra))

    def to_dict(self) -> Dict[str, Any]:
        return {"dimension": self.dimension, "inequalities": [i.to_dict() for i in self.inequalities]}


@dataclass(frozen=True)
class AffineLattice:
    """Affine lattice basepoint + Z-span of integer generators in Q^n"""

    basepoint: Vector
    generators: IntMatrix = ()

    def __post_init__(self):
        object.__setattr__(self, "basepoint", tuple(Fraction(x) for x in self.basepoint))
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in row) for row in self.generators))
        for row in self.generators:
            if len(row) != len(self.basepoint):
                raise DimensionMismatch("Generator length differs from basepoint length")

    @property
    def dimension(self) -> int:
        return len(self.basepoint)

    def point(self, coefficients: Sequence[int]) -> Vector:
        return tuple(
            self.basepoint[i] + sum((c * row[i] for c, row in zip(coefficients, self.generators)), 0)
            for i in range(self.dimension)
        )


@dataclass(frozen=True, order=True)
class SignVector:
    """Assignment of + or - to each index of an ordered index set.

    Ordering is lexicographic with '+' before '-', which is the canonical output order.
    """

    indices: IntVector
    signs: str

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if len(self.indices) != len(self.signs) or any(s not in SIGNS for s in self.signs):
            raise ValueError(f"Malformed sign vector {self.signs!r} on {self.indices}")

    @classmethod
    def full(cls, signs: str) -> "SignVector":
        """Sign vector on {0, ..., n-1}"""
        return cls(tuple(range(len(signs))), signs)

    def get(self, index: int) -> str:
        return self.signs[self.indices.index(index)]

    def as_dict(self) -> Dict[int, str]:
        return dict(zip(self.indices, self.signs))

    def restrict(self, indices: Iterable[int]) -> "SignVector":
        wanted = sorted(set(indices))
        lookup = self.as_dict()
        return SignVector(tuple(wanted), "".join(lookup[i] for i in wanted))

    def flip(self, index: int) -> "SignVector":
        position = self.indices.index(index)
        flipped = "-" if self.signs[position] == "+" else "+"
        return SignVector(self.indices, self.signs[:position] + flipped + self.signs[position + 1 :])

    def differences(self, other: "SignVector") -> List[int]:
        return [i for i, a, b in zip(self.indices, self.signs, other.signs) if a != b]

    @property
    def minus_count(self) -> int:
        return self.signs.count("-")

    def __str__(self) -> str:
        return self.signs if self.signs else "()"

    def to_dict(self) -> Dict[str, Any]:
        return {"indices": list(self.indices), "signs": self.signs}


@dataclass(frozen=True)
class PolarizedArrangement:
    """Polarized arrangement (Λ₀, η, ξ) with an integer lift of η and ξ in basis-dual coordinates"""

    lambda0: Lattice
    eta: IntVector
    xi: IntVector

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(int(x) for x in self.eta))
        object.__setattr__(self, "xi", tuple(int(x) for x in self.xi))
        if len(self.eta) != self.lambda0.n:
            raise DimensionMismatch("eta must have the ambient rank", details={"n": self.lambda0.n})
        if len(self.xi) != self.lambda0.rank:
            raise DimensionMismatch("xi must have the lattice rank", details={"k": self.lambda0.rank})

    @classmethod
    def from_ambient_xi(cls, lambda0: Lattice, eta: Sequence[int], xi_ambient: Sequence[int]):
        """Restrict an ambient covector to Λ₀"""
        if len(xi_ambient) != lambda0.n:
            raise DimensionMismatch("Ambient xi must have the ambient rank")
        xi = tuple(sum(a * b for a, b in zip(xi_ambient, row)) for row in lambda0.basis)
        return cls(lambda0, tuple(eta), xi)

    @property
    def n(self) -> int:
        return self.lambda0.n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lambda0_basis": [list(r) for r in self.lambda0.basis],
            "eta": list(self.eta),
            "xi": list(self.xi),
        }


@dataclass(frozen=True)
class QuantizedPolarizedArrangement:
    """Quantized polarized arrangement (Λ₀, 𝚲 = v₀ + Λ₀, ξ); coordinate v₀_i is the value of h_i⁺"""

    lambda0: Lattice
    basepoint: Vector
    xi: IntVector

    def __post_init__(self):
        object.__setattr__(self, "basepoint", tuple(Fraction(x) for x in self.basepoint))
        object.__setattr__(self, "xi", tuple(int(x) for x in self.xi))
        if len(self.basepoint) != self.lambda0.n:
            raise DimensionMismatch("basepoint must have the ambient rank", details={"n": self.lambda0.n})
        if len(self.xi) != self.lambda0.rank:
            raise DimensionMismatch("xi must have the lattice rank", details={"k": self.lambda0.rank})

    @property
    def n(self) -> int:
        return self.lambda0.n

    @property
    def integral_indices(self) -> IntVector:
        """I_Λ: coordinates where the basepoint is integral"""
        return tuple(i for i, v in enumerate(self.basepoint) if v.denominator == 1)

    @property
    def is_integral(self) -> bool:
        return len(self.integral_indices) == self.n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lambda0_basis": [list(r) for r in self.lambda0.basis],
            "basepoint": [format_fraction(v) for v in self.basepoint],
            "xi": list(self.xi),
        }


@dataclass
class RegularityReport:
    """Regularity flags of a polarized or quantized arrangement (None when not applicable)"""

    eta_regular: Optional[bool] = None
    lambda_regular: Optional[bool] = None
    xi_regular: Optional[bool] = None
    quasi_regular: Optional[bool] = None
    integral: Optional[bool] = None
    unimodular: Optional[bool] = None
    essential: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class ChamberCountReport:
    count: int
    bound: int
    equal: bool
    lambda_regular: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class LinkageReport:
    linked: bool
    translation_factor: Optional[int] = None
    translation_verified: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class DualityReport:
    F_eta_eq_B_xidual: bool
    F_etadual_eq_B_xi: bool
    P_eq: bool
    regular_transfer: bool

    @property
    def all_passed(self) -> bool:
        return self.F_eta_eq_B_xidual and self.F_etadual_eq_B_xi and self.P_eq and self.regular_transfer

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class ConeData:
    I_alpha: FrozenSet[int]
    dim_F_alpha: int

    def to_dict(self) -> Dict[str, Any]:
        return {"I_alpha": sorted(self.I_alpha), "dim_F_alpha": self.dim_F_alpha}


@dataclass(frozen=True, order=True)
class Flat:
    """Flat of the central arrangement, recorded by its closed index set"""

    indices: IntVector
    rank: int

    def __str__(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"

    def to_dict(self) -> Dict[str, Any]:
        return {"indices": list(self.indices), "rank": self.rank}


@dataclass(frozen=True)
class Circuit:
    indices: IntVector
    dependency: IntVector

    def to_dict(self) -> Dict[str, Any]:
        return {"indices": list(self.indices), "dependency": list(self.dependency)}


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """g·e_i = signs[i] · e_{perm[i]}"""

    perm: IntVector
    signs: IntVector

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self ∘ other"""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.n))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        perm = [0] * self.n
        signs = [1] * self.n
        for i, (target, sign) in enumerate(zip(self.perm, self.signs)):
            perm[target] = i
            signs[target] = sign
        return SignedPermutation(tuple(perm), tuple(signs))

    def apply(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        result: List[Any] = [0] * self.n
        for i, value in enumerate(vector):
            result[self.perm[i]] = self.signs[i] * value
        return tuple(result)

    def to_dict(self) -> Dict[str, Any]:
        return {"perm": list(self.perm), "signs": list(self.signs)}


@dataclass
class CellPartition:
    """Blocks of sign vectors with the strict order between blocks as (lower, upper) index pairs"""

    blocks: List[Tuple[SignVector, ...]]
    order: List[Tuple[int, int]] = field(default_factory=list)

    def block_of(self, alpha: SignVector) -> int:
        for index, block in enumerate(self.blocks):
            if alpha in block:
                return index
        raise KeyError(str(alpha))

    def block_sets(self) -> List[FrozenSet[SignVector]]:
        return [frozenset(block) for block in self.blocks]

    def order_as_sets(self) -> FrozenSet[Tuple[FrozenSet[SignVector], FrozenSet[SignVector]]]:
        sets = self.block_sets()
        return frozenset((sets[i], sets[j]) for i, j in self.order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "blocks": [[str(a) for a in block] for block in self.blocks],
            "order": [list(pair) for pair in self.order],
        }


@dataclass
class Report:
    """Result of one CLI command"""

    command: str
    input: Dict[str, Any]
    results: Dict[str, Any]
    version: str
    deterministic: bool = True
    passed: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "input": self.input,
            "results": self.results,
            "version": self.version,
            "deterministic": self.deterministic,
            "passed": self.passed,
        }


@dataclass
class KoszulReport:
    """Exactness of the Koszul complex by internal degree; failed_at is the homological degree of the first failure"""

    exact_degrees: List[int]
    checked_up_to: int
    failed_at: Optional[int] = None
    failed_internal_degree: Optional[int] = None

    @property
    def koszul(self) -> bool:
        return self.failed_at is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exact_degrees": list(self.exact_degrees),
            "checked_up_to": self.checked_up_to,
            "failed_at": self.failed_at,
            "failed_internal_degree": self.failed_internal_degree,
            "koszul": self.koszul,
        }


@dataclass
class CheckResult:
    """Outcome of one acceptance check; `skipped` when the check does not apply to the instance"""

    name: str
    passed: bool
    skipped: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "skipped": self.skipped, "details": self.details}
