"""
Instance library: the diagonal family, the determinant-one family and seeded random
regular instances for the randomized suites.
"""

import random
from fractions import Fraction
from typing import List, Optional

from hypertoric.models.entities import Lattice, PolarizedArrangement, QuantizedPolarizedArrangement
from hypertoric.services.arrangement import is_regular
from hypertoric.services.exact import matrix_rank, validate_lattice
from hypertoric.utils.errors import HypertoricError, InvalidLattice
from hypertoric.utils.logging_config import get_logger

logger = get_logger("services.instances")


def diagonal_lattice(n: int) -> Lattice:
    """Λ₀ = {Σ h_i = 0} with basis e_i − e_{i+1}"""
    if n < 2:
        raise InvalidLattice("The diagonal family needs n >= 2", details={"n": n})
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        rows.append(row)
    return Lattice.from_rows(rows, n)


def diagonal_instance(n: int, eta_sum: int = 1) -> PolarizedArrangement:
    """Polarized diagonal arrangement with η = (eta_sum, 0, ..., 0) and ξ = (1, ..., 1) on the basis"""
    lattice = diagonal_lattice(n)
    return PolarizedArrangement(lattice, (eta_sum,) + (0,) * (n - 1), (1,) * lattice.rank)


def diagonal_quantized(n: int, c: int = 1) -> QuantizedPolarizedArrangement:
    """Λ_c: basepoint (c, 0, ..., 0) on the diagonal lattice, same ξ"""
    lattice = diagonal_lattice(n)
    return QuantizedPolarizedArrangement(
        lattice, (Fraction(c),) + (Fraction(0),) * (n - 1), (1,) * lattice.rank
    )


def determinant_one_quantized(n: int, xi: int = 1) -> QuantizedPolarizedArrangement:
    """Λ₀ = span(1, ..., 1) with every h_i⁺ equal on 𝚲: the non-regular arrangement with algebra C[θ]/θⁿ"""
    lattice = Lattice.from_rows([[1] * n], n)
    return QuantizedPolarizedArrangement(lattice, (Fraction(0),) * n, (xi,))


def random_lattice(rng: random.Random, n: int, k: int, entry_bound: int = 2, attempts: int = 200) -> Lattice:
    """Random rank-k direct summand of Z^n that passes validate_lattice"""
    for _ in range(attempts):
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(k)]
        if matrix_rank(rows, n) != k:
            continue
        try:
            return validate_lattice(Lattice.from_rows(rows, n))
        except HypertoricError:
            continue
    raise InvalidLattice("No random direct summand found", details={"n": n, "k": k})


def random_regular_instance(
    rng: random.Random, n_max: int = 6, n_min: int = 2, parameter_bound: int = 4, attempts: int = 200
) -> PolarizedArrangement:
    """Random regular polarized arrangement with 2 <= n <= n_max and 1 <= k < n"""
    for _ in range(attempts):
        n = rng.randint(n_min, n_max)
        k = rng.randint(1, n - 1)
        lattice = random_lattice(rng, n, k)
        eta = tuple(rng.randint(-parameter_bound, parameter_bound) for _ in range(n))
        xi = tuple(rng.randint(-parameter_bound, parameter_bound) for _ in range(k))
        arrangement = PolarizedArrangement(lattice, eta, xi)
        if is_regular(arrangement):
            return arrangement
    raise InvalidLattice("No regular random instance found", details={"n_max": n_max})


def random_suite(seed: int, size: int, n_max: int = 6) -> List[PolarizedArrangement]:
    rng = random.Random(seed)
    suite = [random_regular_instance(rng, n_max) for _ in range(size)]
    logger.info(
        "Generated random suite",
        extra={"event": "random_suite", "seed": seed, "size": size, "n_max": n_max},
    )
    return suite


def named_instances(n_values: Optional[List[int]] = None) -> dict:
    """Named instances used by the acceptance scripts"""
    result = {}
    for n in n_values or [2, 3]:
        result[f"diagonal_{n}"] = diagonal_instance(n)
        result[f"diagonal_quantized_{n}"] = diagonal_quantized(n)
        result[f"determinant_one_{n}"] = determinant_one_quantized(n)
    return result
