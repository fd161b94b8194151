"""
Acceptance checks run by the `verify` command.

Each check returns a CheckResult; checks that need a regular integral instance are
skipped on other input rather than failing.
"""

import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

from hypertoric.models.entities import CheckResult, PolarizedArrangement, QuantizedPolarizedArrangement
from hypertoric.services.algebra import build_algebra, cartan_matrix
from hypertoric.services.arrangement import (
    bounded,
    bounded_feasible,
    chamber_count_check,
    equivalence_key,
    feasible,
    is_regular,
    linked_polarization,
    linked_quantization,
)
from hypertoric.services.bimodules import cartesian_check, shuffling_bimodule, transfer_matrix
from hypertoric.services.cells import CellStructure, Matroid, h_vector_identity
from hypertoric.services.gale import gale_dual, gale_dual_quantized, verify_duality
from hypertoric.services.highest_weight import (
    bbd_orthogonality,
    decomposition_matrix,
    grothendieck_pairing,
    reciprocity_cartan,
    unitriangular_order,
)
from hypertoric.services.instances import random_suite
from hypertoric.services.quadratic import dims_match, koszul_check, quadratic_dual
from hypertoric.services.symmetry import deligne_quiver, deligne_relations_check, discriminantal_walls
from hypertoric.utils.errors import HypertoricError
from hypertoric.utils.logging_config import get_logger, get_struct_logger, log_performance_metric

logger = get_logger("services.verification")

Arrangement = Union[PolarizedArrangement, QuantizedPolarizedArrangement]


@dataclass
class PreparedInstance:
    """An input arrangement with its linked partner and Gale duals when regular"""

    original: Arrangement
    polarized: Optional[PolarizedArrangement] = None
    quantized: Optional[QuantizedPolarizedArrangement] = None
    dual: Optional[PolarizedArrangement] = None
    quantized_dual: Optional[QuantizedPolarizedArrangement] = None

    @property
    def regular(self) -> bool:
        return self.polarized is not None and self.quantized is not None

    @property
    def has_dual(self) -> bool:
        return self.regular and self.original.lambda0.rank < self.original.n


def prepare(arrangement: Arrangement) -> PreparedInstance:
    prepared = PreparedInstance(arrangement)
    if not is_regular(arrangement):
        return prepared
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        if not arrangement.is_integral:
            return prepared
        prepared.quantized = arrangement
        prepared.polarized = linked_polarization(arrangement)
    else:
        prepared.polarized = arrangement
        prepared.quantized = linked_quantization(arrangement)
    if prepared.has_dual:
        prepared.dual = gale_dual(prepared.polarized)
        prepared.quantized_dual = gale_dual_quantized(prepared.quantized)
    return prepared


def _run(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    started = time.perf_counter()
    try:
        result = check()
    except HypertoricError as e:
        result = CheckResult(name, passed=False, details=e.to_dict())
    except AssertionError as e:
        result = CheckResult(name, passed=False, details={"error": "AssertionError", "message": str(e)})
    log_performance_metric(f"check_{name}", (time.perf_counter() - started) * 1000, passed=result.passed)
    return result


def _skip(name: str, reason: str) -> CheckResult:
    return CheckResult(name, passed=True, skipped=True, details={"reason": reason})


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_chamber_sets(prepared: PreparedInstance) -> CheckResult:
    arrangement = prepared.original
    f, b, p = feasible(arrangement), bounded(arrangement), bounded_feasible(arrangement)
    return CheckResult(
        "chamber_sets",
        passed=set(p) == set(f) & set(b),
        details={"feasible": len(f), "bounded": len(b), "bounded_feasible": [str(a) for a in p]},
    )


def check_chamber_count(prepared: PreparedInstance) -> CheckResult:
    arrangement = prepared.original
    if not isinstance(arrangement, QuantizedPolarizedArrangement):
        if prepared.quantized is None:
            return _skip("chamber_count", "needs a quantized arrangement")
        arrangement = prepared.quantized
    report = chamber_count_check(arrangement)
    return CheckResult("chamber_count", passed=True, details=report.to_dict())


def check_gale_duality(prepared: PreparedInstance) -> CheckResult:
    if not prepared.has_dual:
        return _skip("gale_duality", "needs a regular instance with k < n")
    report = verify_duality(prepared.polarized)
    involution = equivalence_key(gale_dual(prepared.dual)) == equivalence_key(prepared.polarized)
    return CheckResult(
        "gale_duality", passed=report.all_passed and involution, details={**report.to_dict(), "involution": involution}
    )


def check_algebra(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.quantized is None:
        return _skip("algebra", "needs a regular integral instance")
    algebra = _algebra_of(prepared.polarized, max_degree)
    passed = algebra.check_idempotents() and algebra.check_associativity()
    return CheckResult("algebra", passed=passed, details={"graded_dims": algebra.graded_dims()})


def check_decomposition(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.quantized is None:
        return _skip("decomposition_cartan", "needs a regular integral instance")
    vertices, matrix = decomposition_matrix(prepared.quantized)
    algebra = _algebra_of(prepared.polarized, max_degree)
    position = {v: i for i, v in enumerate(algebra.vertices)}
    cartan = cartan_matrix(algebra)
    reordered = [[cartan[position[a]][position[b]] for b in vertices] for a in vertices]
    unitriangular = unitriangular_order(vertices, matrix) is not None
    reciprocity = reciprocity_cartan(matrix) == reordered
    return CheckResult(
        "decomposition_cartan",
        passed=unitriangular and reciprocity,
        details={"unitriangular": unitriangular, "reciprocity": reciprocity, "decomposition": matrix},
    )


def check_koszul(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.quantized is None:
        return _skip("koszul", "needs a regular integral instance")
    report = koszul_check(_algebra_of(prepared.polarized, max_degree))
    return CheckResult("koszul", passed=report.koszul, details=report.to_dict())


def check_koszul_dual(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.dual is None:
        return _skip("koszul_dual_dims", "needs a Gale dual")
    algebra = _algebra_of(prepared.polarized, max_degree)
    dual_algebra = _algebra_of(prepared.dual, max_degree)
    koszul_dual = quadratic_dual(algebra, max_degree=dual_algebra.max_degree)
    return CheckResult("koszul_dual_dims", passed=dims_match(koszul_dual, dual_algebra))


def _reversed(order):
    return frozenset((upper, lower) for lower, upper in order)


def check_cells(prepared: PreparedInstance) -> CheckResult:
    if prepared.quantized_dual is None:
        return _skip("cells_duality", "needs a Gale dual")
    cells = CellStructure(prepared.quantized).cell_partitions()
    dual_cells = CellStructure(prepared.quantized_dual).cell_partitions()
    left_right = set(cells["left"].block_sets()) == set(dual_cells["right"].block_sets()) and cells[
        "left"
    ].order_as_sets() == _reversed(dual_cells["right"].order_as_sets())
    two_sided = set(cells["two_sided"].block_sets()) == set(dual_cells["two_sided"].block_sets()) and cells[
        "two_sided"
    ].order_as_sets() == _reversed(dual_cells["two_sided"].order_as_sets())
    return CheckResult(
        "cells_duality", passed=left_right and two_sided, details={"left_right": left_right, "two_sided": two_sided}
    )


def check_bbd(prepared: PreparedInstance) -> CheckResult:
    if prepared.quantized_dual is None:
        return _skip("bbd_filtration", "needs a Gale dual")
    values = {flat.indices: v for flat, v in CellStructure(prepared.quantized).bbd_dimensions().items()}
    dual_values = {flat.indices: v for flat, v in CellStructure(prepared.quantized_dual).bbd_dimensions().items()}
    ground = set(range(prepared.quantized.n))
    total = sum(values.values()) == len(bounded_feasible(prepared.quantized))
    complementary = all(dual_values.get(tuple(sorted(ground - set(f)))) == v for f, v in values.items())
    orthogonal = bbd_orthogonality(prepared.quantized, prepared.quantized_dual)
    return CheckResult(
        "bbd_filtration",
        passed=total and complementary and orthogonal,
        details={"total": total, "complementary": complementary, "orthogonal": orthogonal},
    )


def check_pairing(prepared: PreparedInstance) -> CheckResult:
    if prepared.quantized_dual is None:
        return _skip("grothendieck_pairing", "needs a Gale dual")
    pairing = grothendieck_pairing(prepared.quantized, prepared.quantized_dual)
    return CheckResult("grothendieck_pairing", passed=pairing["three_basis_identity"])


def check_h_vectors(prepared: PreparedInstance) -> CheckResult:
    matroid = Matroid.from_lattice(prepared.original.lambda0)
    return CheckResult("h_vector_identity", passed=h_vector_identity(matroid))


def check_cartesian(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.polarized is None:
        return _skip("cartesian", "needs a regular instance")
    x = prepared.polarized
    return CheckResult("cartesian", passed=cartesian_check(x.lambda0, x.eta, x.xi, max_degree))


def check_shuffling(prepared: PreparedInstance, max_degree: Optional[int]) -> CheckResult:
    if prepared.polarized is None:
        return _skip("shuffling_identity", "needs a regular instance")
    x = prepared.polarized
    bimodule = shuffling_bimodule(x.lambda0, x.eta, x.eta, x.xi, max_degree)
    passed = bimodule.check_actions() and transfer_matrix(bimodule) == cartan_matrix(bimodule.right)
    return CheckResult("shuffling_identity", passed=passed, details={"dimension": bimodule.dimension})


def check_deligne(prepared: PreparedInstance, walls_limit: int = 4) -> CheckResult:
    lattice = prepared.original.lambda0
    walls = discriminantal_walls(lattice)
    if len(walls) > walls_limit:
        return _skip("deligne_relations", f"more than {walls_limit} walls")
    quiver = deligne_quiver(lattice)
    return CheckResult(
        "deligne_relations",
        passed=deligne_relations_check(lattice, quiver),
        details={"vertices": quiver.number_of_nodes(), "edges": quiver.number_of_edges()},
    )


def _algebra_of(arrangement: PolarizedArrangement, max_degree: Optional[int]):
    return build_algebra(arrangement.lambda0, feasible(arrangement), bounded(arrangement), max_degree=max_degree)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def run_instance_suite(arrangement: Arrangement, max_degree: Optional[int] = None) -> List[CheckResult]:
    prepared = prepare(arrangement)
    checks: Dict[str, Callable[[], CheckResult]] = {
        "chamber_sets": lambda: check_chamber_sets(prepared),
        "chamber_count": lambda: check_chamber_count(prepared),
        "gale_duality": lambda: check_gale_duality(prepared),
        "algebra": lambda: check_algebra(prepared, max_degree),
        "decomposition_cartan": lambda: check_decomposition(prepared, max_degree),
        "koszul": lambda: check_koszul(prepared, max_degree),
        "koszul_dual_dims": lambda: check_koszul_dual(prepared, max_degree),
        "cells_duality": lambda: check_cells(prepared),
        "bbd_filtration": lambda: check_bbd(prepared),
        "grothendieck_pairing": lambda: check_pairing(prepared),
        "h_vector_identity": lambda: check_h_vectors(prepared),
        "cartesian": lambda: check_cartesian(prepared, max_degree),
        "shuffling_identity": lambda: check_shuffling(prepared, max_degree),
        "deligne_relations": lambda: check_deligne(prepared),
    }
    results = [_run(name, check) for name, check in checks.items()]
    failed = [r.name for r in results if not r.passed]
    get_struct_logger("services.verification").info(
        "instance_suite_finished",
        checks=len(results),
        skipped=sum(1 for r in results if r.skipped),
        failed=failed,
    )
    if failed:
        logger.warning("Acceptance checks failed", extra={"event": "verify_failed", "checks": failed})
    return results


def run_gale_suite(seed: int, size: int, n_max: int = 6) -> CheckResult:
    """Gale duality and the h-vector identity on a seeded random suite"""
    failures = []
    for position, arrangement in enumerate(random_suite(seed, size, n_max)):
        report = verify_duality(arrangement)
        if not report.all_passed or not h_vector_identity(Matroid.from_lattice(arrangement.lambda0)):
            failures.append({"position": position, **arrangement.to_dict(), **report.to_dict()})
    return CheckResult(
        "random_gale_suite", passed=not failures, details={"seed": seed, "size": size, "failures": failures}
    )


def verify(
    arrangement: Arrangement,
    seed: Optional[int] = None,
    size: Optional[int] = None,
    max_degree: Optional[int] = None,
) -> List[CheckResult]:
    results = run_instance_suite(arrangement, max_degree)
    if seed is not None:
        from hypertoric import get_settings

        settings = get_settings()
        suite_size = settings.SUITE_SIZE if size is None else size
        results.append(_run("random_gale_suite", lambda: run_gale_suite(seed, suite_size, settings.SUITE_MAX_N)))
    return results
