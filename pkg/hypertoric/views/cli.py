"""
Command-line front end.

    hypertoric <command> INSTANCE.json [--format json|table] [--max-degree D] [--seed S] [--budget B]

Every command returns a Report; JSON is the source format and `--format table`
renders the same data. Exit codes: 0 all assertions passed, 1 an assertion failed,
2 malformed input, 3 domain error.
"""

import argparse
import json
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Union

from hypertoric import __version__, create_app
from hypertoric.config.settings import config
from hypertoric.models.entities import PolarizedArrangement, QuantizedPolarizedArrangement, Report
from hypertoric.services.algebra import (
    GradedAlgebra,
    build_algebra,
    cartan_matrix,
    center_graded_dims,
    graded_dims,
    rank_one_freeness_check,
)
from hypertoric.services.arrangement import (
    bounded,
    bounded_feasible,
    chamber_count_check,
    chamber_graph_connected,
    equivalence_key,
    feasible,
    regularity_report,
)
from hypertoric.services.bimodules import (
    cartesian_check,
    is_invertible,
    shuffling_bimodule,
    transfer_matrix,
    translation_round_trip,
    twisting_bimodule,
)
from hypertoric.services.cells import (
    CellStructure,
    Matroid,
    broken_circuit_h_vector,
    h_vector,
    h_vector_identity,
)
from hypertoric.services.gale import gale_dual, gale_dual_quantized, verify_duality
from hypertoric.services.highest_weight import decomposition_matrix, unitriangular_order
from hypertoric.services.quadratic import dims_match, koszul_check, quadratic_dual
from hypertoric.services.symmetry import (
    circuits,
    deligne_quiver,
    deligne_quiver_to_dict,
    deligne_relations_check,
    discriminantal_walls,
    is_group,
    weyl_groups,
)
from hypertoric.services.verification import PreparedInstance, prepare, verify
from hypertoric.utils.errors import NotRegular, NotRegularIntegral
from hypertoric.utils.helpers import canonical_json, flatten_results, hilbert_series_matrix, render_table
from hypertoric.utils.logging_config import get_logger, log_performance_metric, run_context
from hypertoric.utils.validators import load_instance, validator
from hypertoric.views.errors import EXIT_ASSERTION_FAILED, EXIT_OK, handle_exception

logger = get_logger("views.cli")

Arrangement = Union[PolarizedArrangement, QuantizedPolarizedArrangement]
CommandResult = Dict[str, Any]

COMMANDS: Dict[str, Callable[..., CommandResult]] = {}


def command(name: str):
    """Register a command handler"""

    def decorator(handler):
        COMMANDS[name] = handler
        return handler

    return decorator


def _signs(signs) -> List[str]:
    return [str(alpha) for alpha in signs]


def _algebra(arrangement: Arrangement, max_degree: Optional[int]) -> GradedAlgebra:
    return build_algebra(arrangement.lambda0, feasible(arrangement), bounded(arrangement), max_degree=max_degree)


def _require_polarized(prepared: PreparedInstance) -> PolarizedArrangement:
    if prepared.polarized is None:
        raise NotRegular("Command needs a regular arrangement", details=prepared.original.to_dict())
    return prepared.polarized


def _require_quantized(prepared: PreparedInstance) -> QuantizedPolarizedArrangement:
    if prepared.quantized is None:
        raise NotRegularIntegral("Command needs a regular integral arrangement", details=prepared.original.to_dict())
    return prepared.quantized


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@command("analyze")
def analyze(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    f, b, p = feasible(arrangement), bounded(arrangement), bounded_feasible(arrangement)
    results: CommandResult = {
        "feasible": _signs(f),
        "bounded": _signs(b),
        "bounded_feasible": _signs(p),
        "counts": {"feasible": len(f), "bounded": len(b), "bounded_feasible": len(p)},
        "regularity": regularity_report(arrangement).to_dict(),
    }
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        results["chamber_count"] = chamber_count_check(arrangement).to_dict()
    else:
        results["chamber_graph_connected"] = chamber_graph_connected(arrangement)
    return results


@command("dual")
def dual(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    if isinstance(arrangement, QuantizedPolarizedArrangement):
        dual_arrangement = gale_dual_quantized(arrangement)
        return {"dual": dual_arrangement.to_dict()}
    dual_arrangement = gale_dual(arrangement)
    report = verify_duality(arrangement)
    involution = equivalence_key(gale_dual(dual_arrangement)) == equivalence_key(arrangement)
    return {
        "dual": dual_arrangement.to_dict(),
        "duality": report.to_dict(),
        "involution": involution,
        "passed": report.all_passed and involution,
    }


@command("cells")
def cells(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    quantized = _require_quantized(prepare(arrangement))
    structure = CellStructure(quantized)
    matroid = Matroid.from_lattice(quantized.lambda0)
    bbd = structure.bbd_dimensions()
    return {
        "partitions": {name: p.to_dict() for name, p in structure.cell_partitions().items()},
        "bbd_dimensions": [{"flat": list(flat.indices), "rank": flat.rank, "dimension": v} for flat, v in bbd.items()],
        "goldie_ranks": {str(alpha): structure.goldie_rank(alpha) for alpha in structure.bounded_feasible},
        "h_vector": h_vector(matroid),
        "dual_broken_circuit_h_vector": broken_circuit_h_vector(matroid.dual()),
        "h_vector_identity": h_vector_identity(matroid),
        "passed": sum(bbd.values()) == len(structure.bounded_feasible) and h_vector_identity(matroid),
    }


@command("algebra")
def algebra(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    built = _algebra(arrangement, options.max_degree)
    results: CommandResult = {
        "vertices": _signs(built.vertices),
        "dimension": built.dimension,
        "graded_dims": built.graded_dims(),
        "hilbert_series": hilbert_series_matrix(graded_dims(built)),
        "cartan": cartan_matrix(built),
        "center_graded_dims": center_graded_dims(built),
        "idempotents": built.check_idempotents(),
        "associative": built.check_associativity(),
    }
    passed = results["idempotents"] and results["associative"]
    prepared = prepare(arrangement)
    if prepared.quantized is not None:
        vertices, matrix = decomposition_matrix(prepared.quantized)
        results["decomposition"] = {
            "vertices": _signs(vertices),
            "matrix": matrix,
            "unitriangular": unitriangular_order(vertices, matrix) is not None,
        }
        passed = passed and results["decomposition"]["unitriangular"]
    if prepared.polarized is not None:
        polarized = prepared.polarized
        deformation = build_algebra(
            polarized.lambda0, feasible(polarized), None, max_degree=max(built.top_degree, 2), name="A(eta,-)"
        )
        results["deformation_free_rank_one"] = rank_one_freeness_check(deformation, arrangement.lambda0.rank)
        passed = passed and results["deformation_free_rank_one"]
    results["passed"] = passed
    return results


@command("koszul")
def koszul(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    built = _algebra(arrangement, options.max_degree)
    report = koszul_check(built)
    results: CommandResult = {"koszul": report.to_dict(), "passed": report.koszul}
    if not report.koszul:
        return results
    koszul_dual = quadratic_dual(built, max_degree=options.max_degree)
    results["quadratic_dual_graded_dims"] = koszul_dual.graded_dims()
    prepared = prepare(arrangement)
    if prepared.dual is not None:
        dual_algebra = _algebra(prepared.dual, options.max_degree)
        results["gale_dual_graded_dims"] = dual_algebra.graded_dims()
        results["dims_match"] = dims_match(koszul_dual, dual_algebra)
        results["passed"] = results["dims_match"]
    return results


@command("bimodules")
def bimodules(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    polarized = _require_polarized(prepare(arrangement))
    secondary = validator.validate_secondary(data, polarized.lambda0)
    lattice, eta, xi = polarized.lambda0, polarized.eta, polarized.xi
    eta_prime = secondary["eta_prime"] or list(eta)
    xi_prime = secondary["xi_prime"] or list(xi)

    shuffling = shuffling_bimodule(lattice, eta, eta_prime, xi, options.max_degree)
    twisting = twisting_bimodule(lattice, eta, xi, xi_prime, options.max_degree)
    shuffling_transfer = transfer_matrix(shuffling)
    cartesian = cartesian_check(lattice, eta, xi, options.max_degree)
    onto = translation_round_trip(lattice, eta, eta_prime, options.max_degree)
    contained = set(feasible(polarized)) <= set(feasible(PolarizedArrangement(lattice, tuple(eta_prime), xi)))
    results: CommandResult = {
        "shuffling": {
            "dimension": shuffling.dimension,
            "transfer_matrix": shuffling_transfer,
            "invertible": is_invertible(shuffling_transfer),
            "actions": shuffling.check_actions(),
        },
        "twisting": {
            "dimension": twisting.dimension,
            "transfer_matrix": transfer_matrix(twisting),
            "actions": twisting.check_actions(options.max_degree),
        },
        "cartesian": cartesian,
        "translation": {"round_trip_onto": onto, "chambers_contained": contained},
    }
    results["passed"] = (
        cartesian
        and onto == contained
        and results["shuffling"]["invertible"]
        and results["shuffling"]["actions"]
        and results["twisting"]["actions"]
    )
    return results


@command("symmetry")
def symmetry(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    lattice = arrangement.lambda0
    quiver = deligne_quiver(lattice)
    groups = weyl_groups(lattice, budget=options.budget)
    results: CommandResult = {
        "circuits": [c.to_dict() for c in circuits(lattice)],
        "walls": [list(w) for w in discriminantal_walls(lattice)],
        "deligne_quiver": deligne_quiver_to_dict(quiver),
        "deligne_relations": deligne_relations_check(lattice, quiver),
        "W": [g.to_dict() for g in groups["W"]],
        "V": [g.to_dict() for g in groups["V"]],
        "orders": {"W": len(groups["W"]), "V": len(groups["V"])},
    }
    results["passed"] = results["deligne_relations"] and is_group(groups["W"]) and is_group(groups["V"])
    return results


@command("verify")
def verify_command(arrangement: Arrangement, data: Dict[str, Any], options: argparse.Namespace) -> CommandResult:
    checks = verify(arrangement, seed=options.seed, size=options.suite_size, max_degree=options.max_degree)
    return {
        "checks": {check.name: check.to_dict() for check in checks},
        "failed": [check.name for check in checks if not check.passed],
        "passed": all(check.passed for check in checks),
    }


# ---------------------------------------------------------------------------
# Running and rendering
# ---------------------------------------------------------------------------


def run(command_name: str, path: str, options: argparse.Namespace) -> Report:
    """Load an instance file and run one command on it.

    Raises:
        ParseError, ValidationError: malformed instance file or flags
        HypertoricError: a domain error raised by a service
    """
    data = load_instance(path)
    arrangement = validator.validate_instance(data)
    options.max_degree = validator.validate_max_degree(options.max_degree)

    started = time.perf_counter()
    results = COMMANDS[command_name](arrangement, data, options)
    log_performance_metric(f"command_{command_name}", (time.perf_counter() - started) * 1000)

    passed = bool(results.pop("passed", True))
    return Report(
        command=command_name,
        input=data,
        results=results,
        version=__version__,
        deterministic=True,
        passed=passed,
    )


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return canonical_json(report)
    header = f"{report.command}  version={report.version}  passed={str(report.passed).lower()}"
    return header + "\n\n" + render_table(flatten_results(report.results), headers=["key", "value"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypertoric", description="Invariants of hypertoric category O")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, help=f"run {name} on an instance file")
        sub.add_argument("instance", help="Path to the instance JSON file")
        sub.add_argument("--format", choices=["json", "table"], default="json", help="Output format")
        sub.add_argument("--max-degree", dest="max_degree", default=None, help="Degree budget D")
        sub.add_argument("--seed", type=int, default=None, help="Seed for the randomized suite")
        sub.add_argument("--suite-size", dest="suite_size", type=int, default=None, help="Randomized suite size")
        sub.add_argument("--budget", type=int, default=None, help="Enumeration budget for signed permutations")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point: returns the process exit code"""
    options = build_parser().parse_args(argv)
    create_app(config[os.getenv("HYPO_ENV", "default")])

    with run_context(options.command) as correlation_id:
        logger.info(
            "Running command",
            extra={"event": "command_start", "instance": options.instance, "run_id": correlation_id},
        )
        try:
            report = run(options.command, options.instance, options)
        except Exception as e:
            payload, exit_code = handle_exception(e)
            logger.error(
                "Command failed",
                extra={"event": "command_failed", "exit_code": exit_code, "error_payload": payload},
            )
            print(json.dumps(payload, sort_keys=True, default=str), file=sys.stderr)
            return exit_code

        print(render(report, options.format))
        logger.info("Command finished", extra={"event": "command_finished", "report_passed": report.passed})
        return EXIT_OK if report.passed else EXIT_ASSERTION_FAILED


if __name__ == "__main__":
    sys.exit(main())
