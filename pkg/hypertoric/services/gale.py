"""
Gale duality of polarized arrangements.
"""

from hypertoric.models.entities import DualityReport, PolarizedArrangement, QuantizedPolarizedArrangement
from hypertoric.services.arrangement import (
    bounded_feasible,
    bounded_signs,
    eta_regular,
    feasible_signs,
    linked_polarization,
    linked_quantization,
    xi_regular,
)
from hypertoric.services.exact import orthogonal_complement_lattice, smallest_lift, solve_integer
from hypertoric.utils.errors import InvalidLattice
from hypertoric.utils.logging_config import get_logger, log_computation, log_verification_event

logger = get_logger("services.gale")


def gale_dual(arrangement: PolarizedArrangement) -> PolarizedArrangement:
    """Gale dual X^! = (Λ₀^⊥, -ξ, -η).

    η^! is the integer lift w of -ξ (⟨w, b_j⟩ = -ξ_j on every basis row b_j) with the smallest
    max-norm modulo Λ₀^⊥, ties broken lexicographically. ξ^! is -⟨η, g_j⟩ on the Hermite
    basis g_j of Λ₀^⊥.

    Raises:
        InvalidLattice: Λ₀ has full rank, so the complement is zero
    """
    lattice = arrangement.lambda0
    if lattice.rank >= lattice.n:
        raise InvalidLattice("Gale dual of a full-rank lattice is zero", details={"n": lattice.n, "k": lattice.rank})

    complement = orthogonal_complement_lattice(lattice)
    target = [-x for x in arrangement.xi]
    lift = solve_integer(lattice.basis, target, lattice.n)
    # A summand always admits an integer solution
    assert lift is not None, "no integer lift of -xi; lattice is not a direct summand"
    eta_dual = smallest_lift(lift, complement.basis)
    xi_dual = tuple(-sum(e * g for e, g in zip(arrangement.eta, row)) for row in complement.basis)

    dual = PolarizedArrangement(complement, tuple(eta_dual), xi_dual)
    log_computation("gale_dual", subject=str(lattice.basis), eta_dual=list(dual.eta), xi_dual=list(dual.xi))
    return dual


def verify_duality(arrangement: PolarizedArrangement) -> DualityReport:
    """Compare the chamber sets of X and X^!: F_η = B_{ξ!}, F_{η!} = B_ξ, P_X = P_{X!}"""
    dual = gale_dual(arrangement)
    lattice = arrangement.lambda0

    report = DualityReport(
        F_eta_eq_B_xidual=set(feasible_signs(arrangement)) == set(bounded_signs(dual.lambda0, dual.xi)),
        F_etadual_eq_B_xi=set(feasible_signs(dual)) == set(bounded_signs(lattice, arrangement.xi)),
        P_eq=set(bounded_feasible(arrangement)) == set(bounded_feasible(dual)),
        regular_transfer=(
            eta_regular(arrangement) == xi_regular(dual.lambda0, dual.xi)
            and xi_regular(lattice, arrangement.xi) == eta_regular(dual)
        ),
    )
    log_verification_event("verify_duality", report.all_passed, **report.to_dict())
    return report


def gale_dual_quantized(arrangement: QuantizedPolarizedArrangement) -> QuantizedPolarizedArrangement:
    """Regular integral quantized arrangement linked to the Gale dual of a linked polarization"""
    return linked_quantization(gale_dual(linked_polarization(arrangement)))
