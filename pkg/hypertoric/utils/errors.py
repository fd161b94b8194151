"""
Domain errors raised by the hypertoric services.

Every error carries a machine-readable code so the CLI can surface it verbatim.
"""

from typing import Any, Dict, Optional


class HypertoricError(Exception):
    """Base class for all domain errors"""

    default_code = "HYPERTORIC_ERROR"

    def __init__(self, message: str, code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.code = code or self.default_code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for reports"""
        return {"error": type(self).__name__, "code": self.code, "message": self.message, "details": self.details}


class InvalidLattice(HypertoricError):
    default_code = "INVALID_LATTICE"


class DependentRows(HypertoricError):
    default_code = "DEPENDENT_ROWS"


class DimensionMismatch(HypertoricError):
    default_code = "DIMENSION_MISMATCH"


class NonHomogeneous(HypertoricError):
    default_code = "NON_HOMOGENEOUS"


class UnboundedEnumeration(HypertoricError):
    default_code = "UNBOUNDED_ENUMERATION"


class ParameterMismatch(HypertoricError):
    default_code = "PARAMETER_MISMATCH"


class NotRegular(HypertoricError):
    default_code = "NOT_REGULAR"


class Inessential(HypertoricError):
    default_code = "INESSENTIAL"


class NotFeasible(HypertoricError):
    default_code = "NOT_FEASIBLE"


class NotBounded(HypertoricError):
    default_code = "NOT_BOUNDED"


class NotRegularIntegral(HypertoricError):
    default_code = "NOT_REGULAR_INTEGRAL"


class DegreeBudgetExceeded(HypertoricError):
    default_code = "DEGREE_BUDGET_EXCEEDED"


class NotQuadratic(HypertoricError):
    default_code = "NOT_QUADRATIC"


class NotDualPair(HypertoricError):
    default_code = "NOT_DUAL_PAIR"


class BudgetExceeded(HypertoricError):
    default_code = "BUDGET_EXCEEDED"


class NotASymmetry(HypertoricError):
    default_code = "NOT_A_SYMMETRY"
