"""
Error types for the sharpening toolkit.

Every error carries an ``error_type`` tag (used in CLI result dicts) and the
process exit code the CLI maps it to.
"""

from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3
EXIT_INCONSISTENT = 4


class SharpeningError(Exception):
    """Base class for all library errors."""

    error_type = "sharpening_error"
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": str(self), "error_type": self.error_type, **self.details}


# algebra


class FieldTooLarge(SharpeningError):
    error_type = "field_too_large"
    exit_code = EXIT_CAP_EXCEEDED


class NotInField(SharpeningError):
    error_type = "not_in_field"


class DivisionByZero(SharpeningError, ArithmeticError):
    error_type = "division_by_zero"


# coxcore


class GroupTooLarge(SharpeningError):
    error_type = "group_too_large"
    exit_code = EXIT_CAP_EXCEEDED


class CapTooSmall(SharpeningError):
    error_type = "cap_too_small"
    exit_code = EXIT_CAP_EXCEEDED


class InfiniteOrderPair(SharpeningError):
    error_type = "infinite_order_pair"


class NotFound(SharpeningError):
    error_type = "not_found"


# diagrams / deform


class NotThetaEdge(SharpeningError):
    error_type = "not_theta_edge"


class NotDeltaEdge(SharpeningError):
    error_type = "not_delta_edge"


class NotTame(SharpeningError):
    error_type = "not_tame"


class NotAllTame(SharpeningError):
    error_type = "not_all_tame"


class NotASpecial(SharpeningError):
    error_type = "not_a_special"

    def __init__(self, condition: str, message: Optional[str] = None):
        super().__init__(message or f"condition {condition} violated", {"condition": condition})
        self.condition = condition


class IncompatibleOverlap(SharpeningError):
    error_type = "incompatible_overlap"
    exit_code = EXIT_INCONSISTENT


class EdgeNotCovered(SharpeningError):
    error_type = "edge_not_covered"
    exit_code = EXIT_INCONSISTENT


class DegreeNotDecreasing(SharpeningError):
    error_type = "degree_not_decreasing"
    exit_code = EXIT_INCONSISTENT


class InternalInvariantBroken(SharpeningError):
    error_type = "internal_invariant_broken"
    exit_code = EXIT_INCONSISTENT


# pipeline


class ParseError(SharpeningError):
    error_type = "parse_error"


class NotAReflection(SharpeningError):
    error_type = "not_a_reflection"

    def __init__(self, index: int, message: str):
        super().__init__(message, {"index": index})
        self.index = index


class HasH3Subset(SharpeningError):
    error_type = "has_h3_subset"


class InputInconsistent(SharpeningError):
    error_type = "input_inconsistent"
    exit_code = EXIT_INCONSISTENT
