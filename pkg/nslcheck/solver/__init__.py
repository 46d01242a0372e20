from .enumerator import (
    VerificationResult,
    VerificationStatus,
    enumerate_valid,
    first_shortcut,
    iter_valid,
    valid_set,
    verify,
)
from .measures import AmbiguityMeasures, disagreement_positions, measures, solution_matrix

__all__ = [
    "AmbiguityMeasures",
    "VerificationResult",
    "VerificationStatus",
    "disagreement_positions",
    "enumerate_valid",
    "first_shortcut",
    "iter_valid",
    "measures",
    "solution_matrix",
    "valid_set",
    "verify",
]
