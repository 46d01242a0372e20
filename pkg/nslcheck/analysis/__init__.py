from .graph import ConstraintGraph, component_projection_counts, constraint_graph
from .symmetry import (
    AutomorphismReport,
    DiscriminationReport,
    DiscriminationWitness,
    automorphism_group,
    check_discrimination,
    iter_transposition_violations,
)

__all__ = [
    "AutomorphismReport",
    "ConstraintGraph",
    "DiscriminationReport",
    "DiscriminationWitness",
    "automorphism_group",
    "check_discrimination",
    "component_projection_counts",
    "constraint_graph",
    "iter_transposition_violations",
]
