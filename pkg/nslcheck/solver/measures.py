from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from nslcheck.core.errors import ArgumentError, StructuralError
from nslcheck.core.model import ConceptMapping


@dataclass(frozen=True)
class AmbiguityMeasures:
    multiplicity: int
    ambiguity: int
    disagreement_positions: Tuple[str, ...]
    exact: bool

    def multiplicity_display(self, cap: int | None = None) -> str:
        if self.exact:
            return str(self.multiplicity)
        return f">= {self.multiplicity if cap is None else cap}"


def solution_matrix(solutions: Sequence[ConceptMapping]) -> np.ndarray:
    """Stack value vectors into a (k, |N|) integer matrix."""
    if not solutions:
        raise ArgumentError("no solutions: the intended mapping must be valid")
    outputs = solutions[0].outputs
    if any(s.outputs != outputs for s in solutions):
        raise StructuralError("solutions range over different outputs")
    return np.array([s.values for s in solutions], dtype=np.int64).reshape(len(solutions), len(outputs))


def disagreement_mask(matrix: np.ndarray) -> np.ndarray:
    """Columns on which at least two rows differ."""
    if matrix.shape[0] == 0:
        return np.zeros(matrix.shape[1], dtype=bool)
    return (matrix != matrix[0]).any(axis=0)


def disagreement_positions(solutions: Sequence[ConceptMapping]) -> Tuple[str, ...]:
    mask = disagreement_mask(solution_matrix(solutions))
    outputs = solutions[0].outputs
    return tuple(outputs[i] for i in np.flatnonzero(mask))


def max_pairwise_hamming(matrix: np.ndarray, ceiling: int | None = None) -> int:
    best = 0
    rows = matrix.shape[0]
    for i in range(rows - 1):
        dist = int((matrix[i + 1:] != matrix[i]).sum(axis=1).max())
        if dist > best:
            best = dist
            if ceiling is not None and best >= ceiling:
                break
    return best


def measures(solutions: Sequence[ConceptMapping], saturated: bool = False) -> AmbiguityMeasures:
    """Multiplicity, ambiguity and disagreement set of a full valid set (intended included)."""
    matrix = solution_matrix(solutions)
    mask = disagreement_mask(matrix)
    width = int(mask.sum())
    outputs = solutions[0].outputs
    return AmbiguityMeasures(
        multiplicity=len(solutions) - 1,
        ambiguity=max_pairwise_hamming(matrix, ceiling=width),
        disagreement_positions=tuple(outputs[i] for i in np.flatnonzero(mask)),
        exact=not saturated,
    )
