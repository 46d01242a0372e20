"""Label-query simulation: reveal intended concepts one output at a time
until a single candidate mapping is left."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from nslcheck.core.errors import ArgumentError
from nslcheck.core.model import ConceptMapping
from nslcheck.solver.measures import disagreement_mask, solution_matrix

from .repair import seeded_rng


log = logging.getLogger(__name__)


class QueryStrategy(str, Enum):
    UNCERTAINTY = "uncertainty"
    GREEDY = "greedy"
    RANDOM = "random"

    @classmethod
    def parse(cls, text: str) -> "QueryStrategy":
        key = text.strip().lower()
        for member in cls:
            if key in (member.value, member.value[0]):
                return member
        raise ArgumentError(f"unknown query strategy {text!r} (use u, g or r)")


@dataclass(frozen=True)
class QueryRecord:
    position: str
    answer: int
    candidates_before: int
    candidates_after: int


@dataclass(frozen=True)
class QueryBounds:
    lower: int
    upper: int


@dataclass(frozen=True)
class QueryTrace:
    strategy: QueryStrategy
    queries: Tuple[QueryRecord, ...]
    identified: bool
    bounds: QueryBounds
    survivor: Optional[ConceptMapping]

    @property
    def query_count(self) -> int:
        return len(self.queries)


def _min_queries(candidates: int, r: int) -> int:
    # smallest q with r**q >= candidates
    q, reach = 0, 1
    while reach < candidates:
        reach *= r
        q += 1
    return q


def query_bounds(solutions: Sequence[ConceptMapping], r: int) -> QueryBounds:
    distinct = sorted(set(solutions))
    if not distinct:
        raise ArgumentError("query bounds need a nonempty solution set")
    if len(distinct) > 1 and r < 2:
        raise ArgumentError(f"concept-domain size must be >= 2, got {r}")
    upper = int(disagreement_mask(solution_matrix(distinct)).sum())
    return QueryBounds(_min_queries(len(distinct), r) if len(distinct) > 1 else 0, upper)


def run_strategy(
    solutions: Sequence[ConceptMapping],
    intended: ConceptMapping,
    strategy: QueryStrategy,
    seed: int = 0,
    r: int | None = None,
) -> QueryTrace:
    candidates = sorted(set(solutions))
    if intended not in candidates:
        raise ArgumentError(f"intended mapping {intended} is not among the candidates")
    matrix = solution_matrix(candidates)
    truth = np.array(intended.values, dtype=np.int64)
    outputs = intended.outputs
    if r is None:
        r = max(2, len(np.unique(matrix)))
    bounds = query_bounds(candidates, r)
    rng = seeded_rng(seed)

    alive = np.ones(len(candidates), dtype=bool)
    queried = np.zeros(len(outputs), dtype=bool)
    records: List[QueryRecord] = []
    while alive.sum() > 1:
        live = matrix[alive]
        if strategy is QueryStrategy.UNCERTAINTY:
            score = np.array([len(np.unique(live[:, j])) for j in range(len(outputs))])
            score[queried] = -1
            j = int(np.argmax(score))
        elif strategy is QueryStrategy.GREEDY:
            score = (live != truth).sum(axis=0)
            score[queried] = -1
            j = int(np.argmax(score))
        else:
            j = int(rng.choice(np.flatnonzero(~queried)))
        before = int(alive.sum())
        alive &= matrix[:, j] == truth[j]
        queried[j] = True
        record = QueryRecord(outputs[j], int(truth[j]), before, int(alive.sum()))
        log.debug("Query %s -> %d: %d -> %d candidates", record.position, record.answer, before, record.candidates_after)
        records.append(record)

    survivors = [candidates[i] for i in np.flatnonzero(alive)]
    survivor = survivors[0] if len(survivors) == 1 else None
    return QueryTrace(strategy, tuple(records), survivor is not None, bounds, survivor)


@dataclass(frozen=True)
class QuerySweep:
    strategy: QueryStrategy
    runs: int
    mean: float
    minimum: int
    maximum: int
    all_identified: bool


def query_sweep(
    solutions: Sequence[ConceptMapping],
    intended: ConceptMapping,
    strategy: QueryStrategy,
    seeds: Sequence[int],
    r: int | None = None,
) -> QuerySweep:
    if not seeds:
        raise ArgumentError("query sweep needs at least one seed")
    traces = [run_strategy(solutions, intended, strategy, seed, r) for seed in seeds]
    counts = np.array([t.query_count for t in traces])
    return QuerySweep(
        strategy=strategy,
        runs=len(traces),
        mean=float(counts.mean()),
        minimum=int(counts.min()),
        maximum=int(counts.max()),
        all_identified=all(t.identified for t in traces),
    )
