"""Shortcut repair by pinning outputs to their intended concepts.

Both loops verify at the top of every round and add one pin per round, so a
run that ends after C additions has made C + 1 verification calls.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from nslcheck.config.settings import guard_limit
from nslcheck.core.constraints import Constraint, Pin, PinSet
from nslcheck.core.errors import ArgumentError, ResourceLimitError
from nslcheck.core.model import ConceptMapping, MappingMode, Problem
from nslcheck.solver.enumerator import VerificationStatus, verify


log = logging.getLogger(__name__)

# (shortcuts, intended) -> (chosen shortcut, chosen disagreement position)
Chooser = Callable[[Sequence[ConceptMapping], ConceptMapping], Tuple[ConceptMapping, str]]


def seeded_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) % 2**64))


class RepairOutcome(str, Enum):
    REPAIRED = "repaired"
    TIMEOUT = "timeout"
    INTENDED_INVALID = "intended-invalid"


@dataclass(frozen=True)
class RepairIteration:
    detected_shortcut: ConceptMapping
    disagreement_set: Tuple[str, ...]
    added_constraint: Pin
    shortcuts_before: int
    exact: bool


@dataclass(frozen=True)
class RepairTrace:
    iterations: Tuple[RepairIteration, ...]
    final_constraints: Tuple[Constraint, ...]
    verification_calls: int
    outcome: RepairOutcome
    exact: bool

    @property
    def constraints_added(self) -> int:
        return len(self.iterations)

    @property
    def added(self) -> Tuple[Pin, ...]:
        return tuple(it.added_constraint for it in self.iterations)


def _repair_loop(p: Problem, mode: MappingMode, T: int, cap: int, choose: Chooser) -> RepairTrace:
    if T < 0:
        raise ArgumentError(f"iteration bound must be >= 0, got {T}")
    p.check_mode(mode)
    current = p
    iterations: List[RepairIteration] = []
    calls = 0
    exact = True
    while True:
        result = verify(current, mode, cap)
        calls += 1
        exact = exact and result.exact
        if result.status is VerificationStatus.INTENDED_INVALID:
            outcome = RepairOutcome.INTENDED_INVALID
            break
        if result.shortcut_free:
            outcome = RepairOutcome.REPAIRED
            break
        if len(iterations) >= T:
            outcome = RepairOutcome.TIMEOUT
            break
        shortcut, position = choose(result.shortcuts, p.intended)
        pin = Pin(position, p.intended[position])
        iterations.append(
            RepairIteration(
                detected_shortcut=shortcut,
                disagreement_set=shortcut.disagreement(p.intended),
                added_constraint=pin,
                shortcuts_before=result.multiplicity,
                exact=result.exact,
            )
        )
        log.debug("Repair round %d: %s disagrees on %s; pinning %s = %d",
                  len(iterations), shortcut, ",".join(shortcut.disagreement(p.intended)), position, pin.concept)
        current = current.with_constraints([pin])
    log.info("Repair %s after %d added constraint(s), %d verification call(s)", outcome.value, len(iterations), calls)
    return RepairTrace(tuple(iterations), current.constraints, calls, outcome, exact)


def _greedy_choice(shortcuts: Sequence[ConceptMapping], intended: ConceptMapping) -> Tuple[ConceptMapping, str]:
    shortcut = min(shortcuts)
    return shortcut, shortcut.disagreement(intended)[0]


def greedy_repair(p: Problem, mode: MappingMode, T: int, cap: int) -> RepairTrace:
    """Pin the first disagreeing output of the lexicographically smallest shortcut."""
    return _repair_loop(p, mode, T, cap, _greedy_choice)


def random_repair(p: Problem, mode: MappingMode, T: int, cap: int, seed: int) -> RepairTrace:
    rng = seeded_rng(seed)

    def choose(shortcuts: Sequence[ConceptMapping], intended: ConceptMapping) -> Tuple[ConceptMapping, str]:
        shortcut = shortcuts[int(rng.integers(len(shortcuts)))]
        positions = shortcut.disagreement(intended)
        return shortcut, positions[int(rng.integers(len(positions)))]

    return _repair_loop(p, mode, T, cap, choose)


@dataclass(frozen=True)
class RepairSweep:
    runs: int
    mean_iterations: float
    mean_constraints: float
    success_rate: float
    traces: Tuple[Tuple[int, RepairTrace], ...]


def repair_sweep(
    p: Problem,
    mode: MappingMode,
    T: int,
    cap: int,
    seeds: Sequence[int],
) -> RepairSweep:
    """Random repair over many seeds; iterations count the final verification too."""
    if not seeds:
        raise ArgumentError("repair sweep needs at least one seed")
    traces = tuple((seed, random_repair(p, mode, T, cap, seed)) for seed in seeds)
    calls = np.array([t.verification_calls for _, t in traces], dtype=float)
    added = np.array([t.constraints_added for _, t in traces], dtype=float)
    ok = np.array([t.outcome is RepairOutcome.REPAIRED for _, t in traces], dtype=float)
    return RepairSweep(
        runs=len(traces),
        mean_iterations=float(calls.mean()),
        mean_constraints=float(added.mean()),
        success_rate=float(ok.mean()),
        traces=traces,
    )


@dataclass(frozen=True)
class MinimalRepair:
    indices: Tuple[int, ...]
    constraints: Tuple[PinSet, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


def _search_space(library_size: int, budget: int) -> int:
    return sum(math.comb(library_size, j) for j in range(min(budget, library_size) + 1))


def repairs(p: Problem, extra: Sequence[Constraint], mode: MappingMode) -> bool:
    return verify(p.with_constraints(extra), mode, cap=1).shortcut_free


def minimal_repair_bruteforce(
    p: Problem,
    library: Sequence[PinSet],
    budget: int,
    mode: MappingMode,
    max_subsets: int | None = None,
) -> Optional[MinimalRepair]:
    """Smallest subset of ``library`` (at most ``budget`` members) that leaves
    no shortcut; ties go to the lexicographically first index tuple."""
    if budget < 0:
        raise ArgumentError(f"budget must be >= 0, got {budget}")
    limit = max_subsets if max_subsets is not None else guard_limit("minimal_repair_max_subsets")
    space = _search_space(len(library), budget)
    if space > limit:
        raise ResourceLimitError(f"minimal repair would test {space} subsets (limit {limit})")
    p.check_mode(mode)
    for size in range(min(budget, len(library)) + 1):
        for combo in itertools.combinations(range(len(library)), size):
            chosen = tuple(library[i] for i in combo)
            if repairs(p, chosen, mode):
                log.info("Minimal repair of size %d: library entries %s", size, list(combo))
                return MinimalRepair(combo, chosen)
    log.info("No repair within budget %d from a library of %d", budget, len(library))
    return None
