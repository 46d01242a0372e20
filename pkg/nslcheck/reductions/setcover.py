"""Set-cover reduction for minimal repair.

Each universe element becomes an output whose intended concept is its own
index; each set becomes a pin-set library entry. With no constraints, any
element left uncovered can be moved to another concept, so a library subset
repairs the problem exactly when the corresponding sets cover the universe.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from nslcheck.config.settings import guard_limit
from nslcheck.core.constraints import PinSet
from nslcheck.core.errors import ArgumentError, ResourceLimitError, SetCoverFormatError
from nslcheck.core.model import ConceptMapping, MappingMode, Problem
from nslcheck.service.repair import minimal_repair_bruteforce


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SetCoverInstance:
    universe: Tuple[str, ...]
    sets: Tuple[FrozenSet[str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "universe", tuple(str(u) for u in self.universe))
        object.__setattr__(self, "sets", tuple(frozenset(str(e) for e in s) for s in self.sets))
        if len(set(self.universe)) != len(self.universe):
            raise ArgumentError("duplicate universe element")
        known = set(self.universe)
        for j, s in enumerate(self.sets, start=1):
            stray = sorted(s - known)
            if stray:
                raise ArgumentError(f"set {j} contains elements outside the universe: {stray}")

    def masks(self) -> Tuple[int, List[int]]:
        """Universe bitmask and one bitmask per set; element i is bit i."""
        bit = {u: 1 << i for i, u in enumerate(self.universe)}
        full = (1 << len(self.universe)) - 1
        return full, [sum(bit[e] for e in s) for s in self.sets]


def setcover_to_repair(inst: SetCoverInstance) -> Tuple[Problem, List[PinSet]]:
    n = len(inst.universe)
    if n < 2:
        raise ArgumentError("the reduction needs a universe of at least two elements")
    outputs = tuple(f"n{i}" for i in range(1, n + 1))
    name_of = dict(zip(inst.universe, outputs))
    library = [
        PinSet(tuple((name_of[u], i) for i, u in enumerate(inst.universe) if u in s))
        for s in inst.sets
    ]
    problem = Problem(
        outputs,
        tuple(range(n)),
        (),
        ConceptMapping(outputs, tuple(range(n))),
        (("reduction", f"setcover elements={n} sets={len(inst.sets)}"),),
    )
    return problem, library


def brute_force_min_cover(inst: SetCoverInstance, max_sets: int | None = None) -> Optional[int]:
    limit = max_sets if max_sets is not None else guard_limit("min_cover_max_sets")
    if len(inst.sets) > limit:
        raise ResourceLimitError(f"set-cover oracle limited to {limit} sets, instance has {len(inst.sets)}")
    full, masks = inst.masks()
    for size in range(len(masks) + 1):
        for combo in itertools.combinations(masks, size):
            covered = 0
            for m in combo:
                covered |= m
            if covered == full:
                return size
    return None


@dataclass(frozen=True)
class SetCoverReductionCheck:
    min_cover: Optional[int]
    minimal_repair: Optional[int]

    @property
    def holds(self) -> bool:
        return self.min_cover == self.minimal_repair


def check_setcover_reduction(inst: SetCoverInstance) -> SetCoverReductionCheck:
    problem, library = setcover_to_repair(inst)
    repair = minimal_repair_bruteforce(problem, library, len(library), MappingMode.FUNCTION)
    check = SetCoverReductionCheck(brute_force_min_cover(inst), repair.size if repair else None)
    log.info("Set-cover reduction: min cover = %s, minimal repair = %s", check.min_cover, check.minimal_repair)
    return check


def parse_setcover(text: str) -> SetCoverInstance:
    """``universe <id>+`` once, then one ``set <id>*`` line per set; ``#`` comments."""
    universe: Optional[List[str]] = None
    sets: List[FrozenSet[str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        head, rest = words[0], words[1:]
        if head == "universe":
            if universe is not None:
                raise SetCoverFormatError("second universe line", number)
            if not rest:
                raise SetCoverFormatError("empty universe", number)
            if len(set(rest)) != len(rest):
                raise SetCoverFormatError("duplicate universe element", number)
            universe = rest
        elif head == "set":
            if universe is None:
                raise SetCoverFormatError("set before the universe line", number)
            stray = [e for e in rest if e not in universe]
            if stray:
                raise SetCoverFormatError(f"unknown element {stray[0]!r}", number)
            sets.append(frozenset(rest))
        else:
            raise SetCoverFormatError(f"unknown statement {head!r}", number)
    if universe is None:
        raise SetCoverFormatError("missing universe line")
    return SetCoverInstance(tuple(universe), tuple(sets))


def format_setcover(inst: SetCoverInstance) -> str:
    order = {u: i for i, u in enumerate(inst.universe)}
    lines = ["universe " + " ".join(inst.universe)]
    for s in inst.sets:
        lines.append(" ".join(["set", *sorted(s, key=order.__getitem__)]))
    return "\n".join(lines) + "\n"
