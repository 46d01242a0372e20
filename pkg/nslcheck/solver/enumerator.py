"""Backtracking enumeration of valid mappings and shortcut verification.

Search is depth-first over outputs in declaration order with concept values
tried in ascending order, so models come out in lexicographic order of their
value vectors. Unary kinds (pin, domain, pair domain, pin set) shrink the
domains before search; sums and modular successors are checked when their
last output is about to be assigned; tables are pruned on every prefix;
alt clauses are only decidable on complete mappings.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

from nslcheck.core.constraints import (
    AltClause,
    Constraint,
    Domain,
    ModSucc,
    PairDomain,
    Pin,
    PinSet,
    Table,
    WeightedSum,
)
from nslcheck.core.errors import ArgumentError, StructuralError
from nslcheck.core.model import ConceptMapping, MappingMode, Problem, is_valid


log = logging.getLogger(__name__)

Values = Tuple[int, ...]
# check(assign, v) -> bool, evaluated before assigning v at a given depth
PrefixCheck = Callable[[List[int], int], bool]
LeafCheck = Callable[[Values, bool], bool]


class VerificationStatus(str, Enum):
    INTENDED_INVALID = "intended-invalid"
    SHORTCUT_FREE = "shortcut-free"
    SHORTCUTS_FOUND = "shortcuts-found"


@dataclass(frozen=True)
class VerificationResult:
    status: VerificationStatus
    shortcuts: Tuple[ConceptMapping, ...]
    saturated: bool
    mode: MappingMode
    cap: int

    @property
    def multiplicity(self) -> int:
        return len(self.shortcuts)

    @property
    def exact(self) -> bool:
        return not self.saturated

    @property
    def shortcut_free(self) -> bool:
        return self.status is VerificationStatus.SHORTCUT_FREE


class _SearchPlan:
    def __init__(self, p: Problem, mode: MappingMode) -> None:
        self.size = p.size
        self.bijective = mode is MappingMode.BIJECTION
        self.intended: Values = p.intended.values
        self._index = {name: i for i, name in enumerate(p.outputs)}
        ordered = sorted(p.concepts)
        self.domains: List[List[int]] = [list(ordered) for _ in range(self.size)]
        self.checks: List[List[PrefixCheck]] = [[] for _ in range(self.size)]
        self.leaf_checks: List[LeafCheck] = []
        for c in p.constraints:
            self._add(c)

    def _idx(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"constraint references unknown output {name!r}") from None

    def _restrict(self, name: str, allowed) -> None:
        i = self._idx(name)
        self.domains[i] = [v for v in self.domains[i] if v in allowed]

    def _add(self, c: Constraint) -> None:
        if isinstance(c, Pin):
            self._restrict(c.output, {c.concept})
        elif isinstance(c, Domain):
            self._restrict(c.output, c.concepts)
        elif isinstance(c, PairDomain):
            self._restrict(c.output_a, c.concepts)
            self._restrict(c.output_b, c.concepts)
        elif isinstance(c, PinSet):
            for name, concept in c.assignments:
                self._restrict(name, {concept})
        elif isinstance(c, WeightedSum):
            self._add_sum(c)
        elif isinstance(c, ModSucc):
            self._add_modsucc(c)
        elif isinstance(c, Table):
            self._add_table(c)
        elif isinstance(c, AltClause):
            self._add_alt(c)
        else:  # pragma: no cover
            raise StructuralError(f"unsupported constraint {c!r}")

    def _add_sum(self, c: WeightedSum) -> None:
        coefs: Dict[int, int] = {}
        for name, coef in c.terms:
            i = self._idx(name)
            coefs[i] = coefs.get(i, 0) + coef
        last = max(coefs)
        own = coefs.pop(last)
        rest = tuple(coefs.items())
        target = c.target

        def check(assign: List[int], v: int) -> bool:
            return sum(k * assign[i] for i, k in rest) + own * v == target

        self.checks[last].append(check)

    def _add_modsucc(self, c: ModSucc) -> None:
        src, dst, m = self._idx(c.src), self._idx(c.dst), c.modulus
        last = max(src, dst)

        def check(assign: List[int], v: int) -> bool:
            a = v if src == last else assign[src]
            b = v if dst == last else assign[dst]
            return (b - a - 1) % m == 0

        self.checks[last].append(check)

    def _add_table(self, c: Table) -> None:
        cols = [self._idx(name) for name in c.columns]
        rows = sorted(c.allowed)
        for depth in sorted(set(cols)):
            here = [k for k, i in enumerate(cols) if i == depth]
            prior = [(k, i) for k, i in enumerate(cols) if i < depth]

            def check(assign: List[int], v: int, here=here, prior=prior) -> bool:
                return any(
                    all(row[k] == v for k in here) and all(row[k] == assign[i] for k, i in prior)
                    for row in rows
                )

            self.checks[depth].append(check)

    def _add_alt(self, c: AltClause) -> None:
        literals = tuple((self._idx(name), concept) for name, concept in c.literals)

        def check(values: Values, at_intended: bool) -> bool:
            return at_intended or any(values[i] == concept for i, concept in literals)

        self.leaf_checks.append(check)

    def solutions(self, exclude_intended: bool) -> Iterator[Values]:
        n = self.size
        assign = [0] * n
        used: Set[int] = set()
        domains, checks, leaf_checks = self.domains, self.checks, self.leaf_checks
        bijective, intended = self.bijective, self.intended

        def extend(depth: int) -> Iterator[Values]:
            if depth == n:
                values = tuple(assign)
                at_intended = values == intended
                if exclude_intended and at_intended:
                    return
                if all(check(values, at_intended) for check in leaf_checks):
                    yield values
                return
            for v in domains[depth]:
                if bijective and v in used:
                    continue
                if not all(check(assign, v) for check in checks[depth]):
                    continue
                assign[depth] = v
                if bijective:
                    used.add(v)
                yield from extend(depth + 1)
                if bijective:
                    used.discard(v)

        yield from extend(0)


def iter_valid(p: Problem, mode: MappingMode, exclude_intended: bool = False) -> Iterator[ConceptMapping]:
    """Lazily yield valid mappings in lexicographic order."""
    p.check_mode(mode)
    plan = _SearchPlan(p, mode)
    for values in plan.solutions(exclude_intended):
        yield ConceptMapping(p.outputs, values)


def enumerate_valid(
    p: Problem,
    mode: MappingMode,
    cap: int,
    exclude_intended: bool = False,
) -> Tuple[List[ConceptMapping], bool]:
    if cap < 1:
        raise ArgumentError(f"model cap must be >= 1, got {cap}")
    found = list(itertools.islice(iter_valid(p, mode, exclude_intended), cap + 1))
    saturated = len(found) > cap
    if saturated:
        log.warning("Enumeration saturated at %d models; counts are lower bounds", cap)
        found = found[:cap]
    return found, saturated


def verify(p: Problem, mode: MappingMode, cap: int) -> VerificationResult:
    p.check_mode(mode)
    if not is_valid(p, p.intended, mode):
        log.info("Intended mapping %s violates the constraints (%s mode)", p.intended, mode.label)
        return VerificationResult(VerificationStatus.INTENDED_INVALID, (), False, mode, cap)
    shortcuts, saturated = enumerate_valid(p, mode, cap, exclude_intended=True)
    status = VerificationStatus.SHORTCUTS_FOUND if shortcuts else VerificationStatus.SHORTCUT_FREE
    log.info(
        "Verification (%s mode): %s, %s%d shortcut(s)",
        mode.label,
        status.value,
        ">= " if saturated else "",
        len(shortcuts),
    )
    return VerificationResult(status, tuple(shortcuts), saturated, mode, cap)


def valid_set(p: Problem, mode: MappingMode, cap: int) -> Tuple[List[ConceptMapping], bool]:
    """Full valid set including the intended mapping (input for measures/analysis)."""
    return enumerate_valid(p, mode, cap, exclude_intended=False)


def first_shortcut(p: Problem, mode: MappingMode) -> Optional[ConceptMapping]:
    """Early-exit check: any valid mapping other than the intended one."""
    return next(iter_valid(p, mode, exclude_intended=True), None)
