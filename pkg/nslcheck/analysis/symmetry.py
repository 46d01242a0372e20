"""Value symmetries of a solution set: transposition discrimination and the
group of concept permutations that map the valid set onto itself."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import PermutationGroup

from nslcheck.core.actions import Permutation, apply_transposition, compose_value_permutation
from nslcheck.core.errors import ArgumentError, PreconditionError, StructuralError
from nslcheck.core.model import ConceptMapping, Problem


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscriminationWitness:
    mapping: ConceptMapping
    pair: Tuple[int, int]
    transposed: ConceptMapping


@dataclass(frozen=True)
class DiscriminationReport:
    discriminative: bool
    violating_witness: Optional[DiscriminationWitness]


@dataclass(frozen=True)
class AutomorphismReport:
    elements: Tuple[Permutation, ...]
    witnesses: Tuple[Tuple[Permutation, ConceptMapping, ConceptMapping], ...]
    orbits: Tuple[Tuple[ConceptMapping, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_transitive_on_solutions(self) -> bool:
        return len(self.orbits) == 1


def _require_exact(saturated: bool, what: str) -> None:
    if saturated:
        raise PreconditionError(f"{what} needs the exact valid set, got a saturated enumeration")


def iter_transposition_violations(
    p: Problem,
    solutions: Sequence[ConceptMapping],
) -> Iterator[DiscriminationWitness]:
    """Every (mapping, pair) whose transposed mapping is also valid, in
    lexicographic (mapping, s_i, s_j) order."""
    members: FrozenSet[ConceptMapping] = frozenset(solutions)
    pairs = list(itertools.combinations(sorted(p.concepts), 2))
    for phi in sorted(members):
        used = set(phi.values)
        for s_i, s_j in pairs:
            if s_i not in used and s_j not in used:
                continue
            swapped = apply_transposition(phi, s_i, s_j)
            if swapped in members:
                yield DiscriminationWitness(phi, (s_i, s_j), swapped)


def check_discrimination(
    p: Problem,
    solutions: Sequence[ConceptMapping],
    saturated: bool = False,
) -> DiscriminationReport:
    _require_exact(saturated, "discrimination check")
    witness = next(iter_transposition_violations(p, solutions), None)
    if witness is not None:
        log.info(
            "Not discriminative: swapping %s in %s gives valid %s",
            witness.pair,
            witness.mapping,
            witness.transposed,
        )
    return DiscriminationReport(witness is None, witness)


def _check_bijective(solutions: Sequence[ConceptMapping], concepts: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if not solutions:
        raise ArgumentError("automorphisms need a nonempty solution set")
    support = sorted(concepts) if concepts is not None else sorted(set(solutions[0].values))
    for phi in solutions:
        if not phi.is_bijective(support):
            raise PreconditionError(f"{phi} is not a bijection onto the concept set")
    return tuple(support)


def _as_group(elements: Sequence[Permutation]) -> PermutationGroup:
    group = PermutationGroup([sigma.as_sympy() for sigma in elements])
    # the candidates already contain the whole group iff they are closed
    if group.order() != len(elements):
        raise StructuralError(
            f"automorphism set of size {len(elements)} generates a group of order {group.order()}"
        )
    return group


def automorphism_group(
    solutions: Sequence[ConceptMapping],
    saturated: bool = False,
    concepts: Optional[Sequence[int]] = None,
) -> AutomorphismReport:
    """Permutations sigma of S with sigma o phi valid for every valid phi.

    Only sigma = phi' o phi0^-1 can send phi0 into the set, so those are the
    only candidates tested.
    """
    _require_exact(saturated, "automorphism computation")
    labels = _check_bijective(solutions, concepts)
    members = frozenset(solutions)
    ordered = sorted(members)
    base = ordered[0]

    elements: List[Permutation] = []
    for target in ordered:
        sigma = Permutation.carrying(base, target)
        if all(compose_value_permutation(sigma, phi) in members for phi in ordered):
            elements.append(sigma)
    elements.sort()
    group = _as_group(elements)

    witnesses = tuple(
        (sigma, base, compose_value_permutation(sigma, base))
        for sigma in elements
        if not sigma.is_identity()
    )

    position = {s: i for i, s in enumerate(labels)}
    orbits: List[Tuple[ConceptMapping, ...]] = []
    seen = set()
    for phi in ordered:
        if phi in seen:
            continue
        points = group.orbit(tuple(position[v] for v in phi.values), action="tuples")
        orbit = tuple(sorted(phi.with_values(labels[i] for i in point) for point in points))
        seen.update(orbit)
        orbits.append(orbit)

    log.info("Automorphism group of order %d, %d orbit(s) on %d solution(s)", group.order(), len(orbits), len(ordered))
    return AutomorphismReport(tuple(elements), witnesses, tuple(orbits))
