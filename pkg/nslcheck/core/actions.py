"""Group actions on concept mappings: transpositions and value permutations."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation as SymPermutation

from .errors import ArgumentError
from .model import ConceptMapping


@functools.total_ordering
@dataclass(frozen=True)
class Permutation:
    """A bijection sigma: S -> S, stored as (s, sigma(s)) pairs sorted by s.

    Concept labels are arbitrary integers; the group arithmetic runs on a
    sympy permutation of the positions 0..|S|-1 of the sorted labels.
    """

    images: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(a), int(b)) for a, b in self.images))
        object.__setattr__(self, "images", pairs)
        sources = [a for a, _ in pairs]
        targets = sorted(b for _, b in pairs)
        if len(set(sources)) != len(sources) or sources != targets:
            raise ArgumentError(f"not a permutation: {dict(pairs)}")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Permutation":
        return cls(tuple(mapping.items()))

    @classmethod
    def identity(cls, concepts: Iterable[int]) -> "Permutation":
        return cls(tuple((c, c) for c in concepts))

    @classmethod
    def from_sympy(cls, perm: SymPermutation, labels: Sequence[int]) -> "Permutation":
        if perm.size != len(labels):
            raise ArgumentError(f"permutation of size {perm.size} does not act on {len(labels)} concepts")
        return cls(tuple((labels[i], labels[j]) for i, j in enumerate(perm.array_form)))

    @classmethod
    def carrying(cls, source: ConceptMapping, target: ConceptMapping) -> "Permutation":
        """The sigma with sigma o source = target, for a bijective ``source``."""
        mapping: Dict[int, int] = {}
        for a, b in zip(source.values, target.values):
            if mapping.setdefault(a, b) != b:
                raise ArgumentError(f"{source} is not injective, no permutation carries it to {target}")
        return cls.from_mapping(mapping)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images < other.images

    def __call__(self, s: int) -> int:
        return self.as_dict()[s]

    def __str__(self) -> str:
        return self.cycle_notation()

    @property
    def domain(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.images)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.images)

    def as_sympy(self) -> SymPermutation:
        position = {s: i for i, s in enumerate(self.domain)}
        return SymPermutation([position[b] for _, b in self.images], size=len(self.images))

    def is_identity(self) -> bool:
        return self.as_sympy().is_Identity

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: apply ``other`` first."""
        if self.domain != other.domain:
            raise ArgumentError("cannot compose permutations of different concept sets")
        # sympy multiplies left to right: (p * q)(i) == q(p(i))
        return Permutation.from_sympy(other.as_sympy() * self.as_sympy(), self.domain)

    def inverse(self) -> "Permutation":
        return Permutation.from_sympy(~self.as_sympy(), self.domain)

    def cycles(self) -> List[Tuple[int, ...]]:
        labels = self.domain
        return [tuple(labels[i] for i in cyc) for cyc in self.as_sympy().cyclic_form]

    def order(self) -> int:
        return int(self.as_sympy().order())

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "id"
        return "".join("(" + " ".join(str(v) for v in cyc) + ")" for cyc in cycles)


def apply_transposition(phi: ConceptMapping, s_i: int, s_j: int) -> ConceptMapping:
    if s_i == s_j:
        raise ArgumentError(f"transposition needs two distinct concepts, got {s_i} twice")
    swap = {s_i: s_j, s_j: s_i}
    return phi.with_values(swap.get(v, v) for v in phi.values)


def compose_value_permutation(
    sigma: Union[Permutation, Mapping[int, int]],
    phi: ConceptMapping,
    concepts: Optional[Sequence[int]] = None,
) -> ConceptMapping:
    perm = sigma if isinstance(sigma, Permutation) else Permutation.from_mapping(sigma)
    table = perm.as_dict()
    if concepts is not None and set(table) != set(concepts):
        raise ArgumentError("permutation is not total on the concept set")
    stray = sorted({v for v in phi.values if v not in table})
    if stray:
        raise ArgumentError(f"permutation does not cover concept(s) {stray}")
    return phi.with_values(table[v] for v in phi.values)
