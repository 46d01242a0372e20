"""Named problem instances with known shortcut counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from nslcheck.core.constraints import ModSucc, Pin, WeightedSum
from nslcheck.core.errors import ArgumentError
from nslcheck.core.model import ConceptMapping, MappingMode, Problem


@dataclass(frozen=True)
class NamedFixture:
    name: str
    problem: Problem
    # mode -> exact shortcut multiplicity
    expected: Dict[MappingMode, int] = field(default_factory=dict)
    description: str = ""


def _identity_problem(n: int, constraints, metadata=()) -> Problem:
    outputs = tuple(f"n{i}" for i in range(n))
    return Problem(outputs, tuple(range(n)), tuple(constraints), ConceptMapping(outputs, tuple(range(n))), metadata)


def _four_node() -> Problem:
    return _identity_problem(4, [
        WeightedSum((("n0", 1), ("n3", 1)), 3),
        WeightedSum((("n1", 1), ("n2", 1)), 3),
    ])


def _mnist_half() -> Problem:
    return _identity_problem(
        5,
        [
            WeightedSum((("n0", 1), ("n0", 1)), 0),
            WeightedSum((("n0", 1), ("n1", 1)), 1),
            WeightedSum((("n2", 1), ("n3", 1)), 5),
            WeightedSum((("n2", 1), ("n4", 1)), 6),
        ],
        (("task", "pairwise digit sums over 0..4"),),
    )


def _modulo_successor() -> Problem:
    return _identity_problem(3, [ModSucc("n0", "n1", 3), ModSucc("n1", "n2", 3)])


def _build_four_node_addition() -> NamedFixture:
    return NamedFixture(
        "four-node-addition",
        _four_node(),
        {MappingMode.BIJECTION: 7, MappingMode.FUNCTION: 15},
        "two sum constraints over disconnected output pairs",
    )


def _build_mnist_half() -> NamedFixture:
    return NamedFixture(
        "mnist-half",
        _mnist_half(),
        {MappingMode.FUNCTION: 2, MappingMode.BIJECTION: 0},
        "digit sums that only bijectivity makes unique",
    )


def _build_modulo_successor() -> NamedFixture:
    return NamedFixture(
        "modulo-successor",
        _modulo_successor(),
        {MappingMode.BIJECTION: 2, MappingMode.FUNCTION: 2},
        "connected and discriminative, yet symmetric under rotation",
    )


def _build_mnist_half_pinned() -> NamedFixture:
    return NamedFixture(
        "mnist-half-pinned",
        _mnist_half().with_constraints([Pin("n2", 2)]),
        {MappingMode.FUNCTION: 0, MappingMode.BIJECTION: 0},
        "mnist-half after one greedy repair step",
    )


def _build_four_node_repaired() -> NamedFixture:
    return NamedFixture(
        "four-node-repaired",
        _four_node().with_constraints([Pin("n1", 1)]),
        {MappingMode.BIJECTION: 1, MappingMode.FUNCTION: 3},
        "four-node-addition with n1 pinned",
    )


_BUILDERS: Dict[str, Callable[[], NamedFixture]] = {
    "four-node-addition": _build_four_node_addition,
    "mnist-half": _build_mnist_half,
    "modulo-successor": _build_modulo_successor,
    "mnist-half-pinned": _build_mnist_half_pinned,
    "four-node-repaired": _build_four_node_repaired,
}

FIXTURE_NAMES: Tuple[str, ...] = tuple(_BUILDERS)


def fixture(name: str) -> NamedFixture:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ArgumentError(f"unknown fixture {name!r} (known: {', '.join(FIXTURE_NAMES)})") from None
    return builder()


def all_fixtures() -> List[NamedFixture]:
    return [fixture(name) for name in FIXTURE_NAMES]
