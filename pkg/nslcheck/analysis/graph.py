from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

import networkx as nx
import numpy as np

from nslcheck.core.constraints import PinSet
from nslcheck.core.errors import StructuralError
from nslcheck.core.model import ConceptMapping, Problem
from nslcheck.solver.measures import solution_matrix


log = logging.getLogger(__name__)

Edge = Tuple[str, str]


@dataclass(frozen=True)
class ConstraintGraph:
    """Outputs joined whenever they co-occur in a constraint.

    Edges are stored with endpoints in output order; components are listed by
    their first vertex and keep output order inside.
    """

    vertices: Tuple[str, ...]
    edges: FrozenSet[Edge]
    components: Tuple[Tuple[str, ...], ...]

    def neighbours(self, name: str) -> Tuple[str, ...]:
        if name not in self.vertices:
            raise StructuralError(f"unknown output {name!r}")
        linked = {b for a, b in self.edges if a == name} | {a for a, b in self.edges if b == name}
        return tuple(v for v in self.vertices if v in linked)

    def component_of(self, name: str) -> Tuple[str, ...]:
        for comp in self.components:
            if name in comp:
                return comp
        raise StructuralError(f"unknown output {name!r}")

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def sorted_edges(self) -> List[Edge]:
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (order[e[0]], order[e[1]]))


def constraint_graph(p: Problem) -> ConstraintGraph:
    order = {name: i for i, name in enumerate(p.outputs)}
    edges = set()
    for c in p.constraints:
        # a pin set is a conjunction of unary pins
        if isinstance(c, PinSet):
            continue
        members = sorted(set(c.outputs()), key=order.__getitem__)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                edges.add((a, b))

    graph = nx.Graph()
    graph.add_nodes_from(p.outputs)
    graph.add_edges_from(edges)
    components = tuple(
        sorted(
            (tuple(sorted(comp, key=order.__getitem__)) for comp in nx.connected_components(graph)),
            key=lambda g: order[g[0]],
        )
    )
    log.debug("Constraint graph: %d edge(s), %d component(s)", len(edges), len(components))
    return ConstraintGraph(tuple(p.outputs), frozenset(edges), components)


def component_projection_counts(
    graph: ConstraintGraph,
    solutions: Sequence[ConceptMapping],
) -> List[Tuple[Tuple[str, ...], int]]:
    """For each component, how many distinct restrictions the valid set has on it."""
    matrix = solution_matrix(solutions)
    if solutions[0].outputs != graph.vertices:
        raise StructuralError("solutions and graph range over different outputs")
    index = {name: i for i, name in enumerate(graph.vertices)}
    counts: List[Tuple[Tuple[str, ...], int]] = []
    for comp in graph.components:
        columns = matrix[:, [index[name] for name in comp]]
        counts.append((comp, int(np.unique(columns, axis=0).shape[0])))
    return counts
