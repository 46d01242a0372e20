from __future__ import annotations

import itertools
import unittest

from hypothesis import given, settings

from nslcheck.analysis import (
    automorphism_group,
    check_discrimination,
    component_projection_counts,
    constraint_graph,
)
from nslcheck.analysis.symmetry import iter_transposition_violations
from nslcheck.bench.domains import fixture
from nslcheck.core import (
    ArgumentError,
    ConceptMapping,
    MappingMode,
    PairDomain,
    Permutation,
    PinSet,
    PreconditionError,
    Problem,
    WeightedSum,
    compose_value_permutation,
)
from nslcheck.solver import enumerate_valid

from tests.nsl_strategies import small_problems


def _solutions(name: str, mode: MappingMode):
    p = fixture(name).problem
    found, saturated = enumerate_valid(p, mode, 10_000)
    return p, found, saturated


class ConstraintGraphTestCase(unittest.TestCase):
    def test_four_node_components(self) -> None:
        graph = constraint_graph(fixture("four-node-addition").problem)
        self.assertEqual(graph.components, (("n0", "n3"), ("n1", "n2")))
        self.assertEqual(graph.sorted_edges(), [("n0", "n3"), ("n1", "n2")])
        self.assertFalse(graph.is_connected)
        self.assertEqual(graph.neighbours("n0"), ("n3",))
        self.assertEqual(graph.component_of("n2"), ("n1", "n2"))

    def test_modulo_successor_is_connected(self) -> None:
        graph = constraint_graph(fixture("modulo-successor").problem)
        self.assertTrue(graph.is_connected)
        self.assertEqual(len(graph.components), 1)

    def test_pinsets_add_no_edges(self) -> None:
        outputs = ("a", "b", "c")
        p = Problem(outputs, (0, 1, 2), (PinSet((("a", 0), ("b", 1))),), ConceptMapping(outputs, (0, 1, 2)))
        graph = constraint_graph(p)
        self.assertEqual(graph.edges, frozenset())
        self.assertEqual(graph.components, (("a",), ("b",), ("c",)))

    def test_components_follow_output_order(self) -> None:
        outputs = ("a", "b", "c", "d")
        p = Problem(
            outputs,
            (0, 1, 2, 3),
            (WeightedSum((("d", 1), ("a", 1)), 3), PairDomain("c", "b", 2, 1)),
            ConceptMapping(outputs, (0, 1, 2, 3)),
        )
        graph = constraint_graph(p)
        self.assertEqual(graph.components, (("a", "d"), ("b", "c")))
        self.assertEqual(graph.sorted_edges(), [("a", "d"), ("b", "c")])

    def test_projection_counts(self) -> None:
        p, found, _ = _solutions("four-node-addition", MappingMode.BIJECTION)
        counts = component_projection_counts(constraint_graph(p), found)
        self.assertEqual(counts, [(("n0", "n3"), 4), (("n1", "n2"), 4)])

        p, found, _ = _solutions("mnist-half", MappingMode.FUNCTION)
        graph = constraint_graph(p)
        self.assertEqual(graph.components, (("n0", "n1"), ("n2", "n3", "n4")))
        self.assertEqual([n for _, n in component_projection_counts(graph, found)], [1, 3])


class DiscriminationTestCase(unittest.TestCase):
    def test_four_node_is_not_discriminative(self) -> None:
        p, found, saturated = _solutions("four-node-addition", MappingMode.BIJECTION)
        report = check_discrimination(p, found, saturated)
        self.assertFalse(report.discriminative)
        witness = report.violating_witness
        self.assertEqual(witness.mapping.values, (0, 1, 2, 3))
        self.assertEqual(witness.pair, (0, 3))
        self.assertEqual(witness.transposed.values, (3, 1, 2, 0))
        pairs = {w.pair for w in iter_transposition_violations(p, found) if w.mapping == p.intended}
        self.assertEqual(pairs, {(0, 3), (1, 2)})

    def test_modulo_successor_is_discriminative(self) -> None:
        p, found, saturated = _solutions("modulo-successor", MappingMode.BIJECTION)
        report = check_discrimination(p, found, saturated)
        self.assertTrue(report.discriminative)
        self.assertIsNone(report.violating_witness)

    def test_saturated_set_is_refused(self) -> None:
        p, found, _ = _solutions("four-node-addition", MappingMode.BIJECTION)
        with self.assertRaises(PreconditionError):
            check_discrimination(p, found, saturated=True)


class AutomorphismTestCase(unittest.TestCase):
    def test_modulo_successor_rotations(self) -> None:
        p, found, saturated = _solutions("modulo-successor", MappingMode.BIJECTION)
        report = automorphism_group(found, saturated, p.concepts)
        self.assertEqual(report.order, 3)
        self.assertTrue(report.is_transitive_on_solutions)
        self.assertFalse(report.is_trivial)
        sigma, base, image = report.witnesses[0]
        self.assertEqual(str(sigma), "(0 1 2)")
        self.assertEqual(sigma.order(), 3)
        self.assertEqual(base.values, (0, 1, 2))
        self.assertEqual(image.values, (1, 2, 0))

    def test_four_node_group(self) -> None:
        p, found, saturated = _solutions("four-node-addition", MappingMode.BIJECTION)
        report = automorphism_group(found, saturated, p.concepts)
        self.assertEqual(report.order, 8)
        self.assertTrue(report.is_transitive_on_solutions)

    def test_shortcut_free_set_has_trivial_group(self) -> None:
        p, found, saturated = _solutions("mnist-half", MappingMode.BIJECTION)
        report = automorphism_group(found, saturated, p.concepts)
        self.assertTrue(report.is_trivial)
        self.assertEqual(report.witnesses, ())

    def test_group_on_arbitrary_labels(self) -> None:
        base = ConceptMapping(("x", "y", "z"), (3, 7, 11))
        everything = [base.with_values(v) for v in itertools.permutations((3, 7, 11))]
        report = automorphism_group(everything, False, (3, 7, 11))
        self.assertEqual(report.order, 6)
        self.assertEqual(report.orbits, (tuple(sorted(everything)),))

        swapped = base.with_values((7, 3, 11))
        report = automorphism_group([swapped, base], False, (3, 7, 11))
        self.assertEqual([str(sigma) for sigma in report.elements], ["id", "(3 7)"])
        self.assertEqual(report.orbits, ((base, swapped),))

    def test_trivial_group_leaves_one_orbit_per_solution(self) -> None:
        base = ConceptMapping(("x", "y", "z"), (3, 7, 11))
        rotated = base.with_values((7, 11, 3))
        report = automorphism_group([base, rotated], False, (3, 7, 11))
        self.assertTrue(report.is_trivial)
        self.assertEqual(report.orbits, ((base,), (rotated,)))

    def test_non_bijective_set_is_refused(self) -> None:
        p, found, _ = _solutions("mnist-half", MappingMode.FUNCTION)
        with self.assertRaises(PreconditionError):
            automorphism_group(found, False, p.concepts)

    def test_empty_set_is_refused(self) -> None:
        with self.assertRaises(ArgumentError):
            automorphism_group([])


class SymmetryPropertyTestCase(unittest.TestCase):
    @settings(max_examples=60, deadline=None)
    @given(small_problems())
    def test_shortcut_free_implies_discriminative(self, p) -> None:
        found, saturated = enumerate_valid(p, MappingMode.BIJECTION, 10_000)
        if len(found) == 1:
            self.assertTrue(check_discrimination(p, found, saturated).discriminative)

    @settings(max_examples=60, deadline=None)
    @given(small_problems())
    def test_candidates_find_every_automorphism(self, p) -> None:
        found, saturated = enumerate_valid(p, MappingMode.BIJECTION, 10_000)
        report = automorphism_group(found, saturated, p.concepts)
        members = set(found)
        brute = sorted(
            sigma
            for sigma in (Permutation(tuple(zip(p.concepts, images))) for images in itertools.permutations(p.concepts))
            if all(compose_value_permutation(sigma, phi) in members for phi in found)
        )
        self.assertEqual(list(report.elements), brute)
        self.assertIn(Permutation.identity(p.concepts), report.elements)
        for a in report.elements:
            self.assertIn(a.inverse(), report.elements)
            for b in report.elements:
                self.assertIn(a.compose(b), report.elements)
        for orbit in report.orbits:
            expected = {compose_value_permutation(sigma, orbit[0]) for sigma in brute}
            self.assertEqual(set(orbit), expected)
        self.assertEqual(sorted(phi for orbit in report.orbits for phi in orbit), sorted(found))

    @settings(max_examples=40, deadline=None)
    @given(small_problems())
    def test_unary_constraints_add_no_edges(self, p) -> None:
        unary = tuple(c for c in p.constraints if isinstance(c, PinSet) or len(set(c.outputs())) == 1)
        graph = constraint_graph(Problem(p.outputs, p.concepts, unary, p.intended))
        self.assertEqual(graph.edges, frozenset())
        self.assertEqual(len(graph.components), p.size)


if __name__ == "__main__":
    unittest.main()
