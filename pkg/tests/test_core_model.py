from __future__ import annotations

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from nslcheck.core import (
    AltClause,
    ArgumentError,
    ConceptMapping,
    Domain,
    MappingMode,
    ModeError,
    ModSucc,
    PairDomain,
    Permutation,
    Pin,
    PinSet,
    Problem,
    StructuralError,
    Table,
    WeightedSum,
    apply_transposition,
    compose_value_permutation,
    evaluate_constraint,
    is_valid,
)


def _four_node() -> Problem:
    outputs = ("n0", "n1", "n2", "n3")
    return Problem(
        outputs,
        (0, 1, 2, 3),
        (WeightedSum((("n0", 1), ("n3", 1)), 3), WeightedSum((("n1", 1), ("n2", 1)), 3)),
        ConceptMapping(outputs, (0, 1, 2, 3)),
    )


class MappingModeTestCase(unittest.TestCase):
    def test_parse_accepts_short_and_long_names(self) -> None:
        self.assertIs(MappingMode.parse("fn"), MappingMode.FUNCTION)
        self.assertIs(MappingMode.parse("Bijection"), MappingMode.BIJECTION)
        self.assertEqual(MappingMode.BIJECTION.label, "bijection")

    def test_parse_rejects_unknown_mode(self) -> None:
        with self.assertRaises(ArgumentError):
            MappingMode.parse("surjection")


class ConceptMappingTestCase(unittest.TestCase):
    def test_lookup_and_disagreement(self) -> None:
        a = ConceptMapping(("n0", "n1", "n2"), (0, 1, 2))
        b = a.with_values((0, 2, 1))
        self.assertEqual(b["n1"], 2)
        self.assertEqual(a.disagreement(b), ("n1", "n2"))
        self.assertEqual(str(b), "(0,2,1)")
        self.assertLess(a, b)

    def test_unknown_output_raises(self) -> None:
        with self.assertRaises(StructuralError):
            ConceptMapping(("n0",), (0,))["n9"]

    def test_length_mismatch_raises(self) -> None:
        with self.assertRaises(StructuralError):
            ConceptMapping(("n0", "n1"), (0,))

    def test_from_dict_requires_total_assignment(self) -> None:
        with self.assertRaises(StructuralError):
            ConceptMapping.from_dict(("n0", "n1"), {"n0": 0})


class ProblemTestCase(unittest.TestCase):
    def test_rejects_duplicate_outputs(self) -> None:
        with self.assertRaises(StructuralError):
            Problem(("a", "a"), (0, 1), (), ConceptMapping(("a", "a"), (0, 1)))

    def test_rejects_constraint_on_unknown_output(self) -> None:
        with self.assertRaises(StructuralError):
            Problem(("a",), (0,), (Pin("b", 0),), ConceptMapping(("a",), (0,)))

    def test_rejects_intended_outside_concepts(self) -> None:
        with self.assertRaises(StructuralError):
            Problem(("a",), (0,), (), ConceptMapping(("a",), (5,)))

    def test_rejects_constraint_concepts_outside_the_concept_set(self) -> None:
        outputs = ("a", "b")
        intended = ConceptMapping(outputs, (0, 1))
        for c in (
            Domain("a", frozenset({0, 5})),
            Pin("b", 7),
            PairDomain("a", "b", 0, 4),
            Table(("a", "b"), frozenset({(0, 1), (3, 1)})),
            PinSet((("a", 9),)),
            AltClause((("b", -1),)),
        ):
            with self.subTest(kind=c.kind):
                with self.assertRaises(StructuralError):
                    Problem(outputs, (0, 1), (c,), intended)

    def test_sum_targets_and_moduli_are_not_concepts(self) -> None:
        outputs = ("a", "b")
        p = Problem(
            outputs,
            (0, 1),
            (WeightedSum((("a", 3), ("b", 4)), 4), ModSucc("a", "b", 7)),
            ConceptMapping(outputs, (0, 1)),
        )
        self.assertEqual(len(p.constraints), 2)

    def test_bijection_mode_needs_equal_sizes(self) -> None:
        p = Problem(("a", "b"), (0, 1, 2), (), ConceptMapping(("a", "b"), (0, 1)))
        p.check_mode(MappingMode.FUNCTION)
        with self.assertRaises(ModeError):
            p.check_mode(MappingMode.BIJECTION)

    def test_with_constraints_appends(self) -> None:
        p = _four_node().with_constraints([Pin("n1", 1)])
        self.assertEqual(len(p.constraints), 3)
        self.assertEqual(p.constraints[-1], Pin("n1", 1))


class ValidityTestCase(unittest.TestCase):
    def test_intended_is_valid(self) -> None:
        p = _four_node()
        self.assertTrue(is_valid(p, p.intended, MappingMode.BIJECTION))

    def test_shortcut_is_valid_and_non_bijection_rejected_in_bij_mode(self) -> None:
        p = _four_node()
        self.assertTrue(is_valid(p, p.mapping((3, 2, 1, 0)), MappingMode.BIJECTION))
        collapsed = p.mapping((0, 1, 1, 3))
        self.assertFalse(is_valid(p, collapsed, MappingMode.BIJECTION))
        self.assertFalse(is_valid(p, collapsed, MappingMode.FUNCTION))
        self.assertTrue(is_valid(p, p.mapping((1, 1, 2, 2)), MappingMode.FUNCTION))

    def test_value_outside_concepts_is_invalid(self) -> None:
        p = _four_node()
        self.assertFalse(is_valid(p, p.mapping((0, 1, 2, 7)), MappingMode.FUNCTION))

    def test_mod_successor_wraps(self) -> None:
        c = ModSucc("a", "b", 3)
        self.assertTrue(c.holds({"a": 2, "b": 0}, False))
        self.assertFalse(c.holds({"a": 0, "b": 2}, False))

    def test_alt_clause_holds_at_intended(self) -> None:
        intended = ConceptMapping(("a", "b"), (0, 1))
        clause = AltClause((("a", 5),))
        self.assertTrue(evaluate_constraint(clause, intended, intended))
        self.assertFalse(evaluate_constraint(clause, intended.with_values((1, 0)), intended))

    def test_pinset_is_a_conjunction(self) -> None:
        c = PinSet((("a", 0), ("b", 1)))
        self.assertTrue(c.holds({"a": 0, "b": 1}, False))
        self.assertFalse(c.holds({"a": 0, "b": 0}, False))
        self.assertTrue(PinSet(()).holds({"a": 3}, False))


class ActionsTestCase(unittest.TestCase):
    def test_transposition_swaps_values(self) -> None:
        phi = ConceptMapping(("a", "b", "c"), (0, 1, 2))
        self.assertEqual(apply_transposition(phi, 0, 2).values, (2, 1, 0))
        with self.assertRaises(ArgumentError):
            apply_transposition(phi, 1, 1)

    def test_value_permutation_and_cycles(self) -> None:
        sigma = Permutation.from_mapping({0: 1, 1: 2, 2: 0})
        phi = ConceptMapping(("a", "b", "c"), (0, 1, 2))
        self.assertEqual(compose_value_permutation(sigma, phi).values, (1, 2, 0))
        self.assertEqual(sigma.cycle_notation(), "(0 1 2)")
        self.assertEqual(sigma.order(), 3)
        self.assertTrue(sigma.compose(sigma.inverse()).is_identity())
        self.assertEqual(str(Permutation.identity((0, 1))), "id")

    def test_cycles_are_written_in_concept_labels(self) -> None:
        sigma = Permutation.from_mapping({2: 5, 5: 9, 9: 2, 11: 11})
        self.assertEqual(sigma.cycle_notation(), "(2 5 9)")
        self.assertEqual(sigma.inverse().cycle_notation(), "(2 9 5)")
        self.assertEqual(sigma.as_sympy().array_form, [1, 2, 0, 3])

    def test_carrying_recovers_the_permutation(self) -> None:
        base = ConceptMapping(("a", "b", "c"), (0, 1, 2))
        target = base.with_values((2, 0, 1))
        sigma = Permutation.carrying(base, target)
        self.assertEqual(compose_value_permutation(sigma, base), target)

    def test_rejects_non_permutation(self) -> None:
        with self.assertRaises(ArgumentError):
            Permutation.from_mapping({0: 1, 1: 1})


@st.composite
def _acting_pairs(draw, bijective: bool = False):
    """(concepts, mapping, sigma, tau) over arbitrary integer labels."""
    concepts = draw(st.lists(st.integers(-6, 20), min_size=2, max_size=5, unique=True))
    if bijective:
        values = draw(st.permutations(concepts))
    else:
        values = draw(st.lists(st.sampled_from(concepts), min_size=1, max_size=5))
    phi = ConceptMapping(tuple(f"n{i}" for i in range(len(values))), tuple(values))
    sigma = Permutation(tuple(zip(concepts, draw(st.permutations(concepts)))))
    tau = Permutation(tuple(zip(concepts, draw(st.permutations(concepts)))))
    return concepts, phi, sigma, tau


class ActionPropertiesTestCase(unittest.TestCase):
    @settings(max_examples=100, deadline=None)
    @given(_acting_pairs(), st.data())
    def test_transposition_is_an_involution(self, drawn, data) -> None:
        concepts, phi, _, _ = drawn
        s_i, s_j = data.draw(st.lists(st.sampled_from(concepts), min_size=2, max_size=2, unique=True))
        self.assertEqual(apply_transposition(apply_transposition(phi, s_i, s_j), s_i, s_j), phi)

    @settings(max_examples=100, deadline=None)
    @given(_acting_pairs())
    def test_value_permutations_act_compatibly(self, drawn) -> None:
        concepts, phi, sigma, tau = drawn
        self.assertEqual(
            compose_value_permutation(sigma.compose(tau), phi, concepts),
            compose_value_permutation(sigma, compose_value_permutation(tau, phi, concepts), concepts),
        )
        for s in concepts:
            self.assertEqual(sigma.compose(tau)(s), sigma(tau(s)))

    @settings(max_examples=100, deadline=None)
    @given(_acting_pairs(bijective=True), st.data())
    def test_both_actions_keep_bijections_bijective(self, drawn, data) -> None:
        concepts, phi, sigma, _ = drawn
        s_i, s_j = data.draw(st.lists(st.sampled_from(concepts), min_size=2, max_size=2, unique=True))
        self.assertTrue(phi.is_bijective(concepts))
        self.assertTrue(apply_transposition(phi, s_i, s_j).is_bijective(concepts))
        self.assertTrue(compose_value_permutation(sigma, phi, concepts).is_bijective(concepts))

    @settings(max_examples=100, deadline=None)
    @given(_acting_pairs())
    def test_inverse_order_and_cycles_agree(self, drawn) -> None:
        concepts, _, sigma, _ = drawn
        self.assertTrue(sigma.compose(sigma.inverse()).is_identity())
        self.assertTrue(sigma.inverse().compose(sigma).is_identity())
        power = Permutation.identity(concepts)
        for _ in range(sigma.order()):
            power = power.compose(sigma)
        self.assertTrue(power.is_identity())
        moved = sorted(v for cyc in sigma.cycles() for v in cyc)
        self.assertEqual(moved, sorted(s for s in concepts if sigma(s) != s))
        for cyc in sigma.cycles():
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                self.assertEqual(sigma(a), b)


if __name__ == "__main__":
    unittest.main()
