from __future__ import annotations

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from nslcheck.bench.domains import fixture
from nslcheck.core import ArgumentError, MappingMode, Pin, PinSet, ResourceLimitError
from nslcheck.service import (
    RepairOutcome,
    greedy_repair,
    minimal_repair_bruteforce,
    random_repair,
    repair_sweep,
)
from nslcheck.solver import verify

from tests.nsl_strategies import small_problems


def _single_pins(p):
    return [PinSet(((name, value),)) for name, value in zip(p.outputs, p.intended.values)]


class GreedyRepairTestCase(unittest.TestCase):
    def test_four_node_trace(self) -> None:
        p = fixture("four-node-addition").problem
        trace = greedy_repair(p, MappingMode.BIJECTION, 100, 10_000)
        self.assertEqual(trace.outcome, RepairOutcome.REPAIRED)
        self.assertEqual(trace.added, (Pin("n1", 1), Pin("n0", 0)))
        self.assertEqual(trace.verification_calls, 3)
        first = trace.iterations[0]
        self.assertEqual(first.detected_shortcut.values, (0, 2, 1, 3))
        self.assertEqual(first.disagreement_set, ("n1", "n2"))
        self.assertEqual(first.shortcuts_before, 7)
        self.assertEqual(trace.iterations[1].shortcuts_before, 1)
        self.assertEqual(trace.final_constraints[-2:], (Pin("n1", 1), Pin("n0", 0)))

    def test_repaired_problem_is_shortcut_free(self) -> None:
        p = fixture("four-node-addition").problem
        trace = greedy_repair(p, MappingMode.BIJECTION, 100, 10_000)
        repaired = p.with_constraints(trace.added)
        self.assertTrue(verify(repaired, MappingMode.BIJECTION, 10).shortcut_free)

    def test_mnist_half_function_mode(self) -> None:
        trace = greedy_repair(fixture("mnist-half").problem, MappingMode.FUNCTION, 100, 10_000)
        self.assertEqual(trace.added, (Pin("n2", 2),))

    def test_already_free(self) -> None:
        trace = greedy_repair(fixture("mnist-half").problem, MappingMode.BIJECTION, 100, 10_000)
        self.assertEqual(trace.outcome, RepairOutcome.REPAIRED)
        self.assertEqual(trace.constraints_added, 0)
        self.assertEqual(trace.verification_calls, 1)

    def test_timeout(self) -> None:
        trace = greedy_repair(fixture("four-node-addition").problem, MappingMode.BIJECTION, 1, 10_000)
        self.assertEqual(trace.outcome, RepairOutcome.TIMEOUT)
        self.assertEqual(trace.constraints_added, 1)
        self.assertEqual(trace.verification_calls, 2)

    def test_intended_invalid(self) -> None:
        p = fixture("four-node-addition").problem.with_constraints([Pin("n0", 1)])
        trace = greedy_repair(p, MappingMode.BIJECTION, 10, 100)
        self.assertEqual(trace.outcome, RepairOutcome.INTENDED_INVALID)

    def test_negative_bound(self) -> None:
        with self.assertRaises(ArgumentError):
            greedy_repair(fixture("four-node-addition").problem, MappingMode.BIJECTION, -1, 100)


class RandomRepairTestCase(unittest.TestCase):
    def test_same_seed_same_trace(self) -> None:
        p = fixture("four-node-addition").problem
        a = random_repair(p, MappingMode.FUNCTION, 100, 10_000, seed=7)
        b = random_repair(p, MappingMode.FUNCTION, 100, 10_000, seed=7)
        self.assertEqual(a, b)
        self.assertEqual(a.outcome, RepairOutcome.REPAIRED)

    def test_sweep(self) -> None:
        p = fixture("four-node-addition").problem
        sweep = repair_sweep(p, MappingMode.BIJECTION, 100, 10_000, list(range(5)))
        self.assertEqual(sweep.runs, 5)
        self.assertEqual(sweep.success_rate, 1.0)
        # every run needs at least two pins and at most four
        self.assertGreaterEqual(sweep.mean_constraints, 2.0)
        self.assertLessEqual(sweep.mean_constraints, 4.0)
        self.assertAlmostEqual(sweep.mean_iterations, sweep.mean_constraints + 1)

    def test_mnist_half_function_mode_always_repairs(self) -> None:
        sweep = repair_sweep(fixture("mnist-half").problem, MappingMode.FUNCTION, 100, 10_000, range(100))
        self.assertEqual(sweep.runs, 100)
        self.assertEqual(sweep.success_rate, 1.0)
        # two shortcuts, each pin removes at least one
        self.assertTrue(all(1 <= t.constraints_added <= 2 for _, t in sweep.traces))

    def test_sweep_needs_seeds(self) -> None:
        with self.assertRaises(ArgumentError):
            repair_sweep(fixture("four-node-addition").problem, MappingMode.BIJECTION, 10, 100, [])


class MinimalRepairTestCase(unittest.TestCase):
    def test_four_node_needs_two_pins(self) -> None:
        p = fixture("four-node-addition").problem
        found = minimal_repair_bruteforce(p, _single_pins(p), 4, MappingMode.BIJECTION)
        self.assertEqual(found.size, 2)
        self.assertEqual(found.indices, (0, 1))

    def test_budget_too_small(self) -> None:
        p = fixture("four-node-addition").problem
        self.assertIsNone(minimal_repair_bruteforce(p, _single_pins(p), 1, MappingMode.BIJECTION))

    def test_zero_budget_on_free_problem(self) -> None:
        p = fixture("mnist-half").problem
        found = minimal_repair_bruteforce(p, _single_pins(p), 0, MappingMode.BIJECTION)
        self.assertEqual(found.size, 0)

    def test_guard(self) -> None:
        p = fixture("four-node-addition").problem
        with self.assertRaises(ResourceLimitError):
            minimal_repair_bruteforce(p, _single_pins(p), 4, MappingMode.BIJECTION, max_subsets=3)


class RepairPropertyTestCase(unittest.TestCase):
    @settings(max_examples=50, deadline=None)
    @given(small_problems(), st.integers(min_value=0, max_value=2**32))
    def test_repair_invariants(self, p, seed) -> None:
        k = verify(p, MappingMode.FUNCTION, 10_000).multiplicity
        for trace in (
            greedy_repair(p, MappingMode.FUNCTION, 100, 10_000),
            random_repair(p, MappingMode.FUNCTION, 100, 10_000, seed),
        ):
            self.assertEqual(trace.outcome, RepairOutcome.REPAIRED)
            self.assertLessEqual(trace.constraints_added, k)
            self.assertEqual(trace.verification_calls, trace.constraints_added + 1)
            before = [it.shortcuts_before for it in trace.iterations]
            self.assertEqual(before, sorted(set(before), reverse=True))
            for pin in trace.added:
                self.assertEqual(p.intended[pin.output], pin.concept)


if __name__ == "__main__":
    unittest.main()
