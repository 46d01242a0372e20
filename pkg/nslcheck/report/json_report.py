"""Versioned JSON reports.

Field order is fixed and nothing time-dependent goes into a report, so the
same input always produces the same bytes. Every count travels with its
exactness flag; counts from a saturated enumeration display as lower bounds.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Optional, Sequence, Tuple

from nslcheck import __version__
from nslcheck.analysis.graph import ConstraintGraph
from nslcheck.analysis.symmetry import AutomorphismReport, DiscriminationReport
from nslcheck.bench.domains import NamedFixture
from nslcheck.config.settings import report_schema_version
from nslcheck.core.model import ConceptMapping, Problem
from nslcheck.dsl.serializer import format_constraint, serialize_problem
from nslcheck.reductions.cnf import CnfReductionCheck
from nslcheck.reductions.setcover import SetCoverReductionCheck
from nslcheck.service.queries import QuerySweep, QueryTrace
from nslcheck.service.repair import MinimalRepair, RepairSweep, RepairTrace
from nslcheck.solver.enumerator import VerificationResult
from nslcheck.solver.measures import AmbiguityMeasures


def problem_digest(p: Problem) -> str:
    return "sha256:" + hashlib.sha256(serialize_problem(p).encode("utf-8")).hexdigest()


def count_field(value: int, exact: bool) -> Dict[str, Any]:
    return {"value": value, "exact": exact, "display": str(value) if exact else f"≥ {value}"}


def _mapping(phi: ConceptMapping) -> List[int]:
    return list(phi.values)


def make_report(
    command: str,
    result: Dict[str, Any],
    exact: bool,
    problem: Optional[Problem] = None,
) -> Dict[str, Any]:
    return {
        "schema_version": report_schema_version(),
        "tool": {"name": "nslcheck", "version": __version__},
        "command": command,
        "problem_digest": problem_digest(problem) if problem is not None else None,
        "exact": exact,
        "result": result,
    }


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def verification_payload(p: Problem, result: VerificationResult) -> Dict[str, Any]:
    return {
        "status": result.status.value,
        "mode": result.mode.label,
        "cap": result.cap,
        "outputs": list(p.outputs),
        "intended": _mapping(p.intended),
        "multiplicity": count_field(result.multiplicity, result.exact),
        "shortcuts": [_mapping(s) for s in result.shortcuts],
    }


def measures_payload(m: AmbiguityMeasures, mode_label: str) -> Dict[str, Any]:
    return {
        "mode": mode_label,
        "multiplicity": count_field(m.multiplicity, m.exact),
        "ambiguity": count_field(m.ambiguity, m.exact),
        "disagreement_positions": list(m.disagreement_positions),
        "disagreement_size": count_field(len(m.disagreement_positions), m.exact),
    }


def graph_payload(
    graph: ConstraintGraph,
    projections: Optional[Sequence[Tuple[Tuple[str, ...], int]]] = None,
    exact: bool = True,
) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "vertices": list(graph.vertices),
        "edges": [list(e) for e in graph.sorted_edges()],
        "components": [list(c) for c in graph.components],
        "connected": graph.is_connected,
    }
    if projections is not None:
        payload["projection_counts"] = [
            {"component": list(comp), "count": count_field(n, exact)} for comp, n in projections
        ]
    return payload


def discrimination_payload(report: DiscriminationReport) -> Dict[str, Any]:
    w = report.violating_witness
    return {
        "discriminative": report.discriminative,
        "witness": None if w is None else {
            "mapping": _mapping(w.mapping),
            "pair": list(w.pair),
            "transposed": _mapping(w.transposed),
        },
    }


def automorphism_payload(report: AutomorphismReport) -> Dict[str, Any]:
    return {
        "order": report.order,
        "trivial": report.is_trivial,
        "transitive_on_solutions": report.is_transitive_on_solutions,
        "elements": [str(sigma) for sigma in report.elements],
        "witnesses": [
            {"permutation": str(sigma), "from": _mapping(a), "to": _mapping(b)}
            for sigma, a, b in report.witnesses
        ],
        "orbits": [[_mapping(phi) for phi in orbit] for orbit in report.orbits],
    }


def repair_payload(trace: RepairTrace) -> Dict[str, Any]:
    return {
        "outcome": trace.outcome.value,
        "constraints_added": trace.constraints_added,
        "verification_calls": trace.verification_calls,
        "iterations": [
            {
                "shortcut": _mapping(it.detected_shortcut),
                "disagreement": list(it.disagreement_set),
                "added": format_constraint(it.added_constraint),
                "shortcuts_before": count_field(it.shortcuts_before, it.exact),
            }
            for it in trace.iterations
        ],
        "final_constraints": [format_constraint(c) for c in trace.final_constraints],
    }


def repair_sweep_payload(sweep: RepairSweep) -> Dict[str, Any]:
    return {
        "runs": sweep.runs,
        "mean_iterations": round(sweep.mean_iterations, 6),
        "mean_constraints": round(sweep.mean_constraints, 6),
        "success_rate": round(sweep.success_rate, 6),
        "per_seed": [
            {"seed": seed, "outcome": t.outcome.value, "constraints_added": t.constraints_added}
            for seed, t in sweep.traces
        ],
    }


def minimal_repair_payload(repair: Optional[MinimalRepair], budget: int) -> Dict[str, Any]:
    return {
        "budget": budget,
        "found": repair is not None,
        "size": repair.size if repair else None,
        "indices": list(repair.indices) if repair else None,
        "constraints": [format_constraint(c) for c in repair.constraints] if repair else None,
    }


def query_payload(trace: QueryTrace) -> Dict[str, Any]:
    return {
        "strategy": trace.strategy.value,
        "identified": trace.identified,
        "query_count": trace.query_count,
        "bounds": {"lower": trace.bounds.lower, "upper": trace.bounds.upper},
        "queries": [
            {
                "position": q.position,
                "answer": q.answer,
                "candidates_before": q.candidates_before,
                "candidates_after": q.candidates_after,
            }
            for q in trace.queries
        ],
        "survivor": _mapping(trace.survivor) if trace.survivor is not None else None,
    }


def query_sweep_payload(sweep: QuerySweep) -> Dict[str, Any]:
    return {
        "strategy": sweep.strategy.value,
        "runs": sweep.runs,
        "mean": round(sweep.mean, 6),
        "min": sweep.minimum,
        "max": sweep.maximum,
        "all_identified": sweep.all_identified,
    }


def cnf_check_payload(check: CnfReductionCheck, num_vars: int, num_clauses: int) -> Dict[str, Any]:
    return {
        "vars": num_vars,
        "clauses": num_clauses,
        "sharp_sat": check.sharp_sat,
        "multiplicity": count_field(check.multiplicity, check.exact),
        "identity_holds": check.holds,
    }


def setcover_check_payload(check: SetCoverReductionCheck, elements: int, sets: int) -> Dict[str, Any]:
    return {
        "elements": elements,
        "sets": sets,
        "min_cover": check.min_cover,
        "minimal_repair": check.minimal_repair,
        "identity_holds": check.holds,
    }


def fixture_payload(fx: NamedFixture) -> Dict[str, Any]:
    return {
        "name": fx.name,
        "description": fx.description,
        "expected_multiplicity": {mode.label: n for mode, n in fx.expected.items()},
        "source": serialize_problem(fx.problem),
    }
