from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
import typer

try:  # newer typer releases vendor click; catch the exceptions typer raises
    from typer._click import exceptions as click_exceptions
except ImportError:  # pragma: no cover - typer using upstream click
    click_exceptions = click.exceptions

from nslcheck.analysis.graph import component_projection_counts, constraint_graph
from nslcheck.analysis.symmetry import automorphism_group, check_discrimination
from nslcheck.bench.domains import FIXTURE_NAMES, fixture
from nslcheck.config.settings import (
    ASP_SOLVER_ENV,
    SETTINGS_PATH,
    Settings,
    default_max_iterations,
    report_schema_version,
    resolve_asp_solver,
)
from nslcheck.core.constraints import PinSet
from nslcheck.core.errors import ArgumentError, NslError, PreconditionError, ProblemSourceError
from nslcheck.core.model import MappingMode, Problem, is_valid
from nslcheck.dsl.parser import load_problem
from nslcheck.dsl.serializer import serialize_problem
from nslcheck.reductions.cnf import check_cnf_reduction, cnf_to_nsl
from nslcheck.reductions.dimacs import parse_dimacs
from nslcheck.reductions.setcover import check_setcover_reduction, parse_setcover, setcover_to_repair
from nslcheck.report import json_report as jr
from nslcheck.report.asp import count_answer_sets, export_asp
from nslcheck.report.human import render_human
from nslcheck.service.queries import QueryStrategy, query_sweep, run_strategy
from nslcheck.service.repair import (
    RepairOutcome,
    greedy_repair,
    minimal_repair_bruteforce,
    random_repair,
    repair_sweep,
)
from nslcheck.solver.enumerator import VerificationStatus, enumerate_valid, verify
from nslcheck.solver.measures import measures as compute_measures


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INTENDED_INVALID = 2
EXIT_USAGE = 3

app = typer.Typer(
    help="nslcheck: find, explain and repair reasoning shortcuts in constraint problems",
    add_completion=False,
    no_args_is_help=True,
)

MODE_HELP = "Mapping mode: fn (any function) or bij (bijections only)."
HUMAN_HELP = "Print a readable summary instead of JSON."


@app.callback()
def main_options(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for progress, -vv for detail."),
) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s", stream=sys.stderr, force=True)


def _settings() -> Settings:
    return Settings.load()


def _mode(text: Optional[str]) -> MappingMode:
    return MappingMode.parse(text or _settings().default_mode)


def _cap(value: Optional[int]) -> int:
    cap = value if value is not None else _settings().effective_cap()
    if cap < 1:
        raise ArgumentError(f"--cap must be >= 1, got {cap}")
    return cap


def _emit(report: Dict[str, Any], human: bool) -> None:
    typer.echo(render_human(report) if human else jr.dumps(report), nl=False)


def _finish(code: int) -> None:
    raise typer.Exit(code)


def _intended_invalid(command: str, p: Problem, mode: MappingMode, human: bool) -> None:
    result = {"status": VerificationStatus.INTENDED_INVALID.value, "mode": mode.label}
    _emit(jr.make_report(command, result, True, p), human)
    _finish(EXIT_INTENDED_INVALID)


def _valid_set(command: str, p: Problem, mode: MappingMode, cap: int, human: bool):
    p.check_mode(mode)
    if not is_valid(p, p.intended, mode):
        _intended_invalid(command, p, mode, human)
    return enumerate_valid(p, mode, cap)


@app.command("verify")
def verify_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Check whether the constraints admit any mapping besides the intended one."""
    p = load_problem(path)
    m = _mode(mode)
    result = verify(p, m, _cap(cap))
    _emit(jr.make_report("verify", jr.verification_payload(p, result), result.exact, p), human)
    codes = {
        VerificationStatus.SHORTCUT_FREE: EXIT_OK,
        VerificationStatus.SHORTCUTS_FOUND: EXIT_FINDING,
        VerificationStatus.INTENDED_INVALID: EXIT_INTENDED_INVALID,
    }
    _finish(codes[result.status])


@app.command("measures")
def measures_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Shortcut multiplicity, ambiguity and disagreement positions."""
    p = load_problem(path)
    m = _mode(mode)
    solutions, saturated = _valid_set("measures", p, m, _cap(cap), human)
    result = compute_measures(solutions, saturated)
    _emit(jr.make_report("measures", jr.measures_payload(result, m.label), result.exact, p), human)
    _finish(EXIT_OK)


@app.command("graph")
def graph_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Also count per-component restrictions in this mode."),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Constraint graph and its connected components."""
    p = load_problem(path)
    graph = constraint_graph(p)
    projections = None
    exact = True
    if mode is not None:
        solutions, saturated = _valid_set("graph", p, _mode(mode), _cap(cap), human)
        projections = component_projection_counts(graph, solutions)
        exact = not saturated
    _emit(jr.make_report("graph", jr.graph_payload(graph, projections, exact), exact, p), human)
    _finish(EXIT_OK)


@app.command("discriminate")
def discriminate_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Look for a valid mapping that stays valid under a concept transposition."""
    p = load_problem(path)
    solutions, saturated = _valid_set("discriminate", p, _mode(mode), _cap(cap), human)
    report = check_discrimination(p, solutions, saturated)
    _emit(jr.make_report("discriminate", jr.discrimination_payload(report), True, p), human)
    _finish(EXIT_OK)


@app.command("automorphisms")
def automorphisms_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Concept permutations that map the bijective valid set onto itself."""
    p = load_problem(path)
    solutions, saturated = _valid_set("automorphisms", p, MappingMode.BIJECTION, _cap(cap), human)
    report = automorphism_group(solutions, saturated, p.concepts)
    _emit(jr.make_report("automorphisms", jr.automorphism_payload(report), True, p), human)
    _finish(EXIT_OK)


@app.command("repair")
def repair_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    strategy: str = typer.Option("greedy", "--strategy", help="greedy, random or minimal."),
    seed: int = typer.Option(0, "--seed", help="Seed for the random strategy (first seed of a sweep)."),
    max_iterations: Optional[int] = typer.Option(None, "--T", "--max-iterations", help="Iteration bound."),
    runs: int = typer.Option(1, "--runs", help="Random strategy: number of seeds to sweep."),
    budget: Optional[int] = typer.Option(None, "--budget", help="Minimal strategy: largest repair size."),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Add pinning constraints until no shortcut remains."""
    p = load_problem(path)
    m = _mode(mode)
    c = _cap(cap)
    T = max_iterations if max_iterations is not None else default_max_iterations()
    kind = strategy.strip().lower()

    if kind == "minimal":
        library = [PinSet(((name, value),)) for name, value in zip(p.outputs, p.intended.values)]
        limit = budget if budget is not None else len(library)
        p.check_mode(m)
        if not is_valid(p, p.intended, m):
            _intended_invalid("repair", p, m, human)
        found = minimal_repair_bruteforce(p, library, limit, m)
        _emit(jr.make_report("repair", jr.minimal_repair_payload(found, limit), True, p), human)
        _finish(EXIT_OK if found is not None else EXIT_FINDING)

    if kind == "random" and runs > 1:
        sweep = repair_sweep(p, m, T, c, list(range(seed, seed + runs)))
        exact = all(t.exact for _, t in sweep.traces)
        _emit(jr.make_report("repair", jr.repair_sweep_payload(sweep), exact, p), human)
        _finish(EXIT_OK if sweep.success_rate == 1.0 else EXIT_FINDING)

    if kind == "greedy":
        trace = greedy_repair(p, m, T, c)
    elif kind == "random":
        trace = random_repair(p, m, T, c, seed)
    else:
        raise ArgumentError(f"unknown repair strategy {strategy!r} (use greedy, random or minimal)")
    _emit(jr.make_report("repair", jr.repair_payload(trace), trace.exact, p), human)
    codes = {
        RepairOutcome.REPAIRED: EXIT_OK,
        RepairOutcome.TIMEOUT: EXIT_FINDING,
        RepairOutcome.INTENDED_INVALID: EXIT_INTENDED_INVALID,
    }
    _finish(codes[trace.outcome])


@app.command("queries")
def queries_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    strategy: str = typer.Option("u", "--strategy", help="u (uncertainty), g (greedy) or r (random)."),
    seed: int = typer.Option(0, "--seed", help="Seed for the random strategy (first seed of a sweep)."),
    runs: int = typer.Option(1, "--runs", help="Number of seeds to sweep."),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Simulate label queries until the intended mapping is singled out."""
    p = load_problem(path)
    m = _mode(mode)
    chosen = QueryStrategy.parse(strategy)
    solutions, saturated = _valid_set("queries", p, m, _cap(cap), human)
    if saturated:
        raise PreconditionError(
            f"query simulation needs the exact valid set, enumeration stopped at the cap of {len(solutions)}"
        )
    r = len(p.concepts)
    if runs > 1:
        sweep = query_sweep(solutions, p.intended, chosen, list(range(seed, seed + runs)), r)
        _emit(jr.make_report("queries", jr.query_sweep_payload(sweep), True, p), human)
        _finish(EXIT_OK if sweep.all_identified else EXIT_FINDING)
    trace = run_strategy(solutions, p.intended, chosen, seed, r)
    _emit(jr.make_report("queries", jr.query_payload(trace), True, p), human)
    _finish(EXIT_OK if trace.identified else EXIT_FINDING)


@app.command("reduce-cnf")
def reduce_cnf_cmd(
    path: Path = typer.Argument(..., help="DIMACS CNF file"),
    write: Optional[Path] = typer.Option(None, "--write", help="Also save the encoded problem as .nsl."),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Check that shortcut count of the encoded problem equals #SAT of the formula."""
    formula = parse_dimacs(path.read_text(encoding="utf-8"))
    problem = cnf_to_nsl(formula)
    if write is not None:
        write.write_text(serialize_problem(problem), encoding="utf-8")
    check = check_cnf_reduction(formula, _cap(cap))
    payload = jr.cnf_check_payload(check, formula.num_vars, len(formula.clauses))
    _emit(jr.make_report("reduce-cnf", payload, check.exact, problem), human)
    _finish(EXIT_OK if check.holds else EXIT_FINDING)


@app.command("reduce-setcover")
def reduce_setcover_cmd(
    path: Path = typer.Argument(..., help="set-cover instance file"),
    write: Optional[Path] = typer.Option(None, "--write", help="Also save the encoded problem as .nsl."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Check that minimal repair size equals the minimum set cover."""
    inst = parse_setcover(path.read_text(encoding="utf-8"))
    problem, _ = setcover_to_repair(inst)
    if write is not None:
        write.write_text(serialize_problem(problem), encoding="utf-8")
    check = check_setcover_reduction(inst)
    payload = jr.setcover_check_payload(check, len(inst.universe), len(inst.sets))
    _emit(jr.make_report("reduce-setcover", payload, True, problem), human)
    _finish(EXIT_OK if check.holds else EXIT_FINDING)


@app.command("export-asp")
def export_asp_cmd(
    path: Path = typer.Argument(..., help=".nsl problem file"),
    mode: Optional[str] = typer.Option(None, "--mode", help=MODE_HELP),
    exclude_intended: bool = typer.Option(
        True, "--exclude-intended/--keep-intended", help="Drop the intended mapping from the answer sets."
    ),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the program here instead of stdout."),
    check: bool = typer.Option(False, "--check", help="Count answer sets and compare with the enumerator."),
    cap: Optional[int] = typer.Option(None, "--cap", help="Model cap for enumeration."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Emit an answer-set program whose answer sets are the valid mappings."""
    p = load_problem(path)
    m = _mode(mode)
    program = export_asp(p, m, exclude_intended)
    if output is not None:
        output.write_text(program, encoding="utf-8")
    elif not check:
        typer.echo(program, nl=False)
    if not check:
        _finish(EXIT_OK)

    solver = resolve_asp_solver(_settings())
    answer_sets = count_answer_sets(program, solver)
    models, saturated = enumerate_valid(p, m, _cap(cap), exclude_intended)
    agree = not saturated and answer_sets == len(models)
    payload = {
        "mode": m.label,
        "solver": solver or "clingo (python module)",
        "answer_sets": answer_sets,
        "enumerated": jr.count_field(len(models), not saturated),
        "agree": agree,
    }
    _emit(jr.make_report("export-asp", payload, not saturated, p), human)
    _finish(EXIT_OK if agree else EXIT_FINDING)


@app.command("fixture")
def fixture_cmd(
    name: str = typer.Argument(..., help=f"One of: {', '.join(FIXTURE_NAMES)}"),
    write: Optional[Path] = typer.Option(None, "--write", help="Directory to save <name>.nsl into."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Show a built-in problem and its known shortcut counts."""
    fx = fixture(name)
    if write is not None:
        write.mkdir(parents=True, exist_ok=True)
        (write / f"{fx.name}.nsl").write_text(serialize_problem(fx.problem), encoding="utf-8")
    _emit(jr.make_report("fixture", jr.fixture_payload(fx), True, fx.problem), human)
    _finish(EXIT_OK)


@app.command("config")
def config_cmd(
    asp_solver: Optional[str] = typer.Option(None, "--asp-solver", help="Save the path of an ASP solver binary."),
    mode: Optional[str] = typer.Option(None, "--mode", help="Save the default mapping mode."),
    cap: Optional[int] = typer.Option(None, "--cap", help="Save the default model cap (0 restores the default)."),
    human: bool = typer.Option(False, "--human", help=HUMAN_HELP),
) -> None:
    """Show the resolved configuration, optionally saving new defaults."""
    settings = _settings()
    changed = False
    if asp_solver is not None:
        settings.asp_solver = asp_solver
        changed = True
    if mode is not None:
        settings.default_mode = MappingMode.parse(mode).value
        changed = True
    if cap is not None:
        if cap < 0:
            raise ArgumentError(f"--cap must be >= 0, got {cap}")
        settings.default_cap = cap or None
        changed = True
    if changed:
        saved = settings.save()
        log.info("Saved settings to %s", saved)
    payload = {
        "settings_path": str(SETTINGS_PATH),
        "default_mode": MappingMode.parse(settings.default_mode).label,
        "model_cap": settings.effective_cap(),
        "repair_max_iterations": default_max_iterations(),
        "schema_version": report_schema_version(),
        "asp_solver": resolve_asp_solver(settings),
        "asp_solver_env": ASP_SOLVER_ENV,
    }
    _emit(jr.make_report("config", payload, True), human)
    _finish(EXIT_OK)


def _report_source_error(exc: ProblemSourceError) -> None:
    for diag in exc.diagnostics:
        typer.echo(f"{exc.source}:{diag}", err=True)


def run_cli(argv: Sequence[str] | None = None) -> int:
    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = app(args=args, prog_name="nslcheck", standalone_mode=False)
    except click_exceptions.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click_exceptions.Abort:
        return EXIT_USAGE
    except ProblemSourceError as exc:
        _report_source_error(exc)
        return EXIT_USAGE
    except (NslError, OSError) as exc:
        typer.echo(f"Error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
