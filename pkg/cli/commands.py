"""
commands.py - One handler per CLI verb; each returns the process exit code
"""
import argparse
import logging
import sys
from typing import Any, Dict, List

from cli.coloring_file import emit, read_coloring, write_coloring
from cli.report import render
from core.coloring import StarUnionPattern
from core.config import ToolkitConfig, resolve_workers
from core.detectors import find_rainbow_triangle
from core.errors import GallaiInputError, SearchInconclusive, SearchPaused
from search.engine import SearchEngine, SearchProblem
from verifier import formulas
from verifier.constructions import (GENERAL, VerificationStatus, Witness, build_witness, construction_grid,
                                    general_construction_fails, pentagon_blowup, verify_witness)
from verifier.gallai_partition import find_gallai_partition, random_gallai, reduced_graph
from verifier.stability import check_star_stability, stability_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3

CONSTRUCTION_ALIASES = {"star": "single-star"}


def _emit(title: str, report: Dict[str, Any], args: argparse.Namespace, config: ToolkitConfig) -> None:
    print(render(title, report, getattr(args, 'json', False), config.output))


def parse_pattern(text: str) -> StarUnionPattern:
    try:
        n, m = (int(part) for part in text.split(","))
    except ValueError as e:
        raise GallaiInputError(f"pattern must look like 'n,m', got {text!r}") from e
    return StarUnionPattern(n, m)


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise GallaiInputError(f"expected comma-separated integers, got {text!r}") from e


def cmd_construct(args: argparse.Namespace, config: ToolkitConfig) -> int:
    """Build a witness, verify it and write it when it passes"""
    if args.grid:
        return _construct_grid(args, config)

    if args.kind == "random":
        if args.order is None:
            raise GallaiInputError("construct random needs --order")
        g = random_gallai(args.seed, args.order, args.k, args.depth)
        report = {"kind": "random", "seed": args.seed, "order": g.order, "num_colors": g.num_colors,
                  "depth": args.depth}
        return _write_or_report("Random Gallai colouring", g, report, args, config)

    if args.kind == "pentagon":
        if args.sizes is None:
            raise GallaiInputError("construct pentagon needs --sizes a,b,c,d,e")
        arrangement = parse_int_list(args.arrangement) if args.arrangement else None
        g = pentagon_blowup(parse_int_list(args.sizes), 1, (2, 3), arrangement, num_colors=max(args.k, 3))
        report = {"kind": "pentagon", "order": g.order, "part_sizes": parse_int_list(args.sizes),
                  "rainbow_triangle": find_rainbow_triangle(g)}
        return _write_or_report("Pentagon blow-up", g, report, args, config)

    construction = CONSTRUCTION_ALIASES.get(args.kind, args.kind)
    arrangement = parse_int_list(args.arrangement) if args.arrangement else None
    witness = build_witness(construction, args.n, args.m, args.k, arrangement)
    report = witness.to_dict()
    if witness.verified != VerificationStatus.PASS:
        _emit("Construction FAILED self-verification", report, args, config)
        return EXIT_REFUTED
    return _write_or_report(f"Construction {construction}", witness.coloring, report, args, config)


def _write_or_report(title: str, g, report: Dict[str, Any], args: argparse.Namespace,
                     config: ToolkitConfig) -> int:
    if args.out == "-":
        sys.stdout.write(emit(g))
        return EXIT_OK
    if args.out:
        write_coloring(args.out, g)
        report["written_to"] = args.out
    _emit(title, report, args, config)
    return EXIT_OK


def _construct_grid(args: argparse.Namespace, config: ToolkitConfig) -> int:
    counts = {"passed": 0, "failed_expected": 0, "unexpected": 0}
    unexpected = []
    for construction, n, m, k in construction_grid():
        witness = build_witness(construction, n, m, k)
        passed = witness.verified == VerificationStatus.PASS
        expected_fail = construction == GENERAL and general_construction_fails(n, m)
        if passed and not expected_fail:
            counts["passed"] += 1
        elif not passed and expected_fail:
            counts["failed_expected"] += 1
        else:
            counts["unexpected"] += 1
            unexpected.append([construction, n, m, k])
    report = {"grid": counts, "unexpected": unexpected}
    _emit("Construction grid", report, args, config)
    return EXIT_OK if not unexpected else EXIT_REFUTED


def cmd_verify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    """Exit 0 iff the file has no rainbow triangle and no monochromatic K(1,n) ∪ K(1,m)"""
    g = read_coloring(args.path)
    witness = verify_witness(Witness.from_coloring(g, args.n, args.m, args.claimed))
    _emit(f"Verify {args.path}", witness.to_dict(), args, config)
    return EXIT_OK if witness.verified == VerificationStatus.PASS else EXIT_REFUTED


def cmd_partition(args: argparse.Namespace, config: ToolkitConfig) -> int:
    g = read_coloring(args.path)
    partition = find_gallai_partition(g)
    if partition is None:
        report = {"partition": None, "rainbow_triangle": find_rainbow_triangle(g)}
        _emit(f"No Gallai partition of {args.path}", report, args, config)
        return EXIT_REFUTED
    report = partition.to_dict()
    report["reduced_palette"] = sorted(reduced_graph(g, partition).palette)
    _emit(f"Gallai partition of {args.path}", report, args, config)
    return EXIT_OK


def cmd_formula(args: argparse.Namespace, config: ToolkitConfig) -> int:
    result = formulas.evaluate(args.name, k=args.k, n=args.n, m=args.m)
    _emit(f"Formula {args.name}", result.to_dict(), args, config)
    return EXIT_OK


def _engine(args: argparse.Namespace, config: ToolkitConfig) -> SearchEngine:
    settings = config.search
    return SearchEngine(
        node_budget=args.budget if args.budget is not None else settings.node_budget,
        time_budget=args.time_budget if args.time_budget is not None else settings.time_budget_seconds,
        workers=resolve_workers(args.threads, config),
        shard_depth=settings.shard_depth,
        prune=not args.no_prune,
    )


def cmd_search(args: argparse.Namespace, config: ToolkitConfig) -> int:
    engine = _engine(args, config)
    pattern = parse_pattern(args.pattern)
    gallai = args.mode == "gallai"
    try:
        if args.action == "threshold":
            threshold = engine.threshold(args.k, pattern, gallai, args.max)
            report = {"k": args.k, "pattern": pattern.to_dict(), "mode": args.mode, "n_max": args.max,
                      "threshold": threshold}
            _emit("Search threshold", report, args, config)
            return EXIT_OK

        if args.order is None:
            raise GallaiInputError("search decide needs --order")
        problem = SearchProblem(args.k, pattern, gallai, args.order)
        if args.resume:
            outcome = engine.resume(args.resume, problem, args.pause_after)
        else:
            outcome = engine.decide(problem, args.checkpoint, args.pause_after)
        _emit("Search decide", outcome.to_dict(), args, config)
        return EXIT_OK
    except SearchPaused as e:
        _emit("Search paused", {"checkpoint": e.checkpoint_path, "nodes_explored": e.nodes_explored}, args, config)
        return EXIT_INCONCLUSIVE


def cmd_stability(args: argparse.Namespace, config: ToolkitConfig) -> int:
    min_n = config.stability.min_n
    if args.sweep:
        n_min = args.n_min if args.n_min is not None else config.stability.sweep_n_min
        n_max = args.n_max if args.n_max is not None else config.stability.sweep_n_max
        reports = stability_sweep(range(n_min, n_max + 1), min_n=min_n)
        counterexamples = [rep.to_dict() for rep in reports if rep.counterexample]
        summary = {
            "n_range": [n_min, n_max],
            "reports": len(reports),
            "hypothesis_holds": sum(rep.holds_hypothesis for rep in reports),
            "counterexamples": counterexamples,
        }
        _emit("Stability sweep", summary, args, config)
        return EXIT_REFUTED if counterexamples else EXIT_OK

    if args.n is None or args.r is None:
        raise GallaiInputError("stability needs --n and --r (or --sweep)")
    if args.path:
        g = read_coloring(args.path)
    elif args.sizes:
        g = pentagon_blowup(parse_int_list(args.sizes), 1, (2, 3))
    else:
        raise GallaiInputError("stability needs a coloring file or --sizes")
    report = check_star_stability(g, args.n, args.r, min_n)
    _emit("Stability report", report.to_dict(), args, config)
    return EXIT_REFUTED if report.counterexample else EXIT_OK


def cmd_certify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    from verifier.workflow import certify_construction

    construction = CONSTRUCTION_ALIASES.get(args.kind, args.kind)
    state = certify_construction(construction, args.n, args.m, args.k, verbose=not args.json)
    if state.get('error'):
        raise GallaiInputError(state['error'])
    if args.json:
        report = {
            "certified": state['certified'],
            "verification": state.get('verification'),
            "recovery": state.get('recovery_result'),
            "partition": state.get('partition'),
            "crosscheck": state.get('crosscheck'),
        }
        _emit("Certify", report, args, config)
    return EXIT_OK if state['certified'] else EXIT_REFUTED


def run_command(args: argparse.Namespace, config: ToolkitConfig) -> int:
    """Dispatch to the verb handler and map toolkit errors onto exit codes"""
    handlers = {
        "construct": cmd_construct,
        "verify": cmd_verify,
        "partition": cmd_partition,
        "formula": cmd_formula,
        "search": cmd_search,
        "stability": cmd_stability,
        "certify": cmd_certify,
    }
    try:
        return handlers[args.command](args, config)
    except SearchInconclusive as e:
        print(f"Inconclusive: {e} ({e.nodes_explored} nodes explored)", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except GallaiInputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
