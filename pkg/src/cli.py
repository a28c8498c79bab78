"""
Crossing-Depth Command Line

    python -m src.cli depth-line3 --input instance.json
    python -m src.cli gen --seed 7 --n 10 --dim 3 | python -m src.cli depth-line3
    python -m src.cli verify-witness --input instance.json --result result.json

Exit codes: 0 success, 2 input error, 3 verification mismatch, 4 unsupported flat.
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .depth_api import DepthEngine, DepthReport
from .exceptions import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    DepthError,
    DimensionMismatchError,
    InstanceError,
    VerificationError,
)
from .geometry.dual_reduce import CoveringInstance
from .geometry.exact_core import ArrangementFunctional, HomogeneousPoint, to_rat
from .instance_io import (
    InstanceFile,
    dumps_instance,
    dumps_result,
    emit,
    generate_instance,
    load_result,
    parse_instance,
    result_to_obj,
)
from .oracle import STRICT, brute_force_min, double_wedge_count

logger = logging.getLogger(__name__)

QUERY_COMMANDS = ("depth-line3", "depth-line2", "tukey2", "crossdist")


# ---------------------------------------------------------------------------
# Query execution
# ---------------------------------------------------------------------------


def run_query(engine: DepthEngine, instance: InstanceFile, kind: Optional[str] = None) -> DepthReport:
    """Run the instance's query; `kind` must agree with the query kind when given"""
    query = instance.query
    if query is None:
        raise InstanceError("missing field", "query")
    if kind is not None and query.kind != kind:
        raise InstanceError(f"query kind {query.kind!r} does not match subcommand {kind!r}", "query.kind")

    if query.kind == "crossdist":
        if instance.hyperplanes is None:
            raise InstanceError("crossdist needs 'hyperplanes'", "hyperplanes")
        return engine.crossing_distance(instance.hyperplanes, *query.flats)
    if instance.points is None:
        raise InstanceError(f"{query.kind} needs 'points'", "points")
    if query.kind == "depth-line3":
        return engine.regression_depth_line3(instance.points, query.line)
    if query.kind == "depth-line2":
        return engine.regression_depth_line2(instance.points, query.line)
    return engine.tukey_depth2(instance.points, query.point)


def verify_result(
    engine: DepthEngine,
    instance: InstanceFile,
    result: Dict[str, Any],
    check_optimal: bool = False,
) -> None:
    """Recount a ResultFile against its InstanceFile; raises VerificationError"""
    report = run_query(engine, instance, result.get("meta", {}).get("query"))
    inst = report.instance
    problems: List[str] = []

    if result.get("intersecting"):
        if not report.result.intersecting:
            problems.append("result claims intersecting flats but they do not meet")
        if result["distance"] != 0:
            problems.append("intersecting flats must report distance 0")
        if problems:
            raise VerificationError("; ".join(problems))
        return
    if not isinstance(inst, CoveringInstance):
        raise VerificationError("flats intersect; distance must be 0 and no witness given")

    witness = result.get("witness")
    if witness is None:
        raise VerificationError("result has no witness")
    if len(witness["u1"]) != instance.dimension + 1:
        raise DimensionMismatchError(
            f"expected {instance.dimension + 1} homogeneous coordinates, got {len(witness['u1'])}", "witness.u1"
        )
    u1 = HomogeneousPoint(tuple(to_rat(c, "witness.u1") for c in witness["u1"]))
    u2 = HomogeneousPoint(tuple(to_rat(c, "witness.u2") for c in witness["u2"]))
    if not inst.factor1.contains(u1):
        problems.append("witness.u1 does not lie on the first flat")
    if not inst.factor2.contains(u2):
        problems.append("witness.u2 does not lie on the second flat")

    strict_min = result["strict_min"]
    if instance.points is not None:
        recount = double_wedge_count(
            instance.points, ArrangementFunctional(u1.coords), ArrangementFunctional(u2.coords), STRICT
        )
        primal = result.get("primal_witness")
        if primal is not None:
            g1, g2 = (
                ArrangementFunctional(
                    tuple(to_rat(c) for c in h["coeffs"]) + (-to_rat(h["rhs"]),)
                )
                for h in primal["hyperplanes"]
            )
            primal_recount = double_wedge_count(instance.points, g1, g2, STRICT)
            if primal_recount != strict_min:
                problems.append(f"primal double wedge holds {primal_recount} points, expected {strict_min}")
    else:
        functionals = [h.functional for h in inst.functionals + inst.incident]
        recount = sum(1 for h in functionals if h.sign_of(u1) * h.sign_of(u2) == -1)
    if recount != strict_min:
        problems.append(f"witness recount {recount} != strict_min {strict_min}")

    if result["incident_count"] != inst.incident_count:
        problems.append(f"incident_count {result['incident_count']} != {inst.incident_count}")
    strict_headline = result.get("meta", {}).get("headline") == "strict"
    expected = strict_min if strict_headline else strict_min + inst.incident_count
    if result["distance"] != expected:
        problems.append(f"distance {result['distance']} != {expected}")

    if check_optimal:
        oracle = brute_force_min(inst)
        if oracle.strict_min != strict_min:
            problems.append(f"oracle minimum {oracle.strict_min} != strict_min {strict_min}")

    if problems:
        raise VerificationError("; ".join(problems))


def cross_check_seed(job: Dict[str, Any]) -> Dict[str, Any]:
    """Solver vs brute-force oracle on one generated instance"""
    engine = DepthEngine(overrides=job.get("overrides"))
    instance = generate_instance(
        job["seed"], job["n"], job["dim"], job["coord_bound"], job.get("kind"), job.get("degenerate", False)
    )
    report = run_query(engine, instance)
    oracle = brute_force_min(report.instance)
    return {
        "seed": job["seed"],
        "solver": report.result.solver,
        "strict_min": report.result.strict_min,
        "oracle_strict_min": oracle.strict_min,
        "match": report.result.strict_min == oracle.strict_min,
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_query(args: argparse.Namespace, engine: DepthEngine) -> int:
    instance = parse_instance(args.input, args.query_json)
    started = time.perf_counter()
    report = run_query(engine, instance, args.command)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    emit(dumps_result(result_to_obj(report, instance.dimension, elapsed_ms)), args.output)
    return EXIT_OK


def _coord_bound(args: argparse.Namespace, engine: DepthEngine) -> int:
    if args.coord_bound is not None:
        return args.coord_bound
    return int((engine.config.get("generator") or {}).get("coord_bound", 1000))


def _n(args: argparse.Namespace, engine: DepthEngine) -> int:
    if args.n is not None:
        return args.n
    return int((engine.config.get("generator") or {}).get("default_n", 10))


def cmd_oracle(args: argparse.Namespace, engine: DepthEngine) -> int:
    if args.seeds:
        jobs = [
            {
                "seed": args.seed + i,
                "n": _n(args, engine),
                "dim": args.dim,
                "coord_bound": _coord_bound(args, engine),
                "kind": args.kind,
                "degenerate": args.degenerate,
                "overrides": {"headline": engine.headline},
            }
            for i in range(args.seeds)
        ]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(cross_check_seed, jobs))
        else:
            rows = [cross_check_seed(job) for job in jobs]
        rows.sort(key=lambda row: row["seed"])
        emit(json.dumps(rows, indent=2) + "\n", args.output)
        mismatches = [row["seed"] for row in rows if not row["match"]]
        if mismatches:
            logger.error("Solver and oracle disagree on seeds %s", mismatches)
            return EXIT_VERIFICATION_FAILED
        logger.info("Solver matched oracle on %d seeds", len(rows))
        return EXIT_OK

    instance = parse_instance(args.input, args.query_json)
    report = run_query(engine, instance)
    max_n = int((engine.config.get("oracle") or {}).get("max_n", 64))
    if instance.n > max_n and not args.force:
        raise InstanceError(f"n={instance.n} exceeds oracle max_n={max_n}; pass --force", "points")
    started = time.perf_counter()
    oracle = brute_force_min(report.instance)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    oracle_report = DepthReport(oracle, None, report.instance, report.query, engine.headline)
    emit(dumps_result(result_to_obj(oracle_report, instance.dimension, elapsed_ms)), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, engine: DepthEngine) -> int:
    instance = parse_instance(args.input, args.query_json)
    result = load_result(args.result)
    try:
        verify_result(engine, instance, result, check_optimal=args.check_optimal)
    except VerificationError as e:
        logger.error("Verification failed: %s", e)
        return e.exit_code
    logger.info("Witness verified")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, engine: DepthEngine) -> int:
    instance = generate_instance(
        args.seed, _n(args, engine), args.dim, _coord_bound(args, engine), args.kind, args.degenerate
    )
    emit(dumps_instance(instance), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossdepth",
        description="Exact crossing distance, regression depth and Tukey depth",
    )
    parser.add_argument("--log-level", default=None, help="logging level (default from config)")
    parser.add_argument("--config", default=None, help="YAML config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", default="-", help="instance JSON or CSV ('-' for stdin)")
        p.add_argument("--output", default="-", help="output path ('-' for stdout)")
        p.add_argument("--query-json", default=None, help="query object overriding the file's query")
        p.add_argument("--strict-headline", action="store_true", help="report strict_min as distance")

    for name in QUERY_COMMANDS:
        io_flags(sub.add_parser(name, help=f"run a {name} query"))

    def gen_flags(p: argparse.ArgumentParser, seed_default: int = 0) -> None:
        p.add_argument("--seed", type=int, default=seed_default)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--dim", type=int, default=3)
        p.add_argument("--coord-bound", type=int, default=None)
        p.add_argument("--kind", choices=QUERY_COMMANDS, default=None)
        p.add_argument("--degenerate", action="store_true")

    oracle = sub.add_parser("oracle", help="brute-force ground truth")
    io_flags(oracle)
    gen_flags(oracle)
    oracle.add_argument("--seeds", type=int, default=0, help="cross-check this many generated seeds")
    oracle.add_argument("--jobs", type=int, default=1)
    oracle.add_argument("--force", action="store_true", help="run the cubic oracle above max_n")

    verify = sub.add_parser("verify-witness", help="recount a result against its instance")
    io_flags(verify)
    verify.add_argument("--result", required=True, help="ResultFile JSON")
    verify.add_argument("--check-optimal", action="store_true", help="also compare with the oracle")

    gen = sub.add_parser("gen", help="emit a deterministic random instance")
    gen.add_argument("--output", default="-")
    gen_flags(gen)
    return parser


COMMANDS = {
    "depth-line3": cmd_query,
    "depth-line2": cmd_query,
    "tukey2": cmd_query,
    "crossdist": cmd_query,
    "oracle": cmd_oracle,
    "verify-witness": cmd_verify,
    "gen": cmd_gen,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    overrides: Dict[str, Any] = {}
    if getattr(args, "strict_headline", False):
        overrides["headline"] = "strict"
    try:
        engine = DepthEngine(Path(args.config) if args.config else None, overrides)
        if overrides.get("headline"):
            engine.headline = overrides["headline"]
        level = args.log_level or engine.config.get("log_level", "WARNING")
        logging.basicConfig(
            level=getattr(logging, str(level).upper(), logging.WARNING),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        return COMMANDS[args.command](args, engine)
    except DepthError as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
