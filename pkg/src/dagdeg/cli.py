"""
Command-line interface and main entry point.
Parses arguments, loads configuration, and runs the computations.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from textwrap import dedent

from . import APP_DESCRIPTION, APP_NAME, VERSION
from .affine import Setting
from .config import Config, default_config_dir
from .dagops import dag_poly, dag_table
from .fixtures import VERIFY_SETS, Counterexample, check, ids_for, load_counterexamples
from .kostant import (
    KostantSolver,
    count_additivity_failures,
    fundamental_gap,
    k_sing,
    kostant_table,
    n_min,
)
from .parallel import parallel_map, workers_from_environment
from .pbwdeg import d_table, e_ddag, e_tilde_poly
from .qlaurent import QLaurent, format_poly, to_json
from .rootsystem import RootSystemData, Vector, build_root_system

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = default_config_dir()

# systems swept by `counterexamples --box`
SWEEP_SYSTEMS = (
    ("A1", "untwisted"),
    ("A2", "untwisted"),
    ("A3", "untwisted"),
    ("B3", "untwisted"),
    ("B3", "twisted"),
    ("C3", "untwisted"),
    ("C3", "twisted"),
    ("D4", "untwisted"),
    ("G2", "untwisted"),
    ("G2", "twisted"),
)

HELP_EPILOG = dedent(f"""
EXAMPLES
  {APP_NAME} fundamental --system F4 --setting twisted --index 4
  {APP_NAME} --format json poly --system A1 --weight=-1
  {APP_NAME} degrees --system G2 --weight 0,1 --which all
  {APP_NAME} counterexamples
  {APP_NAME} --workers 4 verify all

WEIGHTS
  Comma-separated integers in fundamental-weight coordinates. Write
  negative weights as --weight=-1,0 so they are not read as flags.

EXIT CODES
  0 success or full match, 1 mismatch or failed computation, 2 usage error

CONFIG PATH
  {DEFAULT_CONFIG_DIR}/config.toml (optional; create with --init-config)
""").strip()


def build_parser() -> argparse.ArgumentParser:
    """Build argument parser"""
    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description=APP_DESCRIPTION,
        formatter_class=argparse.RawTextHelpFormatter,
        epilog=HELP_EPILOG,
    )

    parser.add_argument("--init-config", action="store_true", help="Create template config file")
    parser.add_argument(
        "--force", action="store_true", help="Overwrite an existing config with --init-config"
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--version", action="store_true", help="Print version number and exit")
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help=f"Path to config file (default: {DEFAULT_CONFIG_DIR}/config.toml)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        metavar="N",
        help="Worker processes (0 = one per CPU, 1 = serial). Overrides DAGDEG_WORKERS.",
    )
    parser.add_argument(
        "--format", choices=["text", "json"], default=None, help="Output format"
    )
    parser.add_argument(
        "--fixtures-dir",
        type=str,
        default=None,
        metavar="DIR",
        help="Golden data directory used by verify (default: the shipped copy)",
    )

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    fundamental = sub.add_parser("fundamental", help="Ẽ†_i for a fundamental weight")
    _add_system_args(fundamental)
    fundamental.add_argument("--index", type=int, required=True, help="Node i of ω_i")
    fundamental.add_argument(
        "--part",
        choices=["full", "singular", "kostant"],
        default="full",
        help="full Ẽ†_i, its singular part E‡_i, or the Kostant comparator",
    )

    poly = sub.add_parser("poly", help="E†_b for a weight b")
    _add_system_args(poly)
    poly.add_argument("--weight", type=str, required=True, help="b, e.g. --weight=-1,0")

    degrees = sub.add_parser("degrees", help="e, n and d per coset of W/W^λ")
    _add_system_args(degrees)
    degrees.add_argument("--weight", type=str, required=True, help="dominant λ, e.g. 0,1")
    degrees.add_argument(
        "--which", choices=["dag", "kostant", "pbw", "all"], default="all", help="Columns"
    )

    counter = sub.add_parser("counterexamples", help="Non-additive cases of n(λ, w)")
    counter.add_argument(
        "--box",
        type=int,
        default=None,
        metavar="N",
        help="Also count strict cases over dominant λ, μ with coordinates ≤ N",
    )

    verify = sub.add_parser("verify", help="Recompute golden data and diff")
    verify.add_argument("set", nargs="?", choices=VERIFY_SETS, default="all")

    return parser


def _add_system_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", type=str, required=True, help="Type label, e.g. F4 or B3")
    parser.add_argument(
        "--setting", choices=["untwisted", "twisted"], default=None, help="Default from config"
    )


def parse_weight(text: str, system: RootSystemData) -> Vector:
    try:
        weight = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"Malformed weight {text!r}: expected comma-separated integers") from None
    if len(weight) != system.rank:
        raise ValueError(f"Weight {text!r} needs {system.rank} coordinates for {system.label}")
    return weight


def _word_text(word: tuple[int, ...]) -> str:
    return "".join(str(i) for i in word) or "id"


def _emit_poly(poly: QLaurent, system: RootSystemData, base: Vector, fmt: str, meta: dict) -> None:
    if fmt == "json":
        payload = dict(meta, system=system.label, base=list(base))
        payload.update(json.loads(to_json(poly, system, base)))
        print(json.dumps(payload))
        return
    text = format_poly(poly, system, base)
    print(text if text else "0")


# ---- commands ----


def cmd_fundamental(args, fmt: str) -> int:
    system = build_root_system(args.system)
    setting = Setting.parse(args.setting)
    omega = system.fundamental_weight(args.index)
    if args.part == "singular":
        poly = e_ddag(system, setting, args.index)
    elif args.part == "kostant":
        poly = k_sing(system, setting, args.index)
    else:
        poly = e_tilde_poly(system, setting, args.index)
    base = tuple(-v for v in omega)
    meta = {"setting": str(setting), "index": args.index, "part": args.part}
    _emit_poly(poly, system, base, fmt, meta)
    return 0


def cmd_poly(args, fmt: str) -> int:
    system = build_root_system(args.system)
    b = parse_weight(args.weight, system)
    pipeline, poly = dag_poly(system.label, args.setting, b)
    print(f"pipeline: {pipeline}", file=sys.stderr)
    _emit_poly(poly, system, b, fmt, {"setting": args.setting, "pipeline": pipeline})
    return 0


def cmd_degrees(args, fmt: str) -> int:
    system = build_root_system(args.system)
    setting = Setting.parse(args.setting)
    lam = parse_weight(args.weight, system)
    if not system.is_dominant(lam):
        raise ValueError(f"Weight {args.weight} is not dominant")
    which = args.which
    if which == "pbw" and setting is Setting.TWISTED:
        raise ValueError("PBW degrees exist only in the untwisted setting (no twisted PBW theory)")

    columns = {}
    if which in ("dag", "all"):
        columns["e"] = dag_table(system, setting, lam)
    if which in ("kostant", "all"):
        columns["n"] = kostant_table(system, setting, lam)
    pbw_ok = setting is Setting.UNTWISTED and system.series in "ABCDG"
    if which == "pbw" or (which == "all" and pbw_ok):
        columns["d"] = d_table(system, lam)

    rows = []
    for u in system.coset_reps(lam):
        row: dict = {"word": _word_text(u.word)}
        row.update({name: table.entries[u] for name, table in columns.items()})
        if "e" in row and "n" in row:
            row["singular"] = row["e"] > row["n"]
        rows.append(row)

    if fmt == "json":
        payload = {"system": system.label, "setting": str(setting), "weight": list(lam)}
        print(json.dumps(dict(payload, rows=rows)))
        return 0
    names = list(columns)
    print("  ".join(["w".ljust(12)] + [name.rjust(3) for name in names]))
    for row in rows:
        flag = "  *" if row.get("singular") else ""
        cells = [row["word"].ljust(12)] + [str(row[name]).rjust(3) for name in names]
        print("  ".join(cells) + flag)
    return 0


def counterexample_values(case: Counterexample) -> tuple[int, int]:
    """(n(λ, w), Σ c_i n(ω_i, w)) for one stored case."""
    system = build_root_system(case.system)
    solver = KostantSolver(system, case.setting)
    element = case.element()
    combined = n_min(system, case.setting, case.weight, element, solver)
    gap = fundamental_gap(system, case.setting, case.weight, element, solver)
    return combined, combined + gap


def cmd_counterexamples(args, workers: int, fmt: str) -> int:
    cases = load_counterexamples(args.fixtures_dir)
    results = parallel_map(counterexample_values, [(case,) for case in cases], workers)

    ok = True
    report = []
    for case, (combined, separate) in zip(cases, results, strict=True):
        matches = (combined, separate) == (case.combined, case.separate)
        ok = ok and matches
        report.append({
            "system": case.system,
            "setting": str(case.setting),
            "weight": list(case.weight),
            "w": case.w,
            "combined": combined,
            "separate": separate,
            "matches": matches,
        })

    sweep = []
    if args.box is not None:
        sweep_tasks = [(label, setting, args.box) for label, setting in SWEEP_SYSTEMS]
        for label, setting, count in parallel_map(count_additivity_failures, sweep_tasks, workers):
            sweep.append({"system": label, "setting": setting, "strict_cases": count})

    if fmt == "json":
        print(json.dumps({"cases": report, "sweep": sweep}))
    else:
        for row in report:
            mark = "" if row["matches"] else "   MISMATCH"
            op = "<" if row["combined"] < row["separate"] else ">="
            print(
                f"{row['system']} {row['setting']} λ={tuple(row['weight'])} w={row['w']}: "
                f"{row['combined']} {op} {row['separate']}{mark}"
            )
        for row in sweep:
            print(
                f"sweep {row['system']} {row['setting']} box={args.box}: "
                f"{row['strict_cases']} strict cases"
            )
    return 0 if ok else 1


def cmd_verify(args, workers: int, fmt: str, fixtures_dir: str | None) -> int:
    if fixtures_dir and not Path(fixtures_dir).is_dir():
        raise ValueError(f"Fixtures directory not found: {fixtures_dir}")
    fixture_ids = ids_for(args.set, fixtures_dir)
    results = parallel_map(check, [(fid, fixtures_dir) for fid in fixture_ids], workers)
    failures = [(fid, report) for fid, report in results if report]

    if fmt == "json":
        payload = {
            "set": args.set,
            "checked": len(results),
            "failures": {fid: [entry.as_dict() for entry in rep] for fid, rep in failures},
        }
        print(json.dumps(payload))
    else:
        for fid, report in results:
            print(f"{'FAIL' if report else 'ok  '} {fid}")
            for entry in report:
                print(f"     {entry.format()}")
        print(f"\n{len(results) - len(failures)}/{len(results)} fixtures match")
    return 1 if failures else 0


def _configure_logging(verbose: bool, level: str) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, level.upper()),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: list[str] | None = None) -> int:
    """Main entry point"""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        parser.print_help(sys.stderr)
        return 2

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.version:
        print(f"{APP_NAME} v{VERSION}")
        return 0

    config = Config(args.config)

    if args.init_config:
        config.create_default(force=args.force)
        return 0

    try:
        config.load()
    except Exception as exc:  # noqa: BLE001
        print(f"Error loading config: {exc}", file=sys.stderr)
        return 2

    _configure_logging(args.verbose, config.options["log_level"])

    if args.command is None:
        parser.print_help(sys.stderr)
        return 2

    fmt = args.format or config.options["output_format"]
    if getattr(args, "setting", "unset") is None:
        args.setting = config.options["setting"]
    fixtures_dir = args.fixtures_dir or (str(config.fixtures_dir) if config.fixtures_dir else None)
    args.fixtures_dir = fixtures_dir

    try:
        workers = workers_from_environment(args.workers, config.options["workers"])
    except ValueError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "fundamental":
            return cmd_fundamental(args, fmt)
        if args.command == "poly":
            return cmd_poly(args, fmt)
        if args.command == "degrees":
            return cmd_degrees(args, fmt)
        if args.command == "counterexamples":
            return cmd_counterexamples(args, workers, fmt)
        return cmd_verify(args, workers, fmt, fixtures_dir)
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"Error: {message}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        logger.debug("computation failed", exc_info=True)
        print(f"Error: {exc}", file=sys.stderr)
        return 1
