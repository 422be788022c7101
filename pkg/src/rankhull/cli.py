"""Command line entry point: ``rankhull {demo,reduce,lcd,associate,verify,explore}``.

Exit status is 0 on success, 1 when a report contains failed checks and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from rankhull import __version__
from rankhull.associated import associate, find_self_dual_basis, matrix_hull, reduce_hull_matrix
from rankhull.codes import hull_dim
from rankhull.demo import run_demo
from rankhull.errors import FormatError, InadmissibleTargetError, SelfDualBasisError
from rankhull.serialize import basis_to_json, code_from_json, code_to_json, matrix_code_to_json, reduction_report
from rankhull.variation import admissible_targets, make_lcd, reduce_hull
from rankhull.verify import RunConfig, explore_h_minus_1, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(report: dict[str, Any], out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_json(path: str, what: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} {path} is not valid JSON: {exc}") from exc


def _load_code(path: str):
    try:
        return code_from_json(_load_json(path, "code file"))
    except FormatError as exc:
        raise UsageError(f"malformed code file {path}: {exc}") from exc


def _report_ok(report: dict[str, Any]) -> bool:
    c = report["checks"]
    return (
        c["hull_dim_formula"] == c["hull_dim_oracle"]
        and c["witness_invertible"]
        and c["witness_reproduces_output"]
        and (report["ell"] is None or c["hull_dim_formula"] == report["ell"])
    )


def cmd_demo(args) -> int:
    report = run_demo()
    report["version"] = __version__
    _emit(report, args.out)
    for ex in report["examples"]:
        for mm in ex["mismatches"]:
            print(f"mismatch in {mm['example']}: {mm['matrix']} cell {mm['cell']}: "
                  f"expected {mm['expected']}, got {mm['got']}", file=sys.stderr)
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAIL


def cmd_reduce(args) -> int:
    code = _load_code(args.code)
    try:
        result = reduce_hull(code, args.ell)
    except InadmissibleTargetError as exc:
        h = hull_dim(code)
        raise UsageError(f"{exc} (q = {code.tower.q}, h = {h}, admissible: {admissible_targets(code.tower.q, h)})") from exc
    report = reduction_report(result, args.ell)
    report["seed"] = args.seed
    _emit(report, args.out)
    return EXIT_OK if _report_ok(report) else EXIT_FAIL


def cmd_lcd(args) -> int:
    code = _load_code(args.code)
    report = reduction_report(make_lcd(code), 0)
    report["seed"] = args.seed
    _emit(report, args.out)
    return EXIT_OK if _report_ok(report) else EXIT_FAIL


def cmd_associate(args) -> int:
    code = _load_code(args.code)
    try:
        basis = find_self_dual_basis(code.tower, seed=args.seed)
    except SelfDualBasisError as exc:
        raise UsageError(str(exc)) from exc
    h = hull_dim(code)
    if args.ell is None:
        mc, result = associate(code, basis), None
    else:
        try:
            mc, result = reduce_hull_matrix(code, basis, args.ell)
        except InadmissibleTargetError as exc:
            raise UsageError(str(exc)) from exc
    mh = matrix_hull(mc).dim
    expected = code.tower.m * (h if args.ell is None else args.ell)
    report = {
        "command": "associate",
        "version": __version__,
        "seed": args.seed,
        "basis": basis_to_json(basis),
        "input": code_to_json(code),
        "ell": args.ell,
        "vector_code": code_to_json(result.code) if result else code_to_json(code),
        "matrix_code": matrix_code_to_json(mc),
        "checks": {"matrix_hull_dim": mh, "expected": expected},
    }
    _emit(report, args.out)
    return EXIT_OK if mh == expected else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg: dict[str, Any] = {}
    if args.config:
        cfg = _load_json(args.config, "config file")
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    if args.grid:
        grid = _load_json(args.grid, "grid file")
        cfg["grid"] = grid["grid"] if isinstance(grid, dict) else grid
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.trials is not None:
        cfg["trials"] = args.trials
    if args.checks:
        cfg["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]
    out = args.out or cfg.pop("out", None)
    cfg.pop("out", None)
    try:
        config = RunConfig(**cfg)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad verify configuration: {exc}") from exc
    report = run_verify(config)
    _emit(report, out)
    for name, s in report["summary"].items():
        print(f"{name:12s} passed {s['passed']:4d}  failed {s['failed']:4d}", file=sys.stderr)
    return EXIT_OK if report["failed"] == 0 else EXIT_FAIL


def cmd_explore(args) -> int:
    try:
        report = explore_h_minus_1(args.p, args.e, args.m, args.n, args.k, args.budget, seed=args.seed,
                                   samples=args.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankhull", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rankhull {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="replay the two F_4 worked examples against golden values")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the demo is deterministic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("reduce", help="reduce the hull of a code to a target dimension")
    p.add_argument("code", help="code JSON file")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; reduction is deterministic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lcd", help="transform a code into an equivalent LCD code")
    p.add_argument("code")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the construction is deterministic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lcd)

    p = sub.add_parser("associate", help="matrix code of a code under a self-dual basis")
    p.add_argument("code")
    p.add_argument("--ell", type=int, default=None, help="reduce the hull to this dimension first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_associate)

    p = sub.add_parser("verify", help="run seeded randomized invariant suites")
    p.add_argument("config", nargs="?", help="JSON config with seed, trials, grid, checks, out")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--grid", help="JSON file with a list of [p, e, m, n, k]")
    p.add_argument("--checks", help="comma separated suite names")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="search GL_n(F_q) for hull dimension h - 1 (q in {2, 3})")
    for name in ("p", "e", "m", "n", "k"):
        p.add_argument(name, type=int)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rankhull {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
