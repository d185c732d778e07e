"""Command-line entry point: ``grover-lab run|sweep|selftest``.

Exit codes: 0 success, 1 usage or input error, 2 unverified or exhausted
search, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import MODES, SweepSpec, rows_to_csv, rows_to_jsonl, run_sweep, selftest
from .bounded import BoundedConfig, run_bounded
from .errors import GroverLabError
from .instance import instance_from_json, make_instance, random_instance
from .modified import run_modified_known_m
from .standard import run_standard

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNVERIFIED = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for unverified runs
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    """Parse ``"5,9,100"`` or a range ``"8..16"`` (inclusive)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma list or lo..hi, got {text!r}")


def _order(text: str) -> str:
    return {"asc": "ascending", "desc": "descending"}.get(text, text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grover-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one experiment and print a JSON report")
    run.add_argument("--mode", choices=MODES, default="modified")
    run.add_argument("--n", type=int, help="qubit count")
    src = run.add_mutually_exclusive_group()
    src.add_argument("--solutions", type=_int_list, help="comma-separated solution indices")
    src.add_argument("--random-solutions", type=int, metavar="M", help="draw M random solutions")
    src.add_argument("--instance", help='instance JSON literal or path to a file with {"n":..,"solutions":[..]}')
    run.add_argument("--shots", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--m-max", type=int, help="upper bound on M (bounded mode)")
    run.add_argument("--order", choices=("asc", "desc", "ascending", "descending"), default="asc")

    sweep = sub.add_parser("sweep", help="parameter sweep emitting CSV or JSON lines")
    sweep.add_argument("--spec", help="JSON file with sweep settings; flags override it")
    sweep.add_argument("--n", type=_int_list, help="qubit counts, e.g. 8..16 or 8,10,12")
    sweep.add_argument("--M", type=_int_list, help="solution counts, e.g. 1,2,4")
    sweep.add_argument("--modes", help="comma list drawn from standard,modified,bounded")
    sweep.add_argument("--shots", type=int)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--m-max", help='bound rule for bounded mode: fixed ("4") or multiple of M ("2M")')
    sweep.add_argument("--order", choices=("asc", "desc", "ascending", "descending"))
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--timing", action="store_true", help="fill wall_time_ms (output no longer byte-stable)")
    sweep.add_argument("--output", help="write the table here instead of standard output")

    st = sub.add_parser("selftest", help="run the cross-module invariant checks")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--max-n", type=int, default=10)
    st.add_argument("--skew-theta", type=float, default=0.0, help="test hook: perturb the assumed angle")
    st.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def _load_instance(args):
    if args.instance is not None:
        text = args.instance
        if not text.lstrip().startswith("{") and os.path.exists(text):
            with open(text) as fh:
                text = fh.read()
        return instance_from_json(text)
    if args.n is None:
        raise UsageError("--n is required unless --instance is given")
    if args.solutions is not None:
        return make_instance(args.n, args.solutions)
    if args.random_solutions is not None:
        return random_instance(args.n, args.random_solutions, args.seed)
    raise UsageError("one of --solutions, --random-solutions or --instance is required")


def cmd_run(args, out) -> int:
    inst = _load_instance(args)
    if args.mode == "bounded":
        m_max = args.m_max if args.m_max is not None else inst.M
        cfg = BoundedConfig(m_max, args.shots, _order(args.order), args.seed)
        report = run_bounded(inst, cfg)
        out.write(report.to_json() + "\n")
        return EXIT_UNVERIFIED if report.exhausted else EXIT_OK
    runner = run_standard if args.mode == "standard" else run_modified_known_m
    report = runner(inst, args.shots, args.seed)
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.verified else EXIT_UNVERIFIED


def _sweep_spec(args) -> SweepSpec:
    data = {}
    if args.spec:
        with open(args.spec) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise GroverLabError("bad-spec", "sweep spec file must hold a JSON object")
    if args.n is not None:
        data["n_range"] = args.n
    if args.M is not None:
        data["M_values"] = args.M
    if args.modes is not None:
        data["modes"] = [m.strip() for m in args.modes.split(",") if m.strip()]
    if args.shots is not None:
        data["shots"] = args.shots
    if args.seed is not None:
        data["seed"] = args.seed
    if args.m_max is not None:
        data["m_max_rule"] = args.m_max
    if args.order is not None:
        data["order"] = _order(args.order)
    if args.timing:
        data["timing"] = True
    for key in ("n_range", "M_values"):
        if key not in data:
            raise UsageError(f"sweep needs {key} (flag or --spec)")
    if "m_max_rule" in data:
        data["m_max_rule"] = str(data["m_max_rule"])
    return SweepSpec.from_dict(data)


def cmd_sweep(args, out, err) -> int:
    spec = _sweep_spec(args)
    rows = run_sweep(spec, warn=lambda msg: err.write(f"warning: {msg}\n"))
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_jsonl(rows)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    results = selftest(seed=args.seed, skew_theta=args.skew_theta, max_n=args.max_n)
    ok = all(r.passed for r in results)
    if args.json:
        payload = {
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        }
        out.write(json.dumps(payload) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.detail})\n")
        out.write(f"{'all checks passed' if ok else 'self-test FAILED'}\n")
    return EXIT_OK if ok else EXIT_SELFTEST


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return cmd_run(args, out)
        if args.command == "sweep":
            return cmd_sweep(args, out, err)
        return cmd_selftest(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GroverLabError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
