"""Command line front end.

    twistspin group order "TB[3/1]" --twist 3 --rp2
    twistspin verify lemma2 "TB[5/3]" --n 0,2,4
    twistspin table knots.csv --n 0-5 --jobs 4 --out report.json

Exit codes: 0 success / all PASS, 1 input error, 2 overflow or
INCONCLUSIVE, 3 any FAIL.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .codec import parse_braid, parse_knot, parse_pd, parse_two_bridge
from .coset import Limits, group_order
from .errors import TwistSpinError
from .fpcore import abelian_invariants
from .spun import connect_sum_rp2, twist_spin_presentation
from .verify import (FAIL, INCONCLUSIVE, boyle_witness_search, verify_lemma2,
                     verify_theorem1_group_level)
from .wirtinger import knot_presentation

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN, EXIT_FAIL = 0, 1, 2, 3
ERROR = "ERROR"
DEFAULT_MAX_COSETS = 1_000_000
CHECKS = ("lemma2", "theorem1")


@dataclass(frozen=True)
class RunConfig:
    n_range: tuple
    max_cosets: int = DEFAULT_MAX_COSETS
    checks: tuple = CHECKS
    out: Optional[str] = None
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        if not self.n_range:
            raise ValueError("n range is empty")
        if any(n < 0 for n in self.n_range):
            raise ValueError("n must be >= 0")
        if self.max_cosets < 1 or self.jobs < 1:
            raise ValueError("limits and job count must be positive")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}")

    @property
    def limits(self) -> Limits:
        return Limits(self.max_cosets)

    def as_dict(self) -> dict:
        return {"n_range": list(self.n_range), "max_cosets": self.max_cosets,
                "checks": list(self.checks)}


def parse_n_list(text: str) -> tuple:
    """``"1,3,5"`` or ``"0-5"`` or a mix of both."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty n list {text!r}")
    return tuple(out)


def default_max_cosets() -> int:
    return int(os.environ.get("TWISTSPIN_MAX_COSETS", DEFAULT_MAX_COSETS))


def parse_row_knot(notation: str, payload: str):
    notation = notation.strip().lower()
    payload = payload.strip()
    if notation == "pd":
        return parse_pd(payload)
    if notation == "braid":
        return parse_braid(payload)
    if notation == "two_bridge":
        if not payload.upper().startswith("TB["):
            payload = f"TB[{payload}]"
        return parse_two_bridge(payload)
    raise TwistSpinError(f"unknown notation {notation!r}")


# ---------------------------------------------------------------------------
# report rows
# ---------------------------------------------------------------------------

def _row(report, check, timings):
    row = report.row(timings)
    row["check"] = check
    row["error"] = None
    return row


def _error_row(name, n, check, exc):
    return {"name": name, "n": n, "order": None, "abelian": None, "longitude_trivial": None,
            "double_coset": None, "verdict": ERROR, "millis": None, "check": check,
            "error": f"{type(exc).__name__}: {exc}"}


def run_task(task) -> list:
    """Run every configured check for one (row, n) pair; values only, no shared state."""
    name, notation, payload, expected_det, n, checks, max_cosets, timings = task
    limits = Limits(max_cosets)
    try:
        knot = parse_row_knot(notation, payload) if notation else parse_knot(payload)
    except TwistSpinError as exc:
        return [_error_row(name, n, checks[0], exc)]
    rows = []
    for check in checks:
        try:
            if check == "lemma2":
                expected = 2 * expected_det if expected_det is not None and n % 2 == 0 else None
                rep = verify_lemma2(knot, n, limits, name, expected)
            else:
                rep = verify_theorem1_group_level(knot, n, limits, name)
        except TwistSpinError as exc:
            rows.append(_error_row(name, n, check, exc))
            continue
        rows.append(_row(rep, check, timings))
    return rows


def run_tasks(tasks, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_task, tasks))
    else:
        chunks = [run_task(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def build_report(config: RunConfig, rows: list, **extra) -> dict:
    config_dict = config.as_dict()
    config_dict.update(extra)
    return {"tool_version": __version__, "config": config_dict, "rows": rows}


def exit_code_for(rows) -> int:
    verdicts = {r["verdict"] for r in rows}
    if FAIL in verdicts:
        return EXIT_FAIL
    if ERROR in verdicts:
        return EXIT_INPUT
    if INCONCLUSIVE in verdicts:
        return EXIT_UNKNOWN
    return EXIT_OK


def render_rows_text(rows) -> str:
    lines = []
    for r in rows:
        line = (f"{r['check']} {r['name']} n={r['n']}: {r['verdict']}"
                f" order={r['order'] if r['order'] is not None else 'overflow'}"
                f" abelian={r['abelian']} longitude_trivial={r['longitude_trivial']}"
                f" double_coset={r['double_coset']}")
        if r["error"]:
            line += f" error={r['error']}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, out: Optional[str]):
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = render_rows_text(report["rows"])
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _group_presentation(args):
    p = knot_presentation(parse_knot(args.knot))
    twist = args.twist
    if twist is not None:
        if twist < 0:
            raise ValueError("--twist must be >= 0")
        p = twist_spin_presentation(p, twist)
    if args.rp2:
        p = connect_sum_rp2(p)
    return p


def cmd_group(args) -> int:
    if args.action == "twistspin" and args.twist is None:
        raise ValueError("twistspin needs --n/--twist")
    p = _group_presentation(args)
    if args.action in ("wirtinger", "twistspin"):
        print(p.render())
        return EXIT_OK
    if args.action == "abelian":
        print(f"abelian: {abelian_invariants(p)}")
        return EXIT_OK
    order = group_order(p, Limits(args.max_cosets))
    if order is None:
        print(f"order: overflow (more than {args.max_cosets} cosets)")
        return EXIT_UNKNOWN
    print(f"order: {order}")
    return EXIT_OK


def cmd_verify(args) -> int:
    n_values = parse_n_list(args.n)
    knot = parse_knot(args.knot)
    if args.kind == "witness":
        return _cmd_witness(args, knot, n_values)
    config = RunConfig(n_values, args.max_cosets, (args.kind,), args.out, args.jobs, args.timings)
    tasks = [(args.knot, None, args.knot, None, n, config.checks, config.max_cosets, config.timings)
             for n in n_values]
    rows = run_tasks(tasks, config.jobs)
    emit(build_report(config, rows, input=args.knot), args.format, args.out)
    return exit_code_for(rows)


def _cmd_witness(args, knot, n_values) -> int:
    m_values = parse_n_list(args.m)
    limits = Limits(args.max_cosets)
    rows = []
    for n in n_values:
        res = boyle_witness_search(knot, n, m_values, limits, args.knot)
        rows.append({"name": res.name, "n": res.n, "attempts": res.attempts,
                     "witness": res.witness})
    report = {"tool_version": __version__,
              "config": {"n_range": list(n_values), "m_range": list(m_values),
                         "max_cosets": args.max_cosets, "checks": ["witness"]},
              "rows": rows}
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = ""
        for r in rows:
            w = r["witness"]
            found = f"witness m={w['m']} order={w['order']}" if w else "no witness found"
            text += f"witness {r['name']} n={r['n']}: {found}\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def read_table(path: str) -> list:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            det = (rec.get("expected_det") or "").strip()
            rows.append((rec["name"].strip(), rec["notation"].strip(), rec["payload"].strip(),
                         int(det) if det else None))
    return rows


def cmd_table(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    config = RunConfig(parse_n_list(args.n), args.max_cosets, checks, args.out, args.jobs,
                       args.timings)
    table = read_table(args.csv)
    tasks = [(name, notation, payload, det, n, config.checks, config.max_cosets, config.timings)
             for name, notation, payload, det in table for n in config.n_range]
    rows = run_tasks(tasks, config.jobs)
    emit(build_report(config, rows), args.format, args.out)
    return exit_code_for(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistspin", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max-cosets", type=int, default=default_max_cosets())

    def reporting(p):
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--timings", action="store_true", help="record wall-clock millis per row")

    g = sub.add_parser("group", help="presentations, orders and abelian invariants")
    g.add_argument("action", choices=("wirtinger", "twistspin", "order", "abelian"))
    g.add_argument("knot")
    g.add_argument("--twist", "--n", dest="twist", type=int)
    g.add_argument("--rp2", action="store_true", help="sum with an unknotted projective plane")
    common(g)
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="run the handle-triviality checks")
    v.add_argument("kind", choices=("lemma2", "theorem1", "witness"))
    v.add_argument("knot")
    v.add_argument("--n", required=True)
    v.add_argument("--m", default="2-6", help="meridian powers for the witness search")
    common(v)
    reporting(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="batch checks over a CSV knot table")
    t.add_argument("csv")
    t.add_argument("--n", default="0-5")
    t.add_argument("--checks", default=",".join(CHECKS))
    common(t)
    reporting(t)
    t.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TwistSpinError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
