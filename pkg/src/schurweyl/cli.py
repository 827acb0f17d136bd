"""Command line entry point: ``schurweyl`` (or ``python -m schurweyl``).

Config files are line based; ``#`` starts a comment::

    budget = 256
    jobs = 4
    case m=2 n=0 r=2 s=0 field=rational checks=second,first
    case m=1 n=1 r=1 s=1 field=p:3

Exit status: 0 if every check passes, 1 if any fails, 2 on usage/config errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .duality import (CHECKS, DEFAULT_BUDGET, CaseSpec, report_csv, report_json, run_suite)
from .scalars import FieldError, parse_field
from .tensor_action import BudgetError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_CONFIG = """\
# classical second duality
case m=2 n=0 r=2 s=0 field=rational checks=second,first,coefficients,relations
case m=2 n=0 r=3 s=0 field=rational checks=second,first,coefficients,relations
case m=2 n=0 r=4 s=0 field=rational checks=second,coefficients
case m=3 n=0 r=2 s=0 field=rational checks=second,coefficients
case m=3 n=0 r=3 s=0 field=rational checks=second,first,coefficients
case m=2 n=0 r=2 s=0 field=p:2 checks=second,first
case m=2 n=0 r=3 s=0 field=p:3 checks=second,first
case m=3 n=0 r=3 s=0 field=p:5 checks=second
# super
case m=1 n=1 r=2 s=0 field=rational checks=second,first,coefficients,relations
case m=1 n=1 r=3 s=0 field=p:3 checks=second,coefficients
case m=2 n=1 r=2 s=0 field=rational checks=second,coefficients
# mixed and mixed super
case m=2 n=0 r=1 s=1 field=rational checks=second,first,relations,invariant
case m=2 n=0 r=2 s=1 field=p:2 checks=second,first,relations
case m=3 n=0 r=1 s=1 field=p:3 checks=second,first
case m=1 n=1 r=1 s=1 field=rational checks=second,first,relations,invariant
case m=2 n=1 r=1 s=1 field=p:3 checks=second,first,relations,invariant
"""


class ConfigError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _parse_checks(text: str) -> frozenset:
    names = [c.strip() for c in text.split(",") if c.strip()]
    if "all" in names:
        return frozenset(CHECKS)
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise ValueError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)} or all")
    return frozenset(names)


def parse_config(text: str) -> Tuple[List[CaseSpec], dict]:
    """Return the cases and the global settings (``budget``, ``jobs``)."""
    cases: List[CaseSpec] = []
    settings: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        key = line.partition("=")[0].strip()
        if key in ("budget", "jobs"):
            head, value = key, line.partition("=")[2].strip()
            try:
                settings[head] = int(value)
            except ValueError:
                raise ConfigError(lineno, f"{head} needs an integer, got {value!r}") from None
            if settings[head] < 1:
                raise ConfigError(lineno, f"{head} must be positive")
            continue
        if head != "case":
            raise ConfigError(lineno, f"expected 'case', 'budget' or 'jobs', got {head!r}")
        fields = {}
        for tok in rest.split():
            key, eq, val = tok.partition("=")
            if not eq or not val:
                raise ConfigError(lineno, f"field {tok!r} is not key=value")
            fields[key] = val
        unknown = set(fields) - {"m", "n", "r", "s", "field", "checks"}
        if unknown:
            raise ConfigError(lineno, f"unknown field(s) {sorted(unknown)}")
        try:
            ints = {k: int(fields[k]) for k in ("m", "n", "r", "s") if k in fields}
        except ValueError as exc:
            raise ConfigError(lineno, f"non-integer parameter: {exc}") from None
        if "m" not in ints or "r" not in ints:
            raise ConfigError(lineno, "a case needs at least m and r")
        try:
            field = parse_field(fields.get("field", "rational"))
            checks = _parse_checks(fields.get("checks", "second,first"))
            cases.append(CaseSpec(ints["m"], ints.get("n", 0), ints["r"], ints.get("s", 0),
                                  field, checks))
        except (ValueError, FieldError) as exc:
            raise ConfigError(lineno, str(exc)) from None
    return cases, settings


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="schurweyl",
        description="Verify Schur-Weyl dualities for GL(m) and GL(m|n) on (mixed) tensor space.")
    ap.add_argument("--m", type=int)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--r", type=int)
    ap.add_argument("--s", type=int, default=0)
    ap.add_argument("--field", default="rational", help="rational | p:<prime>")
    ap.add_argument("--check", default="all",
                    help="comma list of " + ", ".join(CHECKS) + ", or all")
    ap.add_argument("--budget", type=int, default=None,
                    help=f"maximum tensor space dimension (default {DEFAULT_BUDGET})")
    ap.add_argument("--config", type=Path, help="case file; omit for a single case or the default suite")
    ap.add_argument("--out", type=Path, help="write the JSON report here (CSV next to it)")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    settings: dict = {}
    try:
        if args.config is not None:
            try:
                text = args.config.read_text()
            except OSError as exc:
                raise ConfigError(0, f"cannot read config: {exc}") from None
            cases, settings = parse_config(text)
        elif args.m is not None or args.r is not None:
            if args.m is None or args.r is None:
                ap.error("--m and --r are required for a single case")
            cases = [CaseSpec(args.m, args.n, args.r, args.s, parse_field(args.field),
                              _parse_checks(args.check))]
        else:
            cases, settings = parse_config(DEFAULT_CONFIG)
        budget = args.budget or settings.get("budget", DEFAULT_BUDGET)
        jobs = args.jobs or settings.get("jobs", 1)
        report = run_suite(cases, budget=budget, jobs=jobs)
    except ConfigError as exc:
        src = args.config or "config"
        print(f"schurweyl: {src}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, FieldError, ValueError) as exc:
        print(f"schurweyl: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = report_json(report)
    if args.out:
        args.out.write_text(text + "\n")
        args.out.with_suffix(".csv").write_text(report_csv(report))
    else:
        print(text)
    for cid, entry in report["cases"].items():
        print(f"{'PASS' if entry['pass'] else 'FAIL'} {cid}", file=sys.stderr)
    return EXIT_OK if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
