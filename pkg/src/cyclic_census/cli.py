"""Command-line front end: count, lattice, tables, verify, shapes."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .analysis import DEFAULT_LATTICE_CAP, cyclic_profile, hasse_dot, subgroup_lattice
from .closed_forms import admissible_shapes, shape_classes
from .dsl import DEFAULT_ORDER_CAP, GroupSpec, parse_spec, parse_specs, render
from .errors import CensusError
from .groups import build_group
from .symbolic import DEFAULT_SCAN_BOUND
from .tables import SCENARIO_ENV, load_scenarios, reproduce_table
from .verify import (
    audit_tables, load_registry_fixture, verify_full, verify_registry, verify_theorem,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FORMATS = {
    "count": ("json", "csv", "text"),
    "lattice": ("json", "text", "dot"),
    "tables": ("json", "csv", "text"),
    "verify": ("json", "text"),
    "shapes": ("json", "csv", "text"),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    order_cap: int = DEFAULT_ORDER_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    scan_bound: int = DEFAULT_SCAN_BOUND
    output_format: str = "json"
    scenario_dir: str | None = None
    jobs: int | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        fmt = args.format or "json"
        if fmt not in FORMATS[args.command]:
            raise UsageError(f"format {fmt!r} is not available for {args.command} "
                             f"(choose from {', '.join(FORMATS[args.command])})")
        for name in ("order_cap", "lattice_cap", "scan_bound"):
            if getattr(args, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if args.jobs is not None and args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return cls(args.order_cap, args.lattice_cap, args.scan_bound, fmt,
                   args.scenario_dir or os.environ.get(SCENARIO_ENV), args.jobs)


def _read_specs(text: str) -> list[GroupSpec]:
    if text == "-":
        specs = parse_specs(sys.stdin.read())
        if not specs:
            raise UsageError("no spec on standard input")
        return specs
    return [parse_spec(text)]


# ---------------------------------------------------------------- commands

def cmd_count(args, cfg: CliConfig) -> tuple[str, int]:
    profiles = []
    for spec in _read_specs(args.spec):
        G = build_group(spec, cfg.order_cap)
        profiles.append((render(spec), cyclic_profile(G)))
    if cfg.output_format == "json":
        docs = [{"spec": s, **p.to_dict()} for s, p in profiles]
        return json.dumps(docs[0] if len(docs) == 1 else docs) + "\n", EXIT_OK
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["spec", "order", "m", "c_m"])
        for s, p in profiles:
            for m, c in sorted(p.per_order.items()):
                w.writerow([s, p.order, m, c])
            w.writerow([s, p.order, "total", p.total])
        return buf.getvalue(), EXIT_OK
    lines = []
    for s, p in profiles:
        per = ", ".join(f"c({m})={c}" for m, c in sorted(p.per_order.items()))
        lines.append(f"{s}: order {p.order}, c(G) = {p.total} [{per}]")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_lattice(args, cfg: CliConfig) -> tuple[str, int]:
    specs = _read_specs(args.spec)
    if len(specs) != 1:
        raise UsageError("lattice takes exactly one spec")
    G = build_group(specs[0], cfg.order_cap)
    L = subgroup_lattice(G, cfg.lattice_cap)
    if cfg.output_format == "dot":
        return hasse_dot(L), EXIT_OK
    if cfg.output_format == "json":
        doc = {
            "spec": render(specs[0]), "order": G.order,
            "subgroups": [{"index": i, "order": s.order, "elements": list(s.elements)}
                          for i, s in enumerate(L.subgroups)],
            "covers": [list(e) for e in L.covers],
        }
        return json.dumps(doc) + "\n", EXIT_OK
    by_order: dict[int, int] = {}
    for o in L.orders():
        by_order[o] = by_order.get(o, 0) + 1
    dist = ", ".join(f"{o}:{n}" for o, n in sorted(by_order.items()))
    return f"{render(specs[0])}: {len(L)} subgroups, {len(L.covers)} covers [{dist}]\n", EXIT_OK


def cmd_tables(args, cfg: CliConfig) -> tuple[str, int]:
    if args.all:
        scenarios = load_scenarios(cfg.scenario_dir)
        with ThreadPoolExecutor(max_workers=cfg.jobs) as ex:
            reports = list(ex.map(lambda sc: reproduce_table(sc, cfg.scan_bound), scenarios))
    else:
        reports = [reproduce_table(args.id, cfg.scan_bound, cfg.scenario_dir)]
    status = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    if cfg.output_format == "json":
        docs = [r.to_dict() for r in reports]
        return json.dumps(docs if args.all else docs[0], indent=1) + "\n", status
    if cfg.output_format == "csv":
        if not args.all:
            return reports[0].to_csv(), status
        return "\n".join(f"# {r.scenario.id} {r.scenario.label}\n{r.to_csv()}" for r in reports), status
    return "\n".join(r.to_text() for r in reports) + "\n", status


def cmd_verify(args, cfg: CliConfig) -> tuple[str, int]:
    if args.fixture and not args.registry:
        raise UsageError("--fixture only applies to --registry")
    if args.exhaustive and args.theorem is None:
        raise UsageError("--exhaustive only applies to --theorem")
    if args.theorem is not None:
        rep = verify_theorem(args.theorem, cfg.order_cap, cfg.jobs, exhaustive=args.exhaustive)
    elif args.registry:
        entries = load_registry_fixture(args.fixture) if args.fixture else None
        rep = verify_registry(entries, include_inline=entries is None, order_cap=cfg.order_cap)
    elif args.tables:
        rep = audit_tables(cfg.scan_bound, cfg.scenario_dir, cfg.jobs)
    else:
        rep = verify_full(cfg.order_cap, cfg.scan_bound, cfg.scenario_dir, cfg.jobs)
    out = rep.to_json() + "\n" if cfg.output_format == "json" else rep.to_text() + "\n"
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_shapes(args, cfg: CliConfig) -> tuple[str, int]:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    shapes = admissible_shapes(args.n)
    if cfg.output_format == "json":
        doc = {"n": args.n, "classes": shape_classes(shapes),
               "shapes": [{"exponents": list(s.exponents), "text": s.text(), "divisors": s.divisor_count}
                          for s in shapes]}
        return json.dumps(doc) + "\n", EXIT_OK
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shape", "exponents", "divisors"])
        for s in shapes:
            w.writerow([s.text(), " ".join(map(str, s.exponents)), s.divisor_count])
        return buf.getvalue(), EXIT_OK
    return ", ".join(shape_classes(shapes)) + "\n", EXIT_OK


COMMANDS = {
    "count": cmd_count, "lattice": cmd_lattice, "tables": cmd_tables,
    "verify": cmd_verify, "shapes": cmd_shapes,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text", "dot"), default=None,
                        help="output format (default json; dot only for lattice)")
    common.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    common.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP)
    common.add_argument("--scan-bound", type=int, default=DEFAULT_SCAN_BOUND)
    common.add_argument("--scenario-dir", default=None, help=f"scenario directory (env {SCENARIO_ENV})")
    common.add_argument("--jobs", type=int, default=None, help="worker threads for --all / --full")

    p = argparse.ArgumentParser(prog="cyclic-census", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="cyclic subgroup profile of a group")
    c.add_argument("spec", help='group spec such as "C 27 x C 3", or "-" for stdin')

    lat = sub.add_parser("lattice", parents=[common], help="subgroup lattice")
    lat.add_argument("spec")

    t = sub.add_parser("tables", parents=[common], help="reproduce case tables")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", help="table id (T1...) or label")
    g.add_argument("--all", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="run verification")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--theorem", type=int, choices=(11, 12))
    g.add_argument("--registry", action="store_true")
    g.add_argument("--tables", action="store_true")
    g.add_argument("--full", action="store_true")
    v.add_argument("--fixture", help="registry JSON replacing the built-in set")
    v.add_argument("--exhaustive", action="store_true",
                   help="with --theorem: every admissible prime assignment within --order-cap")

    s = sub.add_parser("shapes", parents=[common], help="admissible order shapes")
    s.add_argument("--n", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = CliConfig.from_args(args)
        out, code = COMMANDS[args.command](args, cfg)
    except (CensusError, UsageError, OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
