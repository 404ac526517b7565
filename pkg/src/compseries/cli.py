"""Batch command-line surface.

Exit codes: 0 success, 1 domain/internal error, 2 parse error, 3 cross-check
mismatch, 4 capacity error, 5 sweep violation.  Counts are serialized as
decimal strings so arbitrary precision survives JSON.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time

from . import bounds, catalog, config, formulas, group_core, lattice, series
from .errors import CapacityError, CompseriesError, DomainError, SpecParseError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_CAPACITY = 4
EXIT_VIOLATION = 5


class CrossCheckMismatch(CompseriesError):
    pass


# ---------------------------------------------------------------------------
# result cache (enabled by COMPSERIES_CACHE)


def _cache_dir():
    return os.environ.get("COMPSERIES_CACHE") or None


def _cache_path(key):
    digest = hashlib.sha256(key.encode()).hexdigest()[:32]
    return os.path.join(_cache_dir(), digest + ".json")


def cache_get(key):
    if not _cache_dir():
        return None
    path = _cache_path(key)
    try:
        with open(path) as fh:
            payload = json.load(fh)
        if payload.get("cache_key") != key:
            return None
        return payload["report"]
    except FileNotFoundError:
        return None
    except (json.JSONDecodeError, KeyError, OSError) as exc:
        print(f"warning: ignoring corrupt cache entry {path}: {exc}", file=sys.stderr)
        return None


def cache_put(key, report):
    d = _cache_dir()
    if not d:
        return
    os.makedirs(d, exist_ok=True)
    path = _cache_path(key)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump({"cache_key": key, "report": report}, fh)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


# ---------------------------------------------------------------------------
# helpers


def _load_group(args):
    """(canonical name, GroupTable, spec-or-None) from --group / --group-file."""
    if getattr(args, "group_file", None):
        with open(args.group_file) as fh:
            payload = json.load(fh)
        try:
            points = payload["points"]
            gens = payload["generators"]
        except (TypeError, KeyError) as exc:
            raise SpecParseError(f"group file missing field: {exc}")
        G = group_core.build_from_generators(points, gens, cap=args.element_cap)
        return f"file:{args.group_file}", G, None
    if not getattr(args, "group", None):
        raise SpecParseError("one of --group or --group-file is required")
    spec = catalog.parse_spec(args.group)
    name = catalog.print_spec(spec)
    return name, None, spec  # realized lazily; formula modes may not need it


def _emit(report, args):
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _emit_plain(report)


def _emit_plain(report, out=None):
    out = out or sys.stdout

    def walk(obj, indent=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    print(f"{indent}{k}:", file=out)
                    walk(v, indent + "  ")
                else:
                    print(f"{indent}{k}: {v}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                walk(v, indent)
        else:
            print(f"{indent}{obj}", file=out)

    walk(report)


def _base_report(command, inputs, t0, cache_hit=False):
    return {
        "command": command,
        "inputs": inputs,
        "elapsed_ms": int((time.monotonic() - t0) * 1000),
        "cache_hit": cache_hit,
    }


# ---------------------------------------------------------------------------
# commands


def _formula_count(spec):
    """(count, tag) via the closed forms, or None when no formula applies."""
    if spec is None or not catalog.is_abelian_spec(spec):
        return None
    parts = catalog.abelian_prime_partitions(spec)
    fac = formulas.Factorization(tuple((p, sum(es)) for p, es in parts.items()))
    if catalog.is_cyclic_spec(spec):
        return formulas.count_cyclic(fac), "formula:cyclic"
    if catalog.is_elem_sylow_spec(spec):
        return formulas.count_abelian_elem_sylow(fac), "formula:elementary-sylow"
    return None


def cmd_count(args):
    t0 = time.monotonic()
    name, G, spec = _load_group(args)
    key = f"count|{name}|mode={args.mode}|cross={args.cross_check}"
    cached = cache_get(key)
    if cached is not None:
        cached = dict(cached)
        cached["cache_hit"] = True
        cached["elapsed_ms"] = int((time.monotonic() - t0) * 1000)
        _emit(cached, args)
        return EXIT_OK

    formula = _formula_count(spec)
    want_formula = args.mode == "formula" or (args.mode == "auto" and formula)
    want_brute = args.mode == "brute" or (args.mode == "auto" and not formula)
    if args.cross_check:
        want_formula = want_brute = True
    if want_formula and formula is None:
        raise DomainError(
            f"no closed-form count applies to {name} "
            "(formulas cover cyclic, elementary abelian, and abelian groups "
            "with elementary abelian Sylow subgroups)"
        )
    values = {}
    if want_formula:
        values[formula[1]] = formula[0]
    if want_brute:
        if G is None:
            G = catalog.realize(spec, cap=args.element_cap)
        values["brute-force"] = series.count_series(G).value
    report = _base_report("count", {"group": name, "mode": args.mode}, t0)
    report["result"] = {
        "count": str(next(iter(values.values()))),
        "method": "+".join(values.keys()),
        "by_method": {k: str(v) for k, v in values.items()},
    }
    if len(set(values.values())) > 1:
        report["result"]["mismatch"] = True
        _emit(report, args)
        return EXIT_MISMATCH
    cache_put(key, report)
    _emit(report, args)
    return EXIT_OK


def cmd_enumerate(args):
    t0 = time.monotonic()
    name, G, spec = _load_group(args)
    if G is None:
        G = catalog.realize(spec, cap=args.element_cap)
    chains = series.enumerate_series(G, limit=args.limit)
    if args.output:
        sink = open(args.output, "w")
        report_stream = sys.stdout
    else:
        sink = sys.stdout
        report_stream = sys.stderr
    try:
        for ch in chains:
            print(json.dumps(ch.to_json_obj()), file=sink)
    finally:
        if args.output:
            sink.close()
    report = _base_report("enumerate", {"group": name, "limit": args.limit}, t0)
    report["result"] = {"chains": len(chains)}
    if args.json:
        print(json.dumps(report), file=report_stream)
    else:
        _emit_plain(report, out=report_stream)
    return EXIT_OK


def cmd_bound(args):
    t0 = time.monotonic()
    value = bounds.bound(args.n)
    report = _base_report("bound", {"n": args.n}, t0)
    report["result"] = {"bound": str(value)}
    _emit(report, args)
    return EXIT_OK


def cmd_sweep(args):
    t0 = time.monotonic()
    res = bounds.sweep_theorem_43(
        args.max_n, jobs=args.jobs, per_order=args.per_order
    )
    report = _base_report("sweep", {"max_n": args.max_n, "jobs": args.jobs}, t0)
    report["result"] = res.to_json_obj()
    _emit(report, args)
    return EXIT_VIOLATION if res.violations else EXIT_OK


def cmd_verify(args):
    from .verification import run_verify

    t0 = time.monotonic()
    rows = run_verify(args.order_cap)
    report = _base_report("verify", {"order_cap": args.order_cap}, t0)
    report["result"] = {
        "checks": [
            {"name": r.name, "status": r.status, "detail": r.detail} for r in rows
        ],
        "failed": sum(not r.ok for r in rows),
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            print(f"{r.name:<{width}}  {r.status:<7}  {r.detail}")
        print(f"\n{len(rows)} checks, {report['result']['failed']} failed")
    return EXIT_OK if report["result"]["failed"] == 0 else EXIT_ERROR


def cmd_catalog_list(args):
    t0 = time.monotonic()
    entries = [
        {"spec": name, "order": spec.order()}
        for name, spec in catalog.standard_roster(args.max_order)
    ]
    report = _base_report("catalog list", {"max_order": args.max_order}, t0)
    report["result"] = {"groups": entries}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for e in entries:
            print(f"{e['order']:>6}  {e['spec']}")
    return EXIT_OK


def cmd_lattice(args):
    t0 = time.monotonic()
    name, G, spec = _load_group(args)
    if G is None:
        G = catalog.realize(spec, cap=args.element_cap)
    if args.what == "subgroups":
        subs = lattice.all_subgroups(G)
    elif args.what == "normal":
        subs = lattice.normal_subgroups(G)
    else:
        subs = lattice.maximal_normal_subgroups(G)
    report = _base_report("lattice", {"group": name, "what": args.what}, t0)
    result = {"count": len(subs), "orders": subs.orders()}
    if G.order <= 64:
        result["members"] = [list(s.members) for s in subs]
    report["result"] = result
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    parser = argparse.ArgumentParser(
        prog="compseries",
        description="Exact composition-series counting for small finite groups.",
    )
    parser.add_argument(
        "--element-cap",
        type=int,
        default=None,
        help="override the element cap (default: COMPSERIES_ELEMENT_CAP or 4096)",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_group_args(p):
        p.add_argument("--group", help="group spec, e.g. Z360, E(2,6), A5xA5")
        p.add_argument(
            "--group-file",
            help="JSON file {points: int, generators: [[...]]} of permutation generators",
        )
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("count", help="count distinct composition series")
    add_group_args(p)
    p.add_argument("--mode", choices=["auto", "formula", "brute"], default="auto")
    p.add_argument(
        "--cross-check",
        action="store_true",
        help="run both formula and brute force; exit 3 on mismatch",
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list composition series as JSON lines")
    add_group_args(p)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--output", help="write chains to this file instead of stdout")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bound", help="evaluate the global upper bound")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="exhaustive order sweep against the bound")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p.add_argument("--per-order", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="oracle-vs-formula verification suite")
    p.add_argument("--order-cap", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog operations")
    csub = p.add_subparsers(dest="catalog_cmd", required=True)
    pl = csub.add_parser("list", help="list the standard group roster")
    pl.add_argument("--max-order", type=int, default=4096)
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(func=cmd_catalog_list)

    p = sub.add_parser("lattice", help="subgroup lattice queries")
    add_group_args(p)
    p.add_argument(
        "--what",
        choices=["subgroups", "normal", "maximal-normal"],
        required=True,
    )
    p.set_defaults(func=cmd_lattice)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.element_cap is None:
        args.element_cap = config.element_cap()
    try:
        return args.func(args)
    except SpecParseError as exc:
        pos = f" at position {exc.position}" if exc.position is not None else ""
        print(f"error: {exc}{pos}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
