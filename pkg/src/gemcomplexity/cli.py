"""Command-line interface: ``gemcomplexity <command> ...``.

Exit status: 0 success, 1 invalid input, 2 budget exhausted, 3 cross-check
mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from gemcomplexity.bridge import H1Fingerprint, induce_diagram
from gemcomplexity.census import DEFAULT_CENSUS_BUDGET, census
from gemcomplexity.diagram import serialize_hdg
from gemcomplexity.errors import BudgetExceeded
from gemcomplexity.forests import DEFAULT_FOREST_CAP
from gemcomplexity.gem import serialize_gem
from gemcomplexity.gm import catalogue_min, parse_pairs
from gemcomplexity.report import LoadedInput, build

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64

STATUS_EXIT = {"ok": EXIT_OK, "invalid": EXIT_INVALID, "budget": EXIT_BUDGET, "mismatch": EXIT_MISMATCH}
SEVERITY = [EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_MISMATCH]

FILE_COMMANDS = ("validate", "info", "gm", "induce", "hm", "crosscheck")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _worst(codes):
    return max(codes, key=SEVERITY.index, default=EXIT_OK)


def resolve_path(name):
    """A path as given, or else one of the bundled fixtures (``fixtures/<file>``)."""
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("gemcomplexity").joinpath("fixtures", path.name)
    if path.parent.name == "fixtures" and bundled.is_file():
        return Path(str(bundled))
    return path


def _options(command, args):
    opts = {}
    if command in ("gm", "induce", "crosscheck"):
        opts["pairs"] = args.pairs
    if command in ("gm", "hm", "crosscheck"):
        opts["forest_cap"] = args.forest_cap
    return opts


def _record(command, path, opts, timing):
    path = resolve_path(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        inp = LoadedInput(path, "")
        inp.error = f"cannot read {path}: {exc.strerror or exc}"
        return build(command, inp, timing=timing, **opts)
    inp = LoadedInput(path, text)
    try:
        return build(command, inp, timing=timing, **opts)
    except BudgetExceeded as exc:
        rec = {"command": command, "input": inp.identity(), "status": "budget", "error": str(exc)}
        return rec


def _record_star(item):
    return _record(*item)


def _value_line(command, rec):
    if command == "gm":
        return str(rec["gm"]["value"])
    if command == "hm":
        return str(rec["hm"]["value"])
    if command == "crosscheck":
        return str(rec["crosscheck"]["gm_value"])
    if command == "info" and "h1" in rec:
        return rec["h1"]
    return rec["status"]


def _human(command, rec):
    name = rec["input"]["name"]
    if rec["status"] == "invalid":
        return f"{name}: invalid: " + "; ".join(rec["validation"]["problems"])
    if rec["status"] == "budget":
        return f"{name}: budget exceeded: {rec['error']}"
    if command == "validate":
        return f"{name}: valid"
    if command == "info":
        lines = [f"{name}"]
        if "invariants" in rec:
            for k, v in rec["invariants"].items():
                lines.append(f"  {k}: {v}")
            lines.append(f"  h1: {rec['h1']}")
        else:
            for k, v in rec["diagram"].items():
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)
    if command == "gm":
        w = rec["gm"]["witness"]
        return (
            f"{name}: GM-complexity {rec['gm']['value']} (upper bound)\n"
            f"  pair {w['pair']} | {w['complement']}, removed {w['removed_ab']} / {w['removed_ab2']}, "
            f"region {w['region_index']} faces {w['region_faces']}"
        )
    if command == "hm":
        w = rec["hm"]["witness"]
        return (
            f"{name}: modified Heegaard complexity {rec['hm']['value']} (upper bound)\n"
            f"  removed {w['removed_prime']} / {w['removed_double_prime']}, "
            f"{w['crossings']} crossings, {len(w['region_singular_vertices'])} on the best region"
        )
    if command == "induce":
        parts = [f"{name}:"]
        for p in rec["pairs"]:
            parts.append(
                f"  pair {p['pair']}: {p['crossings']} crossings, chi {p['euler_char']}, "
                f"{'orientable' if p['orientable'] else 'non-orientable'}, valid {p['valid']}"
            )
        return "\n".join(parts)
    if command == "crosscheck":
        c = rec["crosscheck"]
        verdict = "equal" if c["equal"] and not c["failures"] else "MISMATCH"
        line = f"{name}: gm {c['gm_value']} hm {c['hm_value']} {verdict} h1 {rec['h1']}"
        for f in c["failures"][:5]:
            line += f"\n  {f}"
        return line
    return json.dumps(rec)


def _emit(command, rec, args):
    if args.json:
        print(json.dumps(rec, sort_keys=True))
    elif rec["status"] in ("invalid", "budget"):
        print(_human(command, rec), file=sys.stderr)
    elif args.quiet:
        print(_value_line(command, rec))
    else:
        print(_human(command, rec))


def _run_files(command, paths, args):
    opts = _options(command, args)
    items = [(command, p, opts, args.timing) for p in paths]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_record_star, items))
    else:
        records = [_record_star(i) for i in items]
    return records


def _write_induced(args, rec):
    if rec["status"] != "ok":
        return
    g = LoadedInput(rec["input"]["path"], Path(rec["input"]["path"]).read_text()).obj
    out = Path(args.out) if args.out else None
    for pair in parse_pairs(args.pairs):
        text = serialize_hdg(induce_diagram(g, pair).diagram)
        if out is None:
            sys.stdout.write(text)
        else:
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{g.name}_{pair[0]}{pair[1]}.hdg").write_text(text)


def _list_dir(directory):
    d = Path(directory)
    if not d.is_dir():
        raise UsageError(f"not a directory: {directory}")
    return sorted(str(p) for p in d.iterdir() if p.suffix in (".gem", ".hdg"))


def cmd_files(args):
    command = args.command
    paths = list(args.files)
    if getattr(args, "dir", None):
        paths += _list_dir(args.dir)
    if not paths:
        raise UsageError("no input files")
    records = _run_files(command, paths, args)
    for rec in records:
        if command == "induce" and not args.json and not args.quiet and rec["status"] == "ok":
            _write_induced(args, rec)
            if args.out:
                print(_human(command, rec))
        else:
            _emit(command, rec, args)
    return _worst(STATUS_EXIT[r["status"]] for r in records)


def cmd_batch(args):
    if args.subcommand not in FILE_COMMANDS:
        raise UsageError(f"batch cannot run {args.subcommand!r}")
    paths = _list_dir(args.directory)
    records = _run_files(args.subcommand, paths, args)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if args.output:
            out.close()
    return _worst(STATUS_EXIT[r["status"]] for r in records)


def cmd_census(args):
    fingerprint = H1Fingerprint.parse(args.fingerprint) if args.fingerprint else None
    try:
        cat = census(args.max_order, budget=args.budget, with_h1=True)
    except BudgetExceeded as exc:
        print(f"census: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    entries = cat.select(fingerprint)
    if args.write_dir:
        d = Path(args.write_dir)
        d.mkdir(parents=True, exist_ok=True)
        for e in entries:
            (d / f"{e.gem.name}.gem").write_text(serialize_gem(e.gem))
    lines = [json.dumps(e.to_record(), sort_keys=True) for e in entries]
    if args.output:
        Path(args.output).write_text("".join(line + "\n" for line in lines))
    elif not args.min:
        for line in lines:
            print(line)
    if args.min:
        if not entries:
            print("census: no entry matches the selection", file=sys.stderr)
            return EXIT_INVALID
        try:
            value, entry = catalogue_min(entries, forest_cap=args.forest_cap)
        except BudgetExceeded as exc:
            print(f"census: budget exceeded: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        if args.quiet:
            print(value)
        else:
            print(
                f"upper bound {value} over {len(entries)} catalogue gems "
                f"(attained by {entry.gem.name})"
            )
    return EXIT_OK


def _add_common(p, pairs=True):
    p.add_argument("--json", action="store_true", help="print one JSON record per input")
    p.add_argument("--quiet", action="store_true", help="print only the value")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for several inputs")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to JSON records")
    p.add_argument("--forest-cap", type=int, default=DEFAULT_FOREST_CAP,
                   help="abort when a forest enumeration exceeds this many forests")
    if pairs:
        p.add_argument("--pairs", default=None, help="colour splittings to use, e.g. '01,02'")


def make_parser():
    parser = _Parser(
        prog="gemcomplexity",
        description="Complexity upper bounds for closed 3-manifolds from gems and Heegaard diagrams.",
        epilog="exit status: 0 ok, 1 invalid input, 2 budget exhausted, 3 mismatch, 64 usage",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "validate": "check GEM or HDG files",
        "info": "print invariants",
        "gm": "GM-complexity of gems, with a witness",
        "induce": "write the induced Heegaard diagrams of a gem in HDG format",
        "hm": "modified Heegaard complexity of an HDG diagram",
        "crosscheck": "compare both complexities on gems",
    }
    for name in FILE_COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("files", nargs="*")
        _add_common(p)
        if name == "crosscheck":
            p.add_argument("--dir", help="also check every .gem file in this directory")
        if name == "induce":
            p.add_argument("--out", help="directory for the .hdg files (default: stdout)")
        p.set_defaults(func=cmd_files)

    p = sub.add_parser("census", help="enumerate crystallizations up to a given order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_CENSUS_BUDGET)
    p.add_argument("--fingerprint", help="keep only gems with this H1, e.g. 'Z2' or 'Z+Z'")
    p.add_argument("--output", help="write the JSON-lines catalogue here")
    p.add_argument("--write-dir", help="also write each gem as a .gem file here")
    p.add_argument("--min", action="store_true", help="print the smallest GM-complexity found")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--forest-cap", type=int, default=DEFAULT_FOREST_CAP)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("batch", help="run a command over a directory, JSON lines out")
    p.add_argument("subcommand", choices=FILE_COMMANDS)
    p.add_argument("directory")
    p.add_argument("--output", help="write the JSON lines here instead of stdout")
    _add_common(p)
    p.set_defaults(func=cmd_batch, json=True)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"gemcomplexity: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"gemcomplexity: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
