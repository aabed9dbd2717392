"""Command-line interface.

Exit codes: 0 success, 1 a checked property is false (well-formed input),
2 input error, 3 internal falsification (a classification gap, or a T2R
semigroup found by the search).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from typing import Callable

from . import __version__
from .congruence import Partition, is_delta
from .enumeration import (
    ENUMERATION_CAP,
    T2R_RULES,
    T2R_SEARCH_CAP,
    SemigroupSearch,
    search_t2r,
)
from .errors import ClassificationGap, InputError, NoDecomposition, SemigroupError
from .green import ideals_form_chain
from .io import load_table, to_json_obj
from .properties import (
    DEFAULT_MAX_DEGREE,
    IdentitySpec,
    is_nil,
    is_permutative,
    is_r_commutative,
    is_weakly_exponential,
    satisfies_identity,
)
from .search import read_checkpoint, write_checkpoint
from .structure import classify_we_delta, find_t2_decompositions, theorem1_conditions
from .table import CayleyTable, is_commutative
from .verdict import Verdict

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_FALSIFIED = 0, 1, 2, 3

log = logging.getLogger("finsemi")


def _jsonable(obj):
    if isinstance(obj, Partition):
        return obj.to_json()
    if isinstance(obj, CayleyTable):
        return obj.to_lists()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return obj


def _prop(fn: Callable[[CayleyTable], Verdict | bool]):
    def run(table, args):
        v = fn(table)
        return v if isinstance(v, Verdict) else Verdict(bool(v))
    return run


PROPERTIES: dict[str, Callable] = {
    "delta": _prop(is_delta),
    "we": _prop(is_weakly_exponential),
    "nil": _prop(is_nil),
    "comm": _prop(is_commutative),
    "rcomm": _prop(is_r_commutative),
    "medial": _prop(lambda t: satisfies_identity(t, IdentitySpec.parse("medial"))),
    "leftcomm": _prop(lambda t: satisfies_identity(t, IdentitySpec.parse("left-commutative"))),
    "rightcomm": _prop(lambda t: satisfies_identity(t, IdentitySpec.parse("right-commutative"))),
    "permutative": lambda t, args: is_permutative(t, args.max_degree),
    "ideal-chain": _prop(ideals_form_chain),
}


def _prop_list(text: str) -> list[str]:
    names = [p for p in text.split(",") if p]
    bad = [p for p in names if p not in PROPERTIES and not p.startswith("identity:")]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown properties {bad}; choose from {sorted(PROPERTIES)} or identity:WORD=WORD"
        )
    return names


def _evaluate(table: CayleyTable, name: str, args) -> dict:
    if name.startswith("identity:"):
        v = satisfies_identity(table, IdentitySpec.parse(name.split(":", 1)[1]))
    else:
        v = PROPERTIES[name](table, args)
    out = {"holds": v.holds}
    if v.witness is not None:
        w = v.witness
        if name == "delta":
            w = {"pairs": [list(w[0]), list(w[1])], "congruences": [w[2].to_json(), w[3].to_json()]}
        out["witness"] = _jsonable(w)
    if name == "permutative":
        out["max_degree"] = args.max_degree
    return out


class Report:
    """One command's results; text and JSON are rendered from the same dict."""

    def __init__(self, argv: list[str], raw: bytes | None = None):
        self.data: dict = {
            "command": " ".join(argv),
            "tool_version": __version__,
        }
        if raw is not None:
            self.data["input_sha256"] = hashlib.sha256(raw).hexdigest()
        self.started = time.perf_counter()

    def finish(self, results: dict) -> dict:
        self.data["results"] = results
        self.data["elapsed_s"] = round(time.perf_counter() - self.started, 6)
        return self.data


def render_text(data: dict) -> str:
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {json.dumps(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {json.dumps(v)}")

    walk(data, 0)
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _emit(args, data: dict):
    if args.json:
        print(json.dumps(data, sort_keys=False))
    else:
        print(render_text(data))


# commands ----------------------------------------------------------------


def cmd_check(args, argv) -> int:
    table, _, raw = load_table(args.file)
    report = Report(argv, raw)
    results = {name: _evaluate(table, name, args) for name in args.props}
    _emit(args, report.finish({"order": table.order, "properties": results}))
    return EXIT_OK if all(r["holds"] for r in results.values()) else EXIT_FALSE


def cmd_classify(args, argv) -> int:
    table, _, raw = load_table(args.file)
    report = Report(argv, raw)
    try:
        result = classify_we_delta(table)
    except ClassificationGap as gap:
        _emit(args, report.finish({
            "FALSIFICATION": "weakly exponential Delta-semigroup matches no template",
            "table": table.to_lists(),
            "diagnostics": _jsonable(gap.diagnostics),
        }))
        return EXIT_FALSIFIED
    _emit(args, report.finish({"order": table.order, **_jsonable(result.to_json())}))
    return EXIT_FALSE if result.template == "NOT_WE_DELTA" else EXIT_OK


def cmd_theorem1(args, argv) -> int:
    table, _, raw = load_table(args.file)
    report = Report(argv, raw)
    cands = [d for d in find_t2_decompositions(table) if d.kind in ("T2R", "T2L")]
    if not cands:
        err = NoDecomposition("no two-element right-zero or left-zero subsemigroup")
        _emit(args, report.finish({"error": "NoDecomposition", "message": str(err), "candidates": []}))
        return EXIT_FALSE
    out = []
    any_holds = False
    for d in cands:
        rep = theorem1_conditions(table, d, corrected=not args.uncorrected_cond5)
        entry = {"decomposition": d.to_json(), "report": _jsonable(rep.to_json())}
        if args.uncorrected_cond5:
            corrected = theorem1_conditions(table, d, corrected=True)
            entry["differences"] = {
                "cond5_checked_only_uncorrected": sorted(
                    set(rep.cond5_checked) - set(corrected.cond5_checked)
                ),
                "cond5_corrected": corrected.conditions[5],
                "cond5_uncorrected": rep.conditions[5],
            }
        any_holds |= rep.holds
        out.append(entry)
    _emit(args, report.finish({"order": table.order, "candidates": out}))
    return EXIT_OK if any_holds else EXIT_FALSE


def _rules(args) -> tuple[str, ...]:
    if args.no_prune:
        return ()
    return tuple(r for r in args.prune.split(",") if r)


def cmd_search_t2r(args, argv) -> int:
    report = Report(argv)
    rules = _rules(args)
    params = {"max_order": args.max_order, "rules": sorted(rules)}
    resume = None
    if args.resume:
        ck = read_checkpoint(args.resume, "search-t2r")
        if ck["params"] != params:
            raise InputError(f"checkpoint parameters {ck['params']} differ from {params}")
        resume = ck["state"]
    chunk = args.checkpoint_every if args.checkpoint else None
    while True:
        outcome = search_t2r(
            args.max_order, rules, threads=args.threads, resume=resume, max_nodes=chunk,
            allow_above_cap=args.allow_above_cap,
        )
        if outcome.complete:
            break
        resume = outcome.state
        write_checkpoint(args.checkpoint, "search-t2r", params, {"state": resume})
    if args.checkpoint:
        write_checkpoint(args.checkpoint, "search-t2r", params, {"state": None, "done": True})
    results = {
        "max_order": args.max_order,
        "pruning": sorted(rules),
        "found": outcome.witness is not None,
        "verdict": "T2R semigroup FOUND" if outcome.witness else "no T2R semigroup found",
        "counters_by_order": {str(k): v for k, v in sorted(outcome.counters.items())},
        "totals": outcome.totals,
    }
    if outcome.witness is not None:
        results["witness"] = outcome.witness.to_lists()
    _emit(args, report.finish(results))
    return EXIT_FALSIFIED if outcome.witness is not None else EXIT_OK


def _passes(table, filters, args) -> bool:
    return all(_evaluate(table, f, args)["holds"] for f in filters)


def cmd_enumerate(args, argv) -> int:
    report = Report(argv)
    n = args.order
    if n > ENUMERATION_CAP and not args.allow_above_cap:
        raise InputError(f"enumeration is capped at order {ENUMERATION_CAP}; pass --allow-above-cap")
    if n > ENUMERATION_CAP:
        log.warning("enumerating order %d above the default cap %d", n, ENUMERATION_CAP)
    up_to_iso = not args.labeled
    params = {"order": n, "up_to_iso": up_to_iso, "filter": args.filter}
    search = SemigroupSearch(n, up_to_iso)
    emitted = 0
    cursor = None
    if args.resume:
        ck = read_checkpoint(args.resume, "enumerate")
        if ck["params"] != params:
            raise InputError(f"checkpoint parameters {ck['params']} differ from {params}")
        search.counters.update(ck["counters"])
        emitted = ck["emitted"]
        cursor = ck["cursor"]
        if cursor is None:
            _emit(args, report.finish({"order": n, "count": emitted, "counters": dict(search.counters)}))
            return EXIT_OK
    chunk = args.checkpoint_every if args.checkpoint else None
    templates: dict[str, int] = {}
    out = sys.stdout
    while True:
        if args.threads > 1 and not args.checkpoint and cursor is None:
            leaves = search.run_parallel(args.threads, split_depth=n)
        else:
            leaves = search.run(start=cursor, max_nodes=chunk)
        for table in leaves:
            if args.filter and not _passes(table, args.filter, args):
                continue
            emitted += 1
            if args.count_only:
                continue
            rec = to_json_obj(table)
            if args.filter:
                try:
                    cls = classify_we_delta(table)
                    rec["classification"] = _jsonable(cls.to_json())
                    templates[cls.template] = templates.get(cls.template, 0) + 1
                except ClassificationGap:
                    rec["classification"] = {"template": "CLASSIFICATION_GAP"}
                    templates["CLASSIFICATION_GAP"] = templates.get("CLASSIFICATION_GAP", 0) + 1
            out.write(json.dumps(rec) + "\n")
        cursor = search.cursor
        if args.checkpoint:
            write_checkpoint(args.checkpoint, "enumerate", params, {
                "cursor": cursor, "counters": dict(search.counters), "emitted": emitted,
            })
        if cursor is None:
            break
    results = {"order": n, "up_to_iso": up_to_iso, "count": emitted, "counters": dict(search.counters)}
    if templates:
        results["templates"] = templates
    if args.count_only:
        _emit(args, report.finish(results))
    else:
        print(json.dumps({"summary": report.finish(results)}), file=sys.stderr)
    return EXIT_FALSIFIED if "CLASSIFICATION_GAP" in templates else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finsemi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                        help="degree bound for permutative checks (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate properties of a table")
    p.add_argument("file", help="table file (text or JSON) or preset:NAME")
    p.add_argument("--props", type=_prop_list, default=["delta", "we"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="match the weakly exponential Delta list")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("theorem1", parents=[common], help="T2R/T2L condition report per decomposition")
    p.add_argument("file")
    p.add_argument("--uncorrected-cond5", action="store_true",
                   help="guard condition (5) by |J_b| = 2 only, and show what changes")
    p.set_defaults(func=cmd_theorem1)

    def search_flags(p):
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--checkpoint", help="write progress to this file")
        p.add_argument("--checkpoint-every", type=int, default=100_000, metavar="NODES")
        p.add_argument("--resume", help="continue from a checkpoint file")
        p.add_argument("--allow-above-cap", action="store_true")

    p = sub.add_parser("search-t2r", parents=[common], help="exhaustive search for a finite T2R semigroup")
    p.add_argument("--max-order", type=int, default=T2R_SEARCH_CAP)
    p.add_argument("--prune", default=",".join(T2R_RULES), help="comma list of rules (p6,p7)")
    p.add_argument("--no-prune", action="store_true", help="disable every pruning rule")
    search_flags(p)
    p.set_defaults(func=cmd_search_t2r)

    p = sub.add_parser("enumerate", parents=[common], help="stream all semigroups of an order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--labeled", action="store_true", help="all tables, not one per isomorphism class")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--filter", type=_prop_list, default=[])
    search_flags(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, ["finsemi"] + argv)
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClassificationGap as exc:
        print(f"FALSIFICATION: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except SemigroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
