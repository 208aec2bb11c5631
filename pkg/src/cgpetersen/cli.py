"""
Command-line interface.

Exit codes: 0 all requested checks pass, 1 a verification check failed,
2 bad input (usage, unreadable or degenerate embedding, unknown graph),
3 two computations that must agree did not.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .catalog import Member, build, catalog_dump, classify, weight_rules, weight_table
from .exchange import ExchangeError, find_isomorphism, parse_script, run_script
from .fixtures import FIXTURES
from .graph import GraphError, enumerate_cycles, enumerate_disjoint_pairs
from .spatial import (EmbeddingError, SpatialEmbedding, embedding_to_dict, load_embedding,
                      random_embedding, validate)
from .verify import (DERIVATION_ROUTES, ConsistencyError, NotInCatalogError, PreconditionError,
                     Route, compute_report, corollary_check, derive_and_check_weights,
                     derive_weights, verify_integral_identity)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

EMBEDDING_SCHEMA = """\
Embedding files are JSON objects:

  {
    "graph": {"vertices": ["u", "v", ...], "edges": [["u", "v"], ...]},
    "positions": {"u": [x, y, z], ...},
    "waypoints": {"u v": [[x, y, z], ...], ...}
  }

Every vertex needs a position. "waypoints" is optional; the key "a b"
names the edge a-b and its points are interior bends listed from a to b.
Edges without waypoints are straight segments. Vertex names must not
contain whitespace.
"""

# Routes starting at K6 used by `weights --derive`.
_PRIMARY_ROUTES = {
    Member.Q7: (1,),
    Member.Q8: (1, 5),
    Member.P8: (1, 2),
    Member.P9: (1, 2, 3),
    Member.P10: (1, 2, 3, 4),
}


class InputError(Exception):
    pass


def _member(name: str) -> Member:
    try:
        return Member.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {n}")
    return n


def thread_cap() -> int:
    """Worker count: CPU count, capped by the CG_THREADS environment variable."""
    n = os.cpu_count() or 1
    raw = os.environ.get("CG_THREADS")
    if raw:
        try:
            n = min(n, max(1, int(raw)))
        except ValueError:
            raise InputError(f"CG_THREADS must be an integer, got {raw!r}") from None
    return n


# ---------------------------------------------------------------- output


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cyc(c) -> str:
    return "[" + " ".join(c) + "]"


def _pretty_catalog(d: dict) -> str:
    if "members" in d:
        return "\n\n".join(_pretty_catalog(m) for m in d["members"])
    counts = ", ".join(f"{k}:{v}" for k, v in d["cycle_counts"].items())
    return "\n".join([
        f"{d['member']}: {len(d['vertices'])} vertices, {len(d['edges'])} edges",
        "  vertices: " + " ".join(d["vertices"]),
        "  edges:    " + " ".join(f"{a}-{b}" for a, b in d["edges"]),
        f"  cycles:   {d['cycles']} ({counts})",
        f"  disjoint cycle pairs: {d['disjoint_pairs']}",
    ])


def _pretty_weights(d: dict) -> str:
    out = []
    if "rules" in d:
        out.append(_table([[r["rule"], r["value"], r["cycles"]] for r in d["rules"]],
                          ["rule", "weight", "cycles"]))
    if "weights" in d:
        nonzero = [w for w in d["weights"] if w["weight"]]
        out.append(f"{d['member']} ({d.get('source', 'table')}): "
                   f"{len(nonzero)} of {len(d['weights'])} cycles with nonzero weight")
        out.append(_table([[_cyc(w["cycle"]), len(w["cycle"]), w["weight"]] for w in nonzero],
                          ["cycle", "length", "weight"]))
    if "routes" in d:
        rows = [[r["route"], "pass" if r["passed"] else "FAIL", r["mismatches"],
                 r.get("first_mismatch", "")] for r in d["routes"]]
        out.append(_table(rows, ["route", "result", "mismatches", "first mismatch"]))
    return "\n\n".join(out)


def _pretty_verify(d: dict) -> str:
    r = d["report"]
    lines = [f"member {r['member']}, {r['crossings']} crossings in the projection"]
    lines.append(_table([[_cyc(p["pair"][0]) + " " + _cyc(p["pair"][1]), p["lk"]]
                         for p in r["pairs"]], ["disjoint pair", "lk"]))
    lines.append(f"sum lk = {r['lk_sum']}, sum lk^2 = {r['rhs'] + 1}, "
                 f"sum w*a2 = {r['weighted_a2']}")
    lines.append(f"2*sum w*a2 = {r['lhs']}, sum lk^2 - 1 = {r['rhs']}")
    if r["witnesses"]:
        lines.append(_table([[_cyc(w["cycle"]), w["weight"], w["a2"]] for w in r["witnesses"]],
                            ["witness cycle", "weight", "a2"]))
    for name, res in d["checks"].items():
        lines.append(f"{name:10s} {res}")
    return "\n".join(lines)


def _pretty_random(d: dict) -> str:
    lines = [f"{d['member']}: {d['passed']}/{d['count']} embeddings pass "
             f"(seeds {d['first_seed']}..{d['first_seed'] + d['count'] - 1})"]
    for key, label in (("lk_squares", "sum lk^2"), ("weighted_a2", "sum w*a2")):
        lines.append(_table([[k, v] for k, v in d[key].items()], [label, "embeddings"]))
    if d["cal_min_weighted_a2"] is not None:
        lines.append(f"smallest sum w*a2 over CAL embeddings: {d['cal_min_weighted_a2']}")
    if d.get("failure"):
        lines.append(f"FAILED at seed {d['failure']['seed']}: {d['failure']['reason']}")
    return "\n\n".join(lines)


def _pretty_exchange(d: dict) -> str:
    lines = [f"start: {d['start']}"] + [f"  {s}" for s in d["steps"]]
    lines.append(f"result: {len(d['vertices'])} vertices, {len(d['edges'])} edges")
    lines.append("  edges: " + " ".join(f"{a}-{b}" for a, b in d["edges"]))
    lines.append(f"  identical to: {d['identical_to'] or '-'}")
    lines.append(f"  isomorphic to: {d['isomorphic_to'] or '-'}")
    return "\n".join(lines)


_PRETTY = {
    "catalog": _pretty_catalog,
    "weights": _pretty_weights,
    "verify": _pretty_verify,
    "random-test": _pretty_random,
    "exchange": _pretty_exchange,
}


def _emit(args, payload: dict) -> None:
    if args.format == "json" or args.command not in _PRETTY:
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = f"cgpetersen {__version__}\n" + _PRETTY[args.command](payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -------------------------------------------------------------- commands


def _catalog_entry(member: Member) -> dict:
    g = build(member)
    cycles = enumerate_cycles(g)
    counts = Counter(len(c) for c in cycles)
    d = catalog_dump(member)
    del d["weights"]
    d.update(cycles=len(cycles),
             cycle_counts={str(k): counts[k] for k in sorted(counts)},
             disjoint_pairs=len(enumerate_disjoint_pairs(g, cycles)))
    return d


def cmd_catalog(args) -> tuple[dict, int]:
    if args.member:
        return _catalog_entry(args.member), EXIT_OK
    return {"members": [_catalog_entry(m) for m in Member]}, EXIT_OK


def _route_dict(res) -> dict:
    d = {"route": res.route.describe(), "passed": res.passed,
         "mismatches": len(res.mismatches), "uncovered_rules": res.uncovered_rules}
    if res.mismatches:
        c, got, want = res.mismatches[0]
        d["first_mismatch"] = f"{c}: derived {got}, table {want}"
    return d


def cmd_weights(args) -> tuple[dict, int]:
    m = args.member
    if args.mode == "table":
        rules = Counter(classify(m, c)[0] for c in enumerate_cycles(build(m)))
        table = weight_table(m)
        return {
            "member": m.value,
            "rules": [{"rule": name, "value": value, "cycles": rules.get(name, 0)}
                      for name, value, _ in weight_rules(m)],
            "weights": [{"cycle": list(c.vertices), "weight": v} for c, v in table.items()],
        }, EXIT_OK
    if args.mode == "derive":
        steps = _PRIMARY_ROUTES.get(m, ())
        source = Member.K6 if steps else m
        derived = derive_weights(source, steps)
        return {
            "member": m.value,
            "source": Route(m, source, steps).describe() if steps else f"{m.value} (base table)",
            "weights": [{"cycle": list(c.vertices), "weight": v} for c, v in derived.items()],
        }, EXIT_OK
    routes = [r for r in DERIVATION_ROUTES if m in (r.target, r.source)]
    results = derive_and_check_weights(routes)
    if m is Member.K6:
        # Base case: the empty route reproduces the table.
        results.extend(derive_and_check_weights([Route(m, m, ())]))
    routes_out = [_route_dict(r) for r in results]
    ok = all(r.passed for r in results)
    return {"member": m.value, "passed": ok, "routes": routes_out}, EXIT_OK if ok else EXIT_FAIL


def _relabel_to(f: SpatialEmbedding, member: Member) -> SpatialEmbedding:
    target = build(member)
    iso = find_isomorphism(f.graph, target)
    if iso is None:
        raise InputError(f"embedded graph is not isomorphic to {member.value}")
    return SpatialEmbedding(
        target,
        {iso[v]: p for v, p in f.positions.items()},
        {(iso[a], iso[b]): pts for (a, b), pts in f.waypoints.items()},
    )


def _load_for_verify(args) -> SpatialEmbedding:
    f = load_embedding(args.file)
    validate(f)
    if args.graph is not None:
        if f.graph != build(args.graph):
            f = _relabel_to(f, args.graph)
    return f


def cmd_verify(args) -> tuple[dict, int]:
    f = _load_for_verify(args)
    report = compute_report(f)
    checks: dict[str, str] = {}
    ok = True
    if args.check in ("all", "mod2"):
        checks["mod2"] = "pass" if report.mod2_holds else "FAIL"
        ok &= report.mod2_holds
    if args.check in ("all", "identity"):
        verify_integral_identity(report)
        checks["identity"] = "pass" if report.identity_holds else "FAIL"
        ok &= report.identity_holds
    if args.check in ("all", "corollary"):
        if report.cal:
            corollary_check(report)
            checks["corollary"] = "pass"
        elif args.check == "corollary":
            raise PreconditionError("embedding is not complexly algebraically linked "
                                    f"(sum of lk^2 = {report.lk_squares})")
        else:
            checks["corollary"] = "not applicable (not CAL)"
    payload = {"file": os.path.basename(args.file), "checks": checks, "passed": bool(ok),
               "report": report.to_dict()}
    return payload, EXIT_OK if ok else EXIT_FAIL


def _run_seed(member_value: str, seed: int) -> dict:
    member = Member(member_value)
    f = random_embedding(build(member), seed)
    r = compute_report(f)
    cal = r.cal
    failure = None
    if not r.identity_holds:
        failure = f"2*sum w*a2 = {r.lhs} but sum lk^2 - 1 = {r.rhs}"
    elif not r.mod2_holds:
        failure = f"sum lk = {r.lk_sum} is even"
    elif r.mod2_sum != r.lk_squares % 2:
        failure = "sum lk and sum lk^2 differ mod 2"
    elif cal and (r.weighted_a2 < 1 or not r.witnesses):
        failure = f"CAL embedding with sum w*a2 = {r.weighted_a2}"
    return {"seed": seed, "lk_squares": r.lk_squares, "weighted_a2": r.weighted_a2,
            "cal": cal, "failure": failure}


def cmd_random_test(args) -> tuple[dict, int]:
    seeds = list(range(args.seed, args.seed + args.seeds))
    workers = min(thread_cap(), len(seeds))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_seed, [args.member.value] * len(seeds), seeds,
                                    chunksize=max(1, len(seeds) // (4 * workers))))
    else:
        results = [_run_seed(args.member.value, s) for s in seeds]
    failure = next(({"seed": r["seed"], "reason": r["failure"]} for r in results if r["failure"]),
                   None)
    if failure:
        results = results[:results.index(next(r for r in results if r["failure"])) + 1]
    cal_values = [r["weighted_a2"] for r in results if r["cal"]]
    payload = {
        "member": args.member.value,
        "first_seed": args.seed,
        "count": len(results),
        "passed": sum(1 for r in results if not r["failure"]),
        "lk_squares": {str(k): v for k, v in sorted(Counter(r["lk_squares"] for r in results).items())},
        "weighted_a2": {str(k): v for k, v in sorted(Counter(r["weighted_a2"] for r in results).items())},
        "cal_embeddings": len(cal_values),
        "cal_min_weighted_a2": min(cal_values) if cal_values else None,
        "failure": failure,
    }
    return payload, EXIT_FAIL if failure else EXIT_OK


def cmd_embed(args) -> tuple[dict, int]:
    return embedding_to_dict(random_embedding(build(args.member), args.seed)), EXIT_OK


def cmd_fixture(args) -> tuple[dict, int]:
    return embedding_to_dict(FIXTURES[args.name]()), EXIT_OK


def cmd_exchange(args) -> tuple[dict, int]:
    with open(args.script) as fh:
        steps = parse_script(fh.read())
    g = run_script(build(args.graph), steps)
    identical = next((m.value for m in Member if build(m) == g), None)
    iso = next((m.value for m in Member if find_isomorphism(g, build(m)) is not None), None)
    return {
        "start": args.graph.value,
        "steps": [str(arg) if kind == "DY" else f"YD {arg}" for kind, arg in steps],
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.sorted_edges()],
        "identical_to": identical,
        "isomorphic_to": iso,
    }, EXIT_OK


def cmd_schema(args) -> tuple[dict, int]:
    sys.stdout.write(EMBEDDING_SCHEMA)
    return {}, EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json",
                        help="output format (default: json)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    p = argparse.ArgumentParser(
        prog="cgpetersen",
        description="Weight maps and linking-number identities for the Petersen family.",
        epilog="Exit codes: 0 pass, 1 verification failure, 2 input error, "
               "3 internal consistency error. CG_THREADS caps worker processes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("catalog", parents=[common], help="vertices, edges and cycle counts")
    s.add_argument("member", nargs="?", type=_member, help="K6, Q7, Q8, P7, P8, P9 or P10")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("weights", parents=[common], help="weight tables and their derivation")
    s.add_argument("member", type=_member)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--table", dest="mode", action="store_const", const="table",
                      help="print the weight table (default)")
    mode.add_argument("--derive", dest="mode", action="store_const", const="derive",
                      help="pull the K6 weights back along Delta-Y exchanges")
    mode.add_argument("--check", dest="mode", action="store_const", const="check",
                      help="compare every derivation route through MEMBER with the tables")
    s.set_defaults(func=cmd_weights, mode="table")

    s = sub.add_parser("verify", parents=[common], help="check the identities on an embedding file",
                       epilog=EMBEDDING_SCHEMA, formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("file")
    s.add_argument("--graph", type=_member,
                   help="relabel the embedded graph onto this member by isomorphism if needed")
    which = s.add_mutually_exclusive_group()
    for name in ("all", "mod2", "identity", "corollary"):
        which.add_argument(f"--{name}", dest="check", action="store_const", const=name)
    s.set_defaults(func=cmd_verify, check="all")

    s = sub.add_parser("random-test", parents=[common],
                       help="check the identities on seeded random embeddings")
    s.add_argument("member", type=_member)
    s.add_argument("--seeds", type=_positive, default=100, help="number of embeddings (default 100)")
    s.add_argument("--seed", type=_nonnegative, default=0, help="first seed (default 0)")
    s.set_defaults(func=cmd_random_test)

    s = sub.add_parser("embed", parents=[common], help="write a seeded random embedding")
    s.add_argument("member", type=_member)
    s.add_argument("--seed", type=_nonnegative, default=0)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("fixture", parents=[common], help="write a hand-built embedding")
    s.add_argument("name", choices=sorted(FIXTURES))
    s.set_defaults(func=cmd_fixture)

    s = sub.add_parser("exchange", parents=[common], help="replay a Delta-Y / Y-Delta script")
    s.add_argument("script", help='lines "DY a b c -> x" or "YD x"')
    s.add_argument("--graph", type=_member, default=Member.K6, help="starting member (default K6)")
    s.set_defaults(func=cmd_exchange)

    s = sub.add_parser("schema", help="describe the embedding file format")
    s.set_defaults(func=cmd_schema, format="json", out=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except ConsistencyError as exc:
        print(f"cgpetersen: internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, EmbeddingError, NotInCatalogError, PreconditionError,
            ExchangeError, GraphError, OSError) as exc:
        print(f"cgpetersen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command != "schema":
        _emit(args, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
