"""Command-line front end.

Exit codes: 0 success, 1 violation / not colorable / refuted, 2 usage or
malformed input, 3 resource or size limit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import generators as gen
from .claims import ClaimConfig, reports_json, reports_text, search_delta0, search_figure1, verify_claims
from .coloring import (
    ColoringError,
    ExtensionFailure,
    PartialColoring,
    bound_report,
    extend_partial,
    format_coloring,
    greedy_color,
    parse_coloring,
    peel_color,
    validate_coloring,
)
from .digraph import (
    DigraphError,
    blocks,
    degree_profile,
    find_digons,
    format_digraph,
    induced_subdigraph,
    is_eulerian,
    parse_digraph,
    weak_components,
)
from .exact import (
    GuardExceeded,
    ListAssignment,
    ResourceLimit,
    SolveLimits,
    chromatic_number,
    list_colorable,
)
from .lll import LLLError, LLLParams, lll_color
from .structure import (
    brooks_obstruction,
    choosable_bound_check,
    classify_block,
    format_lists,
    gallai_candidate,
    parse_lists,
    required_list_sizes,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_digraph(_read(path))


def _limits(args) -> SolveLimits:
    return SolveLimits(max_nodes=args.limits_nodes, max_seconds=args.limits_seconds)


def _emit(args, data: dict, lines: list[str] | None = None):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    elif lines is not None:
        print("\n".join(lines))
    else:
        for k, v in data.items():
            print(f"{k}={str(v).lower() if isinstance(v, bool) else v}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_stats(args) -> int:
    D = _load(args.file)
    prof = degree_profile(D)
    eul, _ = is_eulerian(D)
    bl = blocks(D)
    data = {
        "n": D.n,
        "m": len(D.arcs),
        "delta_o": prof.delta_o,
        "delta_i": prof.delta_i,
        "delta_tilde": prof.delta_tilde,
        "ceil_delta_tilde": prof.ceil_delta_tilde,
        "digons": len(find_digons(D)),
        "eulerian": eul,
        "components": len(weak_components(D)),
        "blocks": len(bl),
    }
    _emit(args, data)
    return EXIT_OK


def cmd_color(args) -> int:
    D = _load(args.file)
    extra: dict = {}
    if args.algo == "greedy-out":
        col = greedy_color(D, side="out")
    elif args.algo == "greedy-in":
        col = greedy_color(D, side="in")
    elif args.algo == "peel":
        col, trace = peel_color(D)
        extra["peel_trace"] = [r.ceil_delta_tilde for r in trace]
    elif args.algo == "lll":
        params = LLLParams(
            seed=args.seed,
            palette=args.palette,
            retention=args.retention,
            max_rounds=args.max_rounds,
        )
        res = lll_color(D, params)
        col = res.coloring
        extra["fallback"] = res.fallback
        extra["rounds"] = [r.line() for r in res.rounds]
        if res.fallback_reason:
            extra["fallback_reason"] = res.fallback_reason
    elif args.algo == "extend":
        if not args.coloring:
            raise UsageError("--algo extend needs --coloring FILE with the partial coloring")
        partial = parse_coloring(_read(args.coloring), D.n)
        palette = args.palette or max(partial.palette_size, degree_profile(D).delta_o + 1)
        partial = PartialColoring(partial.colors, palette)
        bad = validate_coloring(D, partial)
        if bad is not None:
            print(f"partial coloring invalid: color={bad.color} cycle={' '.join(map(str, bad.cycle))}")
            return EXIT_FAIL
        try:
            col = extend_partial(D, partial)
        except ExtensionFailure as exc:
            print(f"extension failed at vertex {exc.vertex}")
            return EXIT_FAIL
    else:  # argparse restricts choices
        raise UsageError(f"unknown algorithm {args.algo}")
    rep = bound_report(D)
    used = col.num_colors_used()
    if args.json:
        print(json.dumps({"colors_used": used, "coloring": list(col.colors), "bounds": rep.as_dict(), **extra}, sort_keys=True))
    else:
        print(f"# colors_used={used}")
        for line in rep.to_lines().splitlines():
            print(f"# {line}")
        for k, v in extra.items():
            if isinstance(v, list) and v and isinstance(v[0], str):
                for s in v:
                    print(f"# {s}")
            else:
                print(f"# {k}={v}")
        sys.stdout.write(format_coloring(col))
    return EXIT_OK


def cmd_chi(args) -> int:
    D = _load(args.file)
    k, col = chromatic_number(D, _limits(args))
    if args.json:
        print(json.dumps({"chi": k, "coloring": list(col.colors)}))
    else:
        print(k)
    return EXIT_OK


def cmd_list_chi(args) -> int:
    D = _load(args.file)
    limits = _limits(args)
    if args.lists:
        L = parse_lists(_read(args.lists), D.n)
        col = list_colorable(D, L, limits)
        if col is None:
            _emit(args, {"l_colorable": False})
            return EXIT_FAIL
        if args.json:
            print(json.dumps({"l_colorable": True, "coloring": list(col.colors)}))
        else:
            print("l_colorable=true")
            sys.stdout.write(format_coloring(col))
        return EXIT_OK
    if args.k is not None:
        v = choosable_bound_check(D, args.k, limits=limits)
        if v.choosable:
            _emit(args, {"k": args.k, "choosable": True, "checked": v.checked})
            return EXIT_OK
        if args.json:
            print(json.dumps({"k": args.k, "choosable": False, "counterexample": [sorted(x) for x in v.counterexample.lists]}))
        else:
            print(f"k={args.k}\nchoosable=false")
            sys.stdout.write(format_lists(v.counterexample))
        return EXIT_FAIL
    # choice number: smallest k that is choosable
    k = 1
    while not choosable_bound_check(D, k, limits=limits).choosable:
        k += 1
    _emit(args, {"choice_number": k})
    return EXIT_OK


def cmd_check(args) -> int:
    if not args.coloring:
        raise UsageError("check needs --coloring FILE")
    D = _load(args.file)
    col = parse_coloring(_read(args.coloring), D.n)
    bad = validate_coloring(D, col)
    if bad is None:
        _emit(args, {"valid": True, "colors_used": col.num_colors_used(), "uncolored": len(col.uncolored())})
        return EXIT_OK
    if args.json:
        print(json.dumps({"valid": False, "color": bad.color, "cycle": list(bad.cycle)}))
    else:
        print(f"valid=false\ncolor={bad.color}\ncycle={' '.join(map(str, bad.cycle))}")
    return EXIT_FAIL


def cmd_blocks(args) -> int:
    D = _load(args.file)
    out = []
    for b in blocks(D):
        out.append({"vertices": list(b.vertices), "arcs": [list(a) for a in b.arcs], "class": str(classify_block(D, b))})
    if args.json:
        print(json.dumps(out))
    else:
        for i, b in enumerate(out):
            print(f"block {i} class={b['class']} vertices={' '.join(map(str, b['vertices']))}")
    return EXIT_OK


def cmd_obstruction(args) -> int:
    D = _load(args.file)
    prof = degree_profile(D)
    if args.k is not None:
        k = args.k
    elif prof.delta_o == prof.delta_i and set(prof.out_deg) == {prof.delta_o} and set(prof.in_deg) == {prof.delta_o}:
        k = prof.delta_o + 1
    else:
        k = None
    data: dict = {"obstruction_k": k, "critical_obstruction": bool(k and k >= 2 and brooks_obstruction(D, k))}
    L_all = parse_lists(_read(args.lists), D.n) if args.lists else None
    comps = []
    for comp in weak_components(D):
        sub, old = induced_subdigraph(D, comp)
        if L_all is not None:
            L = ListAssignment(tuple(L_all.lists[v] for v in old), L_all.universe)
        else:
            sizes = [max(s, 1) for s in required_list_sizes(sub)]
            L = ListAssignment(tuple(frozenset(range(s)) for s in sizes), max(sizes, default=1))
        rep = gallai_candidate(sub, L)
        comps.append(
            {
                "vertices": list(old),
                "hypothesis_ok": rep.hypothesis_ok,
                "eulerian": rep.eulerian,
                "lists_tight": rep.lists_tight,
                "blocks_ok": rep.blocks_ok,
                "candidate": rep.candidate,
                "blocks": [str(c) for c in rep.block_classes],
            }
        )
    data["components"] = comps
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(f"obstruction_k={data['obstruction_k']}")
        print(f"critical_obstruction={str(data['critical_obstruction']).lower()}")
        for i, c in enumerate(comps):
            fields = " ".join(f"{k}={str(v).lower()}" for k, v in c.items() if isinstance(v, bool))
            print(f"component {i} {fields} blocks={','.join(c['blocks'])}")
    return EXIT_OK


def cmd_gen(args) -> int:
    fam, params = args.family, args.params
    try:
        if fam in gen.BASIC_FAMILIES:
            D = gen.gen_basic(fam, *params)
        elif fam == "fano":
            D = gen.gen_fano(params[0] if params else 0)
        elif fam == "tournament":
            (n,) = params
            D = gen.gen_random_tournament(n, args.seed)
        elif fam == "regular":
            n, delta = params
            D = gen.gen_random_regular_digonfree(n, delta, args.seed)
        elif fam == "rotational":
            n, *res = params
            D = gen.gen_rotational_tournament(n, res)
        elif fam == "random":
            n, percent = params
            D = gen.gen_random_digraph(n, percent / 100, args.seed)
        else:
            raise UsageError(f"unknown family {fam!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, gen.RetryBudgetExhausted):
            raise
        raise UsageError(f"bad parameters for {fam}: {exc}") from None
    sys.stdout.write(format_digraph(D))
    return EXIT_OK


def cmd_verify_claims(args) -> int:
    cfg = ClaimConfig(
        seed=args.seed,
        samples=args.samples,
        structure_max_n=args.structure_max_n,
        limits=_limits(args),
    )
    only = set(args.only) if args.only else None
    reports = verify_claims(cfg, only)
    if args.json:
        print(reports_json(reports, args.timings))
    else:
        sys.stdout.write(reports_text(reports, args.timings))
    return EXIT_FAIL if any(r.status == "refuted" for r in reports) else EXIT_OK


def cmd_search_delta0(args) -> int:
    rep = search_delta0(args.mode, args.target, args.samples, args.seed, _limits(args))
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, cx in enumerate(rep["counterexamples"]):
            (out / f"counterexample_{i}.digraph").write_text(cx["digraph"])
            (out / f"counterexample_{i}.coloring").write_text(cx["coloring"])
    if args.json:
        print(json.dumps(rep, sort_keys=True))
    else:
        for k in ("mode", "target", "checked", "counterexample_count"):
            print(f"{k}={rep[k]}")
        for cx in rep["counterexamples"][:10]:
            print(f"counterexample={cx['name']}")
        print(f"# {rep['commentary']}")
    return EXIT_OK


def cmd_search_figure1(args) -> int:
    rep = search_figure1(_limits(args))
    if args.json:
        print(json.dumps(rep, sort_keys=True))
    else:
        _emit(args, {k: rep[k] for k in ("class_count", "chi3_count", "fano_is_chi3", "orbit_sum", "labeled_count")})
        for i, c in enumerate(rep["classes"]):
            print(f"class {i} chi={c['chi']} automorphisms={c['automorphisms']} fano={str(c['is_fano']).lower()}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--limits-nodes", type=int, default=50_000_000)
    common.add_argument("--limits-seconds", type=float, default=600.0)

    p = argparse.ArgumentParser(prog="dichromatic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("stats", cmd_stats, "degree profile, digons, Eulerian flag, blocks")
    sp.add_argument("file")

    sp = add("color", cmd_color, "color a digraph and report bounds")
    sp.add_argument("file")
    sp.add_argument("--algo", choices=["greedy-out", "greedy-in", "peel", "lll", "extend"], default="greedy-out")
    sp.add_argument("--coloring", help="partial coloring for --algo extend")
    sp.add_argument("--palette", type=int, help="palette size (lll: random-phase colors)")
    sp.add_argument("--retention", type=float, help="lll retention threshold r")
    sp.add_argument("--max-rounds", type=int, default=100)

    sp = add("chi", cmd_chi, "exact dichromatic number")
    sp.add_argument("file")

    sp = add("list-chi", cmd_list_chi, "list colorability / choosability")
    sp.add_argument("file")
    sp.add_argument("--lists", help="list assignment file ('v: c1 c2 ...')")
    sp.add_argument("--k", type=int, help="check k-choosability")

    sp = add("check", cmd_check, "validate a coloring file")
    sp.add_argument("file")
    sp.add_argument("--coloring", required=False)

    sp = add("blocks", cmd_blocks, "block decomposition with block types")
    sp.add_argument("file")

    sp = add("obstruction", cmd_obstruction, "critical-obstruction and list-coloring structure reports")
    sp.add_argument("file")
    sp.add_argument("--k", type=int)
    sp.add_argument("--lists")

    sp = add("gen", cmd_gen, "generate a digraph")
    sp.add_argument(
        "family",
        choices=sorted(gen.BASIC_FAMILIES) + ["fano", "tournament", "regular", "rotational", "random"],
    )
    sp.add_argument("params", type=int, nargs="*")

    sp = add("verify-claims", cmd_verify_claims, "replay the claim suite")
    sp.add_argument("--structure-max-n", type=int, default=5)
    sp.add_argument("--only", nargs="*", help="claim ids to run")
    sp.add_argument("--timings", action="store_true", help="include runtimes (breaks byte-identical output)")

    sp = add("search-delta0", cmd_search_delta0, "search for ceil(Delta~) = target digraphs needing target colors")
    sp.add_argument("--mode", choices=["sample", "exhaustive"], default="sample")
    sp.add_argument("--target", type=int, default=4)
    sp.add_argument("--witness-dir")
    sp.set_defaults(samples=500)

    add("search-figure1", cmd_search_figure1, "census of 3-regular 7-vertex tournaments")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ResourceLimit, GuardExceeded, gen.RetryBudgetExhausted) as exc:
        print(f"error: limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, DigraphError, ColoringError, LLLError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
