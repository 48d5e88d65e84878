r"""Command-line front end.

Subcommands
-----------
verify           identity sweeps (first/second inverse forms, key identities,
                 collapsed-vs-alternating equality), optionally sampled and
                 parallelized; exit code 0 iff everything verifies
scan-conjecture  working cut-points l for the collapsed second form
tables           the three reference tables of filtered admissible subsets
qbg              graph export (vertices, labelled edges)
expand           print one expansion as text / JSON / LaTeX

A config file of ``key=value`` lines (via --config) supplies defaults for
any long flag, e.g. ``rank=3`` or ``format=json``.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing as mp
import random
import sys
import time

from .alcove import filtered_A
from .expansions import (
    chevalley_expand,
    ic_rhs_cancel_free_first,
    ic_rhs_conjecture_second,
    ic_rhs_first,
    ic_rhs_second,
)
from .qbg import QBG
from .ring import DemazureCombo, clear_denominators
from .typec import (
    alpha_coords,
    parse_window,
    parse_word,
    reduced_word,
    root_str,
    window_str,
    word_str,
    zero_vec,
)
from .verify import (
    VerificationReport,
    combo_latex,
    conjecture_scan,
    verify_first_half,
    verify_second_half,
    verify_key_props,
    _compare,
)

VARIANTS = ("first", "second", "key", "cf")


# -- shared helpers --------------------------------------------------------


def _parse_elt(text: str, n: int):
    text = text.strip()
    if text.startswith("["):
        w = parse_window(text)
        if len(w) != n:
            raise ValueError(f"window rank {len(w)} != --rank {n}")
        return w
    return parse_word(text, n)


def _parse_xi(text: str | None, n: int):
    if not text:
        return zero_vec(n)
    xi = tuple(int(t) for t in text.replace(",", " ").split())
    if len(xi) != n:
        raise ValueError(f"xi needs {n} coordinates, got {len(xi)}")
    return xi


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _word_and_window(w) -> str:
    return f"{word_str(reduced_word(w))} {window_str(w)}"


# -- verify ----------------------------------------------------------------

_WORKER_QBG: QBG | None = None


def _init_worker(n: int):
    global _WORKER_QBG
    _WORKER_QBG = QBG(n)


def _run_instance(task) -> VerificationReport:
    variant, w, m, xi = task
    qbg = _WORKER_QBG
    if variant == "first":
        return verify_first_half(qbg, w, m, xi)
    if variant == "second":
        return verify_second_half(qbg, w, m, xi)
    if variant == "key":
        return verify_key_props(qbg, w, m)
    if variant == "cf":
        t0 = time.time()
        x = (w, xi)
        lhs = ic_rhs_cancel_free_first(qbg, x, m)
        rhs = ic_rhs_first(qbg, x, m)
        inst = f"cancel-free w={window_str(w)} m={m} xi={window_str(xi)}"
        return _compare(inst, lhs, rhs, t0)
    raise ValueError(f"unknown variant {variant!r}")


def _cmd_verify(args) -> int:
    n = args.rank
    qbg = QBG(n)
    variants = [v.strip() for v in args.variant.split(",")]
    for v in variants:
        if v not in VARIANTS:
            raise SystemExit(f"unknown variant {v!r}; choose from {VARIANTS}")
    elements = [_parse_elt(args.w, n)] if args.w else list(qbg.group)
    ms = [args.m] if args.m else list(range(1, n + 1))
    xi = _parse_xi(args.xi, n)
    tasks = [(v, w, m, xi) for v in variants for w in elements for m in ms]
    if args.sample:
        rng = random.Random(args.seed)
        tasks = rng.sample(tasks, min(args.sample, len(tasks)))
    t0 = time.time()
    if args.jobs > 1:
        with mp.Pool(args.jobs, initializer=_init_worker, initargs=(n,)) as pool:
            reports = pool.map(_run_instance, tasks, chunksize=4)
    else:
        _init_worker(n)
        reports = [_run_instance(t) for t in tasks]
    reports.sort(key=lambda r: r.instance)
    ok = all(r.ok for r in reports)
    took = time.time() - t0
    if args.format == "json":
        text = json.dumps({"ok": ok, "seconds": round(took, 3),
                           "reports": [r.to_json() for r in reports]}, indent=2)
    elif args.format == "latex":
        lines = ["\\begin{itemize}"]
        for r in reports:
            lines.append(f"\\item [{r.status}] \\verb|{r.instance}|")
            if r.residual is not None:
                lines.append(f"  residual: ${combo_latex(r.residual)}$")
        lines.append("\\end{itemize}")
        text = "\n".join(lines)
    else:
        lines = [str(r) for r in reports]
        lines.append(f"{sum(r.ok for r in reports)}/{len(reports)} verified "
                     f"in {took:.2f}s")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if ok else 1


# -- scan-conjecture ---------------------------------------------------------


def _cmd_scan(args) -> int:
    n = args.rank
    qbg = QBG(n)
    elements = [_parse_elt(args.w, n)] if args.w else None
    ms = [args.m] if args.m else None
    res = conjecture_scan(qbg, ms=ms, elements=elements)
    if args.format == "json":
        text = json.dumps(res.to_json(), indent=2)
    else:
        lines = []
        for (w, m), ls in sorted(res.working.items()):
            certs = {l: res.certificates[(w, m, l)] for l in ls}
            lines.append(f"w={window_str(w)} m={m}: l-set={list(ls)} "
                         f"cancellation-free={certs}")
        lines.append(f"counterexamples: {len(res.counterexamples)}")
        lines.append(f"every l-set meets {{m, n}}: {res.expectation_holds}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if not res.counterexamples else 1


# -- tables ------------------------------------------------------------------

# reference instances at rank 3: (base word, src letter, dst letters),
# grouped and ordered as in the worked expansions
TABLE_GROUPS = {
    1: [("s1 s2 s1", 3, (1, 2)),
        ("s2 s1", 2, (1,))],
    2: [("s3 s2", -2, (1, 2, 3, -3)),
        ("s3", -3, (1, 2, 3)),
        ("e", 3, (1, 2)),
        ("s2 s3 s2", 3, (1, 2)),
        ("s2 s3", 2, (1,)),
        ("s2", 2, (1,))],
    3: [("s1 s2 s3 s2 s1", -1, (1, 2, 3, -3, -2)),
        ("s1 s2 s3 s2", -2, (1, 2, 3, -3)),
        ("s1 s2 s3", -3, (1, 2, 3)),
        ("s1 s2", 3, (1, 2)),
        ("s1", 2, (1,))],
}


def table_lines(qbg: QBG, which: int) -> list[str]:
    """Rows of one reference table: filtered subsets with ed and down."""
    lines = [f"table {which} (rank {qbg.n})"]
    idx = 0
    for word, src, dsts in TABLE_GROUPS[which]:
        base = parse_word(word, qbg.n)
        for dst in dsts:
            fam = sorted(filtered_A(qbg, base, src, dst),
                         key=lambda A: (len(A.positions), A.positions))
            for A in fam:
                idx += 1
                pos = "{" + ",".join(str(p) for p in A.positions) + "}"
                lines.append(
                    f"A{idx}  A^{{{src},{dst}}}({word})  positions={pos}  "
                    f"ed={_word_and_window(A.end)}  "
                    f"down={list(alpha_coords(A.down))}")
    return lines


def _cmd_tables(args) -> int:
    if args.rank != 3:
        raise SystemExit("the reference tables are rank-3 data; use --rank 3")
    qbg = QBG(3)
    sections = ["\n".join(table_lines(qbg, t)) for t in (1, 2, 3)]
    _emit("\n\n".join(sections), args.out)
    return 0


# -- qbg export ---------------------------------------------------------------


def _cmd_qbg(args) -> int:
    qbg = QBG(args.rank)
    edges = []
    for w in qbg.group:
        for alpha, kind, y in qbg.edges_from(w):
            edges.append((w, root_str(alpha), kind, y))
    edges.sort()
    if args.format == "json":
        text = json.dumps({
            "rank": args.rank,
            "vertices": [list(w) for w in qbg.group],
            "edges": [{"from": list(w), "root": r, "kind": k, "to": list(y)}
                      for w, r, k, y in edges],
        }, indent=2)
    else:
        lines = [f"qbg rank {args.rank}: {len(qbg.group)} vertices, "
                 f"{len(edges)} edges"]
        for w, r, k, y in edges:
            lines.append(f"{window_str(w)} -{k}-> {window_str(y)}  {r}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


# -- expand --------------------------------------------------------------------


def _combo_text(combo: DemazureCombo, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(combo.to_json(), indent=2)
    if fmt == "latex":
        return combo_latex(combo)
    return str(combo)


def _cmd_expand(args) -> int:
    n = args.rank
    qbg = QBG(n)
    w = _parse_elt(args.w, n) if args.w else tuple(range(1, n + 1))
    xi = _parse_xi(args.xi, n)
    if args.k is not None:
        sign = "+" if args.sign == "plus" else "-"
        combo = chevalley_expand(qbg, w, sign, args.k)
        if any(xi):
            raise SystemExit("--xi applies to the inverse forms only")
    else:
        if args.m is None:
            raise SystemExit("need --k (direct form) or --m (inverse forms)")
        x = (w, xi)
        if args.variant == "first":
            combo = ic_rhs_first(qbg, x, args.m)
        elif args.variant == "second":
            combo = ic_rhs_second(qbg, x, args.m)
        elif args.variant == "cf":
            combo = ic_rhs_cancel_free_first(qbg, x, args.m)
        elif args.variant == "conj":
            l = args.l if args.l is not None else n
            combo = ic_rhs_conjecture_second(qbg, x, args.m, l)
        else:
            raise SystemExit(f"unknown variant {args.variant!r}")
    _emit(_combo_text(combo, args.format), args.out)
    return 0


# -- argument plumbing -----------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--rank", type=int, default=3, help="rank n (default 3)")
    p.add_argument("--format", choices=("text", "json", "latex"),
                   default="text")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qalcove",
        description="quantum Bruhat graph / quantum alcove model toolkit")
    ap.add_argument("--config", help="key=value file of flag defaults")
    sub = ap.add_subparsers(dest="cmd", required=True)

    pv = sub.add_parser("verify", help="run identity verifications")
    _add_common(pv)
    pv.add_argument("--w", help="element: window [2,-1,3] or word 's1 s2'")
    pv.add_argument("--m", type=int, help="single m (default: all 1..n)")
    pv.add_argument("--xi", help="translation coordinates, e.g. '1,0,-1'")
    pv.add_argument("--variant", default="first,second,key",
                    help=f"comma list from {VARIANTS}")
    pv.add_argument("--jobs", type=int, default=1)
    pv.add_argument("--sample", type=int, default=0,
                    help="random sample size (0 = all instances)")
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=_cmd_verify)

    ps = sub.add_parser("scan-conjecture",
                        help="scan collapsed second-form cut points")
    _add_common(ps)
    ps.add_argument("--w")
    ps.add_argument("--m", type=int)
    ps.set_defaults(func=_cmd_scan)

    pt = sub.add_parser("tables", help="emit the three reference tables")
    _add_common(pt)
    pt.set_defaults(func=_cmd_tables)

    pq = sub.add_parser("qbg", help="export the graph")
    _add_common(pq)
    pq.set_defaults(func=_cmd_qbg)

    pe = sub.add_parser("expand", help="print one expansion")
    _add_common(pe)
    pe.add_argument("--w", help="element (default: identity)")
    pe.add_argument("--k", type=int, help="direct form: shift index")
    pe.add_argument("--sign", choices=("plus", "minus"), default="plus")
    pe.add_argument("--m", type=int, help="inverse forms: letter m")
    pe.add_argument("--l", type=int, help="cut point for --variant conj")
    pe.add_argument("--xi", help="translation coordinates")
    pe.add_argument("--variant", default="first",
                    choices=("first", "second", "cf", "conj"))
    pe.set_defaults(func=_cmd_expand)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    pairs = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            pairs[key.strip().replace("-", "_")] = val.strip()
    rest = argv[:i] + argv[i + 2:]
    extra = []
    for key, val in pairs.items():
        flag = "--" + key.replace("_", "-")
        if flag not in rest:
            extra += [flag, val]
    # config-derived flags go right after the subcommand
    for j, tok in enumerate(rest):
        if not tok.startswith("-"):
            return rest[:j + 1] + extra + rest[j + 1:]
    return rest + extra


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    argv = _apply_config(ap, argv)
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
