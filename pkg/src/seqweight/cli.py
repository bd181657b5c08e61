"""Command-line front end.

Exit codes: 0 success or feasible, 1 infeasible or violated, 2 unknown or
budget exhausted, 64 usage or input error, 70 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import constructive, generators, lll, oracle
from .errors import (
    BudgetExceeded,
    InapplicableTheorem,
    InvariantViolation,
    MaxRoundsExceeded,
    SeqWeightError,
)
from .formats import (
    dumps_structured,
    emit_colouring,
    emit_ordering,
    emit_weighting,
    format_value,
    parse_lists,
    parse_ordering,
    parse_weighting,
)
from .graph import Graph, ordering_for
from .graph_io import emit_edge_list, emit_graph6, read_graph
from .weighting import (
    APPEND,
    EDGE,
    TOTAL,
    ListAssignment,
    induced_colouring,
    irregular_violations,
    prefix_violations,
    proper_violations,
    respects_lists,
)

OK, FAIL, UNKNOWN, USAGE, SOFTWARE = 0, 1, 2, 64, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


class _Out:
    """Collects text lines or a structured dict, then emits one of them."""

    def __init__(self, args):
        self.structured = args.format == "structured"
        self.path = args.out
        self.lines: list[str] = []
        self.data: dict = {}

    def add(self, key, value, text=None):
        self.data[key] = value
        if text is None:
            text = f"{key}: {format_value(value) if isinstance(value, Fraction) else value}"
        self.lines.append(text)

    def emit(self):
        body = dumps_structured(self.data) if self.structured else "\n".join(self.lines).rstrip("\n") + "\n"
        if self.path:
            _write(self.path, body)
        else:
            sys.stdout.write(body)


def _graph(args) -> Graph:
    return read_graph(args.graph, args.graph_format)


def _lists(args, G: Graph, mode: str, default_k: int | None = None) -> ListAssignment:
    if getattr(args, "lists", None):
        L = parse_lists(_read(args.lists), G.m, G.n)
        L.check_shape(G, mode)
        return L
    k = getattr(args, "k", None) or default_k
    if k is None:
        raise UsageError("give --lists or --k")
    return ListAssignment.fixed(G, k, total=(mode == TOTAL))


def _ordering(args, G: Graph):
    if getattr(args, "ordering", None):
        return parse_ordering(_read(args.ordering))
    return None


def _certificate(out, args, G, ordering, w, mode):
    col = induced_colouring(G, ordering, w, mode)
    out.add("ordering", ordering, "ordering: " + emit_ordering(ordering).strip())
    out.add("weighting", w, "weighting:\n" + emit_weighting(w).rstrip("\n"))
    out.add("colouring", col, "colouring:\n" + emit_colouring(col).rstrip("\n"))
    if args.ordering_out:
        _write(args.ordering_out, emit_ordering(ordering))
    if args.weighting_out:
        _write(args.weighting_out, emit_weighting(w))
    return col


# ---------------------------------------------------------------- subcommands

def cmd_gen(args) -> int:
    params = {}
    for name in ("n", "d", "p", "mu"):
        val = getattr(args, name)
        if val is not None:
            params[name] = val
    if args.family in ("random_regular", "random_nice", "random_multigraph"):
        params["seed"] = args.seed
    if args.family == "star" and "n" not in params:
        raise UsageError("star needs --n (number of leaves)")
    try:
        G = generators.generate(args.family, **params)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc
    text = emit_graph6(G) + "\n" if args.graph_format == "graph6" else emit_edge_list(G)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_weight(args) -> int:
    G = _graph(args)
    L = _lists(args, G, EDGE, default_k=2)
    if G.multiplicity > 1:
        ordering, w = constructive.multigraph_prefix_weighting(G, L)
    else:
        ordering, w = constructive.prefix_distinguishing_weighting_components(G, L)
    out = _Out(args)
    _certificate(out, args, G, ordering, w, EDGE)
    out.add("verified", True)
    out.emit()
    return OK


def cmd_total_weight(args) -> int:
    G = _graph(args)
    L = _lists(args, G, TOTAL, default_k=2)
    ordering, w = constructive.total_weighting_via_leaves(G, L)
    out = _Out(args)
    _certificate(out, args, G, ordering, w, TOTAL)
    out.add("verified", True)
    out.emit()
    return OK


def _resample_one(payload):
    G, ordering, L, scope, mode, seed, max_rounds = payload
    try:
        r = lll.resample(G, ordering, L, scope, mode, seed, max_rounds)
        return seed, r, None
    except MaxRoundsExceeded as exc:
        return seed, None, (exc.rounds, exc.violations)


def cmd_resample(args) -> int:
    G = _graph(args)
    L = _lists(args, G, args.mode)
    ordering = _ordering(args, G)
    scope = args.scope.replace("-", "_")
    seeds = [args.seed + i for i in range(args.trials)]
    payloads = [(G, ordering, L, scope, args.mode, s, args.max_rounds) for s in seeds]
    if args.jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_resample_one, payloads))
    else:
        results = [_resample_one(p) for p in payloads]
    results.sort(key=lambda x: x[0])
    out = _Out(args)
    successes = [r for _, r, _ in results if r is not None]
    if args.trials == 1:
        seed, r, fail = results[0]
        if r is None:
            out.add("status", "max_rounds_exceeded")
            out.add("rounds", fail[0])
            out.add("violations", [list(p) for p in fail[1]],
                    "violations: " + " ".join(f"{a}-{b}" for a, b in fail[1]))
            out.add("seed", seed)
            out.emit()
            return UNKNOWN
        out.add("status", "ok")
        out.add("rounds", r.rounds)
        out.add("seed", seed)
        _certificate(out, args, G, ordering_for(G, ordering), r.weighting, args.mode)
        out.emit()
        return OK
    out.add("trials", len(seeds))
    out.add("successes", len(successes))
    out.add("runs", [{"seed": s, "ok": r is not None, "rounds": r.rounds if r else f[0]}
                     for s, r, f in results],
            "\n".join(f"seed {s}: {'ok' if r else 'max_rounds_exceeded'} after "
                      f"{r.rounds if r else f[0]} rounds" for s, r, f in results))
    out.emit()
    return OK if len(successes) == len(seeds) else UNKNOWN


PARAMS = {
    "chi-sigma": ("sigma", oracle.PROPER),
    "chi-sigma-star": ("sigma_star", oracle.PROPER),
    "s-sigma": ("sigma", oracle.IRREGULAR),
    "s-sigma-star": ("sigma_star", oracle.IRREGULAR),
    "prefix-sigma-star": ("sigma_star", oracle.PREFIX),
    "chi-multiset": ("multiset", None),
    "chi-sum": ("sum", None),
    "mg": ("mg", None),
    "feasible": ("feasible", None),
}


def cmd_oracle(args) -> int:
    G = _graph(args)
    kind, criterion = PARAMS[args.param]
    out = _Out(args)
    if kind == "mg":
        M, table = oracle.compute_MG(G)
        out.add("parameter", "M_G")
        out.add("value", M)
        out.add("table", {i: {"count": c, "ceil_root": r} for i, (c, r) in table.items()},
                "\n".join(f"degree {i}: n_i={c} ceil_root={r}" for i, (c, r) in table.items()))
        out.emit()
        return OK
    if kind == "feasible":
        L = _lists(args, G, args.mode)
        res = oracle.feasible_for_ordering(G, _ordering(args, G), L, args.criterion.replace("-", "_"),
                                           args.mode, budget=args.budget)
        status = {True: "feasible", False: "infeasible", None: "unknown"}[res.feasible]
        out.add("status", status)
        out.add("nodes", res.nodes)
        if res.witness is not None:
            _certificate(out, args, G, res.ordering, res.witness, args.mode)
        out.emit()
        return {True: OK, False: FAIL, None: UNKNOWN}[res.feasible]
    if kind == "sigma":
        res = oracle.min_k_sigma(G, criterion, args.max_k, args.mode, budget=args.budget, jobs=args.jobs)
    elif kind == "sigma_star":
        res = oracle.min_k_sigma_star(G, criterion, args.max_k, args.mode, budget=args.budget,
                                      seed=args.seed, jobs=args.jobs)
    elif kind == "multiset":
        res = oracle.min_k_multiset(G, args.max_k, args.budget)
    else:
        res = oracle.min_k_sum(G, args.max_k, args.budget)
    d = res.as_dict()
    out.add("parameter", res.parameter)
    out.add("value", d["value"])
    for key in ("exact", "upper_bound", "reason", "orderings", "nodes"):
        if key in d:
            out.add(key, d[key])
    if res.below:
        below = dict(res.below)
        text = f"infeasible at k={below['k']}"
        if "counterexample_ordering" in below:
            text += ": counterexample ordering " + " ".join(map(str, below["counterexample_ordering"]))
        elif "record" in below:
            text += f" ({below['record']})"
        out.add("below", below, text)
    if res.witness is not None:
        _certificate(out, args, G, res.witness_ordering, res.witness, args.mode)
    out.emit()
    return OK if res.value is not None else UNKNOWN


def cmd_bounds(args) -> int:
    k = lll.bound_k(args.task, args.n, d=args.d, delta=args.delta, Delta=args.Delta)
    out = _Out(args)
    if out.structured:
        out.add("task", args.task)
        out.add("k", k)
    else:
        out.lines.append(str(k))
    out.emit()
    return OK


def cmd_hypothesis(args) -> int:
    if args.graph:
        G = _graph(args)
        rep = lll.hypothesis_check(G, args.theorem, args.k)
    else:
        if None in (args.n, args.delta, args.Delta, args.k):
            raise UsageError("without --graph give --n, --delta, --Delta and --k")
        rep = lll.check_parameters(args.theorem, args.k, args.n, args.delta, args.Delta, args.mu)
    d = rep.as_dict(args.digits)
    out = _Out(args)
    for key, val in d.items():
        out.add(key, val)
    out.emit()
    return OK if rep.satisfied else FAIL


def cmd_verify(args) -> int:
    G = _graph(args)
    ordering = _ordering(args, G)
    w = parse_weighting(_read(args.weighting), G.m, G.n if args.mode == TOTAL else None)
    col = induced_colouring(G, ordering, w, args.mode, args.vertex_position)
    out = _Out(args)
    ok = True
    if args.lists:
        L = parse_lists(_read(args.lists), G.m, G.n)
        r = respects_lists(w, L)
        out.add("respects_lists", r)
        ok &= r
    checks = {
        "proper": lambda: proper_violations(col, G),
        "prefix": lambda: prefix_violations(col, G),
        "irregular": lambda: irregular_violations(col),
    }
    for name in args.criterion:
        bad = checks[name]()
        out.add(name, not bad)
        if bad:
            out.add(f"{name}_violations", [list(p) for p in bad],
                    f"{name}_violations: " + " ".join(f"{a}-{b}" for a, b in bad))
        ok &= not bad
    out.emit()
    return OK if ok else FAIL


def _pairs(text):
    out = []
    for tok in text.replace(",", " ").split():
        a, b = tok.split("-")
        out.append((int(a), int(b)))
    return out


def cmd_independence(args) -> int:
    G = _graph(args)
    u, v = args.u, args.v
    if args.K is not None:
        K = _pairs(args.K)
    elif args.rule == "far":
        K = oracle.far_events(G, u, v)
    else:
        K = oracle.complement_events(G, u, v)
    rep = oracle.independence_check(G, (u, v), K, args.k or 2, _ordering(args, G),
                                    budget=args.budget)
    out = _Out(args)
    for key, val in rep.as_dict().items():
        if key == "subset_checks":
            out.add(key, val, f"subset_checks: {len(val)}, all equal: {rep.mutually_independent}")
        else:
            out.add(key, val)
    out.emit()
    return OK if rep.equal and rep.open else FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqweight", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", default="-", help="edge-list or graph6 file, '-' for stdin")
            sp.add_argument("--graph-format", choices=("auto", "edgelist", "graph6"), default="auto")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--seed", type=int, default=0)

    def cert(sp):
        sp.add_argument("--ordering-out", help="also write the ordering file here")
        sp.add_argument("--weighting-out", help="also write the weighting file here")

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("family", choices=sorted(generators.FAMILIES))
    for name, typ in (("n", int), ("d", int), ("p", float), ("mu", int)):
        g.add_argument(f"--{name}", type=typ)
    g.add_argument("--graph-format", choices=("edgelist", "graph6"), default="edgelist")
    common(g, graph=False)
    g.set_defaults(func=cmd_gen)

    for name, func, doc in (("weight", cmd_weight, "prefix-distinguishing 2-list weighting"),
                            ("total-weight", cmd_total_weight, "proper total 2-list weighting")):
        w = sub.add_parser(name, help=doc)
        common(w)
        w.add_argument("--lists", help="list file (default: every list is {1, 2})")
        cert(w)
        w.set_defaults(func=func, k=None)

    r = sub.add_parser("resample", help="resampling search for a weighting")
    common(r)
    r.add_argument("--lists")
    r.add_argument("--k", type=int)
    r.add_argument("--ordering")
    r.add_argument("--mode", choices=(EDGE, TOTAL), default=EDGE)
    r.add_argument("--scope", choices=("adjacent", "all-pairs"), default="adjacent")
    r.add_argument("--max-rounds", type=int)
    r.add_argument("--trials", type=int, default=1)
    r.add_argument("--jobs", type=int, default=1)
    cert(r)
    r.set_defaults(func=cmd_resample)

    o = sub.add_parser("oracle", help="exact small-instance parameters")
    common(o)
    o.add_argument("--param", choices=sorted(PARAMS), required=True)
    o.add_argument("--max-k", type=int, default=6)
    o.add_argument("--k", type=int)
    o.add_argument("--lists")
    o.add_argument("--ordering")
    o.add_argument("--criterion", choices=("proper-seq", "prefix-dist", "irregular"), default="proper-seq")
    o.add_argument("--mode", choices=(EDGE, TOTAL), default=EDGE)
    o.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    o.add_argument("--jobs", type=int, default=1)
    cert(o)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", help="closed-form list size for sequence irregularity")
    common(b, graph=False)
    b.add_argument("--task", choices=("3.4", "3.5", "3.6e", "3.6t"), required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int)
    b.add_argument("--delta", type=int)
    b.add_argument("--Delta", type=int)
    b.set_defaults(func=cmd_bounds)

    h = sub.add_parser("hypothesis", help="check a Local Lemma hypothesis")
    common(h, graph=False)
    h.add_argument("--graph", help="graph file; otherwise give the parameters")
    h.add_argument("--graph-format", choices=("auto", "edgelist", "graph6"), default="auto")
    h.add_argument("--theorem", choices=lll.THEOREMS, required=True)
    h.add_argument("--k", type=int)
    h.add_argument("--n", type=int)
    h.add_argument("--delta", type=int)
    h.add_argument("--Delta", type=int)
    h.add_argument("--mu", type=int, default=1)
    h.add_argument("--digits", type=int, default=30)
    h.set_defaults(func=cmd_hypothesis)

    v = sub.add_parser("verify", help="check a weighting certificate")
    common(v)
    v.add_argument("--weighting", required=True)
    v.add_argument("--ordering")
    v.add_argument("--lists")
    v.add_argument("--mode", choices=(EDGE, TOTAL), default=EDGE)
    v.add_argument("--vertex-position", choices=("append", "prepend"), default=APPEND)
    v.add_argument("--criterion", choices=("proper", "prefix", "irregular"), action="append")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("independence", help="exact independence check for one bad event")
    common(i)
    i.add_argument("--u", type=int, required=True)
    i.add_argument("--v", type=int, required=True)
    i.add_argument("--K", help="events as 'a-b,c-d'; default is --rule")
    i.add_argument("--rule", choices=("far", "complement"), default="far")
    i.add_argument("--k", type=int, default=2)
    i.add_argument("--ordering")
    i.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    i.set_defaults(func=cmd_independence)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "command", None) == "verify" and not args.criterion:
            args.criterion = ["proper"]
        return args.func(args)
    except UsageError as exc:
        print(f"seqweight: usage error: {exc}", file=sys.stderr)
        return USAGE
    except InvariantViolation as exc:
        print(f"seqweight: internal invariant violated: {exc}", file=sys.stderr)
        return SOFTWARE
    except BudgetExceeded as exc:
        print(f"seqweight: {exc}", file=sys.stderr)
        return UNKNOWN
    except InapplicableTheorem as exc:
        print(f"seqweight: {exc}", file=sys.stderr)
        return FAIL
    except (SeqWeightError, ValueError, OSError) as exc:
        print(f"seqweight: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
