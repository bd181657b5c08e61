"""Exact exhaustive computations on small instances.

Everything here decides by exhaustion: backtracking over weights for a fixed
ordering, enumeration of orderings up to their per-vertex local orders, and
exact counting over all ``k**m`` weightings for the independence checks.
Results either carry a certificate or say Unknown.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidGraphError, InvariantViolation
from .exact import iroot_ceil
from .graph import EdgeOrdering, Graph, degree_counts, is_nice, ordering_for
from .weighting import (
    APPEND,
    EDGE,
    TOTAL,
    ListAssignment,
    Weighting,
    induced_colouring,
    is_irregular,
    is_prefix_distinguishing,
    is_proper,
    respects_lists,
)

PROPER, PREFIX, IRREGULAR = "proper_seq", "prefix_dist", "irregular"
CRITERIA = (PROPER, PREFIX, IRREGULAR)
SEQ, MULTISET, SUM = "sequence", "multiset", "sum"
DEFAULT_BUDGET = 10**8
ORDERING_CAP = math.factorial(8)


# ---------------------------------------------------------------- weight search

@dataclass
class Feasibility:
    feasible: bool | None  # None: budget ran out
    ordering: EdgeOrdering
    witness: Weighting | None
    nodes: int

    def as_dict(self) -> dict:
        return {"feasible": self.feasible, "ordering": list(self.ordering.perm),
                "witness": self.witness, "nodes": self.nodes}


def _lists_for(G: Graph, k_or_lists, mode: str) -> ListAssignment:
    if isinstance(k_or_lists, ListAssignment):
        k_or_lists.check_shape(G, mode)
        return k_or_lists
    return ListAssignment.fixed(G, int(k_or_lists), total=(mode == TOTAL))


class _Search:
    """Backtracking for one (ordering, lists) pair.

    Variables are assigned with edges in order and each vertex weight right
    after that vertex's last edge. A vertex is checked the moment its whole
    sequence is known.
    """

    def __init__(self, G, ordering, L, criterion, mode, vertex_position, key):
        if criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {criterion!r}")
        if key != SEQ and criterion == PREFIX:
            raise ValueError("prefix criterion needs sequence colours")
        self.G, self.criterion, self.key = G, criterion, key
        self.total = mode == TOTAL
        self.prepend = vertex_position != APPEND
        m = G.m
        self.local = ordering.local_orders(G)
        last = {}
        for x, loc in enumerate(self.local):
            if loc:
                last.setdefault(loc[-1], []).append(x)
        sched = []
        if self.total:
            sched += [m + x for x in range(G.n) if not self.local[x]]
        for e in ordering.perm:
            sched.append(e)
            if self.total:
                sched += [m + x for x in last.get(e, ())]
        self.sched = sched
        lists = list(L.edge_lists) + (list(L.vertex_lists) if self.total else [])
        self.lists = [lists[x] for x in sched]
        if L.is_uniform() and key != SUM and sched:
            # relabel values so the first variable takes the smallest one
            self.lists[0] = self.lists[0][:1]
        remaining = [len(loc) + (1 if self.total else 0) for loc in self.local]
        self.done_at: list[list[int]] = [[] for _ in sched]
        for t, x in enumerate(sched):
            ends = [x - m] if x >= m else list(G.edges[x])
            for y in ends:
                remaining[y] -= 1
                if remaining[y] == 0:
                    self.done_at[t].append(y)
        # vertices with nothing to assign are complete from the start
        self.isolated = [x for x in range(G.n) if not self.local[x] and not self.total]
        self.partners = [sorted(G.neighbours[x]) for x in range(G.n)]
        self.val = [None] * (m + (G.n if self.total else 0))
        self.colour = [None] * G.n
        self.nodes = 0

    def _seq(self, x):
        s = tuple(self.val[e] for e in self.local[x])
        if self.total:
            w = self.val[self.G.m + x]
            s = (w,) + s if self.prepend else s + (w,)
        return s

    def _key(self, s):
        if self.key == SEQ:
            return s
        if self.key == MULTISET:
            return tuple(sorted(s))
        return sum(s)

    def _clash(self, x, used) -> bool:
        c = self.colour[x]
        if self.criterion == IRREGULAR:
            return c in used
        for y in self.partners[x]:
            d = self.colour[y]
            if d is None:
                continue
            if self.criterion == PROPER:
                if c == d:
                    return True
            else:
                short, long_ = (c, d) if len(c) <= len(d) else (d, c)
                if len(short) >= 2 and long_[: len(short)] == short:
                    return True
        return False

    def run(self, budget: int) -> bool:
        used: set = set()
        for x in self.isolated:
            self.colour[x] = self._key(())
            if self._clash(x, used):
                return False
            used.add(self.colour[x])
        T = len(self.sched)
        if T == 0:
            return True
        choice = [0] * T
        t = 0
        # iterative depth-first search; choice[t] is the next candidate index
        while t >= 0:
            if choice[t] > 0:
                for y in self.done_at[t]:
                    if self.criterion == IRREGULAR:
                        used.discard(self.colour[y])
                    self.colour[y] = None
            if choice[t] == len(self.lists[t]):
                choice[t] = 0
                self.val[self.sched[t]] = None
                t -= 1
                continue
            self.nodes += 1
            if self.nodes > budget:
                raise BudgetExceeded(f"more than {budget} search nodes")
            self.val[self.sched[t]] = self.lists[t][choice[t]]
            choice[t] += 1
            ok = True
            added = []
            for y in self.done_at[t]:
                self.colour[y] = self._key(self._seq(y))
                if self._clash(y, used):
                    ok = False
                    break
                if self.criterion == IRREGULAR:
                    used.add(self.colour[y])
                    added.append(y)
            if not ok:
                for y in self.done_at[t]:
                    if y in added:
                        used.discard(self.colour[y])
                    self.colour[y] = None
                continue
            if t == T - 1:
                return True
            t += 1
        return False

    def weighting(self) -> Weighting:
        m = self.G.m
        return Weighting(tuple(self.val[:m]), tuple(self.val[m:]) if self.total else None)


def _verify(G, ordering, w, L, criterion, mode, vertex_position, key):
    col = induced_colouring(G, ordering, w, mode, vertex_position)
    if not respects_lists(w, L):
        return False
    if key == SEQ:
        if criterion == PROPER:
            return is_proper(col, G)
        if criterion == PREFIX:
            return is_prefix_distinguishing(col, G)
        return is_irregular(col)
    agg = [tuple(sorted(s)) if key == MULTISET else sum(s) for s in col]
    if criterion == IRREGULAR:
        return len(set(agg)) == len(agg)
    return all(agg[u] != agg[v] for u, v in G.edges)


def feasible_for_ordering(
    G: Graph,
    ordering: EdgeOrdering | Sequence[int] | None,
    k_or_lists,
    criterion: str = PROPER,
    mode: str = EDGE,
    vertex_position: str = APPEND,
    budget: int = DEFAULT_BUDGET,
    key: str = SEQ,
) -> Feasibility:
    """Decide whether some weighting from the lists satisfies ``criterion``.

    ``k_or_lists`` is an int ``k`` (every list ``{1..k}``) or a
    :class:`ListAssignment`. Exceeding ``budget`` search nodes gives
    ``feasible=None``.
    """
    ordering = ordering_for(G, ordering)
    L = _lists_for(G, k_or_lists, mode)
    s = _Search(G, ordering, L, criterion, mode, vertex_position, key)
    try:
        found = s.run(budget)
    except BudgetExceeded:
        return Feasibility(None, ordering, None, s.nodes)
    if not found:
        return Feasibility(False, ordering, None, s.nodes)
    w = s.weighting()
    if not _verify(G, ordering, w, L, criterion, mode, vertex_position, key):
        raise InvariantViolation("search returned a weighting that fails verification")
    return Feasibility(True, ordering, w, s.nodes)


# ---------------------------------------------------------------- orderings

def _topo(m, succ, indeg):
    indeg = list(indeg)
    ready = [e for e in range(m) if indeg[e] == 0]
    ready.sort(reverse=True)
    out = []
    while ready:
        e = ready.pop()
        out.append(e)
        for f in succ[e]:
            indeg[f] -= 1
            if indeg[f] == 0:
                ready.append(f)
                ready.sort(reverse=True)
    return out if len(out) == m else None


def ordering_candidates(G: Graph) -> int:
    """Size of the smaller of the two enumeration spaces."""
    prod = 1
    for d in G.degrees:
        prod *= math.factorial(d)
    return min(prod, math.factorial(G.m))


def ordering_profiles(G: Graph, cap: int = ORDERING_CAP) -> list[EdgeOrdering] | None:
    """One representative ordering per realisable tuple of local orders.

    Two orderings with the same local order at every vertex induce the same
    colouring for every weighting, so this list is exhaustive for any
    ordering quantifier. Returns ``None`` when the enumeration space exceeds
    ``cap``.
    """
    m = G.m
    prod = 1
    for d in G.degrees:
        prod *= math.factorial(d)
    if min(prod, math.factorial(m)) > cap:
        return None
    if prod <= math.factorial(m):
        out = []
        for combo in product(*(permutations(inc) for inc in G.incidence)):
            succ = [set() for _ in range(m)]
            for loc in combo:
                for a, b in zip(loc, loc[1:]):
                    succ[a].add(b)
            indeg = [0] * m
            for a in range(m):
                for b in succ[a]:
                    indeg[b] += 1
            order = _topo(m, [sorted(s) for s in succ], indeg)
            if order is not None:
                out.append(EdgeOrdering(tuple(order)))
        return out
    seen = {}
    for perm in permutations(range(m)):
        o = EdgeOrdering(perm)
        seen.setdefault(o.local_orders(G), o)
    return list(seen.values())


def sampled_orderings(G: Graph, samples: int, seed: int = 0) -> list[EdgeOrdering]:
    """Distinct-profile random orderings, natural ordering first."""
    rng = random.Random(seed)
    seen = {}
    o = EdgeOrdering.natural(G.m)
    seen[o.local_orders(G)] = o
    for _ in range(samples):
        perm = list(range(G.m))
        rng.shuffle(perm)
        o = EdgeOrdering(tuple(perm))
        seen.setdefault(o.local_orders(G), o)
    return list(seen.values())


# ---------------------------------------------------------------- min-k searches

@dataclass
class OracleResult:
    parameter: str
    value: int | None  # None: Unknown
    max_k: int
    exact: bool = True
    witness_ordering: EdgeOrdering | None = None
    witness: Weighting | None = None
    below: dict | None = None  # infeasibility record at value - 1
    upper_bound: int | None = None
    reason: str | None = None
    nodes: int = 0
    orderings: int | None = None

    @property
    def known(self) -> bool:
        return self.value is not None

    def as_dict(self) -> dict:
        d = {
            "parameter": self.parameter,
            "value": self.value if self.value is not None else "unknown",
            "max_k": self.max_k,
            "exact": self.exact,
            "nodes": self.nodes,
        }
        for name in ("upper_bound", "reason", "orderings"):
            if getattr(self, name) is not None:
                d[name] = getattr(self, name)
        if self.witness_ordering is not None:
            d["witness_ordering"] = list(self.witness_ordering.perm)
        if self.witness is not None:
            d["witness"] = self.witness
        if self.below is not None:
            d["below"] = self.below
        return d


def _scan_chunk(args):
    G, perms, k, criterion, mode, vp, key, target, budget = args
    nodes = 0
    for i, perm in enumerate(perms):
        r = feasible_for_ordering(G, perm, k, criterion, mode, vp, budget - nodes, key)
        nodes += r.nodes
        if r.feasible is None:
            return ("budget", i, nodes, None)
        if r.feasible == target:
            return ("hit", i, nodes, r.witness)
    return ("miss", None, nodes, None)


def _scan(G, orderings, start, k, criterion, mode, vp, key, target, budget, jobs):
    """First index ``>= start`` whose feasibility equals ``target``.

    Returns ``(index or None, witness, nodes)``; raises BudgetExceeded.
    The answer does not depend on ``jobs``.
    """
    todo = [o.perm for o in orderings[start:]]
    if jobs <= 1 or len(todo) < 2 * jobs:
        status, i, nodes, w = _scan_chunk((G, todo, k, criterion, mode, vp, key, target, budget))
        if status == "budget":
            raise BudgetExceeded(f"more than {budget} search nodes")
        return (None if i is None else start + i), w, nodes
    size = max(1, math.ceil(len(todo) / (4 * jobs)))
    chunks = [todo[i:i + size] for i in range(0, len(todo), size)]
    nodes = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for b in range(0, len(chunks), jobs):
            batch = chunks[b:b + jobs]
            args = [(G, c, k, criterion, mode, vp, key, target, max(budget - nodes, 0)) for c in batch]
            results = list(pool.map(_scan_chunk, args))
            # results are in chunk order, so the first hit is the global first
            for j, (status, i, n_used, w) in enumerate(results):
                nodes += n_used
                if status == "budget":
                    raise BudgetExceeded(f"more than {budget} search nodes")
                if status == "hit":
                    return start + (b + j) * size + i, w, nodes
    return None, None, nodes


def min_k_sigma_star(
    G: Graph,
    criterion: str = PROPER,
    max_k: int = 6,
    mode: str = EDGE,
    vertex_position: str = APPEND,
    budget: int = DEFAULT_BUDGET,
    cap: int = ORDERING_CAP,
    samples: int = 2000,
    seed: int = 0,
    jobs: int = 1,
) -> OracleResult:
    """Least ``k`` such that some ordering admits a valid ``[k]``-weighting."""
    name = {PROPER: "chi_sigma_star", PREFIX: "chi_sigma_star_prefix", IRREGULAR: "s_sigma_star"}[criterion]
    orderings = ordering_profiles(G, cap)
    exact = orderings is not None
    if not exact:
        orderings = sampled_orderings(G, samples, seed)
    res = OracleResult(name, None, max_k, exact, orderings=len(orderings))
    try:
        for k in range(1, max_k + 1):
            i, w, used = _scan(G, orderings, 0, k, criterion, mode, vertex_position, SEQ, True,
                               budget - res.nodes, jobs)
            res.nodes += used
            if i is not None:
                res.witness_ordering, res.witness = orderings[i], w
                if exact:
                    res.value = k
                    if k > 1:
                        res.below = {"k": k - 1, "record": f"exhausted {len(orderings)} orderings"}
                else:
                    res.upper_bound = k
                    res.reason = "ordering space too large; sampled orderings give an upper bound only"
                return res
    except BudgetExceeded:
        res.reason = "budget exceeded"
        return res
    res.reason = f"no k <= {max_k} works" + ("" if exact else " on sampled orderings")
    return res


def min_k_sigma(
    G: Graph,
    criterion: str = PROPER,
    max_k: int = 6,
    mode: str = EDGE,
    vertex_position: str = APPEND,
    budget: int = DEFAULT_BUDGET,
    cap: int = ORDERING_CAP,
    jobs: int = 1,
) -> OracleResult:
    """Least ``k`` such that every ordering admits a valid ``[k]``-weighting.

    The counterexample ordering for ``k - 1`` is recorded in ``below``.
    Since a ``[k]``-weighting is also a ``[k+1]``-weighting, orderings that
    passed at ``k`` are not re-checked at ``k + 1``.
    """
    name = {PROPER: "chi_sigma", PREFIX: "chi_sigma_prefix", IRREGULAR: "s_sigma"}[criterion]
    orderings = ordering_profiles(G, cap)
    if orderings is None:
        return OracleResult(name, None, max_k, False, reason="ordering space exceeds cap",
                            orderings=ordering_candidates(G))
    res = OracleResult(name, None, max_k, True, orderings=len(orderings))
    start = 0
    counter = None
    try:
        for k in range(1, max_k + 1):
            i, _, used = _scan(G, orderings, start, k, criterion, mode, vertex_position, SEQ, False,
                               budget - res.nodes, jobs)
            res.nodes += used
            if i is None:
                res.value = k
                if counter is not None:
                    res.below = {"k": k - 1, "record": "exhausted all weightings",
                                 "counterexample_ordering": list(counter.perm)}
                res.witness_ordering = orderings[-1] if orderings else EdgeOrdering(())
                return res
            counter = orderings[i]
            start = i
    except BudgetExceeded:
        res.reason = "budget exceeded"
        return res
    res.reason = f"some ordering fails at every k <= {max_k}"
    if counter is not None:
        res.below = {"k": max_k, "counterexample_ordering": list(counter.perm)}
    return res


def _min_k_aggregate(G, key, max_k, budget, name):
    res = OracleResult(name, None, max_k)
    order = EdgeOrdering.natural(G.m)
    for k in range(1, max_k + 1):
        r = feasible_for_ordering(G, order, k, PROPER, EDGE, APPEND, budget - res.nodes, key)
        res.nodes += r.nodes
        if r.feasible is None:
            res.reason = "budget exceeded"
            return res
        if r.feasible:
            res.value, res.witness, res.witness_ordering = k, r.witness, order
            if k > 1:
                res.below = {"k": k - 1, "record": "exhausted all weightings"}
            return res
    res.reason = f"no k <= {max_k} works"
    return res


def min_k_multiset(G: Graph, max_k: int = 6, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Least ``k`` for which adjacent vertices get distinct weight multisets."""
    return _min_k_aggregate(G, MULTISET, max_k, budget, "chi_multiset")


def min_k_sum(G: Graph, max_k: int = 6, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Least ``k`` for which adjacent vertices get distinct weight sums."""
    return _min_k_aggregate(G, SUM, max_k, budget, "chi_sum")


def compute_MG(G: Graph) -> tuple[int, dict[int, tuple[int, int]]]:
    """``max_i ceil(n_i ** (1/i))`` over degrees ``i >= 1`` plus the per-degree table.

    The table maps degree ``i`` to ``(n_i, ceil(n_i ** (1/i)))``. A graph with
    no edges gets 1.
    """
    table = {i: (c, iroot_ceil(c, i)) for i, c in sorted(degree_counts(G).items()) if i >= 1}
    return max((r for _, r in table.values()), default=1), table


# ---------------------------------------------------------------- list falsification

@dataclass
class ListSearch:
    k: int
    trials: int
    counterexample: ListAssignment | None
    counterexample_ordering: EdgeOrdering | None
    unknown: int  # trials where the budget ran out

    @property
    def lower_bound(self) -> int | None:
        """A failing list assignment certifies ``ch > k``."""
        return self.k + 1 if self.counterexample is not None else None


def list_falsification(
    G: Graph,
    k: int,
    criterion: str = PROPER,
    quantifier: str = "every",
    ordering: EdgeOrdering | Sequence[int] | None = None,
    mode: str = EDGE,
    universe: Iterable[int] | None = None,
    trials: int = 100,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> ListSearch:
    """Look for integer lists that admit no valid weighting.

    ``quantifier`` is ``"fixed"`` (the given ordering), ``"every"`` (a list
    assignment fails if some ordering fails) or ``"some"`` (it fails only if
    every ordering fails). Finding nothing certifies nothing.
    """
    universe = sorted(set(universe if universe is not None else range(1, 2 * k + 1)))
    if len(universe) < k:
        raise ValueError("universe smaller than k")
    if quantifier == "fixed":
        orderings = [ordering_for(G, ordering)]
    else:
        orderings = ordering_profiles(G)
        if orderings is None:
            raise BudgetExceeded("ordering space exceeds cap")
    rng = random.Random(seed)
    unknown = 0
    nv = G.n if mode == TOTAL else 0
    for _ in range(trials):
        pick = [tuple(sorted(rng.sample(universe, k))) for _ in range(G.m + nv)]
        L = ListAssignment(tuple(pick[:G.m]), tuple(pick[G.m:]) if mode == TOTAL else None)
        outcomes = []
        for o in orderings:
            r = feasible_for_ordering(G, o, L, criterion, mode, budget=budget)
            outcomes.append(r.feasible)
            if quantifier != "some" and r.feasible is False:
                return ListSearch(k, trials, L, o, unknown)
            if quantifier == "some" and r.feasible:
                break
        if None in outcomes:
            unknown += 1
        elif quantifier == "some" and not any(outcomes):
            return ListSearch(k, trials, L, None, unknown)
    return ListSearch(k, trials, None, None, unknown)


# ---------------------------------------------------------------- conjecture predicates

def conjecture_checks(G: Graph, max_k: int = 5, budget: int = DEFAULT_BUDGET) -> dict[str, bool | None]:
    """Evaluate the checkable consequences of the open conjectures on ``G``.

    Values are True/False when decided and None when inapplicable or
    Unknown. Only fixed-set parameters are computed; a list version can only
    be refuted, never confirmed, so these are necessary conditions.
    """
    out: dict[str, bool | None] = {}
    nice = is_nice(G) and G.m > 0
    es = min_k_sigma(G, PROPER, max_k, budget=budget) if nice else None
    out["edge_sigma_at_most_3"] = None if es is None or es.value is None else es.value <= 3
    out["edge_sigma_at_most_4"] = None if es is None or es.value is None else es.value <= 4
    ts = min_k_sigma(G, PROPER, max_k, mode=TOTAL, budget=budget)
    out["total_sigma_at_most_2"] = None if ts.value is None else ts.value <= 2
    out["total_sigma_at_most_3"] = None if ts.value is None else ts.value <= 3
    if nice:
        s = min_k_sigma(G, IRREGULAR, max_k, budget=budget)
        out["irregular_sigma_equals_MG"] = None if s.value is None else s.value == compute_MG(G)[0]
    else:
        out["irregular_sigma_equals_MG"] = None
    return out


# ---------------------------------------------------------------- independence

@dataclass
class IndependenceReport:
    uv: tuple[int, int]
    K: list[tuple[int, int]]
    k: int
    p_uncond: Fraction
    p_cond: Fraction | None  # None when P(A_K) = 0
    open: bool
    open_strict: bool
    equal: bool | None
    degenerate: bool
    trivial: bool  # deg(u) != deg(v)
    subset_checks: list[dict] = field(default_factory=list)

    @property
    def mutually_independent(self) -> bool | None:
        if not self.subset_checks:
            return None
        return all(c["equal"] for c in self.subset_checks)

    def as_dict(self) -> dict:
        return {
            "uv": list(self.uv), "K": [list(p) for p in self.K], "k": self.k,
            "p_uncond": str(self.p_uncond),
            "p_cond": None if self.p_cond is None else str(self.p_cond),
            "open": self.open, "open_strict": self.open_strict, "equal": self.equal,
            "degenerate": self.degenerate, "trivial": self.trivial,
            "subset_checks": [dict(c, lhs=str(c["lhs"]), rhs=str(c["rhs"])) for c in self.subset_checks],
            "mutually_independent": self.mutually_independent,
        }


def _norm(p) -> tuple[int, int]:
    a, b = p
    return (a, b) if a < b else (b, a)


def _distances(G: Graph, src: int) -> list[float]:
    dist = [math.inf] * G.n
    dist[src] = 0
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in G.neighbours[x]:
                if dist[y] == math.inf:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def far_events(G: Graph, u: int, v: int) -> list[tuple[int, int]]:
    """Adjacent-pair events with both ends at distance at least 2 from ``u``."""
    dist = _distances(G, u)
    return sorted({p for p in G.edges if min(dist[p[0]], dist[p[1]]) >= 2 and p != _norm((u, v))})


def complement_events(G: Graph, u: int, v: int) -> list[tuple[int, int]]:
    """Events outside ``J(uv)`` and other than ``uv``.

    ``J(uv)`` holds the edges within distance one of ``u`` that avoid ``v``.
    """
    close = {u} | G.neighbours[u]
    J = {p for p in G.edges if (p[0] in close or p[1] in close) and v not in p}
    return sorted(set(G.edges) - J - {_norm((u, v))})


def _sdr(constraints: list[list[int]]) -> bool:
    """True when every constraint gets its own variable (bipartite matching)."""
    owner: dict[int, int] = {}

    def augment(i, seen):
        for x in constraints[i]:
            if x in seen:
                continue
            seen.add(x)
            if x not in owner or augment(owner[x], seen):
                owner[x] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(constraints)))


def openness(G: Graph, ordering, uv, K) -> tuple[bool, bool]:
    """``(open, open_strict)`` for the pair ``uv`` against the event set ``K``.

    ``open_strict`` is the literal rule: for each local index ``i`` one of
    ``{e_i^u, e_i^v} - {uv}`` is uncovered (indices where both are ``uv``
    are skipped). ``open`` asks instead that every equality constraint
    ``w(e_i^u) = w(e_i^v)`` can be assigned its own uncovered variable. Each
    constraint component is a path, so this makes the constraints hold with
    the same probability whatever the covered weights are; the strict rule
    implies it.
    """
    ordering = ordering_for(G, ordering)
    u, v = uv
    pairs = [e for e in range(G.m) if G.edges[e] == _norm(uv)]
    if len(pairs) != 1:
        raise InvalidGraphError(f"{uv} must be joined by exactly one edge")
    uv_e = pairs[0]
    covered = set()
    for a, b in K:
        covered.update(G.incidence[a])
        covered.update(G.incidence[b])
    local = ordering.local_orders(G)
    lu, lv = local[u], local[v]
    strict = True
    constraints = []
    for i in range(max(len(lu), len(lv))):
        cand = {x for x in (lu[i] if i < len(lu) else None, lv[i] if i < len(lv) else None)
                if x is not None} - {uv_e}
        if not cand:
            continue
        if all(x in covered for x in cand):
            strict = False
        if i < len(lu) and i < len(lv):
            if lu[i] != lv[i]:
                constraints.append([x for x in (lu[i], lv[i]) if x not in covered])
    if len(lu) != len(lv):
        return strict, strict
    return _sdr(constraints), strict


def _event_masks(W, local, pairs):
    out = []
    for a, b in pairs:
        la, lb = local[a], local[b]
        if len(la) != len(lb):
            out.append(np.zeros(W.shape[0], dtype=bool))
        else:
            out.append(np.all(W[:, list(la)] == W[:, list(lb)], axis=1))
    return out


def independence_check(
    G: Graph,
    uv: tuple[int, int],
    K: Iterable[tuple[int, int]],
    k: int = 2,
    ordering: EdgeOrdering | Sequence[int] | None = None,
    subsets: bool | None = None,
    budget: int = DEFAULT_BUDGET,
    chunk: int = 1 << 16,
) -> IndependenceReport:
    """Exact probabilities of ``A_uv`` with and without conditioning on all of ``K``.

    Enumerates all ``k**m`` weightings from ``[k]``. With ``subsets`` (the
    default when ``|K| <= 3``) it also compares ``P(A_uv and A_J)`` with
    ``P(A_uv) P(A_J)`` for every subset ``J`` of ``K``.
    """
    if G.multiplicity > 1:
        raise InvalidGraphError("independence checks need a simple graph")
    ordering = ordering_for(G, ordering)
    u, v = uv
    if not G.adjacent(u, v):
        raise InvalidGraphError(f"{uv} is not an edge")
    K = sorted({_norm(p) for p in K})
    for p in K:
        if not G.adjacent(*p):
            raise InvalidGraphError(f"event {p} is not an edge")
        if p == _norm(uv):
            raise InvalidGraphError("K must not contain A_uv itself")
    total = k ** G.m
    if total > budget:
        raise BudgetExceeded(f"{k}^{G.m} weightings exceed budget {budget}")
    if subsets is None:
        subsets = len(K) <= 3
    subs = [c for r in range(1, len(K) + 1) for c in combinations(range(len(K)), r)] if subsets else []
    local = ordering.local_orders(G)
    n_a = n_k = n_ak = 0
    n_j = [0] * len(subs)
    n_aj = [0] * len(subs)
    powers = np.array([k**j for j in range(G.m)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        W = (idx[:, None] // powers[None, :]) % k
        a = _event_masks(W, local, [_norm(uv)])[0]
        ks = _event_masks(W, local, K)
        allk = np.logical_and.reduce(ks) if ks else np.ones(len(idx), dtype=bool)
        n_a += int(a.sum())
        n_k += int(allk.sum())
        n_ak += int((a & allk).sum())
        for s, c in enumerate(subs):
            mj = np.logical_and.reduce([ks[i] for i in c])
            n_j[s] += int(mj.sum())
            n_aj[s] += int((a & mj).sum())
    p_a = Fraction(n_a, total)
    p_cond = Fraction(n_ak, n_k) if n_k else None
    is_open, strict = openness(G, ordering, uv, K)
    checks = []
    for s, c in enumerate(subs):
        lhs = Fraction(n_aj[s], total)
        rhs = p_a * Fraction(n_j[s], total)
        checks.append({"J": [list(K[i]) for i in c], "lhs": lhs, "rhs": rhs, "equal": lhs == rhs})
    return IndependenceReport(
        (u, v), K, k, p_a, p_cond, is_open, strict,
        None if p_cond is None else p_cond == p_a,
        p_cond is None, G.degree(u) != G.degree(v), checks,
    )
