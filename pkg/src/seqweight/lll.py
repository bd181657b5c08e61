"""Bad events, dependency graphs, Local Lemma hypothesis checks and resampling.

A bad event ``A_uv`` is "``u`` and ``v`` receive the same sequence". Its
variables are the weights of the edges at ``u`` or ``v`` (and, in total mode,
the weights of ``u`` and ``v`` themselves). Variables are encoded as ints:
edge ``i`` is ``i`` and vertex ``x`` is ``m + x``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import InapplicableTheorem, InvalidGraphError, MaxRoundsExceeded, InvariantViolation
from .exact import compare_with_e, least_power_above_e, to_decimal
from .graph import EdgeOrdering, Graph, girth, is_nice, ordering_for
from .weighting import (
    APPEND,
    EDGE,
    TOTAL,
    ListAssignment,
    Weighting,
    induced_colouring,
    is_irregular,
    is_proper,
    respects_lists,
)

ADJACENT, ALL_PAIRS = "adjacent", "all_pairs"
VARIABLE_SHARING, GIRTH5_OPEN = "variable_sharing", "girth5_open"


@dataclass(frozen=True)
class BadEvent:
    u: int
    v: int
    kind: str  # "adjacent" or "nonadjacent"
    variables: frozenset
    trivial: bool = False  # sequence lengths differ, so the event cannot occur

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


def _variables(G: Graph, u: int, v: int, mode: str) -> frozenset:
    vs = set(G.incidence[u]) | set(G.incidence[v])
    if mode == TOTAL:
        vs |= {G.m + u, G.m + v}
    return frozenset(vs)


def build_bad_events(G: Graph, scope: str = ADJACENT, mode: str = EDGE) -> list[BadEvent]:
    """Events sorted by vertex pair; parallel edges give a single event."""
    if scope == ADJACENT:
        pairs = sorted(set(G.edges))
    elif scope == ALL_PAIRS:
        pairs = [(u, v) for u in range(G.n) for v in range(u + 1, G.n)]
    else:
        raise ValueError(f"unknown scope {scope!r}")
    deg = G.degrees
    return [
        BadEvent(
            u, v,
            "adjacent" if G.adjacent(u, v) else "nonadjacent",
            _variables(G, u, v, mode),
            deg[u] != deg[v],
        )
        for u, v in pairs
    ]


@dataclass
class Dependency:
    """Dependency sets ``J_i`` over event indices and their largest size."""

    sets: list[frozenset]
    refinement: str
    bound: int  # closed-form bound on max |J_i|

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self.sets), default=0)


def _pairs_touching(n: int, s: int) -> int:
    """Unordered vertex pairs meeting a set of ``s`` vertices."""
    return comb(n, 2) - comb(max(n - s, 0), 2)


def all_pairs_bounds(n: int, delta_max: int) -> tuple[int, int]:
    """Closed-form bounds on |J_e| and |J_p| in the all-pairs scope."""
    return _pairs_touching(n, 2 * delta_max), _pairs_touching(n, 2 * delta_max + 2)


def build_dependency(G: Graph, events: Sequence[BadEvent], refinement: str = VARIABLE_SHARING) -> Dependency:
    D = G.max_degree
    if refinement == VARIABLE_SHARING:
        holders: dict[int, list[int]] = {}
        for i, ev in enumerate(events):
            for x in ev.variables:
                holders.setdefault(x, []).append(i)
        sets = []
        for i, ev in enumerate(events):
            s = set()
            for x in ev.variables:
                s.update(holders[x])
            s.discard(i)
            sets.append(frozenset(s))
        if all(ev.kind == "adjacent" for ev in events):
            bound = 2 * D * (D - 1)
        else:
            bound = max(all_pairs_bounds(G.n, D))
        dep = Dependency(sets, refinement, bound)
        # soundness: non-neighbours share no variable
        for i, ev in enumerate(events):
            for j in range(i + 1, len(events)):
                if j not in sets[i] and ev.variables & events[j].variables:
                    raise InvariantViolation("dependency graph misses a shared variable")
        return dep
    if refinement == GIRTH5_OPEN:
        if girth(G) < 5:
            raise InvalidGraphError("girth5_open needs girth at least 5")
        if any(ev.kind != "adjacent" for ev in events):
            raise InvalidGraphError("girth5_open applies to adjacent events only")
        if any(G.m + ev.u in ev.variables for ev in events):
            raise InvalidGraphError("girth5_open applies to edge weightings only")
        index = {ev.pair: i for i, ev in enumerate(events)}
        nb = G.neighbours
        sets = []
        for ev in events:
            u, v = ev.u, ev.v  # the smaller endpoint plays the role of u
            close = {u} | nb[u]
            J = set()
            for a in close:
                for b in nb[a]:
                    if v not in (a, b):
                        J.add(index[(min(a, b), max(a, b))])
            J.discard(index[ev.pair])
            sets.append(frozenset(J))
        return Dependency(sets, refinement, D * (D - 1))
    raise ValueError(f"unknown refinement {refinement!r}")


# ---------------------------------------------------------------- hypotheses

THEOREMS = (
    "2.7", "2.9", "2.10(1)", "2.10(2)", "2.12", "2.14", "2.15(1)", "2.15(2)",
    "3.4", "3.5", "3.6e", "3.6t", "3.7", "3.8(1)", "3.8(2)",
)
GIRTH5_THEOREMS = {"2.12", "2.14", "2.15(1)", "2.15(2)"}
MULTIGRAPH_THEOREMS = {"2.10(1)", "2.10(2)", "2.15(1)", "2.15(2)", "3.8(1)", "3.8(2)"}
TOTAL_THEOREMS = {"2.9", "2.10(2)", "2.14", "2.15(2)", "3.5", "3.6t", "3.8(2)"}
DEFAULT_K = {
    "2.7": 3, "2.9": 2, "2.10(1)": 3, "2.10(2)": 2, "2.12": 3, "2.14": 2,
    "2.15(1)": 3, "2.15(2)": 2,
}


@dataclass
class HypothesisReport:
    theorem: str
    params: dict
    exponent: int
    lhs: Fraction  # k ** exponent
    rhs_p: Fraction  # rhs = e * rhs_p + rhs_q
    rhs_q: Fraction
    rhs_lo: Fraction
    rhs_hi: Fraction
    dependency_bound: int | None
    satisfied: bool
    notes: list[str] = field(default_factory=list)

    @property
    def regime(self) -> str:
        return GIRTH5_OPEN if self.theorem in GIRTH5_THEOREMS else VARIABLE_SHARING

    def rhs_decimal(self, digits: int = 30) -> str:
        return to_decimal(self.rhs_lo, digits)

    def as_dict(self, digits: int = 30) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "inequality": f"k^{self.exponent} > e*{self.rhs_p}" + (f" + {self.rhs_q}" if self.rhs_q else ""),
            "lhs": str(self.lhs),
            "rhs_lower": to_decimal(self.rhs_lo, digits),
            "rhs_upper": to_decimal(self.rhs_hi, digits),
            "precision_digits": digits,
            "dependency_bound": self.dependency_bound,
            "regime": self.regime,
            "satisfied": self.satisfied,
            "notes": list(self.notes),
        }


def _governing(theorem, k, n, delta, Delta, mu):
    """(exponent, p, q, D, notes) with the condition ``k**exponent > e*p + q``."""
    notes = []
    if theorem in ("2.7", "2.10(1)", "2.10(2)", "2.9"):
        D = 2 * Delta * (Delta - 1)
    elif theorem in GIRTH5_THEOREMS:
        D = Delta * (Delta - 1)
    elif theorem in ("3.4", "3.5", "3.6e", "3.6t"):
        D = max(all_pairs_bounds(n, Delta))
    else:
        D = None
    exponent = {
        "2.7": delta - 1, "2.12": delta - 1, "3.4": delta - 1, "3.6e": delta - 1, "3.7": delta - 1,
        "2.9": delta, "2.14": delta, "3.5": delta, "3.6t": delta,
        "2.10(1)": delta - mu, "2.15(1)": delta - mu, "3.8(1)": delta - mu,
        "2.10(2)": delta - mu + 1, "2.15(2)": delta - mu + 1, "3.8(2)": delta - mu + 1,
    }[theorem]
    q = Fraction(0)
    if theorem == "3.7":
        p = Fraction((n + 1) ** 2, 2)
        q = Fraction(1)
    elif theorem in ("3.8(1)", "3.8(2)"):
        p = Fraction(2 * (Delta + 1) * (n - Delta))
    else:
        p = Fraction(D + 1)
    if theorem == "2.10(2)":
        notes.append("factor e included; the printed inequality for this case omits it")
    return exponent, p, q, D, notes


def check_parameters(theorem: str, k: int, n: int, delta: int, Delta: int, mu: int = 1,
                     extra: dict | None = None) -> HypothesisReport:
    """Evaluate a theorem's governing inequality from graph parameters alone."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")
    if k < 1:
        raise ValueError("k must be >= 1")
    exponent, p, q, D, notes = _governing(theorem, k, n, delta, Delta, mu)
    lhs = Fraction(k) ** exponent
    cmp = compare_with_e(lhs, p, q)
    params = {"n": n, "delta": delta, "Delta": Delta, "mu": mu, "k": k,
              "mode": TOTAL if theorem in TOTAL_THEOREMS else EDGE}
    params.update(extra or {})
    return HypothesisReport(theorem, params, exponent, lhs, p, q, cmp.rhs_lo, cmp.rhs_hi,
                            D, cmp.sign > 0, notes)


def hypothesis_check(G: Graph, theorem: str, k: int | None = None) -> HypothesisReport:
    """Check a theorem's hypothesis on ``G`` after validating its structure."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")
    if G.m == 0:
        raise InapplicableTheorem("graph has no edges")
    multi = G.multiplicity > 1
    if multi and theorem not in MULTIGRAPH_THEOREMS:
        raise InapplicableTheorem(f"theorem {theorem} is stated for simple graphs")
    extra = {}
    if theorem in GIRTH5_THEOREMS:
        g = girth(G.underlying_simple()[0]) if multi else girth(G)
        extra["girth"] = g
        if g < 5:
            raise InapplicableTheorem(f"theorem {theorem} needs girth at least 5, got {g}")
    if theorem in ("3.4", "3.5"):
        if not G.is_regular():
            raise InapplicableTheorem(f"theorem {theorem} needs a regular graph")
        if theorem == "3.4" and not is_nice(G):
            raise InapplicableTheorem("theorem 3.4 needs a nice graph")
        if G.min_degree < 2:
            raise InapplicableTheorem(f"theorem {theorem} needs degree at least 2")
    if theorem.startswith("3") and G.max_degree >= G.n:
        raise InapplicableTheorem("need n > max degree")
    if k is None:
        if theorem in DEFAULT_K:
            k = DEFAULT_K[theorem]
        elif theorem in ("3.4", "3.5", "3.6e", "3.6t"):
            k = bound_k(theorem, G.n, delta=G.min_degree, Delta=G.max_degree)
        else:
            raise ValueError(f"theorem {theorem} needs an explicit k")
    return check_parameters(theorem, k, G.n, G.min_degree, G.max_degree, G.multiplicity or 1, extra)


def bound_k(task: str, n: int, d: int | None = None, delta: int | None = None,
            Delta: int | None = None) -> int:
    """Closed-form list size for sequence irregularity.

    Least integer ``k`` with ``k**a > 2e(D+1)(n-D)`` where ``D`` is the
    (maximum) degree and ``a`` is ``d-1`` / ``d`` for the regular edge / total
    bounds and ``delta-1`` / ``delta`` for the general ones.
    """
    if task in ("3.4", "3.5"):
        if d is None:
            if delta is None or delta != Delta:
                raise ValueError(f"task {task} needs a single degree d")
            d = delta
        if d < 2:
            raise ValueError("d must be at least 2")
        delta = Delta = d
    elif task in ("3.6e", "3.6t"):
        if delta is None or Delta is None:
            if d is None:
                raise ValueError(f"task {task} needs delta and Delta")
            delta = Delta = d
        if not 1 <= delta <= Delta:
            raise ValueError("need 1 <= delta <= Delta")
    else:
        raise ValueError(f"unknown bound task {task!r}")
    if n <= Delta:
        raise ValueError("need n > max degree")
    exponent = delta - 1 if task in ("3.4", "3.6e") else delta
    if exponent < 1:
        raise ValueError("edge bound needs minimum degree at least 2")
    return least_power_above_e(2 * (Delta + 1) * (n - Delta), exponent)


# ---------------------------------------------------------------- resampling

@dataclass
class ResampleResult:
    weighting: Weighting
    rounds: int
    transcript: list[tuple[int, int]]  # resampled pairs, in order
    seed: int
    events: int

    def as_dict(self) -> dict:
        return {"rounds": self.rounds, "seed": self.seed, "events": self.events,
                "transcript": [list(p) for p in self.transcript]}


def resample(
    G: Graph,
    ordering: EdgeOrdering | Sequence[int] | None,
    weights: ListAssignment | int,
    scope: str = ADJACENT,
    mode: str = EDGE,
    seed: int = 0,
    max_rounds: int | None = None,
    vertex_position: str = APPEND,
) -> ResampleResult:
    """Resample violated events until none holds.

    Every variable starts uniform on its list. While an event is violated,
    the one with the smallest (min vertex, max vertex) pair has all its
    variables redrawn. Deterministic for a given seed.
    """
    ordering = ordering_for(G, ordering)
    if isinstance(weights, int):
        weights = ListAssignment.fixed(G, weights, total=(mode == TOTAL))
    weights.check_shape(G, mode)
    events = build_bad_events(G, scope, mode)
    if max_rounds is None:
        max_rounds = 1000 * max(len(events), 1)
    rng = random.Random(seed)
    m = G.m
    lists = list(weights.edge_lists) + (list(weights.vertex_lists) if mode == TOTAL else [])
    val = [rng.choice(lst) for lst in lists]
    local = ordering.local_orders(G)

    def seq(x):
        s = tuple(val[e] for e in local[x])
        if mode == TOTAL:
            s = s + (val[m + x],) if vertex_position == APPEND else (val[m + x],) + s
        return s

    live = [i for i, ev in enumerate(events) if not ev.trivial]
    by_vertex: dict[int, list[int]] = {}
    for i in live:
        by_vertex.setdefault(events[i].u, []).append(i)
        by_vertex.setdefault(events[i].v, []).append(i)
    cur = [seq(x) for x in range(G.n)]
    violated = [False] * len(events)
    heap = []
    for i in live:
        if cur[events[i].u] == cur[events[i].v]:
            violated[i] = True
            heap.append(i)
    heapq.heapify(heap)
    transcript = []
    rounds = 0
    while heap:
        i = heap[0]
        if not violated[i]:
            heapq.heappop(heap)
            continue
        if rounds >= max_rounds:
            bad = [events[j].pair for j in sorted(set(heap)) if violated[j]]
            raise MaxRoundsExceeded(rounds, bad)
        rounds += 1
        ev = events[i]
        transcript.append(ev.pair)
        for x in sorted(ev.variables):
            val[x] = rng.choice(lists[x])
        touched = set()
        for x in ev.variables:
            if x < m:
                touched.update(G.edges[x])
            else:
                touched.add(x - m)
        for x in touched:
            cur[x] = seq(x)
        for x in touched:
            for j in by_vertex.get(x, ()):
                now = cur[events[j].u] == cur[events[j].v]
                if now and not violated[j]:
                    heapq.heappush(heap, j)
                violated[j] = now

    w = Weighting(tuple(val[:m]), tuple(val[m:]) if mode == TOTAL else None)
    col = induced_colouring(G, ordering, w, mode, vertex_position)
    ok = is_irregular(col) if scope == ALL_PAIRS else is_proper(col, G)
    if not ok or not respects_lists(w, weights):
        raise InvariantViolation("resampler returned an invalid weighting")
    return ResampleResult(w, rounds, transcript, seed, len(events))
