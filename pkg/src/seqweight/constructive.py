"""Constructive 2-list weightings whose sequence colourings are prefix distinguishing.

The main engine peels a minimum-degree vertex ``x``, solves the rest, then
appends the edges at ``x`` to the end of the ordering and picks their weights
by scanning all list combinations (ascending) until the affected adjacent
pairs are prefix distinguished. Which ``x`` is peeled follows the induction:
any leaf when the minimum degree is 1; a degree-2 vertex with a neighbour of
degree >= 3 when the minimum degree is 2 (pure cycles are handed to
:func:`weight_cycle`); any minimum-degree vertex otherwise. Components on three
vertices are solved by brute force. Ties always go to the smallest id or
value.
"""

from __future__ import annotations

from itertools import permutations, product

from .errors import InvalidGraphError, InvariantViolation, ListSizeError
from .graph import EdgeOrdering, Graph, is_nice
from .weighting import (
    APPEND,
    TOTAL,
    ListAssignment,
    Weighting,
    induced_colouring,
    is_prefix_distinguishing,
    is_proper,
    respects_lists,
)


def _require_two(lists, what="edge"):
    for i, lst in enumerate(lists):
        if len(lst) != 2:
            raise ListSizeError(f"{what} list {i} has {len(lst)} values; exactly 2 required")


def _cycle_pick(lists):
    """Weights for e_1..e_n of a cycle in natural order (lists already sorted)."""
    n = len(lists)
    w = [None] * n
    w[1], w[n - 1] = next((a, b) for a in lists[1] for b in lists[n - 1] if a != b)
    for i in range(2, n - 1):
        w[i] = next(a for a in lists[i] if a != w[i - 1])
    w[0] = next(a for a in lists[0] if a != w[n - 2])
    return w


def weight_cycle(n: int, L: ListAssignment) -> Weighting:
    """Proper 2-list weighting of C_n under the natural ordering.

    Edge ``i`` is ``v_i v_{i+1}`` (indices mod n), matching
    :func:`seqweight.generators.cycle`.
    """
    if n < 3:
        raise InvalidGraphError("cycles need n >= 3")
    if len(L.edge_lists) != n:
        raise ListSizeError(f"{len(L.edge_lists)} lists for a cycle with {n} edges")
    _require_two(L.edge_lists)
    return Weighting(tuple(_cycle_pick(L.edge_lists)))


def _pair_ok(sa, sb):
    """Proper and prefix-distinguishing test for one adjacent pair of sequences."""
    if sa == sb:
        return False
    short, long_ = (sa, sb) if len(sa) <= len(sb) else (sb, sa)
    return len(short) < 2 or long_[: len(short)] != short


class _PrefixBuilder:
    """Incremental state shared by all components of one simple graph."""

    def __init__(self, G: Graph, lists):
        self.G = G
        self.lists = lists
        self.order: list[int] = []
        self.w: list = [None] * G.m
        self.seq: list[list] = [[] for _ in range(G.n)]
        self.active = [False] * G.n
        self.edge_at = {p: i for i, p in enumerate(G.edges)}

    def _commit(self, edges, weights):
        for e, x in zip(edges, weights):
            u, v = self.G.edges[e]
            self.order.append(e)
            self.w[e] = x
            self.seq[u].append(x)
            self.seq[v].append(x)
            self.active[u] = self.active[v] = True

    def _edge(self, a, b):
        return self.edge_at[(a, b) if a < b else (b, a)]

    def solve(self, comp: list[int]) -> None:
        """Solve one connected nice component (all vertices currently inactive)."""
        if len(comp) == 1:
            return
        if len(comp) == 2:
            raise InvalidGraphError(f"component {comp} is K2")
        # post-order over the peeling tree without recursion
        stack = [("visit", frozenset(comp))]
        while stack:
            tag, item = stack.pop()
            if tag == "visit":
                plan = self._plan(item)
                stack.append(("run", plan))
                if plan[0] == "extend":
                    for child in reversed(plan[3]):
                        stack.append(("visit", child))
            else:
                kind = item[0]
                if kind == "base":
                    self._base(item[1])
                elif kind == "cycle":
                    self._cycle(item[1])
                else:
                    self._extend(item[1], item[2])

    def _plan(self, C: frozenset):
        nb = self.G.neighbours
        if len(C) < 3:
            raise InvariantViolation(f"peeling produced a component of size {len(C)}")
        if len(C) == 3:
            return ("base", C)
        deg = {v: len(nb[v] & C) for v in C}
        d = min(deg.values())
        if d == 2 and all(x == 2 for x in deg.values()):
            return ("cycle", C)
        if d == 2:
            x = min(v for v in C if deg[v] == 2 and any(deg[y] >= 3 for y in nb[v] & C))
        else:
            x = min(v for v in C if deg[v] == d)
        rest = C - {x}
        return ("extend", x, C, self._split(rest))

    def _split(self, S: frozenset) -> list[frozenset]:
        nb = self.G.neighbours
        seen = set()
        parts = []
        for s in sorted(S):
            if s in seen:
                continue
            part = {s}
            todo = [s]
            while todo:
                a = todo.pop()
                for b in nb[a]:
                    if b in S and b not in part:
                        part.add(b)
                        todo.append(b)
            seen |= part
            parts.append(frozenset(part))
        return parts

    def _base(self, C):
        G = self.G
        edges = sorted(i for i, (u, v) in enumerate(G.edges) if u in C and v in C)
        pairs = [G.edges[e] for e in edges]
        for perm in permutations(range(len(edges))):
            ordered = [edges[i] for i in perm]
            for combo in product(*(self.lists[e] for e in ordered)):
                seq = {v: [] for v in C}
                for e, x in zip(ordered, combo):
                    u, v = G.edges[e]
                    seq[u].append(x)
                    seq[v].append(x)
                if all(_pair_ok(tuple(seq[u]), tuple(seq[v])) for u, v in pairs):
                    self._commit(ordered, combo)
                    return
        raise InvariantViolation(f"no weighting for 3-vertex component {sorted(C)}")

    def _cycle(self, C):
        nb = self.G.neighbours
        start = min(C)
        walk = [start]
        prev, cur = start, min(nb[start] & C)
        while cur != start:
            walk.append(cur)
            prev, cur = cur, next(y for y in nb[cur] & C if y != prev)
        n = len(walk)
        edges = [self._edge(walk[i], walk[(i + 1) % n]) for i in range(n)]
        self._commit(edges, _cycle_pick([self.lists[e] for e in edges]))

    def _extend(self, x, C):
        nb = self.G.neighbours
        ys = sorted(nb[x] & C)
        edges = [self._edge(x, y) for y in ys]
        touched = [x] + ys
        seq = self.seq
        for combo in product(*(self.lists[e] for e in edges)):
            for y, a in zip(ys, combo):
                seq[y].append(a)
            seq[x] = list(combo)
            self.active[x] = True
            ok = all(
                _pair_ok(tuple(seq[a]), tuple(seq[b]))
                for a in touched
                for b in nb[a]
                if self.active[b] and b in C
            )
            for y in ys:
                seq[y].pop()
            seq[x] = []
            self.active[x] = False
            if ok:
                self._commit(edges, combo)
                return
        raise InvariantViolation(f"no extension at vertex {x} of component {sorted(C)}")

    def result(self, L: ListAssignment):
        ordering = EdgeOrdering(tuple(self.order))
        return ordering, Weighting(tuple(self.w))


def _verify_edge_certificate(G, ordering, w, L):
    col = induced_colouring(G, ordering, w)
    if not respects_lists(w, L):
        raise InvariantViolation("constructed weighting leaves its lists")
    if not is_prefix_distinguishing(col, G) or not is_proper(col, G):
        raise InvariantViolation("constructed colouring is not prefix distinguishing")


def _check_simple_input(G: Graph, L: ListAssignment):
    if G.is_multigraph and G.multiplicity > 1:
        raise InvalidGraphError("use multigraph_prefix_weighting for parallel edges")
    if not is_nice(G):
        raise InvalidGraphError("graph has a K2 component")
    if len(L.edge_lists) != G.m:
        raise ListSizeError(f"{len(L.edge_lists)} lists for {G.m} edges")
    _require_two(L.edge_lists)


def prefix_distinguishing_weighting(G: Graph, L: ListAssignment) -> tuple[EdgeOrdering, Weighting]:
    """Ordering and 2-list weighting of a nice connected simple graph.

    The induced colouring is prefix distinguishing and proper; the result is
    re-verified before it is returned.
    """
    _check_simple_input(G, L)
    if not G.is_connected():
        raise InvalidGraphError("graph is not connected; use prefix_distinguishing_weighting_components")
    return prefix_distinguishing_weighting_components(G, L)


def prefix_distinguishing_weighting_components(G: Graph, L: ListAssignment):
    """Same as :func:`prefix_distinguishing_weighting` for any nice simple graph.

    Components are solved in order of their least vertex and their orderings
    concatenated.
    """
    _check_simple_input(G, L)
    builder = _PrefixBuilder(G, L.edge_lists)
    for comp in G.components():
        builder.solve(comp)
    ordering, w = builder.result(L)
    _verify_edge_certificate(G, ordering, w, L)
    return ordering, w


def multigraph_prefix_weighting(M: Graph, L: ListAssignment) -> tuple[EdgeOrdering, Weighting]:
    """Prefix-distinguishing 2-list weighting of a nice loopless multigraph.

    The underlying simple graph is solved first; every extra parallel edge is
    appended afterwards in index order. An extra edge at a vertex ``x`` that
    is a leaf of the simple graph avoids the second entry of its other end's
    sequence.
    """
    if not is_nice(M):
        raise InvalidGraphError("multigraph has a two-vertex component")
    if len(L.edge_lists) != M.m:
        raise ListSizeError(f"{len(L.edge_lists)} lists for {M.m} edges")
    _require_two(L.edge_lists)
    G, keep = M.underlying_simple()
    simple_lists = ListAssignment(tuple(L.edge_lists[i] for i in keep))
    g_order, g_w = prefix_distinguishing_weighting_components(G, simple_lists)
    col = induced_colouring(G, g_order, g_w)

    w = [None] * M.m
    for gi, mi in enumerate(keep):
        w[mi] = g_w.edge_weight[gi]
    kept = set(keep)
    extras = [i for i in range(M.m) if i not in kept]
    for e in extras:
        a, b = M.edges[e]
        avoid = None
        for x, y in ((a, b), (b, a)):
            if G.degrees[x] == 1 and M.degrees[x] >= 2:
                avoid = col[y][1]
        w[e] = next(v for v in L.edge_lists[e] if v != avoid)

    ordering = EdgeOrdering(tuple(keep[i] for i in g_order.perm) + tuple(extras))
    weighting = Weighting(tuple(w))
    _verify_edge_certificate(M, ordering, weighting, L)
    return ordering, weighting


def _check_total_lists(G, L):
    if L.vertex_lists is None or len(L.vertex_lists) != G.n:
        raise ListSizeError("total weightings need one list per vertex")
    if len(L.edge_lists) != G.m:
        raise ListSizeError(f"{len(L.edge_lists)} lists for {G.m} edges")
    _require_two(L.edge_lists)
    _require_two(L.vertex_lists, "vertex")


def _verify_total(G, ordering, w, L):
    col = induced_colouring(G, ordering, w, mode=TOTAL, vertex_position=APPEND)
    if not respects_lists(w, L):
        raise InvariantViolation("constructed total weighting leaves its lists")
    if not is_proper(col, G) or not is_prefix_distinguishing(col, G):
        raise InvariantViolation("constructed total colouring is not prefix distinguishing")


def total_weighting_via_leaves(G: Graph, L: ListAssignment) -> tuple[EdgeOrdering, Weighting]:
    """Total 2-list weighting of any simple graph whose colouring is proper.

    Each vertex ``v`` gets a pendant edge carrying ``L_v``; the augmented graph
    is nice once isolated vertices are set aside, so the edge construction
    applies. Pendant edges are peeled first and therefore land last in every
    vertex's sequence, which is exactly the ``append`` vertex position.
    Returns the ordering of the original edges and the total weighting.
    """
    if G.is_multigraph and G.multiplicity > 1:
        return multigraph_total_weighting(G, L)
    _check_total_lists(G, L)
    n, m = G.n, G.m
    # pendant of v gets id v, original vertex v gets id n + v: pendants peel first
    h_edges = [(n + u, n + v) for u, v in G.edges] + [(v, n + v) for v in range(n)]
    H = Graph(2 * n, tuple(h_edges))
    h_lists = L.edge_lists + L.vertex_lists
    builder = _PrefixBuilder(H, h_lists)
    for comp in H.components():
        if len(comp) == 2:
            continue  # isolated vertex of G with its pendant
        builder.solve(comp)
    vertex_w = []
    for v in range(n):
        x = builder.w[m + v]
        vertex_w.append(L.vertex_lists[v][0] if x is None else x)
    rank = {e: i for i, e in enumerate(builder.order)}
    for v in range(n):
        if G.degrees[v] and any(rank[e] > rank[m + v] for e in G.incidence[v]):
            raise InvariantViolation(f"pendant edge of vertex {v} is not last in its sequence")
    ordering = EdgeOrdering(tuple(e for e in builder.order if e < m))
    w = Weighting(tuple(builder.w[:m]), tuple(vertex_w))
    _verify_total(G, ordering, w, L)
    return ordering, w


def multigraph_total_weighting(M: Graph, L: ListAssignment) -> tuple[EdgeOrdering, Weighting]:
    """Total 2-list weighting of a nice multigraph with vertex weights appended.

    Starts from :func:`multigraph_prefix_weighting`; a degree-1 vertex ``v``
    with neighbour ``u`` takes a weight different from the second entry of
    ``u``'s sequence, every other vertex takes the smallest value of its list.
    """
    _check_total_lists(M, L)
    ordering, w = multigraph_prefix_weighting(M, ListAssignment(L.edge_lists))
    col = induced_colouring(M, ordering, w)
    vw = []
    for v in range(M.n):
        avoid = None
        if M.degrees[v] == 1:
            u = M.other_end(M.incidence[v][0], v)
            avoid = col[u][1]
        vw.append(next(a for a in L.vertex_lists[v] if a != avoid))
    weighting = Weighting(w.edge_weight, tuple(vw))
    _verify_total(M, ordering, weighting, L)
    return ordering, weighting
