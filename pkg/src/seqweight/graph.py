"""Graph and multigraph model with the structural queries used everywhere else.

Vertices are dense integer ids ``0..n-1``; edges are indexed ``0..m-1`` and the
index is the identity of an edge (parallel edges are distinct indices).
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidGraphError


@dataclass(frozen=True)
class Graph:
    """Loopless graph, optionally with parallel edges.

    ``edges[i]`` is the endpoint pair of edge ``i`` stored as ``(min, max)``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    is_multigraph: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        norm = []
        for i, (u, v) in enumerate(self.edges):
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraphError(f"edge {i} ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InvalidGraphError(f"edge {i} is a loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        if not self.is_multigraph and len(set(norm)) != len(norm):
            dup = next(p for p, c in Counter(norm).items() if c > 1)
            raise InvalidGraphError(f"parallel edges {dup} in a simple graph")
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices at each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def multiplicity(self) -> int:
        """Largest number of edges joining one vertex pair (0 if edgeless)."""
        return max(Counter(self.edges).values(), default=0)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbours[u]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def components(self) -> list[list[int]]:
        """Connected components as ascending vertex lists, ordered by least vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.neighbours[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def underlying_simple(self) -> tuple["Graph", list[int]]:
        """Collapse parallel edges.

        Returns the simple graph and, for each of its edges, the index of the
        first edge of ``self`` with that endpoint pair.
        """
        first: dict[tuple[int, int], int] = {}
        for i, p in enumerate(self.edges):
            first.setdefault(p, i)
        keep = sorted(first.values())
        return Graph(self.n, tuple(self.edges[i] for i in keep)), keep

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Subgraph on ``vertices`` relabelled to ``0..len-1``.

        Returns ``(subgraph, vertex_map, edge_map)`` where the maps send new ids
        back to ids of ``self``.
        """
        vmap = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vmap)}
        emap = [i for i, (u, v) in enumerate(self.edges) if u in pos and v in pos]
        sub = Graph(
            len(vmap),
            tuple((pos[self.edges[i][0]], pos[self.edges[i][1]]) for i in emap),
            self.is_multigraph,
        )
        return sub, vmap, emap


@dataclass(frozen=True)
class EdgeOrdering:
    """Total order on edge indices; ``perm[i]`` is the edge in position ``i``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("ordering must be a permutation of 0..m-1")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def natural(cls, m: int) -> "EdgeOrdering":
        return cls(tuple(range(m)))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """``rank[e]`` is the position of edge ``e``."""
        r = [0] * len(self.perm)
        for pos, e in enumerate(self.perm):
            r[e] = pos
        return tuple(r)

    def __len__(self):
        return len(self.perm)

    def local_orders(self, G: Graph) -> tuple[tuple[int, ...], ...]:
        """Incident edges of each vertex sorted by this ordering."""
        rank = self.rank
        return tuple(tuple(sorted(inc, key=rank.__getitem__)) for inc in G.incidence)


def ordering_for(G: Graph, ordering: EdgeOrdering | Sequence[int] | None) -> EdgeOrdering:
    if ordering is None:
        return EdgeOrdering.natural(G.m)
    if not isinstance(ordering, EdgeOrdering):
        ordering = EdgeOrdering(tuple(ordering))
    if len(ordering) != G.m:
        raise ValueError(f"ordering has {len(ordering)} edges, graph has {G.m}")
    return ordering


def girth(G: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests.

    A pair of parallel edges is a 2-cycle.
    """
    if G.is_multigraph and G.multiplicity >= 2:
        return 2
    best = math.inf
    inc = G.incidence
    for root in range(G.n):
        dist = {root: 0}
        via = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for e in inc[x]:
                if e == via[x]:
                    continue
                y = G.other_end(e, x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = e
                    queue.append(y)
                else:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def is_nice(G: Graph) -> bool:
    """True iff no connected component has exactly two vertices.

    For simple graphs such a component is K2; for multigraphs it is any
    bundle of parallel edges between two otherwise isolated vertices.
    """
    return all(len(c) != 2 for c in G.components())


def degree_counts(G: Graph) -> Counter:
    return Counter(G.degrees)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    multi = False
    for H in graphs:
        edges.extend((u + offset, v + offset) for u, v in H.edges)
        offset += H.n
        multi = multi or H.is_multigraph
    return Graph(offset, tuple(edges), multi)
