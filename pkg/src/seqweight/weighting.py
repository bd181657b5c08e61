"""Weightings, list assignments, induced sequence colourings and their predicates.

Weights are compared by exact equality. Integers stay ``int``; anything else
is converted to :class:`fractions.Fraction` (decimal strings are parsed
exactly), so ``0.1`` read from a file is the rational 1/10.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

from .errors import ListSizeError, MissingWeightError
from .graph import EdgeOrdering, Graph, ordering_for

EDGE, TOTAL = "edge", "total"
APPEND, PREPEND = "append", "prepend"


def exact(x) -> int | Fraction:
    """Coerce a weight to an exact rational, keeping integers as ``int``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not weights")
    if isinstance(x, int):
        return x
    if isinstance(x, (Rational, float, str)):
        f = Fraction(x.strip()) if isinstance(x, str) else Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"cannot use {x!r} as a weight")


def _exact_list(values: Iterable) -> tuple:
    vals = tuple(sorted(exact(v) for v in values))
    if len(set(vals)) != len(vals):
        raise ListSizeError(f"list {vals} has repeated values")
    return vals


@dataclass(frozen=True)
class ListAssignment:
    """Per-edge (and in total mode per-vertex) candidate weights.

    Every list is stored sorted ascending, which is the order all searches
    scan candidates in.
    """

    edge_lists: tuple[tuple, ...]
    vertex_lists: tuple[tuple, ...] | None = None

    def __post_init__(self):
        el = tuple(_exact_list(x) for x in self.edge_lists)
        vl = None if self.vertex_lists is None else tuple(_exact_list(x) for x in self.vertex_lists)
        sizes = {len(x) for x in el} | ({len(x) for x in vl} if vl else set())
        if len(sizes) > 1:
            raise ListSizeError(f"lists have mixed sizes {sorted(sizes)}")
        if 0 in sizes:
            raise ListSizeError("empty list")
        object.__setattr__(self, "edge_lists", el)
        object.__setattr__(self, "vertex_lists", vl)

    @property
    def k(self) -> int:
        for x in self.edge_lists:
            return len(x)
        for x in self.vertex_lists or ():
            return len(x)
        return 0

    @property
    def is_total(self) -> bool:
        return self.vertex_lists is not None

    @classmethod
    def fixed(cls, G: Graph, k: int, total: bool = False) -> "ListAssignment":
        """Every list equal to ``{1, ..., k}``."""
        if k < 1:
            raise ListSizeError("k must be >= 1")
        vals = tuple(range(1, k + 1))
        return cls((vals,) * G.m, (vals,) * G.n if total else None)

    def is_uniform(self) -> bool:
        """True when every list is the same set."""
        lists = set(self.edge_lists) | set(self.vertex_lists or ())
        return len(lists) <= 1

    def check_shape(self, G: Graph, mode: str = EDGE) -> None:
        if len(self.edge_lists) != G.m:
            raise ListSizeError(f"{len(self.edge_lists)} edge lists for {G.m} edges")
        if mode == TOTAL and (self.vertex_lists is None or len(self.vertex_lists) != G.n):
            raise ListSizeError("total mode needs one list per vertex")


@dataclass(frozen=True)
class Weighting:
    edge_weight: tuple
    vertex_weight: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "edge_weight", tuple(exact(x) for x in self.edge_weight))
        if self.vertex_weight is not None:
            object.__setattr__(self, "vertex_weight", tuple(exact(x) for x in self.vertex_weight))


@dataclass(frozen=True)
class SequenceColouring:
    seq: tuple[tuple, ...]

    def __getitem__(self, v):
        return self.seq[v]

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)


def induced_colouring(
    G: Graph,
    ordering: EdgeOrdering | Sequence[int] | None,
    w: Weighting,
    mode: str = EDGE,
    vertex_position: str = APPEND,
) -> SequenceColouring:
    """Colour each vertex by its incident edge weights listed in edge order.

    In total mode the vertex's own weight goes after (``append``) or before
    (``prepend``) its edge weights.
    """
    ordering = ordering_for(G, ordering)
    if len(w.edge_weight) != G.m:
        raise MissingWeightError(f"{len(w.edge_weight)} edge weights for {G.m} edges")
    if mode == TOTAL and (w.vertex_weight is None or len(w.vertex_weight) != G.n):
        raise MissingWeightError("total mode needs a weight on every vertex")
    if mode not in (EDGE, TOTAL):
        raise ValueError(f"unknown mode {mode!r}")
    if vertex_position not in (APPEND, PREPEND):
        raise ValueError(f"unknown vertex position {vertex_position!r}")
    ew = w.edge_weight
    seqs = []
    for v, local in enumerate(ordering.local_orders(G)):
        s = tuple(ew[e] for e in local)
        if mode == TOTAL:
            s = s + (w.vertex_weight[v],) if vertex_position == APPEND else (w.vertex_weight[v],) + s
        seqs.append(s)
    return SequenceColouring(tuple(seqs))


def proper_violations(col: SequenceColouring, G: Graph) -> list[tuple[int, int]]:
    """All adjacent pairs (u < v) with equal sequences, each listed once."""
    return sorted({(u, v) for u, v in G.edges if col[u] == col[v]})


def is_proper(col: SequenceColouring, G: Graph) -> bool:
    return all(col[u] != col[v] for u, v in G.edges)


def prefix_violations(col: SequenceColouring, G: Graph) -> list[tuple[int, int]]:
    """Adjacent pairs where the shorter sequence is a prefix of the longer one.

    Only pairs whose sequences both have length at least 2 are constrained.
    Sequence length is the degree in edge mode and degree + 1 in total mode,
    so total colourings are judged as on the pendant-augmented graph.
    """
    bad = set()
    for a, b in G.edges:
        sa, sb = col[a], col[b]
        sv, su = (sa, sb) if len(sa) <= len(sb) else (sb, sa)
        if len(sv) < 2:
            continue
        if su[: len(sv)] == sv:
            bad.add((min(a, b), max(a, b)))
    return sorted(bad)


def is_prefix_distinguishing(col: SequenceColouring, G: Graph) -> bool:
    return not prefix_violations(col, G)


def irregular_violations(col: SequenceColouring) -> list[tuple[int, int]]:
    """All vertex pairs (adjacent or not) sharing a sequence."""
    groups: dict[tuple, list[int]] = {}
    for v, s in enumerate(col):
        groups.setdefault(s, []).append(v)
    return sorted(p for vs in groups.values() if len(vs) > 1 for p in combinations(vs, 2))


def is_irregular(col: SequenceColouring) -> bool:
    return len(set(col.seq)) == len(col.seq)


def respects_lists(w: Weighting, L: ListAssignment) -> bool:
    if len(w.edge_weight) != len(L.edge_lists):
        raise ListSizeError("weighting and list assignment cover different edge sets")
    if any(x not in lst for x, lst in zip(w.edge_weight, L.edge_lists)):
        return False
    if w.vertex_weight is None:
        return True
    if L.vertex_lists is None or len(L.vertex_lists) != len(w.vertex_weight):
        raise ListSizeError("vertex weights without matching vertex lists")
    return all(x in lst for x, lst in zip(w.vertex_weight, L.vertex_lists))
