"""Shared helpers: independent reference implementations used as test oracles."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from seqweight.graph import Graph

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def ref_sequences(G: Graph, perm, w, vertex_w=None):
    """Sequences computed directly from the definition."""
    pos = {e: i for i, e in enumerate(perm)}
    out = []
    for x in range(G.n):
        inc = sorted((pos[i], i) for i, (a, b) in enumerate(G.edges) if x in (a, b))
        s = tuple(w[i] for _, i in inc)
        if vertex_w is not None:
            s = s + (vertex_w[x],)
        out.append(s)
    return out


def ref_ok(G, seqs, criterion):
    if criterion == "proper_seq":
        return all(seqs[a] != seqs[b] for a, b in G.edges)
    if criterion == "irregular":
        return len(set(seqs)) == len(seqs)
    for a, b in G.edges:
        s, t = sorted((seqs[a], seqs[b]), key=len)
        if len(s) >= 2 and t[: len(s)] == s:
            return False
    return True


def brute_feasible(G: Graph, perm, k: int, criterion="proper_seq") -> bool:
    """Plain enumeration of all k**m weightings."""
    for w in itertools.product(range(1, k + 1), repeat=G.m):
        if ref_ok(G, ref_sequences(G, perm, w), criterion):
            return True
    return False


def brute_min_sigma(G: Graph, max_k: int, criterion="proper_seq", every=True):
    perms = list(itertools.permutations(range(G.m)))
    for k in range(1, max_k + 1):
        results = (brute_feasible(G, p, k, criterion) for p in perms)
        if (all if every else any)(results):
            return k
    return None


def brute_min_multiset(G: Graph, max_k: int, agg=lambda s: tuple(sorted(s))):
    for k in range(1, max_k + 1):
        for w in itertools.product(range(1, k + 1), repeat=G.m):
            col = [agg([w[i] for i, e in enumerate(G.edges) if x in e]) for x in range(G.n)]
            if all(col[a] != col[b] for a, b in G.edges):
                return k
    return None


def to_nx(G: Graph) -> nx.MultiGraph | nx.Graph:
    H = nx.MultiGraph() if G.is_multigraph else nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def from_nx(H) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(H.nodes()))}
    return Graph(len(mapping), tuple((mapping[a], mapping[b]) for a, b in H.edges()))


def girth5_regular(d: int) -> Graph:
    """A d-regular girth >= 5 graph for 2 <= d <= 7.

    Perfect matchings are peeled off the Hoffman-Singleton graph.
    """
    H = nx.hoffman_singleton_graph()
    for _ in range(7 - d):
        M = nx.max_weight_matching(H, maxcardinality=True)
        assert 2 * len(M) == H.number_of_nodes()
        H.remove_edges_from(M)
    return from_nx(H)


def random_int_lists(rng: random.Random, count: int, k: int, lo=-20, hi=20):
    return tuple(tuple(rng.sample(range(lo, hi + 1), k)) for _ in range(count))


@pytest.fixture
def rng():
    return random.Random(12345)
