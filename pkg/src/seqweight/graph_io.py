"""Edge-list and graph6 readers/writers."""

from __future__ import annotations

import sys
from typing import TextIO

from .errors import GraphFormatError, InvalidGraphError
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.replace("\r\n", "\n").replace("\r", "\n").split("\n")]


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``.

    A line ``#multigraph`` anywhere allows parallel edges. Blank lines are
    ignored; edge ``i`` is the ``i``-th edge line.
    """
    multi = False
    body = []
    for ln in _lines(text):
        if not ln:
            continue
        if ln.lower() == "#multigraph":
            multi = True
            continue
        body.append(ln)
    if not body:
        raise GraphFormatError("empty edge list")
    head = body[0].split()
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise GraphFormatError(f"header must be 'n m', got {body[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(body) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body) - 1}")
    edges = []
    for lineno, ln in enumerate(body[1:], start=2):
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"malformed edge line {lineno}: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex id out of range on line {lineno}: {ln!r}")
        if u == v:
            raise GraphFormatError(f"loop on line {lineno}: {ln!r}")
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges), multi)
    except InvalidGraphError as exc:
        raise GraphFormatError(str(exc)) from exc


def emit_edge_list(G: Graph) -> str:
    out = [f"{G.n} {G.m}"]
    if G.is_multigraph:
        out.append("#multigraph")
    out.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(out) + "\n"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _decode_n(data: str) -> tuple[int, str]:
    def val(chunk):
        x = 0
        for c in chunk:
            x = (x << 6) | (ord(c) - 63)
        return x

    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != "~":
        return ord(data[0]) - 63, data[1:]
    if len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field")
        return val(data[2:8]), data[8:]
    if len(data) < 4:
        raise GraphFormatError("truncated graph6 size field")
    return val(data[1:4]), data[4:]


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; edges are indexed in lexicographic (u, v) order."""
    data = text.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if any(not (63 <= ord(c) <= 126) for c in data):
        raise GraphFormatError("graph6 data contains bytes outside 63..126")
    n, rest = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(rest) != need:
        raise GraphFormatError(f"graph6 body has {len(rest)} bytes, expected {need}")
    bits = []
    for c in rest:
        x = ord(c) - 63
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero graph6 padding bits")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph(n, tuple(sorted(edges)))


def emit_graph6(G: Graph) -> str:
    if G.is_multigraph and G.multiplicity > 1:
        raise InvalidGraphError("graph6 cannot represent parallel edges")
    present = set(G.edges)
    bits = [1 if (u, v) in present else 0 for v in range(1, G.n) for u in range(v)]
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return _encode_n(G.n) + body


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse either format; ``auto`` picks edge-list when the first line is ``n m``."""
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    first = next((ln for ln in _lines(text) if ln), "")
    if len(first.split()) == 2:
        return parse_edge_list(text)
    return parse_graph6(first)


def read_graph(path: str | None, fmt: str = "auto", stdin: TextIO | None = None) -> Graph:
    if path is None or path == "-":
        return parse_graph((stdin or sys.stdin).read(), fmt)
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), fmt)
