"""Line-oriented file formats for weightings, lists, orderings and colourings.

Weighting file::

    <edge_index> <value>        one per edge
    v<vertex> <value>           one per vertex (total weightings only)

List file has the same keys followed by all ``k`` candidate values. An
ordering file is the permutation as whitespace separated edge indices.
Values are decimal strings or ``p/q`` and are read exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import GraphFormatError
from .graph import EdgeOrdering
from .weighting import ListAssignment, SequenceColouring, Weighting, exact


def format_value(x) -> str:
    """Exact decimal when the denominator allows it, otherwise ``p/q``."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    d = f.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{f.numerator}/{f.denominator}"
    places = max(twos, fives)
    scaled = abs(f.numerator) * 10**places // f.denominator
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if f < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _keyed_rows(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        try:
            if key[0] in "vV":
                yield lineno, "v", int(key[1:]), [exact(x) for x in vals]
            else:
                yield lineno, "e", int(key), [exact(x) for x in vals]
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphFormatError(f"line {lineno}: {raw!r}: {exc}") from exc


def _collect(rows, m, n, what):
    edges: dict[int, object] = {}
    verts: dict[int, object] = {}
    for lineno, kind, idx, vals in rows:
        table = edges if kind == "e" else verts
        if idx in table:
            raise GraphFormatError(f"line {lineno}: duplicate {what} for {kind}{idx}")
        table[idx] = vals
    if m is not None and sorted(edges) != list(range(m)):
        raise GraphFormatError(f"{what} file must cover edges 0..{m - 1}")
    if m is None:
        m = len(edges)
        if sorted(edges) != list(range(m)):
            raise GraphFormatError(f"{what} file edge keys are not 0..{m - 1}")
    if verts:
        n = n if n is not None else len(verts)
        if sorted(verts) != list(range(n)):
            raise GraphFormatError(f"{what} file must cover vertices 0..{n - 1}")
    return [edges[i] for i in range(m)], ([verts[i] for i in range(n)] if verts else None)


def parse_weighting(text: str, m: int | None = None, n: int | None = None) -> Weighting:
    rows = list(_keyed_rows(text))
    for lineno, _, _, vals in rows:
        if len(vals) != 1:
            raise GraphFormatError(f"line {lineno}: expected exactly one value")
    e, v = _collect(rows, m, n, "weighting")
    return Weighting(tuple(x[0] for x in e), None if v is None else tuple(x[0] for x in v))


def emit_weighting(w: Weighting) -> str:
    out = [f"{i} {format_value(x)}" for i, x in enumerate(w.edge_weight)]
    if w.vertex_weight is not None:
        out += [f"v{i} {format_value(x)}" for i, x in enumerate(w.vertex_weight)]
    return "\n".join(out) + "\n"


def parse_lists(text: str, m: int | None = None, n: int | None = None) -> ListAssignment:
    e, v = _collect(list(_keyed_rows(text)), m, n, "list")
    return ListAssignment(tuple(e), None if v is None else tuple(v))


def emit_lists(L: ListAssignment) -> str:
    out = [f"{i} " + " ".join(map(format_value, lst)) for i, lst in enumerate(L.edge_lists)]
    if L.vertex_lists is not None:
        out += [f"v{i} " + " ".join(map(format_value, lst)) for i, lst in enumerate(L.vertex_lists)]
    return "\n".join(out) + "\n"


def parse_ordering(text: str) -> EdgeOrdering:
    try:
        return EdgeOrdering(tuple(int(t) for t in text.split()))
    except ValueError as exc:
        raise GraphFormatError(f"bad ordering: {exc}") from exc


def emit_ordering(order: EdgeOrdering) -> str:
    return " ".join(map(str, order.perm)) + "\n"


def emit_colouring(col: SequenceColouring) -> str:
    return "".join(
        f"{v}: ({','.join(format_value(x) for x in s)})\n" for v, s in enumerate(col)
    )


def to_structured(obj) -> object:
    """Convert package objects into plain JSON-compatible data."""
    if isinstance(obj, Weighting):
        d = {"edge_weight": [format_value(x) for x in obj.edge_weight]}
        if obj.vertex_weight is not None:
            d["vertex_weight"] = [format_value(x) for x in obj.vertex_weight]
        return d
    if isinstance(obj, ListAssignment):
        d = {"edge_lists": [[format_value(x) for x in lst] for lst in obj.edge_lists]}
        if obj.vertex_lists is not None:
            d["vertex_lists"] = [[format_value(x) for x in lst] for lst in obj.vertex_lists]
        return d
    if isinstance(obj, EdgeOrdering):
        return list(obj.perm)
    if isinstance(obj, SequenceColouring):
        return {str(v): [format_value(x) for x in s] for v, s in enumerate(obj)}
    if isinstance(obj, Fraction):
        return format_value(obj)
    if isinstance(obj, dict):
        return {str(k): to_structured(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_structured(x) for x in obj]
    return obj


def dumps_structured(obj) -> str:
    return json.dumps(to_structured(obj), indent=2, sort_keys=True) + "\n"
