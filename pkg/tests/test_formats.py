import json
from fractions import Fraction

import pytest

from seqweight.errors import GraphFormatError
from seqweight.formats import (
    dumps_structured, emit_colouring, emit_lists, emit_ordering, emit_weighting, format_value,
    parse_lists, parse_ordering, parse_weighting,
)
from seqweight.generators import cycle
from seqweight.graph import EdgeOrdering
from seqweight.weighting import ListAssignment, Weighting, induced_colouring


@pytest.mark.parametrize("x,s", [(3, "3"), (Fraction(1, 10), "0.1"), (Fraction(-5, 4), "-1.25"),
                                 (Fraction(1, 3), "1/3"), (Fraction(-1, 20), "-0.05")])
def test_format_value(x, s):
    assert format_value(x) == s
    assert Fraction(s) == x


def test_weighting_round_trip_with_vertices():
    w = Weighting((1, Fraction(1, 3), "0.25"), (2, 3))
    text = emit_weighting(w)
    assert "v1 3" in text
    assert parse_weighting(text) == w


def test_lists_round_trip():
    L = ListAssignment(((1, 2), ("1/3", "-0.5")), ((4, 5),))
    assert parse_lists(emit_lists(L)) == L


def test_ordering_round_trip():
    o = EdgeOrdering((0, 2, 4, 1, 3))
    assert parse_ordering(emit_ordering(o)) == o
    with pytest.raises(GraphFormatError):
        parse_ordering("0 a")


def test_weighting_errors():
    with pytest.raises(GraphFormatError):
        parse_weighting("0 1\n0 2\n")
    with pytest.raises(GraphFormatError):
        parse_weighting("0 1\n2 2\n")
    with pytest.raises(GraphFormatError):
        parse_weighting("0 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_weighting("0 1\n", m=2)


def test_colouring_export():
    col = induced_colouring(cycle(5), None, Weighting((1, 2, 1, 2, 1)))
    assert emit_colouring(col).splitlines()[0] == "0: (1,1)"
    data = json.loads(dumps_structured({"colouring": col, "w": Weighting((Fraction(1, 2),))}))
    assert data["colouring"]["1"] == ["1", "2"]
    assert data["w"]["edge_weight"] == ["0.5"]
