import pytest

from knotclass.diagram import (
    BOUNDARY,
    CROSSING,
    Node,
    TransverseCircle,
    is_alternating,
    parse_pd,
    serialize,
    transverse_circles,
    unknot,
)
from knotclass.rational import LayerSequence, fraction, generate
from knotclass.tangle import (
    NE,
    NW,
    SE,
    SW,
    BoundaryPairing,
    InvalidCircle,
    boundary_pairing,
    crossing_count,
    cut,
    glue,
    make_tangle,
    numerator_closure,
    parse_tangle,
    rotate,
    serialize_tangle,
    tangle_sum,
    vertex_tangle,
)
from oracles import determinant

TREFOIL = "X(2,3,4,1) X(1,4,6,5) X(3,2,5,6)"


def crossingless(pairing: str):
    labels = {"zero": (1, 1, 2, 2), "inf": (1, 2, 2, 1)}[pairing]
    return make_tangle([Node(-1, BOUNDARY)], [labels])


def test_trefoil_cut_splits_crossings():
    d = parse_pd(TREFOIL)
    circles = transverse_circles(d, 4)
    assert circles
    for c in circles:
        inside, outside = cut(d, c)
        assert sorted((crossing_count(inside), crossing_count(outside))) == [1, 2]


def test_cut_then_glue_round_trip():
    d = parse_pd(TREFOIL)
    for c in transverse_circles(d, 4):
        again = glue(*cut(d, c))
        assert again.euler_characteristic() == 2
        assert len(again.faces) == 5 and is_alternating(again)
        assert determinant(again) == determinant(d) == 3


def test_cut_rejects_bad_circles():
    with pytest.raises(InvalidCircle):
        cut(unknot(), TransverseCircle((1, 1, 1, 1), (0, 1, 0, 1)))
    d = parse_pd(TREFOIL)
    with pytest.raises(InvalidCircle):
        cut(d, TransverseCircle((1, 2), (0, 1)))


def test_boundary_pairings():
    assert boundary_pairing(crossingless("zero")) is BoundaryPairing.ZERO
    assert boundary_pairing(crossingless("inf")) is BoundaryPairing.INFINITY
    one = generate(LayerSequence.parse("core=0; layers=right+"))
    assert boundary_pairing(one) is BoundaryPairing.DIAGONAL


def test_crossing_counts():
    assert crossing_count(crossingless("zero")) == 0
    assert crossing_count(generate(LayerSequence.parse("core=0; layers=right+"))) == 1


def test_rotation_by_a_quarter_turn_swaps_zero_and_infinity():
    assert boundary_pairing(rotate(crossingless("zero"), 1)) is BoundaryPairing.INFINITY
    t = generate(LayerSequence.parse("core=0; layers=right+,bottom+"))
    assert rotate(rotate(t, 1), 3).diagram == t.diagram


def test_sum_adds_fractions():
    a = generate(LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+"))
    b = generate(LayerSequence.parse("core=0; layers=right+,right+"))
    s = tangle_sum(a, b)
    # N(1/3 + 2) has numerator 1 + 2*3 = 7
    assert determinant(numerator_closure(s)) == 7
    assert fraction(LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+")).q == 3


def test_vertex_tangle():
    v = vertex_tangle()
    assert boundary_pairing(v) is BoundaryPairing.DIAGONAL
    assert crossing_count(v) == 0


def test_tangle_text_round_trip():
    t = generate(LayerSequence.parse("core=0; layers=right+,bottom-,right+"))
    once = serialize_tangle(parse_tangle(serialize_tangle(t)))
    assert "B(" in once
    assert serialize_tangle(parse_tangle(once)) == once
    assert crossing_count(parse_tangle(once)) == 3


def test_compass_constants():
    assert (NW, NE, SE, SW) == (0, 1, 2, 3)
    kinds = {n.kind for n in generate(LayerSequence.parse("core=0; layers=right+")).diagram.nodes}
    assert CROSSING in kinds


def test_closure_serializes():
    t = generate(LayerSequence.parse("core=0; layers=right+,right+,right+"))
    assert serialize(numerator_closure(t)).count("X(") == 3
