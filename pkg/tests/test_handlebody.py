import pytest

from knotclass.classify import clasp_sequence, enumerate_tunnels
from knotclass.diagram import VERTEX, is_alternating, is_reduced, mirror, parse_pd, unknot
from knotclass.handlebody import (
    NotAGraphDiagram,
    NotReducedInput,
    Pattern,
    check_graph,
    contract_tunnel,
    is_handlebody_exterior,
    reduce_graph_diagram,
    reduction,
)
from knotclass.rational import Layer, LayerSequence, generate
from knotclass.tangle import BoundaryPairing, glue, numerator_closure, tangle_sum, vertex_tangle

TREFOIL = "X(2,3,4,1) X(1,4,6,5) X(3,2,5,6)"
BOUQUET = "V(1,1,2,2)"


def fused(r, sign: int = 1):
    """A vertex, a clasp, and the tangle ``r`` in a row, closed up."""
    if isinstance(r, str):
        r = generate(LayerSequence.parse(r))
    return numerator_closure(tangle_sum(tangle_sum(vertex_tangle(), generate(clasp_sequence(sign))), r))


def band(n: int):
    return generate(LayerSequence(BoundaryPairing.INFINITY, tuple(Layer("bottom", 1) for _ in range(n))))


def test_bouquet_is_a_loop_plus_rational():
    v = check_graph(parse_pd(BOUQUET))
    assert v.handlebody and v.pattern is Pattern.LOOP_PLUS_RATIONAL and v.reduction_steps == 0


def test_clasp_fused_with_zero_pairing():
    d = fused("core=0; layers=right+,right+,bottom+")
    assert is_alternating(d)
    v = is_handlebody_exterior(d)
    assert v.handlebody and v.pattern is Pattern.CLASP_FUSED_A


def test_clasp_fused_with_diagonal_pairing():
    v = is_handlebody_exterior(fused("core=0; layers=right+,bottom+,bottom+"))
    assert v.handlebody and v.pattern is Pattern.CLASP_FUSED_B


def test_horizontal_twists_next_to_the_vertex_are_absorbed():
    v = check_graph(fused("core=0; layers=right+,right+"))
    assert v.handlebody and v.pattern is Pattern.LOOP_PLUS_RATIONAL
    assert v.reduction_steps == 4


def test_non_rational_partner_is_rejected():
    v = check_graph(fused(tangle_sum(band(3), band(3))))
    assert not v.handlebody and v.pattern is None


def test_reduction_counts():
    assert reduction(parse_pd(BOUQUET)).steps == 0
    red = reduction(parse_pd("V(1,2,3,3) X(4,4,2,1)"))
    assert red.steps == 1 and red.diagram.crossing_count == 0
    assert reduce_graph_diagram(parse_pd(BOUQUET)) == parse_pd(BOUQUET)


def test_chain_of_three_twists_is_absorbed():
    d = glue(generate(LayerSequence.parse("core=0; layers=right+,right+,right+")), vertex_tangle())
    red = reduction(d)
    assert red.steps == 3 and red.diagram.crossing_count == 0 and is_reduced(red.diagram)


def test_verdicts_ignore_reflection():
    graphs = [
        parse_pd(BOUQUET),
        fused("core=0; layers=right+,right+,bottom+"),
        fused("core=0; layers=right+,bottom+,bottom+"),
        fused("core=inf; layers=bottom+,right+,right+"),
        fused(tangle_sum(band(3), band(3))),
    ]
    for g in graphs:
        assert check_graph(g) == check_graph(mirror(g))


def test_vertex_is_required():
    with pytest.raises(NotAGraphDiagram):
        check_graph(parse_pd(TREFOIL))


def test_unreduced_input_is_refused():
    with pytest.raises(NotReducedInput):
        is_handlebody_exterior(parse_pd("V(1,2,3,3) X(4,4,2,1)"))


def test_contracting_a_tunnel_gives_a_graph():
    d = parse_pd(TREFOIL)
    for p in enumerate_tunnels(d):
        g = contract_tunnel(d, p.face, p.arcs)
        assert g.euler_characteristic() == 2
        assert g.vertex.kind == VERTEX and g.crossing_count == 3
        assert check_graph(g).handlebody


def test_contracting_the_unknot_tunnel():
    (p,) = enumerate_tunnels(unknot())
    g = contract_tunnel(unknot(), p.face, p.arcs)
    assert check_graph(g) == check_graph(parse_pd(BOUQUET))


def test_json_form():
    assert check_graph(parse_pd(BOUQUET)).to_json() == {
        "handlebody": True,
        "pattern": "LoopPlusRational",
        "reduction_steps": 0,
    }
