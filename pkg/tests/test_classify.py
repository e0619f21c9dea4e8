import json
from itertools import product

import pytest

from knotclass.classify import (
    EvenDenominator,
    MontesinosTunnelOne,
    NotTunnelOne,
    NotTunnelOneInput,
    Reason,
    TwoBridge,
    classify,
    clasp_sequence,
    enumerate_tunnels,
    glued_fraction,
    montesinos_diagram,
    montesinos_params,
    pretzel_diagram,
    report,
    sakuma_vertical_witness,
    two_bridge_diagram,
    two_bridge_equivalent,
)
from knotclass.diagram import Node, NotAKnot, PlaneDiagram, is_reduced, mirror, parse_pd, splice, unknot
from knotclass.handlebody import check_graph, contract_tunnel
from knotclass.rational import INFINITY, Fraction, LayerSequence, canonical_sequences, fraction

from oracles import determinant

TREFOIL = "X(2,3,4,1) X(1,4,6,5) X(3,2,5,6)"
SEQ = LayerSequence.parse


def knot_closures(max_layers: int):
    for s in canonical_sequences(max_layers):
        d = two_bridge_diagram(s)
        if fraction(s).p % 2 == 1 and is_reduced(d):
            yield s, d


# -- fractions ------------------------------------------------------------------------------


def test_schubert_equivalence():
    assert two_bridge_equivalent(Fraction(5, 2), Fraction(5, 3))  # 2*3 = 1 mod 5
    assert two_bridge_equivalent(Fraction(5, 2), Fraction(5, 7))  # 7 = 2 mod 5
    assert not two_bridge_equivalent(Fraction(5, 1), Fraction(5, 2))
    assert not two_bridge_equivalent(Fraction(3, 1), Fraction(3, 2))
    assert two_bridge_equivalent(Fraction(3, 1), Fraction(3, 2), allow_mirror=True)
    assert not two_bridge_equivalent(Fraction(5, 2), Fraction(7, 2))
    assert two_bridge_equivalent(Fraction(-3, 2), Fraction(3, 1))
    assert not two_bridge_equivalent(Fraction(-3, 1), Fraction(3, 1))


def test_glue_with_infinity_is_the_numerator_closure():
    assert glued_fraction(Fraction(3, 2), INFINITY) == Fraction(3, 2)
    assert glued_fraction(Fraction(7, 3), INFINITY) == Fraction(7, 3)
    assert glued_fraction(Fraction(-3, 1), INFINITY) == Fraction(3, 2)


@pytest.mark.parametrize("a,b,c,d", list(product(range(-4, 5), range(0, 4), range(-3, 4), range(0, 3))))
def test_glued_numerator_is_the_determinant(a, b, c, d):
    try:
        inside, outside = Fraction.of(a, b), Fraction.of(c, d)
    except ValueError:
        return
    got = glued_fraction(inside, outside)
    assert got.p == abs(inside.p * outside.p - inside.q * outside.q) or (got.p, got.q) == (0, 1)


def test_montesinos_params_collect_integer_parts():
    assert montesinos_params(Fraction(7, 3), 1, Fraction(-1, 3)) == (1, Fraction(1, 3), 1, Fraction(2, 3))
    assert montesinos_params(Fraction(1, 3), -1, Fraction(1, 5)) == (0, Fraction(1, 3), -1, Fraction(1, 5))
    assert montesinos_params(SEQ("core=inf; layers=bottom+,bottom+,bottom+"), 1, Fraction(1, 1))[1:] == (
        Fraction(1, 3), 1, Fraction(0, 1),
    )


def test_montesinos_params_reject_even_denominators():
    with pytest.raises(EvenDenominator):
        montesinos_params(Fraction(1, 2), 1, Fraction(1, 3))


# -- classification -------------------------------------------------------------------------


def test_trefoil_is_two_bridge():
    v = classify(parse_pd(TREFOIL)).verdict
    assert isinstance(v, TwoBridge)
    assert two_bridge_equivalent(v.fraction, Fraction(3, 1), allow_mirror=True)


def test_unknot_is_trivially_two_bridge():
    c = classify(unknot())
    assert c.verdict == TwoBridge(INFINITY) and c.trivial


def test_twisted_closures_classify_with_their_own_fraction():
    for s, d in knot_closures(6):
        v = classify(d).verdict
        assert isinstance(v, TwoBridge), s
        assert two_bridge_equivalent(v.fraction, fraction(s), allow_mirror=True), s
        assert v.fraction.p == determinant(d)


def test_pretzel_with_a_clasp_is_montesinos():
    v = classify(pretzel_diagram(3, 2, 3)).verdict
    assert v == MontesinosTunnelOne(0, Fraction(1, 3), 1, Fraction(1, 3))


def test_pretzel_three_three_three_has_no_pattern():
    assert classify(pretzel_diagram(3, 3, 3)).verdict == NotTunnelOne(Reason.NO_PATTERN)


def test_connected_sum_is_composite():
    t = parse_pd(TREFOIL)
    assert classify(splice(t, t)).verdict == NotTunnelOne(Reason.COMPOSITE)


def test_hypothesis_failures():
    d = parse_pd(TREFOIL)
    flipped = PlaneDiagram(tuple(Node(n.id, n.kind, 1 - n.over_pair) if n.id == 0 else n for n in d.nodes), d.ports)
    assert classify(flipped).verdict == NotTunnelOne(Reason.NOT_ALTERNATING)
    kinked = parse_pd("X(1,1,2,2)")
    assert classify(kinked).verdict == NotTunnelOne(Reason.NOT_REDUCED)


def test_links_are_rejected():
    with pytest.raises(NotAKnot):
        classify(parse_pd("X(1,4,2,3) X(3,2,4,1)"))


def test_montesinos_row_constructions():
    odd = [s for s in canonical_sequences(3) if fraction(s).q % 2 == 1 and fraction(s).q > 1]
    assert odd
    for s1, s2 in product(odd, repeat=2):
        for sign in (1, -1):
            d = montesinos_diagram(s1, sign, s2)
            v = classify(d).verdict
            if sign == -1:
                # against positive tangles a negative clasp breaks alternation
                assert v == NotTunnelOne(Reason.NOT_ALTERNATING)
                continue
            expected = montesinos_params(s1, sign, s2)
            swapped = (expected[0], expected[3], expected[2], expected[1])
            assert isinstance(v, MontesinosTunnelOne)
            assert (v.e, v.t1, v.clasp, v.t2) in (expected, swapped)


def test_mirror_coherence():
    for d in (pretzel_diagram(3, 2, 3), pretzel_diagram(5, 2, 3)):
        v, w = classify(d).verdict, classify(mirror(d)).verdict
        assert type(v) is type(w)
        assert w.clasp == -v.clasp
        assert {str(w.t1), str(w.t2)} <= {str(x) for x in montesinos_params(-v.t1, -v.clasp, -v.t2)[1::2]} | {
            str(x) for x in montesinos_params(-v.t2, -v.clasp, -v.t1)[1::2]
        }
    for _, d in knot_closures(4):
        v, w = classify(d, mirror_auto=False).verdict, classify(mirror(d), mirror_auto=False).verdict
        assert two_bridge_equivalent(w.fraction, -v.fraction)


def test_clasp_sequence_is_a_half():
    assert fraction(clasp_sequence(1)) == Fraction(1, 2)
    assert fraction(clasp_sequence(-1)) == Fraction(-1, 2)


# -- tunnels ---------------------------------------------------------------------------------


def test_trefoil_tunnels():
    placements = enumerate_tunnels(parse_pd(TREFOIL))
    assert 1 <= len(placements) <= 6
    for p in placements:
        assert sakuma_vertical_witness(p) is not None


def test_unknot_tunnel():
    (p,) = enumerate_tunnels(unknot())
    assert sakuma_vertical_witness(p) is None


def test_tunnels_contract_to_handlebodies():
    for d in (parse_pd(TREFOIL), pretzel_diagram(3, 2, 3)):
        for p in enumerate_tunnels(d, merge_twists=False):
            assert check_graph(contract_tunnel(d, p.face, p.arcs)).handlebody


def test_no_tunnels_for_pattern_free_knots():
    with pytest.raises(NotTunnelOneInput):
        enumerate_tunnels(pretzel_diagram(3, 3, 3))


# -- reports ----------------------------------------------------------------------------------


def test_report_keys_and_determinism():
    d = pretzel_diagram(3, 2, 3)
    a, b = report(d), report(d)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["verdict"] == "montesinos" and a["montesinos"]["clasp"] == "+1/2"
    assert set(a) >= {"input", "alternating", "reduced", "prime", "verdict", "mirrored", "tunnels", "reason"}
    assert report(unknot())["trivial"] is True
    assert report(pretzel_diagram(3, 3, 3))["tunnels"] is None
