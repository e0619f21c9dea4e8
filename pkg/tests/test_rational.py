import random

import pytest

from knotclass.diagram import is_alternating, is_knot
from knotclass.rational import (
    INFINITY,
    ZERO,
    Fraction,
    Layer,
    LayerSequence,
    NotRational,
    canonical_sequences,
    continued_fraction_value,
    flype_normalize,
    fraction,
    generate,
    is_reduced_sequence,
    layer_sequences,
    peel,
    recognize_rational,
)
from knotclass.tangle import (
    BoundaryPairing,
    boundary_pairing,
    crossing_count,
    denominator_closure,
    mirror_tangle,
    numerator_closure,
    tangle_sum,
)

from oracles import continued_fraction_oracle, determinant

SEQ = LayerSequence.parse


def oracle_terms(s: LayerSequence) -> list[tuple[str, int]]:
    return [("h" if layer.side in ("left", "right") else "v", layer.sign) for layer in s.layers]


def oracle(s: LayerSequence) -> Fraction:
    p, q = continued_fraction_oracle(oracle_terms(s), s.core is BoundaryPairing.ZERO)
    return Fraction(p, q)


# -- fractions ----------------------------------------------------------------------


def test_core_fractions():
    assert fraction(SEQ("core=0; layers=")) == ZERO
    assert fraction(SEQ("core=inf; layers=")) == INFINITY


def test_single_horizontal_twist():
    assert fraction(SEQ("core=0; layers=right+")) == Fraction(1, 1)


def test_three_layers_match_continued_fraction():
    s = SEQ("core=0; layers=right+,bottom+,right+")
    assert fraction(s) == Fraction(3, 2) == continued_fraction_value([1, 1, 1])
    assert oracle(s) == Fraction(3, 2)


def test_vertical_twists_on_infinity_core():
    assert fraction(SEQ("core=inf; layers=bottom+,bottom+")) == Fraction(1, 2)
    assert fraction(SEQ("core=inf; layers=bottom-,bottom-,bottom-")) == Fraction(-1, 3)


def test_fraction_parsing_and_printing():
    assert Fraction.parse("6/-4") == Fraction(-3, 2)
    assert Fraction.parse("inf") is INFINITY
    assert Fraction.parse("5") == Fraction(5, 1)
    assert str(Fraction(-3, 2)) == "-3/2"
    assert -INFINITY == INFINITY
    with pytest.raises(ValueError):
        Fraction(2, 4)
    with pytest.raises(ValueError):
        Fraction.of(0, 0)


def test_sequence_text_round_trip():
    s = SEQ("core=inf; layers=bottom-, right-1,top-")
    assert str(s) == "core=inf; layers=bottom-,right-,top-"
    assert SEQ(str(s)) == s
    with pytest.raises(ValueError):
        SEQ("core=2; layers=")
    with pytest.raises(ValueError):
        SEQ("core=0; layers=middle+")


@pytest.mark.parametrize("s", list(layer_sequences(5, signs=(1,))), ids=str)
def test_fraction_agrees_with_oracle(s):
    assert fraction(s) == oracle(s)


def test_closure_determinants_are_numerator_and_denominator():
    for s in canonical_sequences(6):
        f = fraction(s)
        t = generate(s)
        assert determinant(numerator_closure(t)) == abs(f.p)
        assert determinant(denominator_closure(t)) == f.q


# -- generation and peeling --------------------------------------------------------


def test_generated_pairings():
    assert boundary_pairing(generate(SEQ("core=0; layers="))) is BoundaryPairing.ZERO
    assert boundary_pairing(generate(SEQ("core=0; layers=right+"))) is BoundaryPairing.DIAGONAL


def test_three_twist_band_closes_to_a_trefoil():
    t = generate(SEQ("core=0; layers=right+,right+,right+"))
    assert crossing_count(t) == 3
    d = numerator_closure(t)
    assert is_knot(d) and determinant(d) == 3


def test_peel_single_crossing():
    layer, rest = peel(generate(SEQ("core=inf; layers=bottom-")))
    assert layer == Layer("bottom", -1)
    assert crossing_count(rest) == 0 and boundary_pairing(rest) is BoundaryPairing.INFINITY


def test_peel_crossingless_core():
    assert peel(generate(SEQ("core=inf; layers="))) is None


def test_recognize_empty_core():
    assert recognize_rational(generate(SEQ("core=0; layers="))) == SEQ("core=0; layers=")


@pytest.mark.parametrize("s", [s for s in layer_sequences(4) if is_reduced_sequence(s)], ids=str)
def test_round_trip_small(s):
    assert fraction(recognize_rational(generate(s))) == fraction(s)


def test_round_trip_random_long_sequences():
    rng = random.Random(20261018)
    for _ in range(300):
        core = rng.choice((BoundaryPairing.ZERO, BoundaryPairing.INFINITY))
        sign = rng.choice((1, -1))
        sides = [rng.choice(("top", "right", "bottom", "left")) for _ in range(rng.randint(5, 8))]
        s = LayerSequence(core, tuple(Layer(side, sign) for side in sides))
        if not is_reduced_sequence(s):
            continue
        assert fraction(recognize_rational(generate(s))) == fraction(s)


def test_uniform_signs_alternate_mixed_signs_do_not():
    assert is_alternating(generate(SEQ("core=0; layers=right+,bottom+,left+,top+")).diagram)
    assert not is_alternating(generate(SEQ("core=0; layers=right+,bottom-")).diagram)


# -- non-rational tangles --------------------------------------------------------------


def band(n: int):
    return generate(LayerSequence(BoundaryPairing.INFINITY, tuple(Layer("bottom", 1) for _ in range(n))))


def test_two_vertical_bands_are_not_rational():
    assert recognize_rational(tangle_sum(band(3), band(3))) is None


def test_clasp_through_tangle_is_not_rational():
    t = tangle_sum(band(2), band(2))
    assert peel(t) is None
    assert recognize_rational(t) is None


# -- flypes and mirrors ----------------------------------------------------------------


def test_flype_moves_top_to_bottom():
    t = flype_normalize(generate(SEQ("core=inf; layers=top+")))
    assert t.diagram == generate(SEQ("core=inf; layers=bottom+")).diagram
    assert fraction(recognize_rational(t)) == Fraction(1, 1)


def test_flype_moves_left_to_right():
    t = flype_normalize(generate(SEQ("core=inf; layers=bottom+,left+")))
    assert t.diagram == generate(SEQ("core=inf; layers=bottom+,right+")).diagram
    assert recognize_rational(flype_normalize(generate(SEQ("core=0; layers=left+")))) == recognize_rational(
        generate(SEQ("core=0; layers=right+"))
    )


def test_flype_is_idempotent_and_keeps_fraction():
    for s in layer_sequences(3):
        if not is_reduced_sequence(s):
            continue
        once = flype_normalize(generate(s))
        assert flype_normalize(once).diagram == once.diagram
        assert fraction(recognize_rational(once)) == fraction(s)


def test_flype_rejects_non_rational():
    with pytest.raises(NotRational):
        flype_normalize(tangle_sum(band(3), band(3)))


def test_mirror_negates_fraction():
    for s in canonical_sequences(5):
        assert fraction(recognize_rational(mirror_tangle(generate(s)))) == -fraction(s)
