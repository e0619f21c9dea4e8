"""Build rational tangles from layers, then take them apart again.

    python3 demos/rational_tangles.py
"""

from knotclass.diagram import serialize
from knotclass.rational import LayerSequence, flype_normalize, fraction, generate, peel, recognize_rational
from knotclass.tangle import crossing_count, numerator_closure, serialize_tangle


def crossings(t) -> str:
    n = crossing_count(t)
    return f"{n} crossing{'' if n == 1 else 's'}"


def show(text: str) -> None:
    seq = LayerSequence.parse(text)
    t = generate(seq)
    print(f"{seq}")
    print(f"  fraction {fraction(seq)}, {crossings(t)}")
    print(f"  {serialize_tangle(t)}")


print("A horizontal twist adds one to the fraction; a vertical twist adds one to its reciprocal.\n")
show("core=0; layers=right+")
show("core=0; layers=right+,bottom+")
show("core=0; layers=right+,bottom+,right+")

print("\nPeeling reads the layers back from the outside in.")
print("Twists on opposite sides commute, so the reading may differ from the build but not in value.")
t = generate(LayerSequence.parse("core=0; layers=right+,bottom+,right+"))
while (step := peel(t)) is not None:
    layer, t = step
    print(f"  peeled {layer}, {crossings(t)} left")
print(f"  recognised as {recognize_rational(generate(LayerSequence.parse('core=0; layers=right+,bottom+,right+')))}")

print("\nA top layer flypes to the bottom without changing the fraction.")
twisted = generate(LayerSequence.parse("core=inf; layers=bottom+,top+,bottom+"))
flat = flype_normalize(twisted)
all_bottom = generate(LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+"))
print(f"  before: {serialize_tangle(twisted)}")
print(f"  after:  {serialize_tangle(flat)}")
print(f"  same diagram as three bottom layers: {flat.diagram == all_bottom.diagram}")
print(f"  fraction {fraction(recognize_rational(twisted))} -> {fraction(recognize_rational(flat))}")

print("\nClosing three horizontal twists gives the trefoil:")
print(f"  {serialize(numerator_closure(generate(LayerSequence.parse('core=0; layers=right+,right+,right+'))))}")
