"""Contract a tunnel to a vertex and check that what is left has handlebody exterior.

    python3 demos/handlebody_graphs.py
"""

from knotclass.classify import clasp_sequence, enumerate_tunnels, pretzel_diagram
from knotclass.diagram import serialize
from knotclass.handlebody import check_graph, contract_tunnel, reduction
from knotclass.rational import LayerSequence, generate
from knotclass.tangle import numerator_closure, tangle_sum, vertex_tangle

knot = pretzel_diagram(3, 2, 3)
tunnel = enumerate_tunnels(knot)[0]
graph = contract_tunnel(knot, tunnel.face, tunnel.arcs)
print("P(3, 2, 3) with its first tunnel shrunk to a vertex:")
print(f"  {serialize(graph)}")

reduced = reduction(graph)
print(f"  {reduced.steps} crossings next to the vertex are absorbed:")
print(f"  {serialize(reduced.diagram)}")
print(f"  {check_graph(graph).to_json()}")

print("\nA vertex fused to a clasp, next to a rational tangle:")
for text in ("core=0; layers=right+,right+,bottom+", "core=0; layers=right+,bottom+,bottom+"):
    r = generate(LayerSequence.parse(text))
    g = numerator_closure(tangle_sum(tangle_sum(vertex_tangle(), generate(clasp_sequence(1))), r))
    print(f"  {text}: {check_graph(g).to_json()}")

print("\nReplacing the rational tangle by two twist bands side by side breaks the pattern:")
band = generate(LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+"))
g = numerator_closure(tangle_sum(tangle_sum(vertex_tangle(), generate(clasp_sequence(1))), tangle_sum(band, band)))
print(f"  {check_graph(g).to_json()}")
