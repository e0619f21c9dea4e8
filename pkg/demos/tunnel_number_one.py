"""Decide tunnel number one for a handful of alternating knots and place their tunnels.

    python3 demos/tunnel_number_one.py
"""

from knotclass.classify import (
    MontesinosTunnelOne,
    NotTunnelOne,
    TwoBridge,
    classify,
    enumerate_tunnels,
    montesinos_diagram,
    pretzel_diagram,
    sakuma_vertical_witness,
)
from knotclass.diagram import parse_pd, splice
from knotclass.rational import LayerSequence

trefoil = parse_pd("X(2,3,4,1) X(1,4,6,5) X(3,2,5,6)")
third = LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+")
fifth = LayerSequence.parse("core=inf; layers=bottom+,bottom+,bottom+,bottom+,bottom+")

knots = {
    "trefoil": trefoil,
    "pretzel (3, 2, 3)": pretzel_diagram(3, 2, 3),
    "1/3 + clasp + 1/5": montesinos_diagram(third, 1, fifth),
    "pretzel (3, 3, 3)": pretzel_diagram(3, 3, 3),
    "trefoil # trefoil": splice(trefoil, trefoil),
}



def describe(verdict) -> str:
    if isinstance(verdict, TwoBridge):
        return f"two-bridge b({verdict.fraction.p}, {verdict.fraction.q})"
    if isinstance(verdict, MontesinosTunnelOne):
        half = "+1/2" if verdict.clasp > 0 else "-1/2"
        return f"Montesinos ({verdict.e}; {verdict.t1}, {half}, {verdict.t2})"
    return f"not tunnel number one: {verdict.reason.value}"


for name, d in knots.items():
    c = classify(d)
    print(f"{name} ({d.crossing_count} crossings): {describe(c.verdict)}{' in the mirror' if c.mirrored else ''}")
    if isinstance(c.verdict, NotTunnelOne):
        continue
    for p in enumerate_tunnels(d):
        where = sakuma_vertical_witness(p)
        print(f"    tunnel in face {p.face} between arcs {p.arcs}, vertical at crossing {where}")
