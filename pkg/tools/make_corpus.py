"""Regenerate the bundled corpus under src/knotclass/corpus.

Run from the repository root:  python3 tools/make_corpus.py
"""

from __future__ import annotations

import shutil
from pathlib import Path

from knotclass.classify import enumerate_tunnels, montesinos_diagram, pretzel_diagram, two_bridge_diagram
from knotclass.diagram import VERTEX, Node, PlaneDiagram, is_knot, is_reduced, serialize, splice
from knotclass.handlebody import contract_tunnel
from knotclass.rational import Fraction, canonical_sequences, fraction

ROOT = Path(__file__).resolve().parents[1] / "src" / "knotclass" / "corpus"


def write(sub: str, name: str, text: str, expected: str, ext: str = ".pd") -> None:
    folder = ROOT / sub
    folder.mkdir(parents=True, exist_ok=True)
    (folder / f"{name}{ext}").write_text(text + "\n")
    (folder / f"{name}.expected").write_text(expected + "\n")


def two_bridge_reps(max_layers: int) -> dict[Fraction, object]:
    reps = {}
    for s in canonical_sequences(max_layers):
        f = fraction(s)
        if f in reps:
            continue
        d = two_bridge_diagram(s)
        if is_knot(d) and is_reduced(d):
            reps[f] = s
    return reps


def odd_tangles(max_layers: int) -> list:
    reps = {}
    for s in canonical_sequences(max_layers):
        f = fraction(s)
        if f.q % 2 and f.q >= 3:
            reps.setdefault(f, s)
    return sorted(reps.items(), key=lambda kv: (len(kv[1].layers), kv[0].p, kv[0].q))


def main() -> None:
    shutil.rmtree(ROOT, ignore_errors=True)
    knots = {}
    for f, s in sorted(two_bridge_reps(8).items(), key=lambda kv: (kv[0].p, kv[0].q)):
        d = two_bridge_diagram(s)
        knots[f] = d
        write("two-bridge", f"b{f.p:03d}_{f.q:03d}", serialize(d), "two-bridge")
    write("two-bridge", "trefoil", "1 -2 3 -1 2 -3", "two-bridge", ext=".gauss")
    write("two-bridge", "unknot", "", "two-bridge")

    odd = odd_tangles(4)
    for i, (f1, s1) in enumerate(odd):
        for f2, s2 in odd[i:]:
            d = montesinos_diagram(s1, 1, s2)
            if is_knot(d):
                write("montesinos", f"m{f1.p}_{f1.q}__{f2.p}_{f2.q}", serialize(d), "montesinos")
    write("montesinos", "pretzel_3_2_3", serialize(pretzel_diagram(3, 2, 3)), "montesinos")

    write("negative", "pretzel_3_3_3", serialize(pretzel_diagram(3, 3, 3)), "not-tunnel-one")
    write("negative", "pretzel_5_3_3", serialize(pretzel_diagram(5, 3, 3)), "not-tunnel-one")
    write("negative", "pretzel_3_3_m3", serialize(pretzel_diagram(3, 3, -3)), "not-tunnel-one")
    small = [knots[Fraction(3, 1)], knots[Fraction(5, 2)], knots[Fraction(5, 1)], knots[Fraction(7, 3)]]
    names = ["3_1", "4_1", "5_1", "5_2"]
    for i in range(len(small)):
        for j in range(i, len(small)):
            write("negative", f"sum_{names[i]}_{names[j]}", serialize(splice(small[i], small[j])), "not-tunnel-one")

    trefoil = knots[Fraction(3, 1)]
    t = enumerate_tunnels(trefoil)[0]
    write("graphs", "trefoil_tunnel", serialize(contract_tunnel(trefoil, t.face, t.arcs)), "handlebody")
    write("graphs", "bouquet", serialize(PlaneDiagram((Node(0, VERTEX),), ((1, 1, 2, 2),))), "handlebody")
    p333 = pretzel_diagram(3, 3, 3)
    face = p333.faces[0]
    arcs = sorted({p333.label_at(x) for x in face.walk})[:2]
    write("graphs", "pretzel_3_3_3_arc", serialize(contract_tunnel(p333, face.id, tuple(arcs))), "not-handlebody")


if __name__ == "__main__":
    main()
