"""Handlebody exteriors of alternating diagrams with one four-valent vertex."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .diagram import (
    BOUNDARY,
    CROSSING,
    VERTEX,
    DiagramError,
    Node,
    PlaneDiagram,
    circle_sides,
    is_reduced,
    transverse_circles,
    vertex_bigons,
)
from .rational import rational_structure
from .tangle import BOUNDARY_ID, BoundaryPairing, ClosedComponentInside, TangleDiagram, boundary_pairing, cut, rotate


class NotAGraphDiagram(DiagramError):
    pass


class NotReducedInput(DiagramError):
    pass


class Pattern(enum.Enum):
    LOOP_PLUS_RATIONAL = "LoopPlusRational"
    CLASP_FUSED_A = "ClaspFusedRationalA"
    CLASP_FUSED_B = "ClaspFusedRationalB"


@dataclass(frozen=True)
class GraphVerdict:
    handlebody: bool
    pattern: Pattern | None = None
    reduction_steps: int = 0

    def to_json(self) -> dict:
        return {
            "handlebody": self.handlebody,
            "pattern": None if self.pattern is None else self.pattern.value,
            "reduction_steps": self.reduction_steps,
        }


class Reduction(NamedTuple):
    diagram: PlaneDiagram
    steps: int


def _require_vertex(d: PlaneDiagram) -> Node:
    v = d.vertex
    if v is None:
        raise NotAGraphDiagram("the diagram has no vertex")
    return v


def _absorb(d: PlaneDiagram, p: int, c: int) -> PlaneDiagram:
    # the crossing meets vertex ports p, p+1 at its ports a, a-1; its far ports take their place
    v = d.vertex
    _, a = d.partner((v.id, p))
    cports = d.ports[d._index[c]]
    vi = d._index[v.id]
    vports = list(d.ports[vi])
    vports[p] = cports[(a + 1) % 4]
    vports[(p + 1) % 4] = cports[(a + 2) % 4]
    nodes, ports = [], []
    for i, (n, pp) in enumerate(zip(d.nodes, d.ports)):
        if n.id == c:
            continue
        nodes.append(n)
        ports.append(tuple(vports) if i == vi else pp)
    return PlaneDiagram(tuple(nodes), tuple(ports), d.loops)


def reduction(d: PlaneDiagram) -> Reduction:
    """Absorb crossings that share a bigon with the vertex until none is left; count them."""
    _require_vertex(d)
    steps = 0
    while True:
        found = vertex_bigons(d)
        if not found:
            return Reduction(d, steps)
        p, c = found[0]
        d = _absorb(d, p, c)
        steps += 1


def reduce_graph_diagram(d: PlaneDiagram) -> PlaneDiagram:
    return reduction(d).diagram


# -- pattern matching --------------------------------------------------------------


def _complement_tangle(d: PlaneDiagram) -> TangleDiagram | None:
    """Everything but the vertex, read as a tangle whose boundary is the vertex itself."""
    v = d.vertex
    nodes = tuple(Node(BOUNDARY_ID, BOUNDARY) if n.id == v.id else n for n in d.nodes)
    try:
        return TangleDiagram(PlaneDiagram(nodes, d.ports, d.loops))
    except DiagramError:
        return None


def _loop_plus_rational(d: PlaneDiagram) -> bool:
    t = _complement_tangle(d)
    return t is not None and rational_structure(t) is not None


def _straight(d: PlaneDiagram, dart: tuple[int, int]) -> tuple[int, int]:
    """Follow an arc from ``dart`` and pass straight through the node it reaches."""
    m, j = d.partner(dart)
    return m, (j + 2) % 4


def _is_fused_clasp(d: PlaneDiagram, v: int, x: int, y: int, r_nodes: frozenset[int]) -> bool:
    if d.node(x).kind != CROSSING or d.node(y).kind != CROSSING:
        return False
    to_clasp = [i for i in range(4) if d.partner((v, i))[0] in (x, y)]
    to_r = [i for i in range(4) if d.partner((v, i))[0] in r_nodes]
    if len(to_clasp) != 2 or len(to_r) != 2:
        return False
    # one component runs from the vertex straight through both crossings and back
    loop = False
    for i in to_clasp:
        first = _straight(d, (v, i))
        if first[0] in (x, y):
            second = _straight(d, first)
            other = y if first[0] == x else x
            if second[0] == other and d.partner(second)[0] == v:
                loop = True
    if not loop:
        return False
    # the other strand enters from the tangle, crosses both, and returns to the tangle
    for c, other in ((x, y), (y, x)):
        r_ports = [i for i in range(4) if d.partner((c, i))[0] in r_nodes]
        if len(r_ports) != 1:
            return False
        through = _straight(d, (c, (r_ports[0] + 2) % 4))
        if through[0] != other or d.partner(through)[0] not in r_nodes:
            return False
    return True


def _clasp_fused(d: PlaneDiagram) -> Pattern | None:
    v = d.vertex.id
    for c in transverse_circles(d, 4):
        left, right = circle_sides(d, c)
        own, rest = (left, right) if v in left else (right, left)
        if len(own) != 3 or not rest:
            continue
        x, y = sorted(own - {v})
        if not _is_fused_clasp(d, v, x, y, rest):
            continue
        # the side holding the vertex is always cut off as the outside
        framed = _face_vertex(cut(d, c)[0], v)
        if framed is None or rational_structure(framed) is None:
            continue
        try:
            pairing = boundary_pairing(framed)
        except ClosedComponentInside:
            continue
        if pairing is BoundaryPairing.ZERO:
            return Pattern.CLASP_FUSED_A
        if pairing is BoundaryPairing.DIAGONAL:
            return Pattern.CLASP_FUSED_B
    return None


def _face_vertex(t: TangleDiagram, v: int) -> TangleDiagram | None:
    """Rotate ``t`` so that its two boundary arcs reaching the vertex sit at NE and SE."""
    for k in range(4):
        r = rotate(t, k)
        if {p for p in range(4) if r.origin[p] is not None and r.origin[p][0] == v} == {1, 2}:
            return r
    return None


def is_handlebody_exterior(d: PlaneDiagram) -> GraphVerdict:
    _require_vertex(d)
    if not is_reduced(d):
        raise NotReducedInput("reduce the diagram first")
    if _loop_plus_rational(d):
        return GraphVerdict(True, Pattern.LOOP_PLUS_RATIONAL)
    pattern = _clasp_fused(d)
    return GraphVerdict(pattern is not None, pattern)


def check_graph(d: PlaneDiagram) -> GraphVerdict:
    """Reduce, then match; the verdict records how many crossings were absorbed."""
    red = reduction(d)
    v = is_handlebody_exterior(red.diagram)
    return GraphVerdict(v.handlebody, v.pattern, red.steps)


# -- tunnels ----------------------------------------------------------------------------


def contract_tunnel(d: PlaneDiagram, face: int, arcs: tuple[int, int]) -> PlaneDiagram:
    """Shrink a planar arc in ``face`` joining ``arcs`` to a single vertex."""
    if d.vertex is not None:
        raise DiagramError("the diagram already has a vertex")
    if not d.nodes:
        lab = d.loops[0]
        return PlaneDiagram((Node(0, VERTEX),), ((lab, lab, lab + 1, lab + 1),))
    a1, a2 = arcs
    walk = d.faces[face].walk
    darts = {d.label_at(x): x for x in walk}
    if a1 not in darts or a2 not in darts or a1 == a2:
        raise DiagramError("both arcs must lie on the boundary of the face, once each")
    fresh = max(d.arc_labels) + 1
    halves = {}
    ports = [list(p) for p in d.ports]
    for k, lab in enumerate((a1, a2)):
        n, i = darts[lab]  # the face lies to the left of this dart
        m, j = d.partner((n, i))
        new = fresh + k
        ports[d._index[m]][j] = new
        halves[k] = (lab, new)
    vid = max(n.id for n in d.nodes) + 1
    vports = (halves[0][0], halves[0][1], halves[1][0], halves[1][1])
    nodes = d.nodes + (Node(vid, VERTEX),)
    return PlaneDiagram(nodes, tuple(tuple(p) for p in ports) + (vports,))
