"""Four-ended tangles cut from diagrams along transverse circles.

A tangle is stored as a :class:`PlaneDiagram` with one boundary node whose
ports, counterclockwise on the sphere, are NW, NE, SE, SW.  Seen from inside
the disc these labels run clockwise, matching the usual compass picture.

Gluing two tangles that came from the same circle matches inside NW with
outside NW; in their own frames the remaining labels meet NE-SW, SE-SE, SW-NE.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import (
    BOUNDARY,
    CROSSING,
    VERTEX,
    Dart,
    DiagramError,
    Node,
    ParseError,
    PlaneDiagram,
    TransverseCircle,
    circle_sides,
    relabel,
)

NW, NE, SE, SW = range(4)
COMPASS = ("NW", "NE", "SE", "SW")
BOUNDARY_ID = -1
# outside port matched with each inside port when gluing along a common circle
GLUE_MAP = (0, 3, 2, 1)


class InvalidCircle(DiagramError):
    pass


class ClosedComponentInside(DiagramError):
    pass


class BoundaryPairing(enum.Enum):
    ZERO = "0"  # NW-NE, SW-SE
    INFINITY = "inf"  # NW-SW, NE-SE
    DIAGONAL = "diag"  # NW-SE, NE-SW


_PAIRINGS = {
    frozenset({frozenset({NW, NE}), frozenset({SW, SE})}): BoundaryPairing.ZERO,
    frozenset({frozenset({NW, SW}), frozenset({NE, SE})}): BoundaryPairing.INFINITY,
    frozenset({frozenset({NW, SE}), frozenset({NE, SW})}): BoundaryPairing.DIAGONAL,
}


@dataclass(frozen=True)
class TangleDiagram:
    diagram: PlaneDiagram
    # dart of the parent diagram leaving the outside along each boundary arc
    origin: tuple[Dart | None, ...] = field(default=(None,) * 4, compare=False)

    def __post_init__(self) -> None:
        b = [n for n in self.diagram.nodes if n.kind == BOUNDARY]
        if len(b) != 1:
            raise DiagramError("a tangle has exactly one boundary node")
        if self.diagram.loops:
            raise ClosedComponentInside("closed loop inside tangle")
        if self.diagram.euler_characteristic() != 2:
            raise DiagramError("tangle fails the Euler check")

    @property
    def bid(self) -> int:
        return self.diagram.boundary.id

    def boundary_label(self, port: int) -> int:
        return self.diagram.label_at((self.bid, port))

    def inner(self, port: int) -> Dart:
        """Dart at the far end of the boundary arc leaving ``port``."""
        return self.diagram.partner((self.bid, port))

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(n.id for n in self.diagram.crossings)


def _trusted(diagram: PlaneDiagram, origin: tuple[Dart | None, ...]) -> TangleDiagram:
    """Wrap the result of an operation known to preserve validity, skipping the checks."""
    t = object.__new__(TangleDiagram)
    object.__setattr__(t, "diagram", diagram)
    object.__setattr__(t, "origin", origin)
    return t


def crossing_count(t: TangleDiagram) -> int:
    return t.diagram.crossing_count


def _assemble(
    nodes: Sequence[Node],
    ports: Sequence[Sequence[int]],
    joins: Sequence[tuple[Dart, Dart]],
    drop: set[int],
) -> PlaneDiagram:
    """Fuse the arcs at each pair of darts in ``joins`` and delete the ``drop`` nodes.

    Arcs that close up without touching a surviving node become free loops.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    idx = {n.id: i for i, n in enumerate(nodes)}
    for a, b in joins:
        la, lb = ports[idx[a[0]]][a[1]], ports[idx[b[0]]][b[1]]
        ra, rb = find(la), find(lb)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    keep_nodes, keep_ports = [], []
    touched: set[int] = set()
    for n, p in zip(nodes, ports):
        if n.id in drop:
            continue
        labs = tuple(find(lab) for lab in p)
        touched.update(labs)
        keep_nodes.append(n)
        keep_ports.append(labs)
    all_labels = {find(lab) for p in ports for lab in p}
    loops = tuple(sorted(all_labels - touched))
    return PlaneDiagram(tuple(keep_nodes), tuple(keep_ports), loops)


def make_tangle(nodes: Sequence[Node], ports: Sequence[Sequence[int]], origin=(None,) * 4) -> TangleDiagram:
    return TangleDiagram(PlaneDiagram(tuple(nodes), tuple(tuple(p) for p in ports)), tuple(origin))


def _side_tangle(d: PlaneDiagram, side: frozenset[int], c: TransverseCircle, order: Sequence[int]) -> TangleDiagram:
    nodes, ports = [], []
    for n, p in zip(d.nodes, d.ports):
        if n.id in side:
            nodes.append(n)
            ports.append(p)
    blabels, origin = [], []
    for k in order:
        lab = c.arcs[k]
        x, y = d.arc_ends(lab)
        outside = y if x[0] in side else x
        blabels.append(lab)
        origin.append(outside)
    nodes.append(Node(BOUNDARY_ID, BOUNDARY))
    ports.append(tuple(blabels))
    # the circle has already been checked to separate the diagram
    return _trusted(PlaneDiagram.unchecked(tuple(nodes), tuple(ports)), tuple(origin))


def cut(
    d: PlaneDiagram, c: TransverseCircle, sides: tuple[frozenset[int], frozenset[int]] | None = None
) -> tuple[TangleDiagram, TangleDiagram]:
    """Split ``d`` along a 4-circle; the side holding the vertex (if any) is the outside.

    Without a vertex the inside is the side to the left of the circle as listed.
    The first crossed arc is NW on both sides.  ``sides`` may pass in a result of
    :func:`circle_sides` already computed for ``c``.
    """
    if len(c) != 4:
        raise InvalidCircle("tangles are cut along circles meeting the diagram four times")
    try:
        left, right = sides if sides is not None else circle_sides(d, c)
    except (DiagramError, KeyError) as exc:
        raise InvalidCircle(str(exc)) from exc
    if not left or not right:
        raise InvalidCircle("both sides of the circle must contain nodes")
    left_t = _side_tangle(d, left, c, (0, 3, 2, 1))
    right_t = _side_tangle(d, right, c, (0, 1, 2, 3))
    v = d.vertex
    if v is not None and v.id in left:
        return right_t, left_t
    return left_t, right_t


def glue(inside: TangleDiagram, outside: TangleDiagram) -> PlaneDiagram:
    """Inverse of :func:`cut`: join inside port k to outside port ``GLUE_MAP[k]``."""
    a = relabel_tangle(inside, node_offset=0, label_offset=0, boundary_id=-1)
    shift = max(a.diagram.arc_labels) if a.diagram.arc_labels else 0
    offset = max((n.id for n in a.diagram.nodes), default=0) + 1
    b = relabel_tangle(outside, node_offset=offset, label_offset=shift, boundary_id=-2)
    nodes = a.diagram.nodes + b.diagram.nodes
    ports = a.diagram.ports + b.diagram.ports
    joins = [((-1, k), (-2, GLUE_MAP[k])) for k in range(4)]
    return _assemble(nodes, ports, joins, {-1, -2})


def relabel_tangle(t: TangleDiagram, node_offset: int, label_offset: int, boundary_id: int) -> TangleDiagram:
    nodes = tuple(
        Node(boundary_id, BOUNDARY) if n.kind == BOUNDARY else Node(n.id + node_offset, n.kind, n.over_pair)
        for n in t.diagram.nodes
    )
    ports = tuple(tuple(lab + label_offset for lab in p) for p in t.diagram.ports)
    return TangleDiagram(PlaneDiagram(nodes, ports), t.origin)


def close(t: TangleDiagram, pairs: Sequence[tuple[int, int]]) -> PlaneDiagram:
    """Join boundary ports in ``pairs`` by arcs running outside the disc."""
    joins = [((t.bid, i), (t.bid, j)) for i, j in pairs]
    d = relabel(_assemble(t.diagram.nodes, t.diagram.ports, joins, {t.bid}))
    if d.nodes and d.loops or d.euler_characteristic() != 2:
        raise DiagramError("the closure is a split diagram")
    return d


def numerator_closure(t: TangleDiagram) -> PlaneDiagram:
    return close(t, ((NW, NE), (SW, SE)))


def denominator_closure(t: TangleDiagram) -> PlaneDiagram:
    return close(t, ((NW, SW), (NE, SE)))


def rotate(t: TangleDiagram, k: int) -> TangleDiagram:
    """Relabel the compass so that new port i is old port i + k (a quarter turn per step)."""
    bi = t.diagram._index[t.bid]
    old = t.diagram.ports[bi]
    ports = list(t.diagram.ports)
    ports[bi] = tuple(old[(i + k) % 4] for i in range(4))
    origin = tuple(t.origin[(i + k) % 4] for i in range(4))
    return _trusted(PlaneDiagram.unchecked(t.diagram.nodes, tuple(ports)), origin)


def tangle_sum(left: TangleDiagram, right: TangleDiagram) -> TangleDiagram:
    """Horizontal sum: left NE/SE joined to right NW/SW."""
    a = relabel_tangle(left, 0, 0, -1)
    shift = max(a.diagram.arc_labels)
    offset = max((n.id for n in a.diagram.nodes), default=0) + 1
    b = relabel_tangle(right, offset, shift, -2)
    fresh = max(b.diagram.arc_labels) + 1
    new_b = Node(-3, BOUNDARY)
    new_labels = tuple(range(fresh, fresh + 4))
    nodes = a.diagram.nodes + b.diagram.nodes + (new_b,)
    ports = a.diagram.ports + b.diagram.ports + (new_labels,)
    joins = [
        ((-1, NE), (-2, NW)),
        ((-1, SE), (-2, SW)),
        ((-3, NW), (-1, NW)),
        ((-3, SW), (-1, SW)),
        ((-3, NE), (-2, NE)),
        ((-3, SE), (-2, SE)),
    ]
    merged = _assemble(nodes, ports, joins, {-1, -2})
    return normalize_tangle(TangleDiagram(merged))


def normalize_tangle(t: TangleDiagram) -> TangleDiagram:
    """Renumber non-boundary nodes from 0 and arcs from 1; the boundary node gets id -1."""
    nodes, ports, new = [], [], {}
    order = sorted(range(len(t.diagram.nodes)), key=lambda i: (t.diagram.nodes[i].kind == BOUNDARY, t.diagram.nodes[i].id))
    k = 0
    for i in order:
        n = t.diagram.nodes[i]
        labs = []
        for lab in t.diagram.ports[i]:
            new.setdefault(lab, len(new) + 1)
            labs.append(new[lab])
        if n.kind == BOUNDARY:
            nodes.append(Node(BOUNDARY_ID, BOUNDARY))
        else:
            nodes.append(Node(k, n.kind, n.over_pair))
            k += 1
        ports.append(tuple(labs))
    return TangleDiagram(PlaneDiagram(tuple(nodes), tuple(ports)), t.origin)


def boundary_pairing(t: TangleDiagram) -> BoundaryPairing:
    d = t.diagram
    pairs = set()
    seen: set[int] = set()
    for p in range(4):
        if d.label_at((t.bid, p)) in seen:
            continue
        x = (t.bid, p)
        while True:
            seen.add(d.label_at(x))
            m, j = d.partner(x)
            if m == t.bid:
                pairs.add(frozenset({p, j}))
                break
            x = (m, (j + 2) % 4)
    if len(seen) != len(d.arc_labels):
        raise ClosedComponentInside("a closed strand lies inside the tangle")
    return _PAIRINGS[frozenset(pairs)]


def mirror_tangle(t: TangleDiagram) -> TangleDiagram:
    nodes = tuple(Node(n.id, n.kind, 1 - n.over_pair) if n.kind == CROSSING else n for n in t.diagram.nodes)
    return TangleDiagram(PlaneDiagram(nodes, t.diagram.ports), t.origin)


def vertex_tangle() -> TangleDiagram:
    """A single vertex joined straight to the four boundary points."""
    return make_tangle(
        [Node(0, VERTEX), Node(BOUNDARY_ID, BOUNDARY)],
        [(1, 2, 3, 4), (1, 4, 3, 2)],
    )


# -- text form -----------------------------------------------------------------

_B = re.compile(r"B\s*\(([^()]*)\)")


def serialize_tangle(t: TangleDiagram) -> str:
    t = normalize_tangle(t)
    toks = []
    for n, p in zip(t.diagram.nodes, t.diagram.ports):
        if n.kind == CROSSING:
            labs = p if n.over_pair == 1 else p[1:] + p[:1]
            toks.append(f"X({','.join(map(str, labs))})")
        elif n.kind == VERTEX:
            toks.append(f"V({','.join(map(str, p))})")
    b = t.diagram.ports[t.diagram._index[t.bid]]
    # B(...) lists NW, NE, SE, SW; the boundary node stores them in sphere order
    toks.append(f"B({','.join(map(str, b))})")
    return " ".join(toks)


def parse_tangle(text: str) -> TangleDiagram:
    m = list(_B.finditer(text))
    if len(m) != 1:
        raise ParseError("a tangle needs exactly one B(nw,ne,se,sw) token")
    try:
        blabels = tuple(int(x) for x in m[0].group(1).split(","))
    except ValueError:
        raise ParseError("non-integer label in B(...)") from None
    if len(blabels) != 4:
        raise ParseError("B(...) needs four labels")
    rest = text[: m[0].start()] + text[m[0].end():]
    nodes, ports = [], []
    for tok in re.finditer(r"([XV])\s*\(([^()]*)\)", rest):
        labs = tuple(int(x) for x in tok.group(2).split(","))
        if len(labs) != 4:
            raise ParseError(f"{tok.group(0)!r} needs four labels")
        nodes.append(Node(len(nodes), CROSSING, 1) if tok.group(1) == "X" else Node(len(nodes), VERTEX))
        ports.append(labs)
    nodes.append(Node(BOUNDARY_ID, BOUNDARY))
    ports.append(blabels)
    try:
        return make_tangle(nodes, ports)
    except DiagramError as exc:
        raise ParseError(str(exc)) from exc
