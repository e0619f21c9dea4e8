"""Planar knot and single-vertex graph diagrams as combinatorial maps.

A diagram is a 4-valent map on the 2-sphere.  Each node carries four ports
listed counterclockwise; an arc is identified by its integer label, which
occupies exactly two port slots.  Crossings pair opposite ports into strands
and record which strand passes over.  Tangles reuse the same structure with a
single ``boundary`` node standing in for the complement of the tangle disc.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

CROSSING = "crossing"
VERTEX = "vertex"
BOUNDARY = "boundary"

Dart = tuple[int, int]  # (node id, port index), oriented away from the node


class DiagramError(ValueError):
    """Base class for malformed or unsupported diagrams."""


class ParseError(DiagramError):
    pass


class NonPlanar(DiagramError):
    pass


class MultiVertex(DiagramError):
    pass


class NotAKnot(DiagramError):
    pass


@dataclass(frozen=True)
class Node:
    id: int
    kind: str
    # 0: ports (0, 2) pass over, 1: ports (1, 3) pass over; None for vertices
    over_pair: int | None = None

    def is_over(self, port: int) -> bool:
        return self.kind == CROSSING and port % 2 == self.over_pair


@dataclass(frozen=True)
class Face:
    id: int
    walk: tuple[Dart, ...]

    def arcs(self, d: PlaneDiagram) -> tuple[int, ...]:
        return tuple(d.label_at(x) for x in self.walk)


@dataclass(frozen=True)
class StrandComponent:
    arcs: tuple[int, ...]
    closed: bool = True


@dataclass(frozen=True)
class TransverseCircle:
    """A simple closed curve crossing ``arcs[i]`` and then running through ``faces[i]``."""

    arcs: tuple[int, ...]
    faces: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class PlaneDiagram:
    nodes: tuple[Node, ...]
    ports: tuple[tuple[int, int, int, int], ...]
    loops: tuple[int, ...] = ()
    outer_face: int = field(default=0, compare=False)

    @classmethod
    def unchecked(cls, nodes, ports, loops=()) -> PlaneDiagram:
        """Build without validation; only for results of operations that preserve validity."""
        d = object.__new__(cls)
        for name, value in (("nodes", nodes), ("ports", ports), ("loops", loops), ("outer_face", 0)):
            object.__setattr__(d, name, value)
        return d

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.ports):
            raise DiagramError("every node needs exactly four ports")
        counts: dict[int, int] = {}
        for labels in self.ports:
            if len(labels) != 4:
                raise DiagramError("every node needs exactly four ports")
            for lab in labels:
                counts[lab] = counts.get(lab, 0) + 1
        bad = sorted(lab for lab, c in counts.items() if c != 2)
        if bad:
            raise DiagramError(f"arc labels {bad} do not appear exactly twice")
        if set(self.loops) & set(counts) or len(set(self.loops)) != len(self.loops):
            raise DiagramError("loop labels must be unique")
        if len({n.id for n in self.nodes}) != len(self.nodes):
            raise DiagramError("duplicate node ids")

    # -- lookup -----------------------------------------------------------

    @cached_property
    def _index(self) -> dict[int, int]:
        return {n.id: i for i, n in enumerate(self.nodes)}

    def node(self, node_id: int) -> Node:
        return self.nodes[self._index[node_id]]

    def label_at(self, dart: Dart) -> int:
        return self.ports[self._index[dart[0]]][dart[1]]

    @cached_property
    def _ends(self) -> dict[int, tuple[Dart, Dart]]:
        ends: dict[int, list[Dart]] = {}
        for n, labels in zip(self.nodes, self.ports):
            for i, lab in enumerate(labels):
                ends.setdefault(lab, []).append((n.id, i))
        return {lab: (e[0], e[1]) for lab, e in ends.items()}

    def arc_ends(self, label: int) -> tuple[Dart, Dart]:
        return self._ends[label]

    def partner(self, dart: Dart) -> Dart:
        a, b = self._ends[self.label_at(dart)]
        return b if a == dart else a

    @property
    def darts(self) -> Iterator[Dart]:
        for n in self.nodes:
            for i in range(4):
                yield (n.id, i)

    @cached_property
    def arc_labels(self) -> tuple[int, ...]:
        return tuple(sorted(self._ends)) + tuple(sorted(self.loops))

    @property
    def crossings(self) -> tuple[Node, ...]:
        return tuple(n for n in self.nodes if n.kind == CROSSING)

    @property
    def vertex(self) -> Node | None:
        return next((n for n in self.nodes if n.kind == VERTEX), None)

    @property
    def boundary(self) -> Node | None:
        return next((n for n in self.nodes if n.kind == BOUNDARY), None)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    # -- derived structure ------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(_trace_faces(self))

    @cached_property
    def face_of(self) -> dict[Dart, int]:
        """Face lying to the left of each dart; it also contains corner (node, port, port+1)."""
        return {x: f.id for f in self.faces for x in f.walk}

    def euler_characteristic(self) -> int:
        if not self.nodes:
            return len(self.faces)
        return len(self.nodes) - len(self._ends) + len(self.faces)


def _trace_faces(d: PlaneDiagram) -> list[Face]:
    if not d.nodes:
        # crossingless loops on the sphere: one disc per side of a single loop
        return [Face(0, ()), Face(1, ())] if d.loops else [Face(0, ())]
    seen: set[Dart] = set()
    faces = []
    for start in sorted(d.darts):
        if start in seen:
            continue
        walk = []
        x = start
        while x not in seen:
            seen.add(x)
            walk.append(x)
            m, j = d.partner(x)
            x = (m, (j - 1) % 4)
        faces.append(Face(len(faces), tuple(walk)))
    return faces


def _check(d: PlaneDiagram) -> PlaneDiagram:
    if sum(1 for n in d.nodes if n.kind == VERTEX) > 1:
        raise MultiVertex("at most one vertex is supported")
    if d.nodes and d.loops:
        raise NonPlanar("free loops are only accepted as the crossingless unknot")
    if len(d.loops) > 1:
        raise NonPlanar("split diagrams are not supported")
    if d.euler_characteristic() != 2:
        raise NonPlanar(f"Euler check failed (V-E+F = {d.euler_characteristic()})")
    return d


def build(nodes: Sequence[Node], ports: Sequence[Sequence[int]], loops: Sequence[int] = ()) -> PlaneDiagram:
    """Assemble and validate a diagram."""
    try:
        d = PlaneDiagram(tuple(nodes), tuple(tuple(p) for p in ports), tuple(loops))
    except DiagramError as exc:
        raise ParseError(str(exc)) from exc
    return _check(d)


def unknot() -> PlaneDiagram:
    return build((), (), (1,))


# -- parsing and serialization ---------------------------------------------

_TOKEN = re.compile(r"([XVO])\s*\(([^()]*)\)")


def parse_diagram(text: str, format: str = "pd") -> PlaneDiagram:
    if format == "pd":
        return parse_pd(text)
    if format == "gauss":
        return parse_gauss(text)
    raise ParseError(f"unknown format {format!r}")


def parse_pd(text: str) -> PlaneDiagram:
    """Parse ``X(a,b,c,d)`` / ``V(a,b,c,d)`` tokens; ``O(a)`` or empty text is the unknot.

    ``X`` ports are listed counterclockwise starting at an under-strand port.
    """
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    pos = 0
    nodes: list[Node] = []
    ports: list[tuple[int, ...]] = []
    loops: list[int] = []
    for m in _TOKEN.finditer(body):
        if body[pos:m.start()].strip(" \t\n,;"):
            raise ParseError(f"unexpected text {body[pos:m.start()].strip()!r}")
        pos = m.end()
        kind, args = m.group(1), m.group(2)
        try:
            labels = tuple(int(a) for a in args.split(","))
        except ValueError:
            raise ParseError(f"non-integer arc label in {m.group(0)!r}") from None
        if any(lab <= 0 for lab in labels):
            raise ParseError(f"arc labels must be positive in {m.group(0)!r}")
        if kind == "O":
            if len(labels) != 1:
                raise ParseError("O(...) takes a single label")
            loops.extend(labels)
            continue
        if len(labels) != 4:
            raise ParseError(f"{m.group(0)!r} needs four labels")
        if kind == "X":
            nodes.append(Node(len(nodes), CROSSING, 1))
        else:
            nodes.append(Node(len(nodes), VERTEX))
        ports.append(labels)
    if body[pos:].strip(" \t\n,;"):
        raise ParseError(f"unexpected text {body[pos:].strip()!r}")
    if not nodes and not loops:
        loops = [1]
    if sum(1 for n in nodes if n.kind == VERTEX) > 1:
        raise MultiVertex("at most one V(...) token is allowed")
    return build(nodes, ports, loops)


def parse_gauss(text: str) -> PlaneDiagram:
    """Parse a classic signed Gauss code (``+k`` over, ``-k`` under) for a knot.

    The planar embedding is recovered by searching crossing chiralities for one
    passing the Euler check.  A Gauss code fixes the diagram only up to
    reflection of the sphere, so the result may be the mirror diagram.
    """
    try:
        seq = [int(tok) for tok in re.split(r"[\s,]+", text.strip()) if tok]
    except ValueError:
        raise ParseError("Gauss code entries must be signed integers") from None
    if not seq:
        return unknot()
    occ: dict[int, list[int]] = {}
    for i, s in enumerate(seq):
        if s == 0:
            raise ParseError("crossing label 0 is not allowed")
        occ.setdefault(abs(s), []).append(i)
    for c, where in occ.items():
        if len(where) != 2 or seq[where[0]] == seq[where[1]]:
            raise ParseError(f"crossing {c} must appear once over and once under")
    n = len(seq)
    labels = sorted(occ)
    arc_in = lambda i: i % n + 1  # noqa: E731  arc i+1 runs from occurrence i-1 to i
    arc_out = lambda i: (i + 1) % n + 1  # noqa: E731
    for bits in range(1 << max(len(labels) - 1, 0)):
        ports = []
        for k, c in enumerate(labels):
            i, j = occ[c]
            u, o = (i, j) if seq[i] < 0 else (j, i)
            if k and bits >> (k - 1) & 1:
                ports.append((arc_in(u), arc_in(o), arc_out(u), arc_out(o)))
            else:
                ports.append((arc_in(u), arc_out(o), arc_out(u), arc_in(o)))
        nodes = [Node(k, CROSSING, 1) for k in range(len(labels))]
        try:
            return build(nodes, ports)
        except NonPlanar:
            continue
    raise NonPlanar("no planar realization of the Gauss code")


def _canonical_token(node: Node, labels: tuple[int, ...]) -> str:
    if node.kind == CROSSING:
        starts = [s for s in range(4) if not node.is_over(s)]
    else:
        starts = list(range(4))
    best = min(labels[s:] + labels[:s] for s in starts)
    tag = "X" if node.kind == CROSSING else "V"
    return f"{tag}({','.join(map(str, best))})"


def serialize(d: PlaneDiagram) -> str:
    """Canonical PD text: nodes in id order, each rotated to its smallest admissible start."""
    if not d.nodes:
        return " ".join(f"O({lab})" for lab in d.loops)
    if d.boundary is not None:
        raise DiagramError("tangles serialize through knotclass.tangle.serialize_tangle")
    order = sorted(range(len(d.nodes)), key=lambda i: d.nodes[i].id)
    return " ".join(_canonical_token(d.nodes[i], d.ports[i]) for i in order)


def relabel(d: PlaneDiagram) -> PlaneDiagram:
    """Renumber nodes 0.. in id order and arcs 1.. in order of first appearance."""
    order = sorted(range(len(d.nodes)), key=lambda i: d.nodes[i].id)
    new: dict[int, int] = {}
    ports = []
    nodes = []
    for k, i in enumerate(order):
        labs = []
        for lab in d.ports[i]:
            if lab not in new:
                new[lab] = len(new) + 1
            labs.append(new[lab])
        ports.append(tuple(labs))
        n = d.nodes[i]
        nodes.append(Node(k, n.kind, n.over_pair))
    loops = []
    for lab in d.loops:
        new[lab] = len(new) + 1
        loops.append(new[lab])
    return PlaneDiagram(tuple(nodes), tuple(ports), tuple(loops))


# -- basic operations --------------------------------------------------------


def faces(d: PlaneDiagram) -> list[Face]:
    return list(d.faces)


def strand_components(d: PlaneDiagram) -> list[StrandComponent]:
    """Partition arcs into strands, passing straight through crossings and the vertex.

    Strands ending on a tangle boundary are returned with ``closed=False``.
    """
    comps = [StrandComponent((lab,)) for lab in d.loops]
    seen: set[int] = set()

    def walk(dart: Dart) -> tuple[list[int], Dart | None]:
        arcs = []
        x = dart
        while True:
            lab = d.label_at(x)
            if lab in seen:
                return arcs, None
            seen.add(lab)
            arcs.append(lab)
            m, j = d.partner(x)
            if d.node(m).kind == BOUNDARY:
                return arcs, (m, j)
            x = (m, (j + 2) % 4)

    b = d.boundary
    if b is not None:
        for p in range(4):
            if d.label_at((b.id, p)) not in seen:
                arcs, _ = walk((b.id, p))
                comps.append(StrandComponent(tuple(arcs), closed=False))
    for x in sorted(d.darts):
        if d.label_at(x) not in seen and d.node(x[0]).kind != BOUNDARY:
            arcs, _ = walk(x)
            comps.append(StrandComponent(tuple(arcs)))
    return comps


def _alternates(d: PlaneDiagram, levels: dict[int, int]) -> bool:
    for lab, (a, b) in d._ends.items():
        na, nb = d.node(a[0]), d.node(b[0])
        if na.kind == BOUNDARY or nb.kind == BOUNDARY:
            continue
        la = a[1] % 2 == levels[a[0]]
        lb = b[1] % 2 == levels[b[0]]
        if la == lb:
            return False
    return True


def is_alternating(d: PlaneDiagram) -> bool:
    """Over/under alternate along every strand; a vertex may be resolved either way."""
    levels = {n.id: n.over_pair for n in d.nodes if n.kind == CROSSING}
    v = d.vertex
    if v is None:
        return _alternates(d, levels)
    return any(_alternates(d, {**levels, v.id: k}) for k in (0, 1))


def mirror(d: PlaneDiagram) -> PlaneDiagram:
    nodes = tuple(
        Node(n.id, n.kind, 1 - n.over_pair) if n.kind == CROSSING else n for n in d.nodes
    )
    return PlaneDiagram(nodes, d.ports, d.loops, d.outer_face)


def _dual_edges(d: PlaneDiagram) -> dict[int, list[tuple[int, int]]]:
    """Face adjacency: face -> [(arc label, neighbouring face)]."""
    adj: dict[int, list[tuple[int, int]]] = {f.id: [] for f in d.faces}
    for lab, (a, b) in d._ends.items():
        fa, fb = d.face_of[a], d.face_of[b]
        adj[fa].append((lab, fb))
        adj[fb].append((lab, fa))
    for v in adj.values():
        v.sort()
    return adj


def _canonical_cycle(arcs: Sequence[int], faces_: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = len(arcs)
    forms = []
    for s in range(n):
        a = tuple(arcs[(s + k) % n] for k in range(n))
        f = tuple(faces_[(s + k) % n] for k in range(n))
        forms.append((a, f))
        # reversed traversal: crosses arcs[s], arcs[s-1], ... entering faces[s-1], faces[s-2], ...
        ra = tuple(arcs[(s - k) % n] for k in range(n))
        rf = tuple(faces_[(s - k - 1) % n] for k in range(n))
        forms.append((ra, rf))
    return min(forms)


def transverse_circles(d: PlaneDiagram, n: int) -> list[TransverseCircle]:
    """All simple length-``n`` cycles of the dual graph, each listed once."""
    if n < 2 or not d.nodes:
        return []
    adj = _dual_edges(d)
    found: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()

    def extend(start: int, face: int, arcs: list[int], path: list[int]) -> None:
        for lab, nxt in adj[face]:
            if lab in arcs:
                continue
            if len(arcs) == n - 1:
                if nxt == start:
                    # arcs[i] separates path[i-1] and path[i]; the last arc returns to start
                    cyc_arcs = arcs + [lab]
                    cyc_faces = path[1:] + [start]
                    found.add(_canonical_cycle(cyc_arcs, cyc_faces))
                continue
            if nxt <= start or nxt in path:
                continue
            extend(start, nxt, arcs + [lab], path + [nxt])

    for f in sorted(adj):
        extend(f, f, [], [f])
    return [TransverseCircle(a, f) for a, f in sorted(found)]


def circle_sides(d: PlaneDiagram, c: TransverseCircle) -> tuple[frozenset[int], frozenset[int]]:
    """Node sets to the left and right of the oriented circle."""
    cut = set(c.arcs)
    left_seed, right_seed = [], []
    for i, lab in enumerate(c.arcs):
        x, y = d.arc_ends(lab)
        into = c.faces[i]
        if d.face_of[x] == into:
            left_seed.append(x[0]); right_seed.append(y[0])
        elif d.face_of[y] == into:
            left_seed.append(y[0]); right_seed.append(x[0])
        else:
            raise DiagramError("circle does not cross its arcs transversely")
    left = _flood(d, left_seed, cut)
    if left & set(right_seed):
        raise DiagramError("circle does not separate the diagram")
    return frozenset(left), frozenset(n.id for n in d.nodes) - frozenset(left)


def _flood(d: PlaneDiagram, seeds: Iterable[int], cut: set[int]) -> set[int]:
    out = set(seeds)
    queue = deque(out)
    while queue:
        u = queue.popleft()
        for i in range(4):
            if d.label_at((u, i)) in cut:
                continue
            m, _ = d.partner((u, i))
            if m not in out:
                out.add(m)
                queue.append(m)
    return out


def nugatory_crossings(d: PlaneDiagram) -> list[int]:
    out = []
    for n in d.crossings:
        corner_faces = [d.face_of[(n.id, i)] for i in range(4)]
        if len(set(corner_faces)) < 4:
            out.append(n.id)
    return out


def vertex_bigons(d: PlaneDiagram) -> list[tuple[int, int]]:
    """(vertex port p, crossing id) for crossings joined to the vertex by two arcs bounding a bigon.

    The bigon face is ``[(v, p), (c, a - 1)]`` with ``(c, a)`` the partner of ``(v, p)``.
    """
    v = d.vertex
    if v is None:
        return []
    out = []
    for p in range(4):
        f = d.faces[d.face_of[(v.id, p)]]
        if len(f.walk) != 2:
            continue
        other = f.walk[1] if f.walk[0] == (v.id, p) else f.walk[0]
        if d.node(other[0]).kind == CROSSING:
            out.append((p, other[0]))
    return out


def is_reduced(d: PlaneDiagram) -> bool:
    """No nugatory crossing, and for graph diagrams no crossing sharing a bigon with the vertex."""
    if nugatory_crossings(d):
        return False
    return not vertex_bigons(d)


def is_prime(d: PlaneDiagram) -> bool:
    """No circle meeting the diagram twice has crossings on both sides."""
    if len([c for c in strand_components(d) if c.closed]) != 1 or d.vertex is not None:
        raise NotAKnot("primality is defined here for knot diagrams")
    for c in transverse_circles(d, 2):
        left, right = circle_sides(d, c)
        if left and right:
            return False
    return True


def component_count(d: PlaneDiagram) -> int:
    return len(strand_components(d))


def is_knot(d: PlaneDiagram) -> bool:
    return d.vertex is None and d.boundary is None and component_count(d) == 1


# -- constructors --------------------------------------------------------------


def _shift_labels(d: PlaneDiagram, by: int, node_by: int) -> PlaneDiagram:
    nodes = tuple(Node(n.id + node_by, n.kind, n.over_pair) for n in d.nodes)
    ports = tuple(tuple(lab + by for lab in p) for p in d.ports)
    return PlaneDiagram(nodes, ports, tuple(lab + by for lab in d.loops))


def splice(d1: PlaneDiagram, d2: PlaneDiagram, arc1: int | None = None, arc2: int | None = None) -> PlaneDiagram:
    """Diagrammatic connected sum, cutting ``arc1`` of ``d1`` and ``arc2`` of ``d2``.

    The joining is chosen to keep the result alternating when possible.
    """
    if not d1.nodes or not d2.nodes:
        return relabel(d2 if not d1.nodes else d1)
    a = d1.arc_labels[0] if arc1 is None else arc1
    b_shift = max(d1.arc_labels)
    e2 = _shift_labels(d2, b_shift, max(n.id for n in d1.nodes) + 1)
    b = e2.arc_labels[0] if arc2 is None else arc2 + b_shift
    (x1, y1), (x2, y2) = d1.arc_ends(a), e2.arc_ends(b)
    ports = {n.id: list(p) for n, p in zip(d1.nodes, d1.ports)}
    ports.update({n.id: list(p) for n, p in zip(e2.nodes, e2.ports)})
    new = max(e2.arc_labels) + 1
    candidates = []
    for other in (e2, mirror(e2)):
        for u, w in ((x2, y2), (y2, x2)):
            pp = {k: list(v) for k, v in ports.items()}
            pp[x1[0]][x1[1]] = new
            pp[u[0]][u[1]] = new
            pp[y1[0]][y1[1]] = new + 1
            pp[w[0]][w[1]] = new + 1
            nn = d1.nodes + other.nodes
            cand = PlaneDiagram(nn, tuple(tuple(pp[n.id]) for n in nn))
            if cand.euler_characteristic() == 2:
                candidates.append(cand)
    for cand in candidates:
        if is_alternating(cand):
            return relabel(cand)
    return relabel(candidates[0])


def brute_force_circles(d: PlaneDiagram, n: int) -> set[tuple[frozenset[int], frozenset[int]]]:
    """Reference enumeration of length-``n`` dual cycles by trying every face sequence.

    Returned as (arc set, face set) pairs so that it is independent of listing order.
    """
    out = set()
    if not d.nodes:
        return out
    between: dict[tuple[int, int], list[int]] = {}
    for lab, (a, b) in d._ends.items():
        fa, fb = d.face_of[a], d.face_of[b]
        between.setdefault((fa, fb), []).append(lab)
        between.setdefault((fb, fa), []).append(lab)
    ids = [f.id for f in d.faces]
    for seq in permutations(ids, n):
        if seq[0] != min(seq):
            continue

        def choose(i: int, used: tuple[int, ...]) -> None:
            if i == n:
                out.add((frozenset(used), frozenset(seq)))
                return
            for lab in between.get((seq[i], seq[(i + 1) % n]), []):
                if lab not in used:
                    choose(i + 1, used + (lab,))

        choose(0, ())
    return out
