"""Alternating rational tangles: layer sequences, peeling, fractions, flypes.

A rational tangle diagram is a crossingless core wrapped in annular layers,
each holding one crossing.  A layer is named by the pair of adjacent boundary
points its crossing joins:

    top = NW-NE, right = NE-SE, bottom = SE-SW, left = SW-NW

Fractions follow Conway's convention.  The core joining NW-NE and SW-SE is
0/1, the core joining NW-SW and NE-SE is 1/0.  A left or right layer is a
horizontal twist, ``F -> F + s``; a top or bottom layer is a vertical twist,
``F -> 1/(1/F + s)``.  A layer has sign +1 when the strand through its
crossing that reaches the NE or SW boundary point passes over.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .diagram import BOUNDARY, CROSSING, Dart, DiagramError, Node, PlaneDiagram
from .tangle import (
    BOUNDARY_ID,
    BoundaryPairing,
    TangleDiagram,
    _trusted,
    normalize_tangle,
)

SIDES = ("top", "right", "bottom", "left")  # indexed by boundary corner: ports (p, p+1)
HORIZONTAL = frozenset({"left", "right"})
_CORNER = {s: p for p, s in enumerate(SIDES)}
# a crossing may qualify at several corners (the last one always does); prefer the flype-normal sides
_PEEL_ORDER = (2, 1, 3, 0)


class NotRational(DiagramError):
    pass


@dataclass(frozen=True)
class Fraction:
    """A reduced extended rational ``p/q``; infinity is ``1/0``."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0 or math.gcd(self.p, self.q) != 1 or (self.q == 0 and self.p != 1):
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @classmethod
    def of(cls, p: int, q: int) -> Fraction:
        if p == 0 and q == 0:
            raise ValueError("0/0 is undefined")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> Fraction:
        text = text.strip()
        if text in ("inf", "oo", "∞"):
            return INFINITY
        num, _, den = text.partition("/")
        return cls.of(int(num), int(den or 1))

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __add__(self, n: int) -> Fraction:
        return Fraction.of(self.p + n * self.q, self.q)

    def __neg__(self) -> Fraction:
        return Fraction.of(-self.p, self.q) if self.q else self

    def reciprocal(self) -> Fraction:
        return Fraction.of(self.q, self.p)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


ZERO = Fraction(0, 1)
INFINITY = Fraction(1, 0)


@dataclass(frozen=True)
class Layer:
    side: str
    sign: int

    def __post_init__(self) -> None:
        if self.side not in _CORNER or self.sign not in (1, -1):
            raise ValueError(f"bad layer {self.side}{self.sign:+d}")

    def __str__(self) -> str:
        return f"{self.side}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class LayerSequence:
    core: BoundaryPairing
    layers: tuple[Layer, ...] = ()  # innermost first

    def __post_init__(self) -> None:
        if self.core not in (BoundaryPairing.ZERO, BoundaryPairing.INFINITY):
            raise ValueError("the core is a crossingless 0 or infinity tangle")

    def __str__(self) -> str:
        core = "0" if self.core is BoundaryPairing.ZERO else "inf"
        return f"core={core}; layers={','.join(map(str, self.layers))}"

    @classmethod
    def parse(cls, text: str) -> LayerSequence:
        """Read ``core=0|inf; layers=right+,bottom-,...``."""
        fields = {}
        for part in text.split(";"):
            if part.strip():
                key, _, val = part.partition("=")
                fields[key.strip()] = val.strip()
        core = {"0": BoundaryPairing.ZERO, "inf": BoundaryPairing.INFINITY}.get(fields.get("core", "0"))
        if core is None:
            raise ValueError(f"unknown core {fields.get('core')!r}")
        layers = []
        for tok in filter(None, (t.strip() for t in fields.get("layers", "").split(","))):
            m = re.fullmatch(r"(top|right|bottom|left)\s*([+-])1?", tok)
            if not m:
                raise ValueError(f"bad layer token {tok!r}")
            layers.append(Layer(m.group(1), 1 if m.group(2) == "+" else -1))
        return cls(core, tuple(layers))


def fraction(s: LayerSequence) -> Fraction:
    f = ZERO if s.core is BoundaryPairing.ZERO else INFINITY
    for layer in s.layers:
        if layer.side in HORIZONTAL:
            f = f + layer.sign
        else:
            f = (f.reciprocal() + layer.sign).reciprocal()
    return f


def continued_fraction_value(terms: list[int]) -> Fraction:
    """Evaluate ``a0 + 1/(a1 + 1/(a2 + ...))`` with exact integers."""
    p, q = 1, 0
    for a in reversed(terms):
        p, q = a * p + q, p
    return Fraction.of(p, q)


# -- peeling -----------------------------------------------------------------------


def _positive_port(corner: int, a: int) -> int:
    # strand reaching NE (top/right) or SW (bottom/left); see module docstring
    return a % 4 if corner % 2 else (a - 1) % 4


def layer_crossings(t: TangleDiagram) -> list[tuple[int, int, int]]:
    """(crossing id, corner, port a) for every crossing forming an outermost layer."""
    d = t.diagram
    b = t.bid
    out = []
    for p in _PEEL_ORDER:
        c, a = d.partner((b, p))
        if c == b or d.node(c).kind != CROSSING:
            continue
        if d.partner((c, (a - 1) % 4)) != (b, (p + 1) % 4):
            continue
        if d.partner((c, (a + 1) % 4)) == (c, (a + 2) % 4):
            continue  # inner ports closed into a loop
        out.append((c, p, a))
    return sorted(out, key=lambda x: (x[0], _PEEL_ORDER.index(x[1])))


def _remove_layer(t: TangleDiagram, c: int, p: int, a: int) -> TangleDiagram:
    d = t.diagram
    bi = d._index[t.bid]
    ci = d._index[c]
    bports = list(d.ports[bi])
    bports[p] = d.ports[ci][(a + 1) % 4]
    bports[(p + 1) % 4] = d.ports[ci][(a + 2) % 4]
    origin = list(t.origin)
    origin[p] = (c, (a + 1) % 4)
    origin[(p + 1) % 4] = (c, (a + 2) % 4)
    nodes, ports = [], []
    for i, (n, pp) in enumerate(zip(d.nodes, d.ports)):
        if i == ci:
            continue
        nodes.append(n)
        ports.append(tuple(bports) if i == bi else pp)
    return _trusted(PlaneDiagram(tuple(nodes), tuple(ports)), tuple(origin))


def peel(t: TangleDiagram) -> tuple[Layer, TangleDiagram] | None:
    """Strip the outermost layer crossing with the lowest node id, if any."""
    found = peel_with_id(t)
    if found is None:
        return None
    layer, _, rest = found
    return layer, rest


def peel_with_id(t: TangleDiagram) -> tuple[Layer, int, TangleDiagram] | None:
    cands = layer_crossings(t)
    if not cands:
        return None
    c, p, a = cands[0]
    node = t.diagram.node(c)
    sign = 1 if node.is_over(_positive_port(p, a)) else -1
    return Layer(SIDES[p], sign), c, _remove_layer(t, c, p, a)


@dataclass(frozen=True)
class RationalStructure:
    """A recognised rational tangle together with where its pieces sit in the parent."""

    sequence: LayerSequence
    crossing_ids: tuple[int, ...]  # innermost first, aligned with sequence.layers
    core: TangleDiagram

    def core_region(self) -> tuple[Dart | None, tuple[int, int]]:
        """Parent dart bounding the region between the two core strings, and the two core arcs."""
        d = self.core.diagram
        b = self.core.bid
        arcs = tuple(sorted({d.label_at((b, p)) for p in range(4)}))
        for p in range(4):
            if d.partner((b, p)) != (b, (p + 1) % 4):
                return self.core.origin[p], arcs
        raise AssertionError("crossingless core without a middle region")


def rational_structure(t: TangleDiagram) -> RationalStructure | None:
    """Peel ``t`` down to its core, or return None when it is not a rational tangle diagram.

    Works on mutable port lists instead of rebuilding a diagram after every layer.
    """
    d = t.diagram
    if any(n.kind not in (CROSSING, BOUNDARY) for n in d.nodes):
        return None
    b = t.bid
    ports = {n.id: list(pp) for n, pp in zip(d.nodes, d.ports)}
    ends: dict[int, list[Dart]] = {}
    for nid, labs in ports.items():
        for i, lab in enumerate(labs):
            ends.setdefault(lab, []).append((nid, i))

    def partner(x: Dart) -> Dart:
        e = ends[ports[x[0]][x[1]]]
        return e[1] if e[0] == x else e[0]

    origin = list(t.origin)
    layers, ids = [], []
    while len(ports) > 1:
        best = None
        for p in _PEEL_ORDER:
            c, a = partner((b, p))
            if c == b or (best is not None and c >= best[0]):
                continue
            if partner((c, (a - 1) % 4)) != (b, (p + 1) % 4):
                continue
            if ports[c][(a + 1) % 4] == ports[c][(a + 2) % 4]:
                continue
            best = (c, p, a)
        if best is None:
            return None
        c, p, a = best
        sign = 1 if d.node(c).is_over(_positive_port(p, a)) else -1
        layers.append(Layer(SIDES[p], sign))
        ids.append(c)
        for k, q in ((1, p), (2, (p + 1) % 4)):
            lab = ports[c][(a + k) % 4]
            ends[lab] = [(b, q) if x == (c, (a + k) % 4) else x for x in ends[lab]]
            ports[b][q] = lab
            origin[q] = (c, (a + k) % 4)
        del ports[c]
    labs = ports[b]
    if labs[0] == labs[1] and labs[2] == labs[3]:
        core = BoundaryPairing.ZERO
    elif labs[0] == labs[3] and labs[1] == labs[2]:
        core = BoundaryPairing.INFINITY
    else:
        return None
    core_t = _trusted(PlaneDiagram((Node(b, BOUNDARY),), (tuple(labs),)), tuple(origin))
    seq = LayerSequence(core, tuple(reversed(layers)))
    return RationalStructure(seq, tuple(reversed(ids)), core_t)


def recognize_rational(t: TangleDiagram) -> LayerSequence | None:
    s = rational_structure(t)
    return None if s is None else s.sequence


# -- generation --------------------------------------------------------------------


def core_tangle(core: BoundaryPairing) -> TangleDiagram:
    labels = (1, 1, 2, 2) if core is BoundaryPairing.ZERO else (1, 2, 2, 1)
    return TangleDiagram(PlaneDiagram((Node(BOUNDARY_ID, BOUNDARY),), (labels,)))


def _wrap(nodes: list[Node], ports: list[list[int]], bi: int, layer: Layer) -> None:
    """Add one layer in place; ``ports[bi]`` belongs to the boundary node."""
    p = _CORNER[layer.side]
    fresh = max(max(pp) for pp in ports) + 1
    old = ports[bi]
    # crossing ports: 0 -> B p, 1 -> old arc at B p, 2 -> old arc at B p+1, 3 -> B p+1
    cports = [fresh, old[p], old[(p + 1) % 4], fresh + 1]
    q = _positive_port(p, 0)
    over_pair = q % 2 if layer.sign > 0 else 1 - q % 2
    cid = max((n.id for n in nodes if n.kind != BOUNDARY), default=-1) + 1
    old[p] = fresh
    old[(p + 1) % 4] = fresh + 1
    nodes.append(Node(cid, CROSSING, over_pair))
    ports.append(cports)


def add_layer(t: TangleDiagram, layer: Layer) -> TangleDiagram:
    """Wrap ``t`` in one more annulus whose crossing sits at ``layer.side``."""
    d = t.diagram
    nodes, ports = list(d.nodes), [list(pp) for pp in d.ports]
    _wrap(nodes, ports, d._index[t.bid], layer)
    return TangleDiagram(PlaneDiagram(tuple(nodes), tuple(map(tuple, ports))))


def generate(s: LayerSequence) -> TangleDiagram:
    core = core_tangle(s.core).diagram
    nodes, ports = list(core.nodes), [list(pp) for pp in core.ports]
    for layer in s.layers:
        _wrap(nodes, ports, 0, layer)
    # validated once, by the renumbering
    return normalize_tangle(_trusted(PlaneDiagram.unchecked(tuple(nodes), tuple(map(tuple, ports))), (None,) * 4))


def flype_normalize(t: TangleDiagram) -> TangleDiagram:
    """Canonical diagram with every top layer moved to the bottom and every left layer to the right."""
    s = recognize_rational(t)
    if s is None:
        raise NotRational("tangle is not an alternating rational tangle diagram")
    swap = {"top": "bottom", "left": "right"}
    return generate(LayerSequence(s.core, tuple(Layer(swap.get(l.side, l.side), l.sign) for l in s.layers)))


def layer_sequences(max_layers: int, signs: tuple[int, ...] = (1, -1)) -> Iterator[LayerSequence]:
    """Every sequence of up to ``max_layers`` layers with a uniform sign, over both cores."""
    for core in (BoundaryPairing.ZERO, BoundaryPairing.INFINITY):
        for n in range(max_layers + 1):
            for sides in product(SIDES, repeat=n):
                for sign in signs:
                    yield LayerSequence(core, tuple(Layer(side, sign) for side in sides))
                    if n == 0:
                        break


def is_reduced_sequence(s: LayerSequence) -> bool:
    """No layer is a kink: the first layer must join the two core strings."""
    if not s.layers:
        return True
    first = s.layers[0].side
    return (first in HORIZONTAL) == (s.core is BoundaryPairing.ZERO)


def canonical_sequences(max_layers: int, sign: int = 1) -> Iterator[LayerSequence]:
    """Reduced sequences using only bottom and right layers (the flype-normal sides), with at least one layer."""
    for core in (BoundaryPairing.ZERO, BoundaryPairing.INFINITY):
        first = "right" if core is BoundaryPairing.ZERO else "bottom"
        for n in range(1, max_layers + 1):
            for rest in product(("bottom", "right"), repeat=n - 1):
                yield LayerSequence(core, tuple(Layer(side, sign) for side in (first, *rest)))
