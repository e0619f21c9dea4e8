"""Decide tunnel number one for reduced alternating knot diagrams.

The search is exhaustive over circles meeting the diagram in four points.  A
diagram is two-bridge when some such circle has a rational tangle on each
side, and a tunnel-one Montesinos knot when two disjoint rational tangles of
odd denominator are joined through a two-crossing clasp.  Unknotting tunnels
are reported as planar arcs in the core region of a rational tangle of each
decomposition found.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .diagram import (
    CROSSING,
    DiagramError,
    NotAKnot,
    PlaneDiagram,
    TransverseCircle,
    circle_sides,
    is_alternating,
    is_prime,
    is_reduced,
    mirror,
    serialize,
    strand_components,
    transverse_circles,
)
from .rational import Fraction, Layer, LayerSequence, RationalStructure, fraction, generate, rational_structure
from .tangle import BoundaryPairing, TangleDiagram, cut, numerator_closure, rotate, tangle_sum


class EvenDenominator(DiagramError):
    pass


class NotTunnelOneInput(DiagramError):
    pass


class Reason(enum.Enum):
    COMPOSITE = "composite"
    NO_PATTERN = "no-pattern-found"
    NOT_ALTERNATING = "not-alternating"
    NOT_REDUCED = "not-reduced"


@dataclass(frozen=True)
class TwoBridge:
    fraction: Fraction


@dataclass(frozen=True)
class MontesinosTunnelOne:
    e: int
    t1: Fraction
    clasp: int  # +1 or -1, meaning +1/2 or -1/2
    t2: Fraction


@dataclass(frozen=True)
class NotTunnelOne:
    reason: Reason


Verdict = TwoBridge | MontesinosTunnelOne | NotTunnelOne


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    mirrored: bool = False
    trivial: bool = False


@dataclass(frozen=True)
class TunnelPlacement:
    face: int
    arcs: tuple[int, int]
    circle: TransverseCircle | None = field(default=None, compare=False)
    pattern: str = field(default="two-bridge", compare=False)
    # crossings of the rational tangle holding the tunnel, innermost first
    tangle_crossings: tuple[int, ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple[int, tuple[int, int]]:
        return self.face, self.arcs


# -- two-bridge fractions ------------------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def glued_fraction(inside: Fraction, outside: Fraction) -> Fraction:
    """Two-bridge fraction of two rational tangles glued along their common circle.

    ``outside`` is read in its own frame, where it has slope q/p as seen from inside.
    A change of frame sending the outside slope to 0 turns the inside slope into p/q.
    """
    a, b = inside.p, inside.q
    x, y = outside.q, outside.p  # outside slope x/y in the inside frame
    g, u, v = _egcd(x, y)  # u*x + v*y = 1
    # M = [[y, -x], [u, v]] has det 1 and sends x/y to 0/1
    p, q = y * a - x * b, u * a + v * b
    if p == 0:
        return Fraction.of(0, 1)
    p, q = abs(p), q if p > 0 else -q
    return Fraction.of(p, q % p if p > 1 else 1)


def two_bridge_equivalent(f: Fraction, g: Fraction, allow_mirror: bool = False) -> bool:
    """Schubert: b(p, q) = b(p', q') iff p = p' and q' = q^(+-1) mod p (signs for mirrors)."""
    if abs(f.p) != abs(g.p):
        return False
    p = abs(f.p)
    if p <= 1:
        return True
    # the sign of a fraction lives in its numerator; b(-p, q) = b(p, -q)
    q = (f.q if f.p > 0 else -f.q) % p
    r = (g.q if g.p > 0 else -g.q) % p
    signs = (1, -1) if allow_mirror else (1,)
    for s in signs:
        if (q - s * r) % p == 0 or (q * r - s) % p == 0:
            return True
    return False


# -- Montesinos parameters ----------------------------------------------------------------


def _frac(x: Fraction | LayerSequence) -> Fraction:
    return fraction(x) if isinstance(x, LayerSequence) else x


def montesinos_params(
    t1: Fraction | LayerSequence, clasp_sign: int, t2: Fraction | LayerSequence
) -> tuple[int, Fraction, int, Fraction]:
    """Normalize both tangle fractions into (0, 1), collecting integer parts into ``e``."""
    f1, f2 = _frac(t1), _frac(t2)
    e = 0
    out = []
    for f in (f1, f2):
        if f.q % 2 == 0:
            raise EvenDenominator(f"{f} has even denominator")
        n = f.p // f.q
        e += n
        out.append(Fraction.of(f.p - n * f.q, f.q))
    return e, out[0], (1 if clasp_sign > 0 else -1), out[1]


# -- search ----------------------------------------------------------------------------------


@dataclass
class _Side:
    circle: TransverseCircle
    tangle: TangleDiagram

    @cached_property
    def structure(self) -> RationalStructure | None:
        return rational_structure(self.tangle)


@dataclass(frozen=True)
class _Search:
    """Every 4-circle of a diagram with both sides cut out; rationality is tested on demand, once."""

    cuts: list[tuple[_Side, _Side]]
    by_nodes: dict[frozenset[int], _Side]


def _search(d: PlaneDiagram) -> _Search:
    cuts = []
    by_nodes: dict[frozenset[int], _Side] = {}
    for c in transverse_circles(d, 4):
        left, right = circle_sides(d, c)
        if not left or not right:
            continue
        pair = []
        # cut() reports the left side first when there is no vertex
        for nodes_, t in zip((left, right), cut(d, c, (left, right))):
            side = _Side(c, t)
            by_nodes.setdefault(nodes_, side)
            pair.append(side)
        cuts.append((pair[0], pair[1]))
    return _Search(cuts, by_nodes)


@dataclass(frozen=True)
class _TwoBridgeHit:
    circle: TransverseCircle
    inside: RationalStructure
    outside: RationalStructure

    @property
    def fraction(self) -> Fraction:
        return glued_fraction(fraction(self.inside.sequence), fraction(self.outside.sequence))


@dataclass(frozen=True)
class _MontesinosHit:
    params: tuple[int, Fraction, int, Fraction]
    left: RationalStructure
    right: RationalStructure
    clasp: tuple[int, int]
    circles: tuple[TransverseCircle, TransverseCircle]


def _two_bridge_hits(search: _Search) -> Iterator[_TwoBridgeHit]:
    for a, b in search.cuts:
        # the larger side is the one that usually fails, so peel it first
        big, small = (a, b) if len(a.tangle.diagram.nodes) >= len(b.tangle.diagram.nodes) else (b, a)
        if big.structure is not None and small.structure is not None:
            yield _TwoBridgeHit(a.circle, a.structure, b.structure)


def _clasp_pairs(d: PlaneDiagram) -> list[tuple[int, int]]:
    pairs = set()
    for f in d.faces:
        if len(f.walk) == 2:
            x, y = f.walk[0][0], f.walk[1][0]
            if x != y and d.node(x).kind == CROSSING and d.node(y).kind == CROSSING:
                pairs.add((min(x, y), max(x, y)))
    return sorted(pairs)


def _facing(t: TangleDiagram, targets: set[int], ports: tuple[int, int]) -> TangleDiagram | None:
    """Rotate ``t`` so that the boundary arcs reaching ``targets`` sit at ``ports``."""
    for k in range(4):
        r = rotate(t, k)
        if {p for p in range(4) if r.origin[p] is not None and r.origin[p][0] in targets} == set(ports):
            return r
    return None


def _montesinos_hits(d: PlaneDiagram, search: _Search) -> Iterator[_MontesinosHit]:
    all_nodes = frozenset(n.id for n in d.nodes)
    by_nodes = search.by_nodes
    sides = sorted(by_nodes, key=sorted)
    for x, y in _clasp_pairs(d):
        sc = by_nodes.get(frozenset({x, y}))
        if sc is None:
            continue
        rest = all_nodes - {x, y}
        for a_nodes in sides:
            b_nodes = rest - a_nodes
            if a_nodes & {x, y} or not b_nodes or b_nodes not in by_nodes:
                continue
            if by_nodes[a_nodes].structure is None or by_nodes[b_nodes].structure is None:
                continue
            hit = _row_hit((x, y), by_nodes[a_nodes], by_nodes[b_nodes], sc, a_nodes)
            if hit is not None:
                yield hit


def _row_hit(clasp: tuple[int, int], sa: _Side, sb: _Side, sc: _Side, a_nodes: frozenset[int]) -> _MontesinosHit | None:
    clasp_nodes = set(clasp)
    left = _facing(sa.tangle, clasp_nodes, (1, 2))
    right = _facing(sb.tangle, clasp_nodes, (0, 3))
    mid = _facing(sc.tangle, set(a_nodes), (0, 3))
    if left is None or right is None or mid is None:
        return None
    rl, rr, rm = rational_structure(left), rational_structure(right), rational_structure(mid)
    if rl is None or rr is None or rm is None:
        return None
    fm = fraction(rm.sequence)
    if fm.q != 2 or abs(fm.p) != 1:
        return None
    try:
        params = montesinos_params(rl.sequence, fm.p, rr.sequence)
    except EvenDenominator:
        return None
    return _MontesinosHit(params, rl, rr, clasp, (sa.circle, sb.circle))


def _check_knot(d: PlaneDiagram) -> None:
    if d.vertex is not None or d.boundary is not None or len(strand_components(d)) != 1:
        raise NotAKnot("classification needs a knot diagram")


def _hypothesis_failure(d: PlaneDiagram) -> Reason | None:
    if not is_alternating(d):
        return Reason.NOT_ALTERNATING
    if not is_reduced(d):
        return Reason.NOT_REDUCED
    if not is_prime(d):
        return Reason.COMPOSITE
    return None


def classify(d: PlaneDiagram, mirror_auto: bool = True) -> Classification:
    _check_knot(d)
    if not d.nodes:
        return Classification(TwoBridge(Fraction(1, 0)), trivial=True)
    reason = _hypothesis_failure(d)
    if reason is not None:
        return Classification(NotTunnelOne(reason))
    candidates = [(d, False), (mirror(d), True)] if mirror_auto else [(d, False)]
    for dd, mirrored in candidates:
        search = _search(dd)
        tb = next(_two_bridge_hits(search), None)
        if tb is not None:
            return Classification(TwoBridge(tb.fraction), mirrored)
        mh = next(_montesinos_hits(dd, search), None)
        if mh is not None:
            e, t1, clasp, t2 = mh.params
            return Classification(MontesinosTunnelOne(e, t1, clasp, t2), mirrored)
    return Classification(NotTunnelOne(Reason.NO_PATTERN))


def _placement(rs: RationalStructure, circle: TransverseCircle | None, d: PlaneDiagram, pattern: str) -> TunnelPlacement | None:
    dart, arcs = rs.core_region()
    if dart is None or len(set(arcs)) != 2:
        return None
    return TunnelPlacement(d.face_of[dart], (arcs[0], arcs[1]), circle, pattern, rs.crossing_ids)


def enumerate_tunnels(d: PlaneDiagram, mirror_auto: bool = True, merge_twists: bool = True) -> list[TunnelPlacement]:
    """Planar unknotting tunnels from every decomposition found.

    Placements are deduplicated by (face, arcs).  With ``merge_twists`` placements
    that become vertical at crossings of the same twist region are also merged,
    since sliding through the bigons of the region is an isotopy.
    """
    cls = classify(d, mirror_auto)
    if isinstance(cls.verdict, NotTunnelOne):
        raise NotTunnelOneInput(f"diagram is not tunnel number one ({cls.verdict.reason.value})")
    if not d.nodes:
        return [TunnelPlacement(0, (d.loops[0], d.loops[0]), None, "two-bridge", ())]
    dd = mirror(d) if cls.mirrored else d
    search = _search(dd)
    found: list[TunnelPlacement] = []
    if isinstance(cls.verdict, TwoBridge):
        for hit in _two_bridge_hits(search):
            for rs in (hit.inside, hit.outside):
                p = _placement(rs, hit.circle, dd, "two-bridge")
                if p is not None:
                    found.append(p)
    else:
        for hit in _montesinos_hits(dd, search):
            for rs, circle in ((hit.left, hit.circles[0]), (hit.right, hit.circles[1])):
                p = _placement(rs, circle, dd, "montesinos")
                if p is not None:
                    found.append(p)
    unique: dict[tuple[int, tuple[int, int]], TunnelPlacement] = {}
    for p in found:
        unique.setdefault(p.key, p)
    placements = sorted(unique.values(), key=lambda p: p.key)
    return _merge_twists(dd, placements) if merge_twists else placements


def twist_regions(d: PlaneDiagram) -> dict[int, int]:
    """Map each crossing to the smallest crossing id of its twist region (crossings chained by bigons)."""
    parent = {n.id: n.id for n in d.crossings}

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for f in d.faces:
        ends = [x[0] for x in f.walk]
        if len(ends) == 2 and all(e in parent for e in ends):
            a, b = find(ends[0]), find(ends[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {c: find(c) for c in parent}


def _merge_twists(d: PlaneDiagram, placements: list[TunnelPlacement]) -> list[TunnelPlacement]:
    # a vertical arc slides through the bigons of a twist region, so one placement per region
    region = twist_regions(d)
    kept: dict[object, TunnelPlacement] = {}
    for p in placements:
        w = sakuma_vertical_witness(p)
        kept.setdefault(p.key if w is None else ("twist", region[w]), p)
    return sorted(kept.values(), key=lambda p: p.key)


def sakuma_vertical_witness(p: TunnelPlacement, d: PlaneDiagram | None = None) -> int | None:
    """Crossing at which the tunnel can be isotoped to a vertical arc, if its tangle has one."""
    return p.tangle_crossings[0] if p.tangle_crossings else None


# -- reports ---------------------------------------------------------------------------


def report(d: PlaneDiagram, mirror_auto: bool = True) -> dict:
    out: dict = {
        "schema": 1,
        "input": serialize(d),
        "alternating": None,
        "reduced": None,
        "prime": None,
        "verdict": None,
        "mirrored": None,
        "trivial": None,
        "fraction": None,
        "montesinos": None,
        "tunnels": None,
        "reason": None,
    }
    out["alternating"] = is_alternating(d)
    out["reduced"] = is_reduced(d)
    out["prime"] = is_prime(d) if d.nodes else True
    cls = classify(d, mirror_auto)
    out["mirrored"] = cls.mirrored
    out["trivial"] = cls.trivial
    v = cls.verdict
    if isinstance(v, TwoBridge):
        out["verdict"] = "two-bridge"
        out["fraction"] = str(v.fraction)
    elif isinstance(v, MontesinosTunnelOne):
        out["verdict"] = "montesinos"
        out["montesinos"] = {"e": v.e, "t1": str(v.t1), "clasp": "+1/2" if v.clasp > 0 else "-1/2", "t2": str(v.t2)}
    else:
        out["verdict"] = "not-tunnel-one"
        out["reason"] = v.reason.value
    if not isinstance(v, NotTunnelOne):
        out["tunnels"] = [
            {"face": p.face, "arcs": list(p.arcs), "vertical_at": sakuma_vertical_witness(p, d)}
            for p in enumerate_tunnels(d, mirror_auto)
        ]
    return out


def signature(placements: Sequence[TunnelPlacement]) -> list[tuple[int, tuple[int, int]]]:
    return [p.key for p in placements]


# -- constructions ---------------------------------------------------------------------


def two_bridge_diagram(s: LayerSequence) -> PlaneDiagram:
    """Numerator closure of the rational tangle built from ``s``."""
    return numerator_closure(generate(s))


def clasp_sequence(sign: int) -> LayerSequence:
    """Two vertical twists on the infinity core: the tangle of fraction sign/2."""
    return LayerSequence(BoundaryPairing.INFINITY, (Layer("bottom", sign), Layer("bottom", sign)))


def montesinos_diagram(s1: LayerSequence, clasp_sign: int, s2: LayerSequence) -> PlaneDiagram:
    """Numerator closure of the row T1 + C + T2 with a +-1/2 clasp C in the middle."""
    row = tangle_sum(tangle_sum(generate(s1), generate(clasp_sequence(clasp_sign))), generate(s2))
    return numerator_closure(row)


def pretzel_diagram(*twists: int) -> PlaneDiagram:
    """Numerator closure of a row of vertical twist bands, one band per entry (sign gives handedness)."""
    row = None
    for n in twists:
        sign = 1 if n > 0 else -1
        band = generate(LayerSequence(BoundaryPairing.INFINITY, tuple(Layer("bottom", sign) for _ in range(abs(n)))))
        row = band if row is None else tangle_sum(row, band)
    return numerator_closure(row)
