"""Oriented link diagrams from PD codes.

Conventions
-----------
``X[i, j, k, l]`` lists the four edges at a crossing counterclockwise,
starting with the incoming under-edge ``i``; the under-strand runs
``i -> k``.  Slots are numbered 0..3 in that order, so slot ``p`` and
``p + 2`` are the two ends of one strand.

A crossing is positive when the over-strand enters at slot 3 (it passes
from the under-strand's left to its right), negative when it enters at
slot 1.

Faces are orbits of corners: corner ``(c, p)`` sits between slots ``p`` and
``p + 1`` and the face walks along the edge in slot ``p + 1``.  Each face is
stored as a cyclic list of ``(edge, side)`` pairs, ``side`` being ``"L"`` or
``"R"`` relative to the edge orientation.
"""

from __future__ import annotations

import json
import re
from collections import namedtuple
from dataclasses import dataclass
from itertools import count
from typing import Optional

CrossingInfo = namedtuple("CrossingInfo", "under_in over_a under_out over_b sign over_in over_out")


class PDSyntaxError(ValueError):
    def __init__(self, message, position=None):
        where = f" at {position}" if position is not None else ""
        super().__init__(message + where)
        self.position = position


class DiagramError(ValueError):
    """Edge incidences, orientation or planarity are inconsistent."""


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(PD|X)|(\d+)|(\[)|(\])|(,))")


def _parse_bracketed(text: str) -> list[tuple]:
    pos = 0
    n = len(text)

    def peek():
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                return None, n
            raise PDSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                len(text[:pos]) + (len(text[pos:]) - len(text[pos:].lstrip())))
        return m, m.end()

    def expect(kind: str):
        nonlocal pos
        m, end = peek()
        if m is None:
            raise PDSyntaxError(f"expected {kind!r}, got end of input", pos)
        tok = m.group(m.lastindex)
        if kind == "int":
            if m.lastindex != 2:
                raise PDSyntaxError(f"expected integer, got {tok!r}", m.start(m.lastindex))
            pos = end
            return int(tok)
        if tok != kind:
            raise PDSyntaxError(f"expected {kind!r}, got {tok!r}", m.start(m.lastindex))
        pos = end
        return tok

    expect("PD")
    expect("[")
    crossings = []
    m, _ = peek()
    if m is not None and m.group(m.lastindex) == "]":
        expect("]")
    else:
        while True:
            expect("X")
            expect("[")
            quad = [expect("int")]
            for _ in range(3):
                expect(",")
                quad.append(expect("int"))
            expect("]")
            crossings.append(tuple(quad))
            m, _ = peek()
            if m is None:
                raise PDSyntaxError("unterminated PD[...]", pos)
            if m.group(m.lastindex) == ",":
                expect(",")
                continue
            expect("]")
            break
    m, _ = peek()
    if m is not None:
        raise PDSyntaxError("trailing input after PD[...]", m.start())
    return crossings


def _parse_lines(text: str) -> list[tuple]:
    crossings = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        body = body.removeprefix("X").strip()
        parts = [p for p in re.split(r"[\s,\[\]]+", body) if p]
        if len(parts) != 4 or not all(p.isdigit() for p in parts):
            raise PDSyntaxError(f"expected four edge numbers, got {line.strip()!r}", f"line {lineno}")
        crossings.append(tuple(int(p) for p in parts))
    return crossings


def parse_pd(text: str, infinity_region: Optional[int] = None) -> "LinkDiagram":
    """Parse ``PD[X[...], ...]``, a JSON-style list of quadruples, or one crossing per line."""
    stripped = "\n".join(l.split("#", 1)[0] for l in text.splitlines()).strip()
    if stripped.startswith("PD"):
        crossings = _parse_bracketed(stripped)
    elif stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PDSyntaxError(exc.msg, exc.pos) from exc
        crossings = [tuple(q) for q in data]
        if any(len(q) != 4 or not all(isinstance(v, int) for v in q) for q in crossings):
            raise PDSyntaxError("each crossing must be a list of four integers")
    else:
        crossings = _parse_lines(stripped)
    if crossings:
        labels = sorted(v for q in crossings for v in q)
        expected = sorted(list(range(1, 2 * len(crossings) + 1)) * 2)
        if labels != expected:
            raise DiagramError("edges must be numbered 1..2n with each label used exactly twice")
    return LinkDiagram(crossings, infinity_region=infinity_region)


def load_pd(path, infinity_region=None) -> "LinkDiagram":
    with open(path) as fh:
        return parse_pd(fh.read(), infinity_region)


# ----------------------------------------------------------------- diagram

class LinkDiagram:
    """An oriented diagram with derived arcs, faces and crossing signs.

    Instances are treated as immutable; rewriting functions return new ones.
    A diagram with no crossings is the one-component unknot.
    """

    def __init__(self, crossings, infinity_region: Optional[int] = None, heads: Optional[dict] = None):
        self.crossings = tuple(tuple(q) for q in crossings)
        for q in self.crossings:
            if len(q) != 4:
                raise DiagramError(f"crossing {q} does not have four slots")
        if not self.crossings:
            self._init_unknot()
        else:
            self._init_slots()
            self._init_orientation(heads or {})
            self._init_arcs()
            self._init_faces()
        if infinity_region is None:
            top = max(self.edges, key=_sort_key)
            infinity_region = self.region_of[(top, "R")]
        if not 0 <= infinity_region < len(self.regions):
            raise DiagramError(f"infinity region {infinity_region} out of range")
        self.infinity_region = infinity_region

    # -- construction helpers

    def _init_unknot(self):
        self.edges = (1,)
        self.slots = {1: []}
        self.head = {}
        self.tail = {}
        self.signs = ()
        self.components = 1
        self.component_of = {1: 0}
        self.arcs = ((1,),)
        self.arc_of = {1: 0}
        self.regions = (((1, "L"),), ((1, "R"),))
        self.region_of = {(1, "L"): 0, (1, "R"): 1}
        self.corner_region = {}

    def _init_slots(self):
        slots: dict = {}
        for c, q in enumerate(self.crossings):
            for p, e in enumerate(q):
                slots.setdefault(e, []).append((c, p))
        for e, occ in slots.items():
            if len(occ) != 2:
                raise DiagramError(f"edge {e} occurs {len(occ)} times, expected 2")
        self.slots = slots
        self.edges = tuple(sorted(slots, key=_sort_key))

    def edge_at(self, c: int, p: int):
        return self.crossings[c][p % 4]

    def _other(self, e, slot):
        a, b = self.slots[e]
        return b if a == slot else a

    def _init_orientation(self, hints: dict):
        head: dict = {}
        tail: dict = {}
        seen = set()
        comps = []
        for e in self.edges:
            if e in seen:
                continue
            # collect the component by walking strand continuations
            comp = []
            stack = [e]
            members = set()
            while stack:
                x = stack.pop()
                if x in members:
                    continue
                members.add(x)
                for (c, p) in self.slots[x]:
                    y = self.edge_at(c, p + 2)
                    if y not in members:
                        stack.append(y)
            seen |= members
            comp = sorted(members, key=_sort_key)
            comps.append(comp)

        for comp in comps:
            start = None
            for x in comp:
                for (c, p) in self.slots[x]:
                    if p == 0:
                        start = (x, (c, p))
                        break
                    if p == 2:
                        start = (x, self._other(x, (c, p)))
                        break
                if start:
                    break
            if start is None:
                for x in comp:
                    if x in hints:
                        start = (x, tuple(hints[x]))
                        break
            if start is None:
                start = self._numbering_fallback(comp)
            e0, h0 = start
            e, h = e0, h0
            steps = 0
            while True:
                if e in head:
                    raise DiagramError(f"edge {e} visited twice while orienting")
                head[e] = h
                tail[e] = self._other(e, h)
                nxt_slot = (h[0], (h[1] + 2) % 4)
                e = self.edge_at(*nxt_slot)
                h = self._other(e, nxt_slot)
                steps += 1
                if e == e0:
                    if h != h0:
                        raise DiagramError(f"orientation of component through edge {e0} does not close")
                    break
                if steps > len(self.edges):
                    raise DiagramError("orientation walk did not terminate")

        for e in self.edges:
            c, p = head[e]
            if p == 2:
                raise DiagramError(f"edge {e} enters crossing {c} at the outgoing under slot")
            tc, tp = tail[e]
            if tp == 0:
                raise DiagramError(f"edge {e} leaves crossing {tc} at the incoming under slot")
            if e in hints and tuple(hints[e]) != head[e]:
                raise DiagramError(f"edge {e} orientation contradicts the given hint")
        self.head = head
        self.tail = tail
        self.components = len(comps)
        self.component_of = {x: i for i, comp in enumerate(comps) for x in comp}
        signs = []
        for c, q in enumerate(self.crossings):
            if head[q[3]] == (c, 3):
                signs.append(1)
            elif head[q[1]] == (c, 1):
                signs.append(-1)
            else:
                raise DiagramError(f"over strand at crossing {c} has no incoming end")
        self.signs = tuple(signs)

    def _numbering_fallback(self, comp):
        # component that never passes under: orient by consecutive numbering
        for x in comp:
            for (c, p) in self.slots[x]:
                j, l = self.crossings[c][1], self.crossings[c][3]
                if not (isinstance(j, int) and isinstance(l, int)):
                    continue
                incoming = min(j, l) if abs(j - l) == 1 else max(j, l)
                slot = (c, 1) if incoming == j else (c, 3)
                return incoming, slot
        raise DiagramError("cannot orient a component that has no under-crossing")

    def _init_arcs(self):
        parent = {e: e for e in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for q in self.crossings:
            a, b = find(q[1]), find(q[3])
            if a != b:
                parent[a] = b
        groups: dict = {}
        for e in self.edges:
            groups.setdefault(find(e), []).append(e)
        arcs = []
        for members in groups.values():
            arcs.append(self._order_arc(members))
        arcs.sort(key=lambda arc: _sort_key(min(arc, key=_sort_key)))
        self.arcs = tuple(tuple(a) for a in arcs)
        self.arc_of = {e: i for i, arc in enumerate(self.arcs) for e in arc}

    def _order_arc(self, members):
        mset = set(members)
        # first edge: one whose tail is an outgoing under slot, if any
        first = None
        for e in members:
            if self.tail[e][1] == 2:
                first = e
                break
        if first is None:
            return sorted(members, key=_sort_key)
        out = [first]
        e = first
        while True:
            c, p = self.head[e]
            if p == 0:
                break
            nxt = self.edge_at(c, p + 2)
            if nxt not in mset or nxt == first:
                break
            out.append(nxt)
            e = nxt
        return out

    def _init_faces(self):
        corner_face = {}
        faces = []
        for c in range(len(self.crossings)):
            for p in range(4):
                if (c, p) in corner_face:
                    continue
                idx = len(faces)
                walk = []
                cur = (c, p)
                while cur not in corner_face:
                    corner_face[cur] = idx
                    cc, pp = cur
                    slot = (cc, (pp + 1) % 4)
                    e = self.edge_at(*slot)
                    side = "R" if self.tail[e] == slot else "L"
                    walk.append((e, side, cur))
                    cur = self._other(e, slot)
                if cur != (c, p):
                    raise DiagramError("face tracing did not close")
                faces.append(walk)
        V = len(self.crossings)
        if V - 2 * V + len(faces) != 2:
            raise DiagramError(
                f"Euler check failed: V={V}, E={2 * V}, F={len(faces)} (non-planar or split diagram)")
        # canonical order: each face rotated to its least (edge, side), faces sorted by it
        canon = []
        for walk in faces:
            pairs = [(e, s) for e, s, _ in walk]
            k = min(range(len(pairs)), key=lambda i: (_sort_key(pairs[i][0]), pairs[i][1]))
            rot = walk[k:] + walk[:k]
            canon.append(rot)
        canon.sort(key=lambda w: (_sort_key(w[0][0]), w[0][1]))
        self.regions = tuple(tuple((e, s) for e, s, _ in w) for w in canon)
        self.region_of = {}
        self.corner_region = {}
        for i, w in enumerate(canon):
            for e, s, corner in w:
                if (e, s) in self.region_of:
                    raise DiagramError(f"edge side {(e, s)} lies on two faces")
                self.region_of[(e, s)] = i
                self.corner_region[corner] = i
        for e in self.edges:
            for s in "LR":
                if (e, s) not in self.region_of:
                    raise DiagramError(f"edge side {(e, s)} is on no face")

    # -- queries

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def crossing_info(self, c: int) -> CrossingInfo:
        q = self.crossings[c]
        s = self.signs[c]
        over_in, over_out = (q[3], q[1]) if s > 0 else (q[1], q[3])
        return CrossingInfo(q[0], q[1], q[2], q[3], s, over_in, over_out)

    def crossing_sign(self, c: int) -> int:
        return self.signs[c]

    def source_corner(self, c: int) -> tuple:
        """Corner lying to the right of both strands."""
        return (c, 0) if self.signs[c] > 0 else (c, 1)

    def source_region(self, c: int) -> int:
        return self.corner_region[self.source_corner(c)]

    def source_under_edge(self, c: int):
        """Under edge adjacent to the source corner (incoming if positive, outgoing if negative)."""
        q = self.crossings[c]
        return q[0] if self.signs[c] > 0 else q[2]

    def region_edges(self, r: int) -> set:
        return {e for e, _ in self.regions[r]}

    def arcs_bordering(self, r: int) -> set:
        return {self.arc_of[e] for e in self.region_edges(r)}

    def face_sizes(self) -> list[int]:
        return sorted(len(f) for f in self.regions)

    def to_pd(self) -> str:
        if not self.crossings:
            return "PD[]"
        return "PD[" + ", ".join("X[" + ",".join(str(v) for v in q) + "]" for q in self.crossings) + "]"

    def to_json(self) -> dict:
        return {
            "pd": [list(q) for q in self.crossings],
            "components": self.components,
            "signs": list(self.signs),
            "arcs": [list(a) for a in self.arcs],
            "regions": [[[e, s] for e, s in f] for f in self.regions],
            "infinity_region": self.infinity_region,
        }

    def __eq__(self, other):
        return (isinstance(other, LinkDiagram) and self.crossings == other.crossings
                and self.infinity_region == other.infinity_region)

    def __hash__(self):
        return hash((self.crossings, self.infinity_region))

    def __repr__(self):
        return f"LinkDiagram({self.n_crossings} crossings, {self.components} component(s))"


def _sort_key(e):
    return (0, e) if isinstance(e, int) else (1, str(e))


def compute_regions(diagram: LinkDiagram) -> tuple:
    return diagram.regions


def crossing_sign(diagram: LinkDiagram, crossing: int) -> int:
    return diagram.crossing_sign(crossing)


# --------------------------------------------------------------- rewriting

def _relabel(crossings: list, heads: dict) -> LinkDiagram:
    """Renumber edges 1..2n along the orientation and build the diagram."""
    tmp = LinkDiagram(crossings, heads=heads)
    new = {}
    counter = count(1)
    for c, q in enumerate(tmp.crossings):
        for p in range(4):
            e = q[p]
            if e in new:
                continue
            # walk the component from e
            x = e
            while x not in new:
                new[x] = next(counter)
                hc, hp = tmp.head[x]
                x = tmp.edge_at(hc, hp + 2)
    relabelled = [tuple(new[e] for e in q) for q in tmp.crossings]
    new_heads = {new[e]: tmp.head[e] for e in tmp.edges}
    return LinkDiagram(relabelled, heads=new_heads)


def from_oriented_crossings(crossings, heads: dict) -> LinkDiagram:
    """Diagram from quadruples over any hashable labels, renumbered 1..2n.

    ``heads`` maps an edge to the ``(crossing, slot)`` it enters; it is only
    needed for components that never pass under.
    """
    return _relabel([list(q) for q in crossings], heads)


def _pick_edge(diagram: LinkDiagram, arc: int, edge=None):
    if not 0 <= arc < len(diagram.arcs):
        raise ValueError(f"no arc {arc}; diagram has {len(diagram.arcs)}")
    if edge is None:
        return diagram.arcs[arc][0]
    if diagram.arc_of.get(edge) != arc:
        raise ValueError(f"edge {edge} is not on arc {arc}")
    return edge


def reidemeister1_insert(diagram: LinkDiagram, arc: int, chirality: int = 1,
                         under_first: bool = True, edge=None) -> LinkDiagram:
    """Add a kink with crossing sign ``chirality`` on an edge of ``arc``."""
    if chirality not in (1, -1):
        raise ValueError("chirality must be +1 or -1")
    e = _pick_edge(diagram, arc, edge)
    crossings = [list(q) for q in diagram.crossings]
    e_in, e_out, loop = ("in", 0), ("out", 0), ("loop", 0)
    if diagram.crossings:
        tc, tp = diagram.tail[e]
        hc, hp = diagram.head[e]
        crossings[tc][tp] = e_in
        crossings[hc][hp] = e_out
    else:
        e_out = e_in   # the rest of the circle
    k = len(crossings)
    if under_first:
        quad = [e_in, loop, loop, e_out] if chirality < 0 else [e_in, e_out, loop, loop]
        heads = {}
    else:
        if chirality < 0:
            quad = [loop, e_in, e_out, loop]
            heads = {e_in: (k, 1)}
        else:
            quad = [loop, loop, e_out, e_in]
            heads = {e_in: (k, 3)}
    crossings.append(quad)
    heads.update(_carry_heads(diagram, crossings))
    return _relabel(crossings, heads)


def _carry_heads(diagram: LinkDiagram, crossings) -> dict:
    out = {}
    for e in diagram.edges:
        if e in diagram.head:
            c, p = diagram.head[e]
            if crossings[c][p] == e:
                out[e] = (c, p)
    return out


# direction -> slot, for the under strand running +x or -x
_SLOTS = {1: {"W": 0, "S": 1, "E": 2, "N": 3}, -1: {"E": 0, "N": 1, "W": 2, "S": 3}}


def _find_common_face(diagram: LinkDiagram, arc_over: int, arc_under: int, region=None):
    regions = range(len(diagram.regions)) if region is None else [region]
    for r in regions:
        face = diagram.regions[r]
        over = [(e, s) for e, s in face if diagram.arc_of[e] == arc_over]
        under = [(e, s) for e, s in face if diagram.arc_of[e] == arc_under]
        for eo, so in over:
            for eu, su in under:
                if eo != eu or not diagram.crossings:
                    return r, (eo, so), (eu, su)
    return None


def reidemeister2_insert(diagram: LinkDiagram, arc_over: int, arc_under: int,
                         region: Optional[int] = None) -> LinkDiagram:
    """Push an edge of ``arc_over`` across an edge of ``arc_under`` inside a shared face."""
    for a in (arc_over, arc_under):
        if not 0 <= a < len(diagram.arcs):
            raise ValueError(f"no arc {a}")
    found = _find_common_face(diagram, arc_over, arc_under, region)
    if found is None:
        raise ValueError(f"arcs {arc_over} and {arc_under} do not border a common region")
    _, (eo, so), (eu, su) = found
    dir_u = 1 if su == "L" else -1
    dir_o = 1 if so == "R" else -1
    slot = _SLOTS[dir_u]

    crossings = [list(q) for q in diagram.crossings]
    u1, u2, u3 = ("u", 1), ("u", 2), ("u", 3)
    o1, o2, o3 = ("o", 1), ("o", 2), ("o", 3)
    if diagram.crossings:
        crossings[diagram.tail[eu][0]][diagram.tail[eu][1]] = u1
        crossings[diagram.head[eu][0]][diagram.head[eu][1]] = u3
        crossings[diagram.tail[eo][0]][diagram.tail[eo][1]] = o1
        crossings[diagram.head[eo][0]][diagram.head[eo][1]] = o3
    else:
        # a single circle: the under part runs into the over part and back
        u3 = o1
        o3 = u1
    kL, kR = len(crossings), len(crossings) + 1
    qL, qR = [None] * 4, [None] * 4
    if dir_u == 1:
        qL[slot["W"]], qL[slot["E"]] = u1, u2
        qR[slot["W"]], qR[slot["E"]] = u2, u3
    else:
        qR[slot["E"]], qR[slot["W"]] = u1, u2
        qL[slot["E"]], qL[slot["W"]] = u2, u3
    if dir_o == 1:
        qL[slot["N"]], qL[slot["S"]] = o1, o2
        qR[slot["S"]], qR[slot["N"]] = o2, o3
        heads = {o1: (kL, slot["N"]), o2: (kR, slot["S"])}
    else:
        qR[slot["N"]], qR[slot["S"]] = o1, o2
        qL[slot["S"]], qL[slot["N"]] = o2, o3
        heads = {o1: (kR, slot["N"]), o2: (kL, slot["S"])}
    crossings += [qL, qR]
    heads.update(_carry_heads(diagram, crossings))
    return _relabel(crossings, heads)


def connected_sum(D1: LinkDiagram, D2: LinkDiagram, arc1: Optional[int] = None,
                  arc2: Optional[int] = None) -> LinkDiagram:
    """Splice two knot diagrams along arcs that border their infinity regions."""
    for D in (D1, D2):
        if D.components != 1:
            raise ValueError("connected sum is only defined here for knots (one component)")
    if not D1.crossings:
        return _relabel([list(q) for q in D2.crossings], _carry_heads(D2, D2.crossings)) if D2.crossings else D2
    if not D2.crossings:
        return _relabel([list(q) for q in D1.crossings], _carry_heads(D1, D1.crossings))

    def choose(D, arc):
        inf = D.regions[D.infinity_region]
        cands = [e for e, _ in inf if arc is None or D.arc_of[e] == arc]
        if not cands:
            raise ValueError(f"arc {arc} does not border the infinity region")
        return min(cands, key=_sort_key)

    e1, e2 = choose(D1, arc1), choose(D2, arc2)
    A, B = ("sum", "A"), ("sum", "B")
    c1 = [[("1", v) for v in q] for q in D1.crossings]
    c2 = [[("2", v) for v in q] for q in D2.crossings]
    off = len(c1)
    t1, h1 = D1.tail[e1], D1.head[e1]
    t2, h2 = D2.tail[e2], D2.head[e2]
    c1[t1[0]][t1[1]] = A
    c2[h2[0]][h2[1]] = A
    c2[t2[0]][t2[1]] = B
    c1[h1[0]][h1[1]] = B
    crossings = c1 + c2
    heads = {A: (off + h2[0], h2[1]), B: h1}
    return _relabel(crossings, heads)


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing, keeping the orientation."""
    if not diagram.crossings:
        return diagram
    out = []
    for q, s in zip(diagram.crossings, diagram.signs):
        i, j, k, l = q
        out.append((l, i, j, k) if s > 0 else (j, k, l, i))
    return LinkDiagram(out)


UNKNOT = "PD[]"
TREFOIL = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]"
FIGURE_EIGHT = "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]"
HOPF = "PD[X[4,1,3,2], X[2,3,1,4]]"
