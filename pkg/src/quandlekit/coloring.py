"""Quandle colorings, shadow colorings and fundamental cycles of diagrams.

Crossing relation: at a positive crossing the outgoing under-arc is
``(incoming under) * (over)``; at a negative one it is
``(incoming under) *^{-1} (over)``.  Shadow rule: for every edge of colour
``a``, the face on its left has colour ``(face on its right) * a``.  Both say
the same thing: passing from the right side of an arc to its left acts by
``* a``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .diagram import LinkDiagram
from .quandle import FiniteRack


class ShadowInconsistency(RuntimeError):
    """Region propagation disagreed with itself; the coloring was not valid."""


@dataclass(frozen=True)
class Coloring:
    diagram: LinkDiagram
    arcs: tuple          # arc index -> element

    def color_of_edge(self, e) -> int:
        return self.arcs[self.diagram.arc_of[e]]

    def to_json(self):
        return list(self.arcs)


@dataclass(frozen=True)
class ShadowColoring:
    coloring: Coloring
    regions: tuple       # region index -> element

    @property
    def diagram(self):
        return self.coloring.diagram

    @property
    def base_color(self) -> int:
        return self.regions[self.diagram.infinity_region]

    def to_json(self):
        return {"arcs": list(self.coloring.arcs), "regions": list(self.regions)}


@dataclass(frozen=True)
class FundamentalCycle:
    """Integer combination of triples ``(r, x, y)``, one signed term per crossing."""

    terms: tuple   # ((sign, (r, x, y)), ...) in crossing order

    def as_chain(self) -> dict:
        out: dict = {}
        for s, t in self.terms:
            out[t] = out.get(t, 0) + s
        return {k: v for k, v in out.items() if v}

    def to_json(self):
        return [[s, *t] for s, t in self.terms]


def _relations(D: LinkDiagram):
    rel = []
    for c in range(D.n_crossings):
        q = D.crossings[c]
        rel.append((D.arc_of[q[0]], D.arc_of[q[1]], D.arc_of[q[2]], D.signs[c]))
    return rel


def _search(D: LinkDiagram, X: FiniteRack, order=None, collect=True):
    """Depth-first assignment of arc colours with forced propagation."""
    n_arcs = len(D.arcs)
    rel = _relations(D)
    t, ti = X.table, X.inverse_table
    by_arc: dict = {a: [] for a in range(n_arcs)}
    for k, (ui, ov, uo, _) in enumerate(rel):
        for a in {ui, ov, uo}:
            by_arc[a].append(k)
    order = list(range(n_arcs)) if order is None else list(order)
    if sorted(order) != list(range(n_arcs)):
        raise ValueError("order must be a permutation of the arcs")

    colors = [None] * n_arcs
    found = []
    total = 0

    def propagate(start):
        # returns the list of arcs assigned here, or None on contradiction
        assigned = []
        queue = [start]
        while queue:
            a = queue.pop()
            for k in by_arc[a]:
                ui, ov, uo, s = rel[k]
                x, y, z = colors[ui], colors[ov], colors[uo]
                if y is None:
                    continue
                if x is not None:
                    want = t[x][y] if s > 0 else ti[x][y]
                    if z is None:
                        colors[uo] = want
                        assigned.append(uo)
                        queue.append(uo)
                    elif z != want:
                        return assigned, False
                elif z is not None:
                    colors[ui] = ti[z][y] if s > 0 else t[z][y]
                    assigned.append(ui)
                    queue.append(ui)
        return assigned, True

    def rec(pos):
        nonlocal total
        while pos < len(order) and colors[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            total += 1
            if collect:
                found.append(tuple(colors))
            return
        a = order[pos]
        for v in range(X.size):
            colors[a] = v
            assigned, ok = propagate(a)
            if ok:
                rec(pos + 1)
            for b in assigned:
                colors[b] = None
            colors[a] = None

    rec(0)
    return found, total


def enumerate_colorings(D: LinkDiagram, X: FiniteRack, order=None) -> list[Coloring]:
    found, _ = _search(D, X, order)
    return [Coloring(D, c) for c in sorted(found)]


def count_colorings(D: LinkDiagram, X: FiniteRack) -> int:
    _, total = _search(D, X, collect=False)
    return total


def is_coloring(D: LinkDiagram, X: FiniteRack, arcs) -> bool:
    for ui, ov, uo, s in _relations(D):
        x, y, z = arcs[ui], arcs[ov], arcs[uo]
        if (X.op(x, y) if s > 0 else X.inv(x, y)) != z:
            return False
    return True


def extend_to_shadow(D: LinkDiagram, X: FiniteRack, coloring: Coloring, base_color: int) -> ShadowColoring:
    """Propagate region colours outward from the infinity region."""
    regions = _propagate_regions(D, X, coloring.arcs, base_color)
    if regions is None:
        raise ShadowInconsistency(f"coloring {coloring.arcs} does not extend consistently")
    return ShadowColoring(coloring, regions)


def _propagate_regions(D, X, arcs, base):
    t, ti = X.table, X.inverse_table
    nreg = len(D.regions)
    colors = [None] * nreg
    colors[D.infinity_region] = base
    # edge -> (left region, right region)
    sides = {e: (D.region_of[(e, "L")], D.region_of[(e, "R")]) for e in D.edges}
    adj: dict = {r: [] for r in range(nreg)}
    for e, (l, r) in sides.items():
        a = arcs[D.arc_of[e]]
        adj[r].append((l, a, True))
        adj[l].append((r, a, False))
    stack = [D.infinity_region]
    while stack:
        r = stack.pop()
        for other, a, to_left in adj[r]:
            want = t[colors[r]][a] if to_left else ti[colors[r]][a]
            if colors[other] is None:
                colors[other] = want
                stack.append(other)
            elif colors[other] != want:
                return None
    if any(c is None for c in colors):
        return None
    return tuple(colors)


def enumerate_shadow_colorings(D: LinkDiagram, X: FiniteRack) -> list[ShadowColoring]:
    out = []
    for col in enumerate_colorings(D, X):
        for base in range(X.size):
            regions = _propagate_regions(D, X, col.arcs, base)
            if regions is not None:
                out.append(ShadowColoring(col, regions))
    return out


def count_shadow_colorings(D: LinkDiagram, X: FiniteRack) -> int:
    """Counted by extending every coloring from every base colour (not assumed)."""
    return len(enumerate_shadow_colorings(D, X))


def is_shadow_coloring(D: LinkDiagram, X: FiniteRack, arcs, regions) -> bool:
    if not is_coloring(D, X, arcs):
        return False
    for e in D.edges:
        a = arcs[D.arc_of[e]]
        if regions[D.region_of[(e, "L")]] != X.op(regions[D.region_of[(e, "R")]], a):
            return False
    return True


def crossing_terms(shadow: ShadowColoring):
    """Per crossing ``(sign, (r, x, y))``: source-region colour, adjoining under-arc, over-arc."""
    D = shadow.diagram
    col = shadow.coloring
    terms = []
    for c in range(D.n_crossings):
        r = shadow.regions[D.source_region(c)]
        x = col.color_of_edge(D.source_under_edge(c))
        y = col.color_of_edge(D.crossings[c][1])
        terms.append((D.signs[c], (r, x, y)))
    return terms


def pair_terms(coloring: Coloring):
    """Per crossing ``(sign, (x, y))`` with ``x`` the under-arc on the source side."""
    D = coloring.diagram
    return [(D.signs[c], (coloring.color_of_edge(D.source_under_edge(c)),
                          coloring.color_of_edge(D.crossings[c][1])))
            for c in range(D.n_crossings)]


def fundamental_cycle(D: LinkDiagram, shadow: ShadowColoring) -> FundamentalCycle:
    if shadow.diagram is not D and shadow.diagram != D:
        raise ValueError("shadow coloring belongs to a different diagram")
    return FundamentalCycle(tuple(crossing_terms(shadow)))


def colorings_json(colorings) -> str:
    return json.dumps([c.to_json() for c in colorings])


def coloring_census(D: LinkDiagram, X: FiniteRack) -> Counter:
    """How many colorings use each number of distinct colours."""
    return Counter(len(set(c.arcs)) for c in enumerate_colorings(D, X))


class CycleClassifier:
    """Homology classes of 3-chains in the quandle complex of ``X``.

    With ``L d_4 R = diag(d)``, a cycle ``c`` has coordinates ``y = L c``;
    its class is ``y_i mod d_i`` on the torsion rows plus ``y_i`` on the free rows.
    """

    def __init__(self, X: FiniteRack):
        from .homology import build_complex, _dense
        from .smith import smith_normal_form
        self.rack = X
        self.cx = build_complex(X, "Q", 4)
        self.index = {t: i for i, t in enumerate(self.cx.basis[3])}
        res = smith_normal_form(_dense(self.cx.boundary[4]), left=True, right=False)
        self.L = res.left
        self.diag = res.diagonal

    def vector(self, chain: dict) -> list[int]:
        v = [0] * len(self.index)
        for t, c in chain.items():
            i = self.index.get(tuple(t))
            if i is not None:           # degenerate triples vanish in the quotient
                v[i] += c
        return v

    def is_cycle(self, chain: dict) -> bool:
        v = self.vector(chain)
        b = self.cx.boundary[3] @ v
        return not any(int(x) for x in b)

    def key(self, chain: dict) -> tuple:
        v = self.vector(chain)
        out = []
        for i, row in enumerate(self.L):
            y = sum(a * b for a, b in zip(row, v) if a and b)
            d = self.diag[i] if i < len(self.diag) else 0
            if d == 1:
                continue
            out.append(y % d if d else y)
        return tuple(out)


def fundamental_classes(D: LinkDiagram, X: FiniteRack, classifier: CycleClassifier | None = None) -> Counter:
    """Multiset of fundamental-cycle classes over all shadow colorings."""
    clf = classifier or CycleClassifier(X)
    return Counter(clf.key(fundamental_cycle(D, sc).as_chain()) for sc in enumerate_shadow_colorings(D, X))
