"""Pre-cubic sets behind the rack space and its extended/quandle variants.

A degree-``n`` cell is an ``n``-cube labelled by a tuple; ``face(n, i, e, x)``
is the label of its ``i``-th face on side ``e``.  The cellular boundary is

    d = sum_{i=1}^{n} (-1)^{i+1} (d_i^0 - d_i^1).

Homology here is computed from that boundary, not from the algebraic rack
complex, so comparing the two is a genuine check.  Quandle variants take the
quotient by the cells the mapping cones kill.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .homology import HomologyGroup, NotAQuandleError, is_degenerate
from .quandle import FiniteRack
from .smith import invariant_factors_sparse

SPACES = ("rack", "extended_rack", "extended_quandle", "action_quandle")


def _act_drop(X: FiniteRack, x: tuple, i: int) -> tuple:
    # 1-based i: act on x_1..x_{i-1} by x_i, drop x_i
    xi = x[i - 1]
    t = X.table
    return tuple(t[y][xi] for y in x[: i - 1]) + x[i:]


def _drop(x: tuple, i: int) -> tuple:
    return x[: i - 1] + x[i:]


@dataclass
class PreCubicSet:
    name: str
    rack: FiniteRack
    max_degree: int
    shift: int                       # labels in degree n have length n + shift
    cells: dict = field(default_factory=dict)

    def face(self, n: int, i: int, eps: int, x: tuple) -> tuple:
        if not 1 <= i <= n:
            raise IndexError(f"face index {i} out of range for degree {n}")
        j = i + self.shift
        if j == 1:
            return _drop(x, 1)       # d_1^0 = d_1^1 in the rack space
        return _drop(x, j) if eps == 0 else _act_drop(self.rack, x, j)

    def relation_failures(self, limit: int = 1):
        """Violations of ``d_i^e d_j^f = d_{j-1}^f d_i^e`` (i < j), exhaustively."""
        bad = []
        for n in range(2, self.max_degree + 1):
            for x in self.cells[n]:
                for j in range(2, n + 1):
                    for i in range(1, j):
                        for e in (0, 1):
                            for f in (0, 1):
                                lhs = self.face(n - 1, i, e, self.face(n, j, f, x))
                                rhs = self.face(n - 1, j - 1, f, self.face(n, i, e, x))
                                if lhs != rhs:
                                    bad.append((x, i, j, e, f))
                                    if len(bad) >= limit:
                                        return bad
        return bad

    def check_relations(self) -> bool:
        return not self.relation_failures()

    def cellular_boundary(self, n: int, keep=None) -> dict:
        """``{(row, col): coeff}`` of ``d_n``; ``keep`` filters cells (quotient)."""
        rows = [x for x in self.cells[n - 1] if keep is None or keep(x)]
        cols = [x for x in self.cells[n] if keep is None or keep(x)]
        ridx = {x: k for k, x in enumerate(rows)}
        out: dict = {}
        for c, x in enumerate(cols):
            for i in range(1, n + 1):
                s = 1 if i % 2 else -1
                for eps, sgn in ((0, s), (1, -s)):
                    y = self.face(n, i, eps, x)
                    r = ridx.get(y)
                    if r is None:
                        continue
                    out[(r, c)] = out.get((r, c), 0) + sgn
        return {k: v for k, v in out.items() if v}, len(rows), len(cols)


def build_rack_space_cells(X: FiniteRack, max_degree: int = 3) -> PreCubicSet:
    if max_degree > 4:
        raise ValueError("rack space cells are built up to degree 4")
    P = PreCubicSet("rack", X, max_degree, shift=0)
    for n in range(max_degree + 1):
        P.cells[n] = list(product(range(X.size), repeat=n))
    return P


def build_extended_rack_space_cells(X: FiniteRack, max_degree: int = 2) -> PreCubicSet:
    if max_degree > 3:
        raise ValueError("extended rack space cells are built up to degree 3")
    P = PreCubicSet("extended_rack", X, max_degree, shift=1)
    for n in range(max_degree + 1):
        P.cells[n] = list(product(range(X.size), repeat=n + 1))
    return P


def _cell_homology(P: PreCubicSet, k: int, keep=None) -> HomologyGroup:
    if k + 1 > P.max_degree:
        raise ValueError(f"H_{k} needs cells of degree {k + 1}")
    n_k = sum(1 for x in P.cells[k] if keep is None or keep(x))
    if k >= 1:
        ent, r, c = P.cellular_boundary(k, keep)
        rank_out = len(invariant_factors_sparse(ent, r, c))
    else:
        rank_out = 0
    ent, r, c = P.cellular_boundary(k + 1, keep)
    inc = invariant_factors_sparse(ent, r, c)
    return HomologyGroup(n_k - rank_out - len(inc), tuple(d for d in inc if d > 1))


def space_homology(X: FiniteRack, space: str, k: int) -> HomologyGroup:
    """``H_k`` of the named space from its cellular chain complex.

    For the quandle spaces, cells labelled by degenerate tuples are filled by
    the mapping cones and drop out of the chain complex.
    """
    if space == "rack":
        return _cell_homology(build_rack_space_cells(X, k + 1), k)
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}; choose from {SPACES}")
    P = build_extended_rack_space_cells(X, k + 1)
    if space == "extended_rack":
        return _cell_homology(P, k)
    if not X.is_quandle:
        raise NotAQuandleError(f"{space} space needs a quandle")
    start = 0 if space == "extended_quandle" else 1
    return _cell_homology(P, k, keep=lambda x: not is_degenerate(x, start))


# -------------------------------------------------------------------- graphs

@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple
    edges: tuple          # ((source, (a, b), target), ...)
    kind: str

    @property
    def loops(self) -> list:
        return [e for e in self.edges if e[0] == e[2]]

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices),
                "edges": [[s, list(lab), t] for s, lab, t in self.edges]}


def rack_graph(X: FiniteRack) -> LabeledGraph:
    edges = tuple((a, (a, b), X.op(a, b)) for a in range(X.size) for b in range(X.size))
    return LabeledGraph(tuple(range(X.size)), edges, "rack")


def quandle_graph(X: FiniteRack) -> LabeledGraph:
    if not X.is_quandle:
        raise NotAQuandleError("quandle graph needs a quandle")
    edges = tuple(e for e in rack_graph(X).edges if e[1][0] != e[1][1])
    return LabeledGraph(tuple(range(X.size)), edges, "quandle")


def graph_components(G: LabeledGraph) -> list[list[int]]:
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, _, t in G.edges:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    blocks: dict = {}
    for v in G.vertices:
        blocks.setdefault(find(v), []).append(v)
    return sorted(blocks.values())


def component_count(G: LabeledGraph) -> int:
    return len(graph_components(G))


def dot_export(G: LabeledGraph) -> str:
    lines = [f"digraph {G.kind}_graph {{"]
    for v in G.vertices:
        lines.append(f'  {v} [label="{v}"];')
    for s, (a, b), t in G.edges:
        lines.append(f'  {s} -> {t} [label="({a},{b})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------- census

@dataclass
class CellCensus:
    space: str
    counts: dict           # dim -> {"original", "capping", "cone"}
    capping: list          # labels (a, a) carrying a disk
    cones: list            # (label, case, attaching set)

    def totals(self) -> tuple:
        return tuple(sum(self.counts[d].values()) for d in range(4))

    def to_json(self) -> str:
        return json.dumps({
            "space": self.space,
            "cells": {str(d): self.counts[d] for d in range(4)},
            "totals": list(self.totals()),
            "capping": [list(c) for c in self.capping],
            "cones": [{"label": list(lab), "case": case, "attaching": att}
                      for lab, case, att in self.cones],
        }, sort_keys=True)


def _census(X: FiniteRack, action: bool) -> CellCensus:
    if not X.is_quandle:
        raise NotAQuandleError("cell census needs a quandle")
    n = X.size
    counts = {d: {"original": n ** (d + 1), "capping": 0, "cone": 0} for d in range(4)}
    capping = [] if action else [(a, a) for a in range(n)]
    counts[2]["capping"] = len(capping)
    cones = []
    for x in product(range(n), repeat=3):
        a, b, c = x
        if b == c:
            # Case 1 wins ties: (a,a,a) is both, its 2-cell is already a sphere
            cones.append((x, 1, [f"e{list(x)}"]))
        elif a == b and not action:
            ab = X.op(a, c)
            cones.append((x, 2, [f"e{list(x)}", f"D{[a, a]}", f"D{[ab, ab]}"]))
    counts[3]["cone"] = len(cones)
    return CellCensus("action_quandle" if action else "extended_quandle", counts, capping, cones)


def extended_quandle_census(X: FiniteRack) -> CellCensus:
    return _census(X, action=False)


def action_quandle_census(X: FiniteRack) -> CellCensus:
    return _census(X, action=True)
