"""Verification suites over the fixture corpus.

Each suite yields ``Case`` records; a suite passes when every case does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycles import (HypothesisError, nontrivial_cocycle, pullback_cocycle,
                       shadow_statesum_3cocycle, statesum_2cocycle, verify_connected_sum)
from .coloring import CycleClassifier, count_colorings, count_shadow_colorings, fundamental_classes
from .diagram import DiagramError, reidemeister1_insert, reidemeister2_insert
from .fixtures import load_diagrams, load_quandles, move_pairs
from .homology import homology
from .quandle import inner_orbits, is_connected, make_trivial
from .spaces import (action_quandle_census, build_extended_rack_space_cells,
                     build_rack_space_cells, component_count, extended_quandle_census,
                     quandle_graph, rack_graph, space_homology)

SUITES = ("prop23", "scol-identity", "moves", "consum", "spaces")


@dataclass
class Case:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}{tail}"


# ------------------------------------------------------- connectivity four ways

def connectivity_case(name, X) -> Case:
    orbits = len(inner_orbits(X).blocks)
    rg = component_count(rack_graph(X))
    h0 = space_homology(X, "extended_rack", 0).free_rank
    r1 = homology(X, "R", 1).free_rank
    vals = {"orbits": orbits, "rack_graph": rg, "H0(ext)": h0, "rkH1R": r1}
    if X.is_quandle:
        vals["quandle_graph"] = component_count(quandle_graph(X))
        vals["H0(extQ)"] = space_homology(X, "extended_quandle", 0).free_rank
        vals["rkH1Q"] = homology(X, "Q", 1).free_rank
    same = len(set(vals.values())) == 1
    conn = is_connected(X) == (rg == 1)
    detail = " ".join(f"{k}={v}" for k, v in vals.items()) + f" connected={is_connected(X)}"
    return Case(f"connectivity {name}", same and conn, detail)


def suite_connectivity():
    for name, X in load_quandles().items():
        yield connectivity_case(name, X)


# -------------------------------------------------------------- SCol = |X|Col

def suite_scol_identity():
    quandles = load_quandles()
    for dname, D in load_diagrams().items():
        for qname, X in quandles.items():
            col = count_colorings(D, X)
            scol = count_shadow_colorings(D, X)
            yield Case(f"scol {dname} x {qname}", scol == X.size * col, f"{scol} = {X.size}*{col}")


# --------------------------------------------------------------------- moves

class MoveInvariants:
    """Every computable image compared across Reidemeister-related diagrams."""

    def __init__(self):
        q = load_quandles()
        self.R3 = q["dihedral3"]
        self.S4 = q["tetrahedral"]
        self.count_quandles = [q["dihedral3"], q["dihedral5"], q["tetrahedral"], q["dihedral4"]]
        self.phi = nontrivial_cocycle(self.S4, 2, 2)
        self.theta = [(self.R3, nontrivial_cocycle(self.R3, 3, 3)),
                      (self.S4, nontrivial_cocycle(self.S4, 3, 2)),
                      (self.S4, nontrivial_cocycle(self.S4, 3, 4)),
                      (self.S4, pullback_cocycle(self.S4, self.phi))]
        self.classifiers = [CycleClassifier(self.R3), CycleClassifier(self.S4)]

    def __call__(self, D) -> dict:
        return {
            "col": [count_colorings(D, X) for X in self.count_quandles],
            "scol": [count_shadow_colorings(D, X) for X in self.count_quandles],
            "classes": [sorted(fundamental_classes(D, c.rack, c).items()) for c in self.classifiers],
            "xi": statesum_2cocycle(D, self.S4, self.phi),
            "psi": [shadow_statesum_3cocycle(D, X, t) for X, t in self.theta],
        }


def programmatic_pairs(diagrams: dict):
    for name, D in diagrams.items():
        for arc in range(min(len(D.arcs), 3)):
            for chir in (1, -1):
                for uf in (True, False):
                    yield f"r1 {name} arc{arc} {chir:+d}{'u' if uf else 'o'}", D, \
                        reidemeister1_insert(D, arc, chir, under_first=uf)
        done = 0
        for ao in range(len(D.arcs)):
            for au in range(len(D.arcs)):
                if done >= 3:
                    break
                try:
                    E = reidemeister2_insert(D, ao, au)
                except (ValueError, DiagramError):
                    continue
                done += 1
                yield f"r2 {name} arcs{ao},{au}", D, E


def suite_moves(programmatic: bool = True):
    inv = MoveInvariants()
    cache: dict = {}

    def get(D):
        key = D.to_pd()
        if key not in cache:
            cache[key] = inv(D)
        return cache[key]

    for kind, k, A, B in move_pairs():
        a, b = get(A), get(B)
        diff = [key for key in a if a[key] != b[key]]
        yield Case(f"{kind} pair_{k}", not diff, "differs: " + ",".join(diff) if diff else "")
    if programmatic:
        for name, A, B in programmatic_pairs(load_diagrams()):
            a, b = get(A), get(B)
            diff = [key for key in a if a[key] != b[key]]
            yield Case(name, not diff, "differs: " + ",".join(diff) if diff else "")


# ------------------------------------------------------------ connected sums

def suite_consum():
    q = load_quandles()
    d = load_diagrams()
    R3, S4 = q["dihedral3"], q["tetrahedral"]
    runs = [
        ("R3 trefoil#trefoil", R3, d["trefoil"], d["trefoil"], [], [nontrivial_cocycle(R3, 3, 3)]),
        ("R3 unknot#trefoil", R3, d["unknot"], d["trefoil"], [], []),
        ("R3 trefoil#mirror", R3, d["trefoil"], d["trefoil_mirror"], [], [nontrivial_cocycle(R3, 3, 3)]),
        ("S4 trefoil#figure8", S4, d["trefoil"], d["figure8"],
         [nontrivial_cocycle(S4, 2, 2)], [nontrivial_cocycle(S4, 3, 4)]),
        ("R5 figure8#cinquefoil", q["dihedral5"], d["figure8"], d["cinquefoil"], [], []),
    ]
    for name, X, D1, D2, c2, c3 in runs:
        rep = verify_connected_sum(X, D1, D2, c2, c3)
        yield Case(f"consum {name}", rep.ok, "; ".join(rep.lines()))
    try:
        verify_connected_sum(make_trivial(2), d["trefoil"], d["trefoil"])
        yield Case("consum T2 refused", False, "hypotheses were not checked")
    except HypothesisError as exc:
        yield Case("consum T2 refused", True, str(exc))


# -------------------------------------------------------------------- spaces

def census_formula(n: int, action: bool = False) -> tuple:
    if action:
        return (n, n * n, n ** 3, n ** 4 + n * n)
    return (n, n * n, n ** 3 + n, n ** 4 + 2 * n * n - n)


def suite_spaces():
    for name, X in load_quandles().items():
        deg = 3 if X.size <= 4 else 2
        ok = build_rack_space_cells(X, deg + 1).check_relations() and \
            build_extended_rack_space_cells(X, deg).check_relations()
        yield Case(f"precubic {name}", ok)
        for i in (1, 2):
            a, b = space_homology(X, "extended_rack", i - 1), homology(X, "R", i)
            yield Case(f"H{i - 1}(ext rack) = H{i}^R {name}", a == b, f"{a} vs {b}")
            if X.is_quandle:
                a, b = space_homology(X, "extended_quandle", i - 1), homology(X, "Q", i)
                yield Case(f"H{i - 1}(ext quandle) = H{i}^Q {name}", a == b, f"{a} vs {b}")
        if X.is_quandle:
            got = extended_quandle_census(X).totals()
            yield Case(f"census {name}", got == census_formula(X.size), str(got))
            got = action_quandle_census(X).totals()
            yield Case(f"action census {name}", got == census_formula(X.size, True), str(got))


def run_suite(name: str):
    table = {"prop23": suite_connectivity, "scol-identity": suite_scol_identity, "moves": suite_moves,
             "consum": suite_consum, "spaces": suite_spaces}
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return list(table[name]())
