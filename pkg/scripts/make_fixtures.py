"""Regenerate the shipped fixture corpus under src/quandlekit/fixtures.

Diagrams come from hand-written PD codes and braid closures; move pairs are
R1/R2 rewrites of those diagrams plus braid-relation (R3) pairs.  Output is
deterministic, so rerunning must leave the tree unchanged.

    python scripts/make_fixtures.py [--out DIR]
"""

from __future__ import annotations

import argparse
import json
from itertools import count
from pathlib import Path

from quandlekit.diagram import (FIGURE_EIGHT, HOPF, TREFOIL, UNKNOT, DiagramError,
                                connected_sum, from_oriented_crossings, mirror,
                                parse_pd, reidemeister1_insert, reidemeister2_insert)
from quandlekit.quandle import (make_alexander, make_alexander_poly, make_cyclic_rack,
                                make_dihedral, make_trivial)

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "quandlekit" / "fixtures"


def braid_closure(word, strands: int):
    """Closure of a braid word (``+i`` for sigma_i, ``-i`` for its inverse); strands run upward."""
    bottom = [("b", i) for i in range(strands)]
    cur = list(bottom)
    crossings, heads = [], {}
    fresh = count()
    for g in word:
        i = abs(g) - 1
        k = len(crossings)
        nw, ne = ("e", next(fresh)), ("e", next(fresh))
        left, right = cur[i], cur[i + 1]
        if g > 0:
            crossings.append([right, ne, nw, left])
            heads[right], heads[left] = (k, 0), (k, 3)
        else:
            crossings.append([left, right, ne, nw])
            heads[left], heads[right] = (k, 0), (k, 1)
        cur[i], cur[i + 1] = nw, ne
    if any(cur[i] == bottom[i] for i in range(strands)):
        raise ValueError("every strand must take part in a crossing")
    sub = {cur[i]: bottom[i] for i in range(strands)}
    crossings = [[sub.get(v, v) for v in q] for q in crossings]
    return from_oriented_crossings(crossings, heads)


BRAIDS = {
    "cinquefoil": ([1, 1, 1, 1, 1], 2),
    "three_twist": ([1, 1, 1, 2, -1, 2], 3),        # 5_2
    "torus_link_2_4": ([1, 1, 1, 1], 2),
    "borromean": ([1, -2, 1, -2, 1, -2], 3),
}

# (left, right, tail): closures of left+tail and right+tail differ by one R3 move
R3_WORDS = [
    ([1, 2, 1], [2, 1, 2], [2]),
    ([1, 2, 1], [2, 1, 2], [-2]),
    ([1, 2, 1], [2, 1, 2], [1, 1]),
    ([1, 2, -1], [-2, 1, 2], [2]),
    ([1, 2, -1], [-2, 1, 2], [-1, -2]),
    ([-1, -2, -1], [-2, -1, -2], [2]),
    ([-1, -2, -1], [-2, -1, -2], [-1, 2]),
    ([2, 3, 2], [3, 2, 3], [1, -3, 1]),
    ([-1, 2, 1], [2, 1, -2], [-2, 1]),
    ([1, -2, -1], [-2, -1, 2], [1, 2]),
]


def base_diagrams() -> dict:
    T = parse_pd(TREFOIL)
    out = {
        "unknot": parse_pd(UNKNOT),
        "trefoil": T,
        "trefoil_mirror": mirror(T),
        "figure8": parse_pd(FIGURE_EIGHT),
        "hopf": parse_pd(HOPF),
        "granny": connected_sum(T, T),
        "square": connected_sum(T, mirror(T)),
    }
    for name, (word, n) in BRAIDS.items():
        out[name] = braid_closure(word, n)
    return out


def quandles() -> dict:
    return {
        "dihedral3": make_dihedral(3),
        "dihedral4": make_dihedral(4),
        "dihedral5": make_dihedral(5),
        "dihedral6": make_dihedral(6),
        "trivial2": make_trivial(2),
        "trivial3": make_trivial(3),
        "tetrahedral": make_alexander_poly(2, [1, 1, 1]),
        "alexander5_2": make_alexander(5, 2),
    }


def r1_pairs(diagrams: dict):
    for name in ("unknot", "trefoil", "figure8", "hopf"):
        D = diagrams[name]
        for chir in (1, -1):
            for under_first in (True, False):
                yield D, reidemeister1_insert(D, 0, chir, under_first=under_first)


def r2_pairs(diagrams: dict):
    for name in ("unknot", "trefoil", "figure8", "hopf", "three_twist"):
        D = diagrams[name]
        made = 0
        for ao in range(len(D.arcs)):
            for au in range(len(D.arcs)):
                try:
                    E = reidemeister2_insert(D, ao, au)
                except (ValueError, DiagramError):
                    continue
                yield D, E
                made += 1
                if made == 2:
                    break
            if made == 2:
                break


def r3_pairs():
    for left, right, tail in R3_WORDS:
        n = max(abs(g) for g in left + right + tail) + 1
        yield braid_closure(left + tail, n), braid_closure(right + tail, n)


def write(out: Path):
    diagrams = base_diagrams()
    ddir = out / "diagrams"
    ddir.mkdir(parents=True, exist_ok=True)
    for name, D in diagrams.items():
        (ddir / f"{name}.pd").write_text(D.to_pd() + "\n")
    qdir = out / "quandles"
    qdir.mkdir(parents=True, exist_ok=True)
    for name, X in quandles().items():
        (qdir / f"{name}.json").write_text(json.dumps({"size": X.size, "table": [list(r) for r in X.table]}) + "\n")
    for move, pairs in (("r1", r1_pairs(diagrams)), ("r2", r2_pairs(diagrams)), ("r3", r3_pairs())):
        mdir = out / "moves" / move
        mdir.mkdir(parents=True, exist_ok=True)
        for old in mdir.glob("*.pd"):
            old.unlink()
        for k, (a, b) in enumerate(pairs, start=1):
            (mdir / f"pair_{k}_a.pd").write_text(a.to_pd() + "\n")
            (mdir / f"pair_{k}_b.pd").write_text(b.to_pd() + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args(argv)
    write(args.out)
    print(f"fixtures written to {args.out}")


if __name__ == "__main__":
    main()
