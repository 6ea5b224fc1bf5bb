"""Print the constants frozen in tests/frozen.py, recomputed by the brute-force oracles.

    python scripts/freeze_oracles.py
"""

import pprint
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
import oracles as O  # noqa: E402

FIX = Path(__file__).resolve().parents[1] / "src" / "quandlekit" / "fixtures" / "diagrams"
QUANDLES = {"R3": O.dihedral(3), "R4": O.dihedral(4), "R5": O.dihedral(5), "T3": O.trivial(3), "S4": O.tetrahedral()}


def main():
    pd = {p.stem: p.read_text() for p in sorted(FIX.glob("*.pd"))}
    pprint.pprint({d: {q: O.brute_count(t, T) for q, T in QUANDLES.items()} for d, t in pd.items()})
    pprint.pprint({d: {q: O.brute_shadow_count(pd[d], QUANDLES[q]) for q in ("R3", "T3", "S4")}
                   for d in ("unknot", "trefoil", "figure8", "hopf", "trefoil_mirror")})
    for name in ("R3", "T3", "S4", "R4"):
        for quot in (False, True):
            print(name, "Q" if quot else "R", [O.homology_profile(QUANDLES[name], n, quot) for n in (1, 2, 3)])
    M, _, _ = O.boundary_matrix(QUANDLES["R3"], 4, True)
    print("R3 d4Q", O.sympy_invariant_factors(M)[-3:])
    pairs, cocs, cobs = O.brute_quandle_2cocycles(QUANDLES["S4"], 2)
    print(len(cocs), len(cobs))
    nontriv = [c for c in cocs if tuple(c[p] for p in pairs) not in cobs]
    for d in ("unknot", "trefoil", "figure8", "trefoil_mirror", "hopf", "granny"):
        print(d, {str(sorted(O.brute_statesum(pd[d], QUANDLES["S4"], c, 2).items())) for c in nontriv})


if __name__ == "__main__":
    main()
