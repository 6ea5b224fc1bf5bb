"""Rack, degenerate and quandle chain complexes and their (co)homology.

Basis of ``C_n`` is the lexicographically ordered list of ``n``-tuples
(``C_0`` is spanned by the empty tuple).  Boundaries follow

    d(x_1..x_n) = sum_{i=2}^{n} (-1)^i [ (x_1..^x_i..x_n)
                                        - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, .., x_n) ]

and vanish for ``n <= 1``.  Theory ``"Q"`` uses the non-degenerate tuples
directly as a basis of the quotient; ``"A"`` is the analogous quotient that
only kills repeats at positions ``>= 2`` (the complex of the action quandle
space, in extended-space indexing).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np
from scipy import sparse

from .quandle import FiniteRack
from .smith import _normalise_chain, invariant_factors_sparse, smith_normal_form

THEORIES = ("R", "D", "Q", "A")


class DegreeBoundError(ValueError):
    pass


class NotAQuandleError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def default_degree_bound(size: int) -> int:
    if size <= 6:
        return 4
    if size <= 10:
        return 3
    return 2


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        chain = _normalise_chain([t for t in self.torsion if abs(t) > 1])
        object.__setattr__(self, "torsion", tuple(t for t in chain if t > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "HomologyGroup":
        text = text.strip()
        if text == "0":
            return cls()
        rank, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls(rank, tuple(tors))


# ------------------------------------------------------------------ chains

def rack_boundary(X: FiniteRack, x: tuple) -> dict:
    """Boundary of one basis tuple as ``{tuple: coefficient}`` (zeros dropped)."""
    n = len(x)
    out: dict = {}
    t = X.table
    for i in range(2, n + 1):
        s = 1 if i % 2 == 0 else -1
        xi = x[i - 1]
        drop = x[: i - 1] + x[i:]
        act = tuple(t[v][xi] for v in x[: i - 1]) + x[i:]
        out[drop] = out.get(drop, 0) + s
        out[act] = out.get(act, 0) - s
    return {k: v for k, v in out.items() if v}


def is_degenerate(x: tuple, start: int = 0) -> bool:
    """Some ``x[i] == x[i+1]`` with ``i >= start`` (0-based)."""
    return any(x[i] == x[i + 1] for i in range(start, len(x) - 1))


def degenerate_basis(X: FiniteRack, n: int) -> list[tuple]:
    if n <= 1:
        return []
    return [x for x in product(range(X.size), repeat=n) if is_degenerate(x)]


def _all_tuples(k: int, n: int) -> list[tuple]:
    return list(product(range(k), repeat=n))


def rack_boundary_matrix(X: FiniteRack, n: int, degree_bound: int | None = None):
    """``|X|^{n-1} x |X|^n`` sparse integer matrix of the rack boundary."""
    bound = default_degree_bound(X.size) if degree_bound is None else degree_bound
    if n < 0 or n > bound:
        raise DegreeBoundError(f"degree {n} outside 0..{bound}")
    rows = _all_tuples(X.size, n - 1) if n >= 1 else []
    cols = _all_tuples(X.size, n)
    return _matrix(X, rows, cols)


def _matrix(X, rows, cols, project=None):
    ridx = {r: i for i, r in enumerate(rows)}
    data, ri, ci = [], [], []
    if rows and cols and len(cols[0]) >= 2:
        for j, x in enumerate(cols):
            for y, v in rack_boundary(X, x).items():
                i = ridx.get(y)
                if i is None:
                    continue  # projected away (degenerate target in a quotient)
                data.append(v)
                ri.append(i)
                ci.append(j)
    return sparse.csc_array((np.array(data, dtype=np.int64), (ri, ci)),
                            shape=(len(rows), len(cols)))


@dataclass
class ChainComplex:
    theory: str
    max_degree: int
    basis: dict = field(default_factory=dict)      # n -> list of tuples
    boundary: dict = field(default_factory=dict)   # n -> sparse (basis[n-1] x basis[n])
    rack: FiniteRack | None = None

    def rank(self, n: int) -> int:
        return len(self.basis.get(n, []))

    def check_chain_condition(self) -> bool:
        for n in range(2, self.max_degree + 1):
            prod = self.boundary[n - 1] @ self.boundary[n]
            if prod.count_nonzero():
                return False
        return True

    def triplets(self, n: int) -> dict:
        m = self.boundary[n].tocoo()
        return {
            "degree": n,
            "shape": list(m.shape),
            "rows": [list(t) for t in self.basis[n - 1]],
            "cols": [list(t) for t in self.basis[n]],
            "entries": sorted([int(i), int(j), int(v)] for i, j, v in zip(m.row, m.col, m.data)),
        }

    def to_json(self) -> str:
        return json.dumps({"theory": self.theory,
                           "boundaries": [self.triplets(n) for n in range(1, self.max_degree + 1)]})


def _basis_for(X: FiniteRack, theory: str, n: int) -> list[tuple]:
    tuples = _all_tuples(X.size, n)
    if theory == "R":
        return tuples
    if theory == "D":
        return [x for x in tuples if is_degenerate(x)]
    if theory == "Q":
        return [x for x in tuples if not is_degenerate(x)]
    if theory == "A":
        return [x for x in tuples if not is_degenerate(x, start=1)]
    raise ValueError(f"unknown theory {theory!r}")


def _escaping_tuple(X: FiniteRack, max_degree: int, start: int = 0):
    """First degenerate tuple whose boundary leaves the degenerate span."""
    for n in range(2, max_degree + 1):
        for x in product(range(X.size), repeat=n):
            if not is_degenerate(x, start):
                continue
            for y in rack_boundary(X, x):
                if not is_degenerate(y, start):
                    return x
    return None


def build_complex(X: FiniteRack, theory: str = "R", max_degree: int | None = None,
                  degree_bound: int | None = None) -> ChainComplex:
    bound = default_degree_bound(X.size) if degree_bound is None else degree_bound
    if max_degree is None:
        max_degree = bound
    if max_degree > bound:
        raise DegreeBoundError(f"max_degree {max_degree} exceeds bound {bound} for |X|={X.size}")
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    if theory != "R":
        start = 1 if theory == "A" else 0
        witness = _escaping_tuple(X, max_degree, start)
        if witness is not None or not X.is_quandle:
            raise NotAQuandleError(
                f"theory {theory} needs a quandle; boundary of {witness} leaves the degenerate subcomplex",
                witness)
    cx = ChainComplex(theory, max_degree, rack=X)
    for n in range(0, max_degree + 1):
        cx.basis[n] = _basis_for(X, theory, n)
    for n in range(1, max_degree + 1):
        cx.boundary[n] = _matrix(X, cx.basis[n - 1], cx.basis[n])
    if theory == "D":
        # restriction must not lose anything: the subcomplex property
        for n in range(2, max_degree + 1):
            for x in cx.basis[n]:
                assert all(is_degenerate(y) for y in rack_boundary(X, x))
    return cx


# ---------------------------------------------------------------- homology

def _factors(mat) -> list[int]:
    coo = mat.tocoo()
    entries = {(int(i), int(j)): int(v) for i, j, v in zip(coo.row, coo.col, coo.data)}
    return invariant_factors_sparse(entries, mat.shape[0], mat.shape[1])


def integral_homology(cx: ChainComplex, n: int) -> HomologyGroup:
    if n < 0:
        return HomologyGroup()
    if n + 1 > cx.max_degree:
        raise DegreeBoundError(f"H_{n} needs the boundary in degree {n + 1} > {cx.max_degree}")
    c_n = cx.rank(n)
    rank_out = len(_factors(cx.boundary[n])) if n >= 1 else 0
    inc = _factors(cx.boundary[n + 1])
    free = c_n - rank_out - len(inc)
    return HomologyGroup(free, tuple(d for d in inc if d > 1))


def homology_of_complex(cx: ChainComplex, n: int, coefficients: int = 0) -> HomologyGroup:
    """``coefficients=0`` means Z; ``m > 1`` means Z_m (universal coefficients)."""
    H = integral_homology(cx, n)
    if coefficients == 0:
        return H
    m = coefficients
    if m < 2:
        raise ValueError("coefficient modulus must be 0 (integers) or >= 2")
    prev = integral_homology(cx, n - 1) if n >= 1 else HomologyGroup()
    parts = [m] * H.free_rank
    parts += [gcd(d, m) for d in H.torsion]
    parts += [gcd(d, m) for d in prev.torsion]
    return HomologyGroup(0, tuple(parts))


def homology(X: FiniteRack, theory: str, n: int, coefficients: int = 0,
             degree_bound: int | None = None) -> HomologyGroup:
    bound = default_degree_bound(X.size) if degree_bound is None else degree_bound
    if n + 1 > bound:
        raise DegreeBoundError(f"H_{n} needs degree {n + 1}, bound is {bound} for |X|={X.size}")
    cx = build_complex(X, theory, n + 1, degree_bound=bound)
    return homology_of_complex(cx, n, coefficients)


# --------------------------------------------------------------- cohomology

def _dense(mat) -> list:
    return [[int(v) for v in row] for row in mat.toarray()]


def _transpose(a: list, ncols: int) -> list:
    return [list(col) for col in zip(*a)] if a else [[] for _ in range(ncols)]


def cocycle_generators(cx: ChainComplex, n: int, m: int) -> list[list[int]]:
    """Generators of ``ker(delta: C^n -> C^{n+1})`` with Z_m (m >= 2) or Z (m = 0) values."""
    if n + 1 > cx.max_degree:
        raise DegreeBoundError(f"delta on C^{n} needs degree {n + 1} > {cx.max_degree}")
    c_n = cx.rank(n)
    if c_n == 0:
        return []
    if n == 0 or cx.rank(n + 1) == 0:
        return [[int(i == j) for i in range(c_n)] for j in range(c_n)]
    A = _transpose(_dense(cx.boundary[n + 1]), c_n)      # rows C_{n+1}, cols C_n
    res = smith_normal_form(A, left=False, right=True)
    V = res.right
    r = res.rank
    gens = []
    for i in range(c_n):
        d = res.diagonal[i] if i < len(res.diagonal) else 0
        if i < r:
            if m == 0:
                continue
            k = m // gcd(d, m)
            if k == m:
                continue
        else:
            k = 1
        vec = [V[row][i] * k for row in range(c_n)]
        if m:
            vec = [v % m for v in vec]
        if any(vec):
            gens.append(vec)
    return gens


class CoboundaryTest:
    """Decides membership in ``im(delta: C^{n-1} -> C^n)`` over Z_m or Z."""

    def __init__(self, cx: ChainComplex, n: int, m: int):
        self.m = m
        self.size = cx.rank(n)
        if n == 0:
            self.U = None
            return
        B = _transpose(_dense(cx.boundary[n]), cx.rank(n - 1))   # rows C_n, cols C_{n-1}
        if not B or not B[0]:
            self.U = None
            return
        res = smith_normal_form(B, left=True, right=False)
        self.U = res.left
        self.diag = res.diagonal

    def __call__(self, vec) -> bool:
        m = self.m
        if self.U is None:
            return all((v % m if m else v) == 0 for v in vec)
        for i, row in enumerate(self.U):
            y = sum(a * b for a, b in zip(row, vec) if a and b)
            d = self.diag[i] if i < len(self.diag) else 0
            if m:
                g = gcd(d, m)
                if y % g:
                    return False
            else:
                if d == 0:
                    if y:
                        return False
                elif y % d:
                    return False
        return True


def cohomology(X: FiniteRack, theory: str, n: int, coefficients: int = 0,
               degree_bound: int | None = None):
    """Return ``(group, cocycle_basis, is_coboundary_flags, basis_labels)``.

    The group is computed by universal coefficients from integral homology;
    the cocycles are explicit value vectors on ``basis_labels``.
    """
    bound = default_degree_bound(X.size) if degree_bound is None else degree_bound
    if n + 1 > bound:
        raise DegreeBoundError(f"H^{n} needs degree {n + 1}, bound is {bound} for |X|={X.size}")
    cx = build_complex(X, theory, n + 1, degree_bound=bound)
    m = coefficients
    Hn = integral_homology(cx, n)
    Hprev = integral_homology(cx, n - 1) if n >= 1 else HomologyGroup()
    if m == 0:
        group = HomologyGroup(Hn.free_rank, Hprev.torsion)
    else:
        parts = [m] * Hn.free_rank + [gcd(d, m) for d in Hn.torsion] + [gcd(d, m) for d in Hprev.torsion]
        group = HomologyGroup(0, tuple(parts))
    gens = cocycle_generators(cx, n, m)
    test = CoboundaryTest(cx, n, m)
    flags = [test(g) for g in gens]
    return group, gens, flags, cx.basis[n]


def coboundary_matrix(cx: ChainComplex, n: int):
    """``delta^n`` as a sparse matrix (transpose of the degree ``n+1`` boundary)."""
    return cx.boundary[n + 1].T.tocsc()
