"""Brute-force oracles that share no code with the package.

They read raw PD text and raw Cayley tables, so a bug in the package's
parser, face tracer, search or Smith form cannot leak in.  Used once to
freeze the [DERIVED] constants in ``frozen.py`` and again in
``test_oracles.py`` to show the frozen values are reproducible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product


# ------------------------------------------------------------------ tables

def dihedral(n):
    return [[(2 * j - i) % n for j in range(n)] for i in range(n)]


def trivial(n):
    return [[i for _ in range(n)] for i in range(n)]


def cyclic(n):
    return [[(i + 1) % n for _ in range(n)] for i in range(n)]


def alexander(n, t):
    return [[(t * a + (1 - t) * b) % n for b in range(n)] for a in range(n)]


def tetrahedral():
    # Z_2[t]/(t^2+t+1): element a0 + 2 a1 <-> a0 + a1 t; a*b = t a + (1 + t) b
    def mul_t(a):
        a0, a1 = a & 1, a >> 1
        # t (a0 + a1 t) = a0 t + a1 t^2 = a0 t + a1 (t + 1)
        return (a1) | ((a0 ^ a1) << 1)

    return [[mul_t(a) ^ mul_t(b) ^ b for b in range(4)] for a in range(4)]


def inverse(table):
    n = len(table)
    inv = [[0] * n for _ in range(n)]
    for b in range(n):
        for c in range(n):
            inv[table[c][b]][b] = c
    return inv


# ------------------------------------------------------------------ diagrams

def raw_pd(text):
    return [tuple(int(v) for v in m.split(",")) for m in re.findall(r"X\[([\d,\s]+)\]", text)]


def _orient(quads):
    """``head[e] = (crossing, slot)`` by propagation from incoming-under slots."""
    where = {}
    for c, q in enumerate(quads):
        for p, e in enumerate(q):
            where.setdefault(e, []).append((c, p))
    head = {}
    for e, occ in where.items():
        for c, p in occ:
            if p == 0:
                head[e] = (c, p)
            if p == 2:
                head[e] = [o for o in occ if o != (c, p)][0]
    changed = True
    while changed:
        changed = False
        for e, (c, p) in list(head.items()):
            tail = [o for o in where[e] if o != (c, p)][0]
            # strand continues through the head crossing and back through the tail crossing
            nxt = quads[c][(p + 2) % 4]
            if nxt not in head:
                head[nxt] = [o for o in where[nxt] if o != (c, (p + 2) % 4)][0]
                changed = True
            prev = quads[tail[0]][(tail[1] + 2) % 4]
            if prev not in head:
                head[prev] = (tail[0], (tail[1] + 2) % 4)
                changed = True
    if len(head) != len(where):
        raise ValueError("oracle cannot orient a component that never passes under")
    return head, where


def _arcs(quads):
    parent = {e: e for q in quads for e in q}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for q in quads:
        a, b = find(q[1]), find(q[3])
        if a != b:
            parent[a] = b
    roots = sorted({find(e) for e in parent})
    return {e: roots.index(find(e)) for e in parent}, len(roots)


def _crossing_data(quads):
    head, _ = _orient(quads)
    arc, n_arcs = _arcs(quads)
    rows = []
    for c, q in enumerate(quads):
        sign = 1 if head[q[3]] == (c, 3) else -1
        rows.append((arc[q[0]], arc[q[1]], arc[q[2]], sign))
    return rows, n_arcs, arc, head


def brute_colorings(pd_text, table):
    """Every arc assignment checked against every crossing: ``|X|^{#arcs}`` work."""
    quads = raw_pd(pd_text)
    n = len(table)
    if not quads:
        return [(a,) for a in range(n)]
    rows, n_arcs, _, _ = _crossing_data(quads)
    out = []
    for col in product(range(n), repeat=n_arcs):
        ok = True
        for ui, ov, uo, s in rows:
            if s > 0 and table[col[ui]][col[ov]] != col[uo]:
                ok = False
                break
            if s < 0 and table[col[uo]][col[ov]] != col[ui]:
                ok = False
                break
        if ok:
            out.append(col)
    return out


def brute_count(pd_text, table):
    return len(brute_colorings(pd_text, table))


def faces(quads):
    """Corner classes: corner ``(c, p)`` sits between slots ``p`` and ``p+1``."""
    where = {}
    for c, q in enumerate(quads):
        for p, e in enumerate(q):
            where.setdefault(e, []).append((c, p))
    parent = {(c, p): (c, p) for c in range(len(quads)) for p in range(4)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for c, q in enumerate(quads):
        for p in range(4):
            slot = (c, (p + 1) % 4)
            other = [o for o in where[q[(p + 1) % 4]] if o != slot][0]
            a, b = find((c, p)), find(other)
            if a != b:
                parent[a] = b
    roots = sorted({find(x) for x in parent})
    return {x: roots.index(find(x)) for x in parent}, len(roots)


def brute_shadow_count(pd_text, table):
    """Arc and region colours both enumerated; regions from the oracle's own face trace."""
    quads = raw_pd(pd_text)
    n = len(table)
    if not quads:
        return sum(1 for a, l, r in product(range(n), repeat=3) if table[r][a] == l)
    rows, n_arcs, arc, head = _crossing_data(quads)
    corner, n_faces = faces(quads)
    sides = []
    for e, (c, p) in head.items():
        right = corner[(c, p)]
        left = corner[(c, (p - 1) % 4)]
        sides.append((arc[e], left, right))
    total = 0
    for col in brute_colorings(pd_text, table):
        for reg in product(range(n), repeat=n_faces):
            if all(reg[l] == table[reg[r]][col[a]] for a, l, r in sides):
                total += 1
    return total


# ------------------------------------------------------------------ homology

def _degenerate(x):
    return any(x[i] == x[i + 1] for i in range(len(x) - 1))


def boundary_matrix(table, n, quotient):
    """Dense rack boundary ``C_n -> C_{n-1}`` written straight from the formula."""
    k = len(table)
    cols = [x for x in product(range(k), repeat=n) if not (quotient and _degenerate(x))]
    rows = [x for x in product(range(k), repeat=n - 1) if not (quotient and _degenerate(x))]
    ridx = {x: i for i, x in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, x in enumerate(cols):
        for i in range(2, n + 1):
            s = (-1) ** i
            drop = x[: i - 1] + x[i:]
            act = tuple(table[y][x[i - 1]] for y in x[: i - 1]) + x[i:]
            if drop in ridx:
                M[ridx[drop]][j] += s
            if act in ridx:
                M[ridx[act]][j] -= s
    return M, len(rows), len(cols)


def rank_q(M):
    A = [[Fraction(v) for v in row] for row in M]
    return _rank(A, lambda a: a != 0, lambda a, b: a / b)


def rank_mod(M, p):
    A = [[v % p for v in row] for row in M]
    return _rank(A, lambda a: a % p != 0, lambda a, b: (a * pow(b, -1, p)) % p, p)


def _rank(A, nz, div, p=None):
    r = 0
    rows = len(A)
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if nz(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(rows):
            if i != r and nz(A[i][c]):
                f = div(A[i][c], A[r][c])
                A[i] = [(a - f * b) if p is None else (a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
    return r


def homology_profile(table, n, quotient, primes=(2, 3, 5)):
    """``(betti, {p: number of torsion summands divisible by p})`` of ``H_n``."""
    k = len(table)
    if n == 0:
        return 1, {}
    Mn, _, cn = boundary_matrix(table, n, quotient)
    Mn1, _, _ = boundary_matrix(table, n + 1, quotient)
    rq_n = rank_q(Mn) if n >= 2 else 0
    rq_n1 = rank_q(Mn1)
    betti = cn - rq_n - rq_n1
    tors = {}
    for p in primes:
        t = rq_n1 - rank_mod(Mn1, p)
        if t:
            tors[p] = t
    return betti, tors


def sympy_invariant_factors(M):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form
    if not M or not M[0]:
        return []
    S = smith_normal_form(Matrix(M), domain=ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


# ------------------------------------------------------------------ cocycles

def brute_quandle_2cocycles(table, m):
    """All ``phi`` on off-diagonal pairs with ``phi o d_3 = 0`` mod m, and the coboundaries."""
    k = len(table)
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    M, rows, _ = boundary_matrix(table, 3, True)
    row_labels = [x for x in product(range(k), repeat=2) if x[0] != x[1]]
    assert row_labels == pairs and len(pairs) == rows
    cocycles = []
    for vals in product(range(m), repeat=len(pairs)):
        if all(sum(vals[i] * M[i][j] for i in range(rows)) % m == 0 for j in range(len(M[0]))):
            cocycles.append(dict(zip(pairs, vals)))
    cobs = set()
    for psi in product(range(m), repeat=k):
        # (delta psi)(a, b) = psi(d(a, b)) = psi(a) - psi(a*b)
        cobs.add(tuple((psi[a] - psi[table[a][b]]) % m for a, b in pairs))
    return pairs, cocycles, cobs


def brute_statesum(pd_text, table, phi, m):
    """``{weight: multiplicity}`` with weight ``sum sign * phi(x, y)``, x the source-side under arc."""
    quads = raw_pd(pd_text)
    if not quads:
        return {0: len(table)}
    rows, _, _, _ = _crossing_data(quads)
    out = {}
    for col in brute_colorings(pd_text, table):
        w = 0
        for ui, ov, uo, s in rows:
            x = col[ui] if s > 0 else col[uo]
            w += s * phi.get((x, col[ov]), 0)
        out[w % m] = out.get(w % m, 0) + 1
    return out
