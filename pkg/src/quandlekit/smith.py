"""Exact Smith normal form over the integers.

All arithmetic is done on Python ints, so intermediate growth is harmless.
``smith_normal_form`` returns unimodular transforms; ``invariant_factors``
skips them and first strips unit pivots sparsely, which is what makes the
larger rack boundary matrices cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SNFResult:
    diagonal: list          # length min(rows, cols), d_i | d_{i+1}, zeros last
    left: list | None       # rows x rows, unimodular
    right: list | None      # cols x cols, unimodular
    shape: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_rows(matrix) -> tuple[list, int, int]:
    if hasattr(matrix, "toarray"):
        matrix = matrix.toarray()
    rows = [[int(v) for v in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    return rows, nrows, ncols


def _snf_dense(a: list, nrows: int, ncols: int, want_left: bool, want_right: bool):
    L = _identity(nrows) if want_left else None
    R = _identity(ncols) if want_right else None

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            if L is not None:
                L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            if R is not None:
                for row in R:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if k:
            rs, rd = a[src], a[dst]
            for c in range(ncols):
                if rs[c]:
                    rd[c] += k * rs[c]
            if L is not None:
                ls, ld = L[src], L[dst]
                for c in range(nrows):
                    if ls[c]:
                        ld[c] += k * ls[c]

    def add_col(dst, src, k):
        if k:
            for row in a:
                if row[src]:
                    row[dst] += k * row[src]
            if R is not None:
                for row in R:
                    if row[src]:
                        row[dst] += k * row[src]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])

        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t into the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if L is not None:
                L[t] = [-v for v in L[t]]
        t += 1

    diag = [a[i][i] for i in range(min(nrows, ncols))]
    return diag, L, R


def smith_normal_form(matrix, left: bool = True, right: bool = True) -> SNFResult:
    """Return ``left @ matrix @ right == diag(diagonal)``."""
    rows, nrows, ncols = _as_rows(matrix)
    diag, L, R = _snf_dense(rows, nrows, ncols, left, right)
    return SNFResult(diag, L, R, (nrows, ncols))


def invariant_factors(matrix) -> list[int]:
    """Nonzero SNF diagonal entries (including 1s), in divisibility order."""
    rows, nrows, ncols = _as_rows(matrix)
    # sparse rows: col -> value
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    return _sparse_invariant_factors(sparse, ncols)


def invariant_factors_sparse(entries: dict, nrows: int, ncols: int) -> list[int]:
    """Like :func:`invariant_factors` for ``{(row, col): value}`` input."""
    sparse = [dict() for _ in range(nrows)]
    for (i, j), v in entries.items():
        if v:
            sparse[i][j] = int(v)
    return _sparse_invariant_factors(sparse, ncols)


def _sparse_invariant_factors(sparse: list, ncols: int) -> list[int]:
    units = 0
    col_rows: dict = {}
    for i, r in enumerate(sparse):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(sparse) if r)

    # eliminate +-1 pivots; a unit pivot contributes an invariant factor 1
    progress = True
    while progress:
        progress = False
        best = None
        for i in alive:
            r = sparse[i]
            for j, v in r.items():
                if v == 1 or v == -1:
                    key = (len(r) - 1) * (len(col_rows[j]) - 1)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                    break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = sparse[pi]
        pv = prow[pj]
        for i in list(col_rows[pj]):
            if i == pi:
                continue
            r = sparse[i]
            k = r[pj] * pv  # pv = +-1 so this is the exact multiple
            for j, v in prow.items():
                nv = r.get(j, 0) - k * v
                if nv:
                    if j not in r:
                        col_rows[j].add(i)
                    r[j] = nv
                else:
                    if j in r:
                        del r[j]
                        col_rows[j].discard(i)
            if not r:
                alive.discard(i)
        for j in prow:
            col_rows[j].discard(pi)
        sparse[pi] = {}
        alive.discard(pi)
        units += 1
        progress = True

    rest_rows = sorted(alive)
    rest_cols = sorted({j for i in rest_rows for j in sparse[i]})
    factors = [1] * units
    if rest_rows and rest_cols:
        cidx = {j: k for k, j in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for r_new, i in enumerate(rest_rows):
            for j, v in sparse[i].items():
                dense[r_new][cidx[j]] = v
        diag, _, _ = _snf_dense(dense, len(rest_rows), len(rest_cols), False, False)
        factors += [d for d in diag if d]
    factors.sort()
    return _normalise_chain(factors)


def _normalise_chain(factors: list[int]) -> list[int]:
    # any diagonal can be rewritten into a divisibility chain with the same product
    f = [abs(x) for x in factors if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(f)):
            for j in range(i + 1, len(f)):
                if f[j] % f[i]:
                    g = gcd(f[i], f[j])
                    f[i], f[j] = g, f[i] * f[j] // g
                    changed = True
        f.sort()
    return f


def is_divisibility_chain(diag: list[int]) -> bool:
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag):
        return False
    if nz != [d for d in diag[: len(nz)]]:
        return False  # zeros must trail
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def matmul(A, B) -> list:
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        Oi[j] += a * Bt[j]
    return out


def determinant(M) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
