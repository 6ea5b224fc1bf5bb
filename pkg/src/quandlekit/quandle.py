"""Finite racks and quandles stored as Cayley tables.

Elements are the integers ``0..n-1`` and ``table[a][b]`` is ``a * b``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Optional, Sequence

AXIOMS = ("right_distributivity", "invertibility", "idempotency")

DEFAULT_AUT_BOUND = 8


class TableFormatError(ValueError):
    """The table is not a square array over ``0..n-1``."""


class RackAxiomError(ValueError):
    """The table is well formed but is not a rack."""


class BoundExceeded(RuntimeError):
    """A brute-force search was asked to run past its configured size bound."""


@dataclass(frozen=True)
class ValidationReport:
    size: int
    # axiom name -> None (pass) or the lexicographically first violating tuple
    failures: dict

    def passed(self, axiom: str) -> bool:
        return self.failures[axiom] is None

    @property
    def is_rack(self) -> bool:
        return self.passed("right_distributivity") and self.passed("invertibility")

    @property
    def is_quandle(self) -> bool:
        return self.is_rack and self.passed("idempotency")

    def lines(self) -> list[str]:
        out = []
        for name in AXIOMS:
            bad = self.failures[name]
            out.append(f"{name}: " + ("PASS" if bad is None else f"FAIL at {bad}"))
        return out


def _check_structure(table) -> tuple[tuple[int, ...], ...]:
    try:
        rows = [list(r) for r in table]
    except TypeError as exc:
        raise TableFormatError("table must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise TableFormatError("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise TableFormatError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise TableFormatError(f"entry ({i},{j}) = {v!r} is not an integer")
            if not 0 <= v < n:
                raise TableFormatError(f"entry ({i},{j}) = {v} out of range 0..{n - 1}")
    return tuple(tuple(r) for r in rows)


def validate(table) -> ValidationReport:
    """Check the three axioms exhaustively.

    Raises :class:`TableFormatError` for malformed input; axiom failures are
    reported, not raised.
    """
    t = _check_structure(table)
    n = len(t)
    failures: dict = {name: None for name in AXIOMS}

    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[t[a][c]][t[b][c]]:
            failures["right_distributivity"] = (a, b, c)
            break

    for b in range(n):
        seen = {}
        for a in range(n):
            v = t[a][b]
            if v in seen:
                failures["invertibility"] = (b, seen[v], a)
                break
            seen[v] = a
        if failures["invertibility"] is not None:
            break

    for a in range(n):
        if t[a][a] != a:
            failures["idempotency"] = (a,)
            break

    return ValidationReport(n, failures)


@dataclass(frozen=True)
class FiniteRack:
    """A finite rack; ``is_quandle`` is derived from the table."""

    table: tuple
    name: str = ""

    def __post_init__(self):
        t = _check_structure(self.table)
        object.__setattr__(self, "table", t)
        report = validate(t)
        if not report.is_rack:
            bad = [f"{k} fails at {v}" for k, v in report.failures.items()
                   if v is not None and k != "idempotency"]
            raise RackAxiomError("not a rack: " + "; ".join(bad))

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int, b: int) -> int:
        """``a *^{-1} b``: the unique ``c`` with ``c * b = a``."""
        return self.inverse_table[a][b]

    @cached_property
    def inverse_table(self) -> tuple:
        n = self.size
        inv = [[0] * n for _ in range(n)]
        for b in range(n):
            for c in range(n):
                inv[self.table[c][b]][b] = c
        return tuple(tuple(r) for r in inv)

    @cached_property
    def is_quandle(self) -> bool:
        return all(self.table[a][a] == a for a in range(self.size))

    @property
    def kind(self) -> str:
        return "quandle" if self.is_quandle else "rack"

    def column(self, b: int) -> tuple:
        """The right translation ``a -> a * b`` as a permutation tuple."""
        return tuple(self.table[a][b] for a in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table]}

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.table) + "\n"

    def __repr__(self):
        label = self.name or f"table{self.size}"
        return f"FiniteRack({label}, {self.kind})"


def make_cyclic_rack(n: int) -> FiniteRack:
    if n < 1:
        raise ValueError("cyclic rack needs n >= 1")
    return FiniteRack(tuple(tuple((i + 1) % n for _ in range(n)) for i in range(n)),
                      name=f"cyclic:{n}")


def make_trivial(n: int) -> FiniteRack:
    if n < 1:
        raise ValueError("trivial quandle needs n >= 1")
    return FiniteRack(tuple(tuple(i for _ in range(n)) for i in range(n)),
                      name=f"trivial:{n}")


def make_dihedral(n: int) -> FiniteRack:
    if n < 1:
        raise ValueError("dihedral quandle needs n >= 1")
    return FiniteRack(tuple(tuple((2 * j - i) % n for j in range(n)) for i in range(n)),
                      name=f"dihedral:{n}")


def make_alexander(n: int, t: int) -> FiniteRack:
    """Affine Alexander quandle on Z_n with ``a * b = t a + (1 - t) b``."""
    if n < 1:
        raise ValueError("alexander quandle needs n >= 1")
    if math.gcd(t, n) != 1:
        raise RackAxiomError(f"t={t} is not invertible mod {n}: translations are not bijective")
    return FiniteRack(
        tuple(tuple((t * a + (1 - t) * b) % n for b in range(n)) for a in range(n)),
        name=f"alexander:{n}:{t}",
    )


def _polymulmod(a: list, b: list, f: list, p: int) -> list:
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # f is monic of degree d, low-order coefficients first
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
    return (prod + [0] * d)[:d]


def make_alexander_poly(p: int, coeffs: Sequence[int]) -> FiniteRack:
    """Alexander quandle on ``Z_p[t] / (f)``.

    ``coeffs`` lists ``f`` from the constant term up and must be monic with a
    unit constant term. Element ``k`` encodes the polynomial whose
    coefficients are the base-``p`` digits of ``k``, least significant first.
    ``make_alexander_poly(2, [1, 1, 1])`` is the 4-element tetrahedral quandle.
    """
    f = [c % p for c in coeffs]
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise ValueError("modulus polynomial must be monic of degree >= 1")
    if math.gcd(f[0], p) != 1:
        raise RackAxiomError("t is not a unit modulo the given polynomial")
    size = p ** d

    def enc(poly):
        return sum(c * p ** i for i, c in enumerate(poly))

    def dec(k):
        return [(k // p ** i) % p for i in range(d)]

    t = _polymulmod([0, 1], [1], f, p) if d > 1 else [(-f[0]) % p]
    one_minus_t = [(int(i == 0) - c) % p for i, c in enumerate(t)]
    table = []
    for a in range(size):
        ta = _polymulmod(t, dec(a), f, p)
        row = []
        for b in range(size):
            sb = _polymulmod(one_minus_t, dec(b), f, p)
            row.append(enc([(x + y) % p for x, y in zip(ta, sb)]))
        table.append(tuple(row))
    name = f"alexander_poly:{p}:" + ",".join(str(c) for c in coeffs)
    return FiniteRack(tuple(table), name=name)


def load_table(path) -> FiniteRack:
    """Read a Cayley table from JSON or the plain whitespace text form."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return from_json(json.loads(text), name=path.stem)
    rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    return FiniteRack(rows, name=path.stem)


def from_json(data: dict, name: str = "") -> FiniteRack:
    table = data["table"]
    if table and table[0] and isinstance(table[0][0], str):
        # named elements: index by first appearance in "elements", else in the table
        names = list(data.get("elements") or [])
        for row in table:
            for v in row:
                if v not in names:
                    names.append(v)
        index = {nm: i for i, nm in enumerate(names)}
        table = [[index[v] for v in row] for row in table]
    if "size" in data and data["size"] != len(table):
        raise TableFormatError(f"size {data['size']} does not match {len(table)} rows")
    return FiniteRack(table, name=data.get("name", name))


def from_spec(spec: str) -> FiniteRack:
    """Build a rack from a spec string such as ``dihedral:5`` or a table file path."""
    parts = spec.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "dihedral" and len(parts) == 2:
            return make_dihedral(int(parts[1]))
        if kind == "trivial" and len(parts) == 2:
            return make_trivial(int(parts[1]))
        if kind == "cyclic" and len(parts) == 2:
            return make_cyclic_rack(int(parts[1]))
        if kind == "alexander" and len(parts) == 3:
            return make_alexander(int(parts[1]), int(parts[2]))
        if kind == "alexander_poly" and len(parts) == 3:
            return make_alexander_poly(int(parts[1]), [int(c) for c in parts[2].split(",")])
        if kind == "tetrahedral" and len(parts) == 1:
            return make_alexander_poly(2, [1, 1, 1])
    except ValueError as exc:
        if isinstance(exc, (RackAxiomError, TableFormatError)):
            raise
        raise ValueError(f"bad quandle spec {spec!r}: {exc}") from exc
    if Path(spec).is_file():
        return load_table(spec)
    raise ValueError(f"unrecognised quandle spec {spec!r}")


# ---------------------------------------------------------------- Inn(X)

@dataclass(frozen=True)
class OrbitPartition:
    blocks: tuple
    group_order: int

    def __len__(self):
        return len(self.blocks)


def _compose(p: tuple, q: tuple) -> tuple:
    # apply q first, then p
    return tuple(p[i] for i in q)


def inner_orbits(X: FiniteRack) -> OrbitPartition:
    n = X.size
    gens = sorted({X.column(b) for b in range(n)})

    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for a in range(n):
            ra, rb = find(a), find(g[a])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks = {}
    for a in range(n):
        blocks.setdefault(find(a), []).append(a)

    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt

    ordered = tuple(tuple(b) for b in sorted(blocks.values()))
    return OrbitPartition(ordered, len(seen))


def is_connected(X: FiniteRack) -> bool:
    return len(inner_orbits(X).blocks) == 1


def is_faithful(X: FiniteRack) -> bool:
    cols = [X.column(b) for b in range(X.size)]
    return len(set(cols)) == len(cols)


def _extend_automorphism(X: FiniteRack, partial: dict) -> Optional[dict]:
    """Backtracking search for an automorphism extending ``partial``."""
    n = X.size
    t = X.table

    def close(f: dict, used: set) -> Optional[tuple]:
        f = dict(f)
        used = set(used)
        changed = True
        while changed:
            changed = False
            for a, fa in list(f.items()):
                for b, fb in list(f.items()):
                    ab = t[a][b]
                    img = t[fa][fb]
                    if ab in f:
                        if f[ab] != img:
                            return None
                    else:
                        if img in used:
                            return None
                        f[ab] = img
                        used.add(img)
                        changed = True
        return f, used

    start = close(partial, set(partial.values()))
    if start is None:
        return None

    def search(f, used):
        if len(f) == n:
            return f
        a = min(x for x in range(n) if x not in f)
        for img in range(n):
            if img in used:
                continue
            nf = dict(f)
            nf[a] = img
            res = close(nf, used | {img})
            if res is None:
                continue
            found = search(*res)
            if found is not None:
                return found
        return None

    return search(*start)


def is_homogeneous(X: FiniteRack, bound: int = DEFAULT_AUT_BOUND) -> bool:
    """True iff Aut(X) acts transitively; exhaustive search, refuses ``|X| > bound``."""
    if X.size > bound:
        raise BoundExceeded(f"|X| = {X.size} exceeds the automorphism search bound {bound}")
    return all(_extend_automorphism(X, {0: target}) is not None for target in range(1, X.size))


def automorphism_orbit(X: FiniteRack, a: int = 0, bound: int = DEFAULT_AUT_BOUND) -> list[int]:
    if X.size > bound:
        raise BoundExceeded(f"|X| = {X.size} exceeds the automorphism search bound {bound}")
    return [t for t in range(X.size) if _extend_automorphism(X, {a: t}) is not None]
