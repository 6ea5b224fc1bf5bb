"""Quandle cocycles over Z_m and the state-sum images of the homotopy invariants.

A 2-cocycle ``phi`` gives, per coloring, the weight ``sum_c sign(c) phi(x_c, y_c)``;
a 3-cocycle ``theta`` gives, per shadow coloring, ``sum_c sign(c) theta(r_c, x_c, y_c)``.
Collecting weights over all (shadow) colorings yields an element of the group
ring Z[Z_m], stored as a multiset.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .coloring import (count_colorings, count_shadow_colorings, crossing_terms,
                       enumerate_colorings, enumerate_shadow_colorings, pair_terms)
from .diagram import LinkDiagram, connected_sum
from .homology import cohomology, rack_boundary
from .quandle import FiniteRack, is_connected, is_faithful


class HypothesisError(ValueError):
    """The theorem being checked does not apply to this input."""


# ------------------------------------------------------------------ cocycles

@dataclass(frozen=True)
class Cocycle:
    degree: int
    modulus: int
    values: dict = field(default_factory=dict)   # tuple -> nonzero residue

    def __post_init__(self):
        m = self.modulus
        clean = {tuple(k): v % m for k, v in self.values.items() if v % m}
        object.__setattr__(self, "values", clean)

    def __call__(self, *t) -> int:
        return self.values.get(t, 0)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        if (self.degree, self.modulus) != (other.degree, other.modulus):
            raise ValueError("cocycles of different degree or modulus")
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, 0) + v
        return Cocycle(self.degree, self.modulus, out)

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(self.degree, self.modulus, {t: k * v for t, v in self.values.items()})

    @property
    def is_zero(self) -> bool:
        return not self.values

    def to_json(self) -> dict:
        return {"degree": self.degree, "m": self.modulus,
                "entries": [[*t, v] for t, v in sorted(self.values.items())]}

    @classmethod
    def from_json(cls, data) -> "Cocycle":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["degree"])
        vals = {}
        for row in data["entries"]:
            if len(row) != n + 1:
                raise ValueError(f"entry {row} does not have {n} coordinates plus a value")
            vals[tuple(int(v) for v in row[:n])] = int(row[n])
        return cls(n, int(data["m"]), vals)

    @classmethod
    def from_vector(cls, degree: int, modulus: int, basis, vec) -> "Cocycle":
        return cls(degree, modulus, {tuple(b): int(v) for b, v in zip(basis, vec)})


def zero_cocycle(degree: int, modulus: int) -> Cocycle:
    return Cocycle(degree, modulus, {})


def coboundary(X: FiniteRack, psi: Cocycle) -> Cocycle:
    """``delta psi = psi o d`` on all ``(n+1)``-tuples."""
    n = psi.degree + 1
    vals = {}
    for x in product(range(X.size), repeat=n):
        s = sum(c * psi(*y) for y, c in rack_boundary(X, x).items())
        if s % psi.modulus:
            vals[x] = s
    return Cocycle(n, psi.modulus, vals)


def is_cocycle(X: FiniteRack, c: Cocycle) -> bool:
    return coboundary(X, c).is_zero


def find_cocycles(X: FiniteRack, degree: int, m: int, theory: str = "Q"):
    """Spanning cocycles of ``ker delta`` over Z_m and their coboundary flags.

    Returns ``(group, cocycles, is_coboundary)`` where ``group`` is ``H^degree``.
    """
    if degree not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    group, gens, flags, basis = cohomology(X, theory, degree, m)
    cocycles = [Cocycle.from_vector(degree, m, basis, g) for g in gens]
    return group, cocycles, flags


def nontrivial_cocycle(X: FiniteRack, degree: int, m: int, theory: str = "Q"):
    """First spanning cocycle that is not a coboundary, or ``None``."""
    _, cocycles, flags = find_cocycles(X, degree, m, theory)
    for c, cob in zip(cocycles, flags):
        if not cob:
            return c
    return None


def pullback_cocycle(X: FiniteRack, phi: Cocycle) -> Cocycle:
    """``theta(r, x, y) = phi(x, y)`` for every region colour ``r``."""
    if phi.degree != 2:
        raise ValueError("pull back needs a 2-cocycle")
    vals = {(r, x, y): v for r in range(X.size) for (x, y), v in phi.values.items()}
    return Cocycle(3, phi.modulus, vals)


# ----------------------------------------------------------------- state-sums

@dataclass(frozen=True)
class StateSum:
    """An element ``sum_k n_k u^k`` of Z[Z_m], kept as sorted ``(k, n_k)`` pairs."""

    modulus: int
    terms: tuple = ()

    def __post_init__(self):
        m = self.modulus
        acc: Counter = Counter()
        for w, n in self.terms:
            acc[w % m] += n
        object.__setattr__(self, "terms", tuple(sorted((w, n) for w, n in acc.items() if n)))

    @classmethod
    def from_weights(cls, weights, modulus: int) -> "StateSum":
        return cls(modulus, tuple(Counter(w % modulus for w in weights).items()))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def total(self) -> int:
        return sum(n for _, n in self.terms)

    def __mul__(self, other):
        if isinstance(other, int):
            return StateSum(self.modulus, tuple((w, other * n) for w, n in self.terms))
        if self.modulus != other.modulus:
            raise ValueError("state-sums over different coefficient groups")
        acc: Counter = Counter()
        for w1, n1 in self.terms:
            for w2, n2 in other.terms:
                acc[(w1 + w2) % self.modulus] += n1 * n2
        return StateSum(self.modulus, tuple(acc.items()))

    __rmul__ = __mul__

    def to_json(self):
        return [[w, n] for w, n in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{n}*u^{w}" if w else str(n) for w, n in self.terms)


def _check_degree(c: Cocycle, degree: int):
    if c.degree != degree:
        raise ValueError(f"expected a {degree}-cocycle, got degree {c.degree}")


def coloring_weights(D: LinkDiagram, X: FiniteRack, phi: Cocycle) -> list[int]:
    _check_degree(phi, 2)
    out = []
    for col in enumerate_colorings(D, X):
        out.append(sum(s * phi(*t) for s, t in pair_terms(col)) % phi.modulus)
    return out


def shadow_weights(D: LinkDiagram, X: FiniteRack, theta: Cocycle) -> list[int]:
    _check_degree(theta, 3)
    out = []
    for sc in enumerate_shadow_colorings(D, X):
        out.append(sum(s * theta(*t) for s, t in crossing_terms(sc)) % theta.modulus)
    return out


def statesum_2cocycle(D: LinkDiagram, X: FiniteRack, phi: Cocycle) -> StateSum:
    return StateSum.from_weights(coloring_weights(D, X, phi), phi.modulus)


def shadow_statesum_3cocycle(D: LinkDiagram, X: FiniteRack, theta: Cocycle) -> StateSum:
    return StateSum.from_weights(shadow_weights(D, X, theta), theta.modulus)


# ------------------------------------------------------------ connected sums

@dataclass
class Check:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.lhs} == {self.rhs}"


@dataclass
class ConnectedSumReport:
    quandle: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def check_connected_sum_hypotheses(X: FiniteRack) -> None:
    if not X.is_quandle:
        raise HypothesisError(f"{X.name or 'X'} is not a quandle")
    if not is_connected(X):
        raise HypothesisError(f"{X.name or 'X'} is not connected")
    if not is_faithful(X):
        raise HypothesisError(f"{X.name or 'X'} is not faithful")


def verify_connected_sum(X: FiniteRack, D1: LinkDiagram, D2: LinkDiagram,
                         cocycles2=(), cocycles3=(), summed: LinkDiagram | None = None) -> ConnectedSumReport:
    """Count, shadow-count and state-sum identities for ``K1 # K2``."""
    check_connected_sum_hypotheses(X)
    for D in (D1, D2):
        if D.components != 1:
            raise HypothesisError("connected sum needs knots (one component each)")
    K = connected_sum(D1, D2) if summed is None else summed
    n = X.size
    checks = [
        Check("|X| Col(K1#K2) = Col(K1) Col(K2)",
              n * count_colorings(K, X), count_colorings(D1, X) * count_colorings(D2, X)),
        Check("|X|^2 SCol(K1#K2) = SCol(K1) SCol(K2)",
              n * n * count_shadow_colorings(K, X),
              count_shadow_colorings(D1, X) * count_shadow_colorings(D2, X)),
    ]
    for i, phi in enumerate(cocycles2):
        lhs = statesum_2cocycle(K, X, phi) * n
        rhs = statesum_2cocycle(D1, X, phi) * statesum_2cocycle(D2, X, phi)
        checks.append(Check(f"|X| Xi(K1#K2) = Xi(K1) Xi(K2) [phi{i}, Z_{phi.modulus}]", lhs, rhs))
    for i, theta in enumerate(cocycles3):
        lhs = shadow_statesum_3cocycle(K, X, theta) * (n * n)
        rhs = shadow_statesum_3cocycle(D1, X, theta) * shadow_statesum_3cocycle(D2, X, theta)
        checks.append(Check(f"|X|^2 Psi(K1#K2) = Psi(K1) Psi(K2) [theta{i}, Z_{theta.modulus}]", lhs, rhs))
    return ConnectedSumReport(X.name, checks)
