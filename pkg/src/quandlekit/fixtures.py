"""Locate and load the shipped fixture corpus.

Set ``QUANDLEKIT_FIXTURES`` to point at another directory with the same
layout: ``diagrams/*.pd``, ``quandles/*.json`` and
``moves/{r1,r2,r3}/pair_k_{a,b}.pd``.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

from .diagram import LinkDiagram, load_pd, parse_pd
from .quandle import FiniteRack, load_table

ENV_VAR = "QUANDLEKIT_FIXTURES"
_PAIR = re.compile(r"pair_(\d+)_a\.pd$")


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path(__file__).resolve().parent / "fixtures"


def diagram_paths() -> dict:
    return {p.stem: p for p in sorted((fixture_dir() / "diagrams").glob("*.pd"))}


def load_diagrams() -> dict:
    return {name: load_pd(p) for name, p in diagram_paths().items()}


def load_quandles() -> dict:
    out = {}
    for p in sorted((fixture_dir() / "quandles").glob("*.json")):
        X = load_table(p)
        out[p.stem] = FiniteRack(X.table, p.stem)
    return out


def move_pairs(kinds=("r1", "r2", "r3")) -> list:
    """``[(kind, k, A, B), ...]`` sorted by kind then pair number."""
    out = []
    for kind in kinds:
        d = fixture_dir() / "moves" / kind
        found = []
        for p in d.glob("pair_*_a.pd"):
            m = _PAIR.search(p.name)
            if m:
                found.append((int(m.group(1)), p))
        for k, p in sorted(found):
            b = p.with_name(f"pair_{k}_b.pd")
            if not b.exists():
                raise FileNotFoundError(f"{p} has no partner {b.name}")
            out.append((kind, k, load_pd(p), load_pd(b)))
    return out


def resolve_diagram(arg: str) -> LinkDiagram:
    """A path, inline PD text, or the name of a fixture diagram."""
    text = arg.strip()
    if text.startswith(("PD", "[")):
        return parse_pd(text)
    path = Path(arg)
    if path.is_file():
        return load_pd(path)
    named = diagram_paths()
    if arg in named:
        return load_pd(named[arg])
    raise FileNotFoundError(f"no diagram file or fixture named {arg!r}")
