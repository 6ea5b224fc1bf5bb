"""Command-line front end.

Exit codes: 0 success, 1 verification failure (or a table that is not a
rack), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .cocycles import (Cocycle, is_cocycle, nontrivial_cocycle, pullback_cocycle,
                       shadow_statesum_3cocycle, statesum_2cocycle, zero_cocycle)
from .coloring import (count_colorings, count_shadow_colorings, enumerate_colorings,
                       enumerate_shadow_colorings)
from .diagram import DiagramError, PDSyntaxError
from .fixtures import resolve_diagram
from .homology import THEORIES, DegreeBoundError, NotAQuandleError, cohomology, homology
from .quandle import (BoundExceeded, RackAxiomError, TableFormatError, from_spec,
                      inner_orbits, is_connected, is_faithful, is_homogeneous, validate)
from .spaces import (action_quandle_census, component_count, dot_export,
                     extended_quandle_census, quandle_graph, rack_graph)
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation; fields a subcommand does not take stay at their defaults."""

    command: str
    spec: str | None = None
    diagram: str | None = None
    theory: str = "R"
    n: int = 1
    coeff: str = "Z"
    cohomology: bool = False
    shadow: bool = False
    list: bool = False
    quandle_graph: bool = False
    dot: bool = False
    action: bool = False
    degree: int = 2
    mod: int = 0
    cocycle: str = "auto"
    pullback: bool = False
    suite: str | None = None
    bound: int = 8
    seed: int = 0
    verbose: bool = False
    json: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in names})

    def to_json(self) -> dict:
        return asdict(self)


def _emit(cfg, payload: dict, text: str):
    if cfg.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _coefficients(s: str) -> int:
    s = s.strip().upper()
    if s == "Z":
        return 0
    if s.startswith("Z"):
        s = s[1:].lstrip("_/")
    try:
        m = int(s)
    except ValueError:
        raise UsageError(f"coefficients must be Z or Zm, got {s!r}")
    if m < 2:
        raise UsageError("modulus must be at least 2")
    return m


def _load_rack_or_report(spec: str):
    """Return ``(rack, None)`` or ``(None, report)`` when the table is not a rack."""
    try:
        return from_spec(spec), None
    except RackAxiomError:
        path = Path(spec)
        if not path.is_file():
            raise
    # a table file that fails the axioms: report them
    text = path.read_text()
    if text.lstrip().startswith("{"):
        rows = json.loads(text)["table"]
    else:
        rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    return None, validate(rows)


# ------------------------------------------------------------------ commands

def cmd_info(cfg) -> int:
    try:
        X, report = _load_rack_or_report(cfg.spec)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc))
    if X is None:
        _emit(cfg, {"spec": cfg.spec, "rack": False, "axioms": report.failures},
              "\n".join(["not a rack"] + report.lines()))
        return 1
    report = validate(X.table)
    orbits = inner_orbits(X)
    try:
        homog = is_homogeneous(X, cfg.bound)
        homog_txt = str(homog).lower()
    except BoundExceeded:
        homog = None
        homog_txt = f"not checked (|X| > bound {cfg.bound})"
    payload = {
        "spec": cfg.spec, "size": X.size, "kind": X.kind, "rack": True,
        "axioms": {k: (None if v is None else list(v)) for k, v in report.failures.items()},
        "connected": is_connected(X), "faithful": is_faithful(X), "homogeneous": homog,
        "homogeneity_bound": cfg.bound, "orbits": [list(b) for b in orbits.blocks],
        "inn_order": orbits.group_order,
    }
    lines = [f"{cfg.spec}: {X.kind} of order {X.size}", *report.lines(),
             f"connected: {str(payload['connected']).lower()}",
             f"faithful: {str(payload['faithful']).lower()}",
             f"homogeneous: {homog_txt}",
             f"Inn orbits: {len(orbits.blocks)} {[list(b) for b in orbits.blocks]}",
             f"|Inn(X)|: {orbits.group_order}"]
    _emit(cfg, payload, "\n".join(lines))
    return 0


def cmd_homology(cfg) -> int:
    X = from_spec(cfg.spec)
    m = _coefficients(cfg.coeff)
    if cfg.cohomology:
        group, gens, flags, basis = cohomology(X, cfg.theory, cfg.n, m)
        payload = {"group": str(group), "cocycles": gens, "is_coboundary": flags,
                   "basis": [list(b) for b in basis]}
        text = str(group)
        if cfg.verbose:
            text += f"\n{len(gens)} cocycle generators, {flags.count(False)} not coboundaries"
    else:
        group = homology(X, cfg.theory, cfg.n, m)
        payload = {"group": str(group), "free_rank": group.free_rank, "torsion": list(group.torsion)}
        text = str(group)
    payload.update({"spec": cfg.spec, "theory": cfg.theory, "n": cfg.n, "coefficients": cfg.coeff})
    _emit(cfg, payload, text)
    return 0


def cmd_color(cfg) -> int:
    D = resolve_diagram(cfg.diagram)
    X = from_spec(cfg.spec)
    if cfg.list:
        if cfg.shadow:
            items = [s.to_json() for s in enumerate_shadow_colorings(D, X)]
        else:
            items = [c.to_json() for c in enumerate_colorings(D, X)]
        if cfg.json:
            print(json.dumps(items, sort_keys=True))
        else:
            for it in items:
                print(json.dumps(it, sort_keys=True))
        return 0
    n = count_shadow_colorings(D, X) if cfg.shadow else count_colorings(D, X)
    _emit(cfg, {"count": n, "shadow": cfg.shadow, "spec": cfg.spec}, str(n))
    return 0


def cmd_graph(cfg) -> int:
    X = from_spec(cfg.spec)
    G = quandle_graph(X) if cfg.quandle_graph else rack_graph(X)
    k = component_count(G)
    if cfg.dot:
        sys.stdout.write(dot_export(G))
        print(f"// components: {k}")
        return 0
    payload = dict(G.to_json(), components=k)
    _emit(cfg, payload, f"components: {k}\nvertices: {len(G.vertices)}\nedges: {len(G.edges)}")
    return 0


def cmd_census(cfg) -> int:
    X = from_spec(cfg.spec)
    c = action_quandle_census(X) if cfg.action else extended_quandle_census(X)
    if cfg.json:
        print(c.to_json())
    else:
        for d in range(4):
            row = c.counts[d]
            print(f"dim {d}: {row['original']} original + {row['capping']} capping + {row['cone']} cone")
        print("totals:", " ".join(str(t) for t in c.totals()))
    return 0


def _get_cocycle(cfg, X, degree: int):
    src = cfg.cocycle
    m = cfg.mod
    if src == "zero":
        return zero_cocycle(degree, m)
    if src == "auto":
        c = nontrivial_cocycle(X, degree, m)
        if c is None:
            raise UsageError(f"H^{degree}_Q(X; Z_{m}) is trivial: no nontrivial cocycle to use")
        return c
    c = Cocycle.from_json(Path(src).read_text())
    if c.modulus != m:
        raise UsageError(f"cocycle file is over Z_{c.modulus}, --mod is {m}")
    if c.degree != degree:
        raise UsageError(f"cocycle file has degree {c.degree}, expected {degree}")
    if not is_cocycle(X, c):
        raise UsageError("cocycle file fails delta = 0")
    return c


def cmd_statesum(cfg) -> int:
    D = resolve_diagram(cfg.diagram)
    X = from_spec(cfg.spec)
    if cfg.pullback:
        if cfg.degree != 3:
            raise UsageError("--pullback builds a 3-cocycle; use it with --degree 3")
        phi = _get_cocycle(cfg, X, 2)
        theta = pullback_cocycle(X, phi)
        res = shadow_statesum_3cocycle(D, X, theta)
        used = theta
    elif cfg.degree == 2:
        used = _get_cocycle(cfg, X, 2)
        res = statesum_2cocycle(D, X, used)
    else:
        used = _get_cocycle(cfg, X, 3)
        res = shadow_statesum_3cocycle(D, X, used)
    payload = {"modulus": res.modulus, "statesum": res.to_json(), "degree": cfg.degree,
               "cocycle": used.to_json()}
    _emit(cfg, payload, str(res))
    return 0


def cmd_verify(cfg) -> int:
    random.seed(cfg.seed)
    cases = run_suite(cfg.suite)
    failed = [c for c in cases if not c.ok]
    if cfg.json:
        print(json.dumps({"suite": cfg.suite, "passed": len(cases) - len(failed), "failed": len(failed),
                          "cases": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in cases]},
                         sort_keys=True))
    else:
        for c in cases:
            if cfg.verbose or not c.ok:
                print(c.line())
        print(f"{cfg.suite}: {'PASS' if not failed else 'FAIL'} "
              f"({len(cases) - len(failed)}/{len(cases)} cases)")
    return 1 if failed else 0


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quandlekit", description="Finite quandles, homology and link colorings.")
    p.add_argument("--version", action="version", version=f"quandlekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("info", help="axioms, orbits, connectivity of a rack"))
    sp.add_argument("spec", help="dihedral:n | trivial:n | cyclic:n | alexander:n:t | "
                                 "alexander_poly:p:c0,c1,.. | tetrahedral | table file")
    sp.add_argument("--bound", type=int, default=8, help="size bound for the automorphism search")
    sp.set_defaults(func=cmd_info)

    sp = common(sub.add_parser("homology", help="rack/quandle (co)homology"))
    sp.add_argument("spec")
    sp.add_argument("theory", choices=THEORIES)
    sp.add_argument("n", type=int)
    sp.add_argument("coeff", nargs="?", default="Z", help="Z or Zm (e.g. Z3)")
    sp.add_argument("--cohomology", action="store_true", help="cohomology with explicit cocycles")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_homology)

    sp = common(sub.add_parser("color", help="count or list (shadow) colorings"))
    sp.add_argument("diagram", help="PD file, inline PD text, or fixture name")
    sp.add_argument("spec")
    sp.add_argument("--shadow", action="store_true")
    sp.add_argument("--list", action="store_true")
    sp.set_defaults(func=cmd_color)

    sp = common(sub.add_parser("graph", help="rack or quandle graph"))
    sp.add_argument("spec")
    sp.add_argument("--quandle-graph", action="store_true")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_graph)

    sp = common(sub.add_parser("census", help="cells of the extended (or action) quandle space"))
    sp.add_argument("spec")
    sp.add_argument("--action", action="store_true")
    sp.set_defaults(func=cmd_census)

    sp = common(sub.add_parser("statesum", help="cocycle state-sum of a diagram"))
    sp.add_argument("diagram")
    sp.add_argument("spec")
    sp.add_argument("--degree", type=int, choices=(2, 3), default=2)
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--cocycle", default="auto", help="cocycle JSON file, 'auto' or 'zero'")
    sp.add_argument("--pullback", action="store_true",
                    help="use theta(r,x,y) = phi(x,y) for the chosen 2-cocycle phi")
    sp.set_defaults(func=cmd_statesum)

    sp = common(sub.add_parser("verify", help="run a verification suite over the fixtures"))
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig.from_namespace(args)
    try:
        return args.func(cfg)
    except (UsageError, ValueError, OSError, PDSyntaxError, DiagramError, TableFormatError,
            NotAQuandleError, DegreeBoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
