import json
import shutil
import subprocess
import sys

import pytest

from quandlekit.cli import main
from quandlekit.fixtures import ENV_VAR, fixture_dir


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "dihedral:3")
    assert code == 0 and "connected: true" in out and "faithful: true" in out
    code, out, _ = run(capsys, "info", "cyclic:2", "--json")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "rack" and data["axioms"]["idempotency"] is not None
    code, _, err = run(capsys, "info", "dihedral")
    assert code == 2 and "error" in err


def test_info_reports_non_rack_table(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 0\n0 1\n")
    code, out, _ = run(capsys, "info", str(p))
    assert code == 1 and "not a rack" in out


def test_info_homogeneity_bound(capsys):
    code, out, _ = run(capsys, "info", "dihedral:9")
    assert code == 0 and "not checked" in out
    code, out, _ = run(capsys, "info", "dihedral:9", "--bound", "9")
    assert "homogeneous: true" in out


@pytest.mark.parametrize("argv,want", [
    (["dihedral:3", "Q", "2", "Z"], "0"),
    (["trivial:3", "R", "1", "Z"], "Z^3"),
    (["dihedral:3", "Q", "3", "Z"], "Z/3"),
    (["dihedral:3", "Q", "3"], "Z/3"),
    (["dihedral:3", "Q", "3", "Z3"], "Z/3"),
    (["dihedral:3", "R", "3", "Z3"], "Z/3 + Z/3"),
])
def test_homology(capsys, argv, want):
    code, out, _ = run(capsys, "homology", *argv)
    assert code == 0 and out.strip() == want


def test_homology_errors_and_cohomology(capsys):
    assert run(capsys, "homology", "cyclic:3", "Q", "2")[0] == 2
    assert run(capsys, "homology", "dihedral:3", "R", "9")[0] == 2
    assert run(capsys, "homology", "dihedral:3", "X", "2")[0] == 2
    code, out, _ = run(capsys, "homology", "dihedral:3", "Q", "3", "Z3", "--cohomology", "--json")
    data = json.loads(out)
    assert code == 0 and data["group"] == "Z/3" and False in data["is_coboundary"]


def test_color(capsys):
    assert run(capsys, "color", "trefoil", "dihedral:3")[1].strip() == "9"
    assert run(capsys, "color", "trefoil", "dihedral:3", "--shadow")[1].strip() == "27"
    assert run(capsys, "color", "PD[]", "dihedral:5")[1].strip() == "5"
    code, out, _ = run(capsys, "color", "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]", "dihedral:3", "--list", "--json")
    assert code == 0 and len(json.loads(out)) == 9
    code, out, _ = run(capsys, "color", "figure8", "dihedral:3", "--shadow", "--list")
    assert len(out.strip().splitlines()) == 9
    assert run(capsys, "color", "PD[X[1,2,3]]", "dihedral:3")[0] == 2
    assert run(capsys, "color", "no_such_knot", "dihedral:3")[0] == 2


def test_color_from_file(capsys, tmp_path):
    p = tmp_path / "k.pd"
    p.write_text("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]")
    assert run(capsys, "color", str(p), "dihedral:5")[1].strip() == "25"


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "dihedral:4")
    assert code == 0 and "components: 2" in out
    assert "components: 3" in run(capsys, "graph", "trivial:3")[1]
    a = run(capsys, "graph", "dihedral:3", "--quandle-graph", "--dot")[1]
    b = run(capsys, "graph", "dihedral:3", "--quandle-graph", "--dot")[1]
    assert a == b and a.count("->") == 6 and a.startswith("digraph")


def test_census(capsys):
    code, out, _ = run(capsys, "census", "dihedral:3")
    assert code == 0 and "totals: 3 9 30 96" in out
    data = json.loads(run(capsys, "census", "dihedral:3", "--action", "--json")[1])
    assert data["totals"] == [3, 9, 27, 90]


def test_statesum(capsys, tmp_path):
    zero = run(capsys, "statesum", "trefoil", "tetrahedral", "--mod", "2", "--cocycle", "zero")[1].strip()
    assert zero == "16"
    t = run(capsys, "statesum", "trefoil", "tetrahedral", "--mod", "2")[1].strip()
    u = run(capsys, "statesum", "unknot", "tetrahedral", "--mod", "2")[1].strip()
    assert t == "4 + 12*u^1" and u == "4" and t != u
    p = run(capsys, "statesum", "trefoil", "tetrahedral", "--mod", "2", "--degree", "3", "--pullback")[1].strip()
    assert p == "16 + 48*u^1"
    data = json.loads(run(capsys, "statesum", "trefoil", "dihedral:3", "--mod", "3", "--degree", "3", "--json")[1])
    assert sorted(n for _, n in data["statesum"]) == [9, 18]
    # cocycle file round trip, and validation of the file
    f = tmp_path / "theta.json"
    f.write_text(json.dumps(data["cocycle"]))
    again = json.loads(run(capsys, "statesum", "trefoil", "dihedral:3", "--mod", "3", "--degree", "3",
                           "--cocycle", str(f), "--json")[1])
    assert again["statesum"] == data["statesum"]
    assert run(capsys, "statesum", "trefoil", "dihedral:3", "--mod", "2", "--degree", "3", "--cocycle", str(f))[0] == 2
    f.write_text(json.dumps({"degree": 3, "m": 3, "entries": [[0, 1, 2, 1]]}))
    assert run(capsys, "statesum", "trefoil", "dihedral:3", "--mod", "3", "--degree", "3", "--cocycle", str(f))[0] == 2
    # R_3 has no nontrivial 2-cocycle mod 3
    assert run(capsys, "statesum", "trefoil", "dihedral:3", "--mod", "3")[0] == 2


@pytest.mark.parametrize("suite", ["prop23", "consum", "spaces", "scol-identity"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0 and out.strip().endswith("cases)") and "PASS" in out


def test_verify_json_and_unknown(capsys):
    data = json.loads(run(capsys, "verify", "prop23", "--json")[1])
    assert data["failed"] == 0 and data["passed"] == len(data["cases"])
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_unknown_flag_rejected(capsys):
    assert run(capsys, "color", "trefoil", "dihedral:3", "--bogus")[0] == 2


def test_determinism(capsys):
    a = run(capsys, "homology", "tetrahedral", "Q", "3", "Z4", "--cohomology", "--json")[1]
    b = run(capsys, "homology", "tetrahedral", "Q", "3", "Z4", "--cohomology", "--json")[1]
    assert a == b


def test_fixture_override(capsys, tmp_path, monkeypatch):
    root = tmp_path / "fx"
    shutil.copytree(fixture_dir(), root)
    (root / "diagrams" / "trefoil.pd").write_text("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]\n")
    monkeypatch.setenv(ENV_VAR, str(root))
    assert run(capsys, "color", "trefoil", "dihedral:3")[1].strip() == "3"
    # a corrupted move pair makes the suite fail with exit 1
    (root / "moves" / "r1" / "pair_1_b.pd").write_text("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]\n")
    code, out, _ = run(capsys, "verify", "moves")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quandlekit", "color", "trefoil", "dihedral:3"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == "9"


def test_run_config_from_parser():
    from quandlekit.cli import RunConfig, build_parser
    ns = build_parser().parse_args(["color", "trefoil", "dihedral:3", "--shadow"])
    cfg = RunConfig.from_namespace(ns)
    assert (cfg.command, cfg.diagram, cfg.spec, cfg.shadow, cfg.list) == ("color", "trefoil", "dihedral:3", True, False)
    assert set(cfg.to_json()) >= {"command", "spec", "seed", "json"}
