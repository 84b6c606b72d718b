import json
import os

import pytest
from click.testing import CliRunner

from cellres.cli import main
from cellres import io
from cellres.resolution import betti

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def run(*args):
    cwd = os.getcwd()
    os.chdir(DATA)
    try:
        return CliRunner().invoke(main, list(args))
    finally:
        os.chdir(cwd)


def report(*args):
    r = run("--format", "json", *args)
    return r.exit_code, json.loads(r.output)


@pytest.mark.parametrize("kind, file, ranks", [("taylor", "ideal_abcd.json", [1, 3, 3, 1]),
                                                 ("koszul", "koszul_xy.json", [1, 2, 1]),
                                                 ("fromcomplex", "path_abcd.json", [1, 3, 2])])
def test_build(kind, file, ranks):
    code, rep = report("build", kind, file)
    assert code == 0 and rep["ranks"] == ranks and rep["acyclic"]["ok"]


def test_build_writes_output(tmp_path):
    out = str(tmp_path / "t.json")
    assert run("build", "taylor", "ideal_abcd.json", "-o", out).exit_code == 0
    F = io.resolution_from_json(io.read_json(out))
    G = io.resolution_from_json(io.read_json(os.path.join(DATA, "taylor_abcd.json")))
    assert F == G


def test_build_bad_complex():
    r = run("build", "fromcomplex", "bad_complex.json")
    assert r.exit_code == 2 and "invalid CW complex" in r.output


def test_verify_resolution():
    code, rep = report("verify", "resolution", "taylor_abcd.json")
    assert code == 0 and rep["minimal"] is False
    code, rep = report("verify", "resolution", "path_abcd.json")
    assert code == 0 and rep["minimal"] is True


def test_verify_morphism():
    code, rep = report("verify", "morphism", "cone_morphism.json")
    assert code == 0 and rep["pass"]
    code, rep = report("verify", "morphism", "bad_morphism.json")
    assert code == 1 and rep["failing_square"] == 2 and not rep["pass"]
    # an inclusion maps each cell exactly onto a cell, so strict mode passes too
    code, rep = report("--compat", "strict", "verify", "morphism", "cone_morphism.json")
    assert code == 0 and rep["compat_mode"] == "strict" and rep["compatible"]


def test_verify_matching_and_deformation():
    code, rep = report("verify", "matching", "taylor_abcd.json", "matching_empty.json")
    assert code == 0 and rep["pairs"] == 0
    code, rep = report("verify", "deformation", "taylor_abcd.json", "path_abcd.json",
                       "deformation_taylor_min.json")
    assert code == 0 and rep["ok"] and rep["steps"] == 1
    # the reverse direction is not reached by the same steps
    code, rep = report("verify", "deformation", "path_abcd.json", "taylor_abcd.json",
                       "deformation_taylor_min.json")
    assert code == 1 and not rep["ok"]


@pytest.mark.parametrize("args, ranks", [
    (["cone", "cone_morphism.json"], [1, 4, 6, 3]),
    (["cylinder", "cone_morphism.json"], [1, 6, 8, 3]),
    (["coprod", "koszul_xy_res.json", "koszul_xy_res.json"], [2, 4, 2]),
    (["tensor", "koszul_xy_res.json", "koszul_xy_res.json"], [1, 4, 6, 4, 1]),
    (["prod-simplex", "koszul_xy_res.json", "-k", "3"], [1, 6, 9, 5, 1]),
    (["colim", "span_diagram.json"], [1, 4, 4, 1]),
    (["hocolim", "span_diagram.json"], [1, 8, 10, 3]),
    (["hocolim", "span_diagram.json", "--method", "nerve"], [1, 8, 10, 3]),
    (["itercone", "itercone_good.json"], [1, 3, 2]),
])
def test_transform(args, ranks):
    code, rep = report("transform", *args)
    assert code == 0 and rep["ranks"] == ranks


def test_transform_details():
    code, rep = report("transform", "colim", "span_diagram.json")
    assert rep["injections"] == {"a": True, "b": False, "c": True} and rep["problems"]
    code, rep = report("transform", "hocolim", "span_diagram.json", "--method", "compare")
    assert code == 0 and rep["betti_equal"] and rep["isomorphic"]
    code, rep = report("transform", "itercone", "itercone_good.json")
    assert rep["step_ranks"] == [[1, 1], [1, 2, 1], [1, 3, 2]]
    code, rep = report("transform", "cylinder", "cone_morphism.json")
    assert rep["retraction"] is True


def test_transform_output_file(tmp_path):
    out = str(tmp_path / "c.json")
    assert run("transform", "cone", "cone_morphism.json", "-o", out).exit_code == 0
    F = io.resolution_from_json(io.read_json(out))
    assert F.ranks() == [1, 4, 6, 3]


def test_transform_refusals():
    r = run("transform", "itercone", "itercone_bad.json")
    assert r.exit_code == 2 and "position=2" in r.output
    r = run("transform", "cone", "bad_morphism.json")
    assert r.exit_code == 2 and "verified morphism" in r.output


def test_transform_morse(tmp_path):
    out = str(tmp_path / "m.json")
    code, rep = report("transform", "morse", "taylor_abcd.json", "-o", out)
    assert code == 0 and rep["critical"] == [1, 3, 2, 0]
    assert all(rep["identities"].values())
    F = io.resolution_from_json(io.read_json(out))
    P = io.resolution_from_json(io.read_json(os.path.join(DATA, "path_abcd.json")))
    assert F.ranks() == [1, 3, 2] and betti(F) == betti(P)
    # the same pair named by cells
    code, rep = report("transform", "morse", "taylor_abcd.json", "--matching", "morse_edge.json")
    assert code == 0 and rep["critical"] == [1, 3, 2, 0]


def test_check():
    code, rep = report("check", "--trials", "10")
    assert code == 0 and rep["pass"] and rep["trials"] == 10
    assert all(a == b for a, b in rep["suites"].values())


def test_formats():
    r = run("--format", "csv", "verify", "resolution", "taylor_abcd.json")
    lines = r.output.splitlines()
    assert lines[0] == "homdeg,multidegree,count" and len(lines) == 9
    r = run("--format", "dot", "build", "fromcomplex", "path_abcd.json")
    assert r.output.startswith("digraph") and '"(0,1)"' in r.output
    r = run("verify", "resolution", "taylor_abcd.json")
    assert "ranks: [1, 3, 3, 1]" in r.output


def test_field_option():
    r = run("--field", "fp:4", "verify", "resolution", "taylor_abcd.json")
    assert r.exit_code == 2 and "prime" in r.output
    code, rep = report("--field", "fp:5", "verify", "resolution", "taylor_abcd.json")
    assert code == 0 and rep["ranks"] == [1, 3, 3, 1]
