import json
import subprocess
import sys

import pytest

from posetcoh.cech import random_presheaf
from posetcoh.cli import main
from posetcoh.documents import render_presheaf
from posetcoh.poset import IntersectionPoset

import builders


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_reports_shape(write, capsys):
    path = write("square.json", builders.SQUARE_DOC)
    code, out, _ = run(capsys, "validate", path)
    assert code == 0
    assert out.strip() == "4 elements, 4 cover relations, longest chain 2"
    code, out, _ = run(capsys, "validate", path, "--json")
    assert json.loads(out) == {
        "elements": 4,
        "cover_relations": 4,
        "longest_chain": 2,
    }


def test_validate_rejects_cycles_and_missing_files(write, capsys):
    bad = write(
        "cycle.json",
        {"elements": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]},
    )
    code, _, err = run(capsys, "validate", bad)
    assert code == 2
    assert "antisymmetry" in err
    code, _, err = run(capsys, "validate", str(bad) + ".nope")
    assert code == 2
    assert "error:" in err


def test_cuts_listing(write, capsys):
    path = write("square.json", builders.SQUARE_DOC)
    code, out, _ = run(capsys, "cuts", path, "--json")
    assert code == 0
    cuts = json.loads(out)["cuts"]
    assert len(cuts) == 5
    assert {"lower": ["p2", "p3"], "upper": ["p0", "p1"], "witness": ["p0", "p1"]} in cuts
    code, out, _ = run(capsys, "cuts", path)
    assert out.splitlines()[0] == "5 cuts with nonempty lower half"
    assert "cut <{p2,p3}, {p0,p1}>" in out


def test_criterion_verdicts_and_exit_codes(write, capsys):
    good = write("zigzag.json", builders.ZIGZAG_DOC)
    code, out, _ = run(capsys, "criterion", good)
    assert code == 0
    assert out.startswith("PASS")
    assert "shortcut: semilattice" in out
    code, out, _ = run(capsys, "criterion", good, "--no-shortcut")
    assert code == 0
    assert "shortcut: none" in out
    bad = write("cells9.json", builders.CELLS9_DOC)
    code, out, _ = run(capsys, "criterion", bad)
    assert code == 1
    assert "H_0 = Z^2" in out
    code, out, _ = run(capsys, "criterion", bad, "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "FAIL"
    uppers = [fail["upper"] for fail in payload["failures"]]
    assert ["0", "1"] in uppers
    for fail in payload["failures"]:
        if fail["upper"] == ["0", "1"]:
            assert fail["degree"] == 0
            assert fail["group"] == {"rank": 2, "torsion": []}


def test_skeleton_emission(write, capsys, tmp_path):
    path = write("square.json", builders.SQUARE_DOC)
    out_path = tmp_path / "skeleton.json"
    code, out, _ = run(capsys, "skeleton", path, "--out", str(out_path))
    assert code == 0 and out == ""
    doc = json.loads(out_path.read_text())
    assert len(doc["groups"]) == 5
    assert len(doc["maps"]) == 4
    assert doc["mode"] == "presheaf"


def test_cech_command(write, capsys):
    poset = write("square.json", builders.SQUARE_DOC)
    sheaf = write("constant.json", builders.CONSTANT_SQUARE_DOC)
    code, out, _ = run(capsys, "cech", poset, sheaf)
    assert code == 0
    assert out.splitlines() == ["H^0 = Z", "H^1 = 0"]
    code, out, _ = run(capsys, "cech", poset, sheaf, "--json", "--degrees", "0..2")
    groups = json.loads(out)["groups"]
    assert groups == [
        {"degree": 0, "group": {"rank": 1, "torsion": []}},
        {"degree": 1, "group": {"rank": 0, "torsion": []}},
        {"degree": 2, "group": {"rank": 0, "torsion": []}},
    ]
    code, _, _ = run(capsys, "cech", poset, sheaf, "--oracle", "--order", "p3,p1,p0,p2")
    assert code == 0
    code, _, err = run(capsys, "cech", poset, sheaf, "--order", "p9", "--oracle")
    assert code == 2
    assert "unknown element" in err


def test_topos_command(write, capsys):
    poset = write("sphere.json", builders.SPHERE_DOC)
    sheaf = write("constant.json", builders.CONSTANT_SPHERE_DIAGRAM_DOC)
    code, out, _ = run(capsys, "topos", poset, sheaf, "--degrees", "2..2", "--oracle")
    assert code == 0
    assert out.strip() == "H^2 = Z"


def test_compare_command_negative(write, capsys):
    poset = write("square.json", builders.SQUARE_DOC)
    sky = write("sky.json", builders.SKYSCRAPER_DOC)
    code, out, _ = run(capsys, "compare", poset, sky)
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "degree 0: cech Z | topos Z^2 | NOT isomorphic"
    assert lines[-1] == "comparison fails at degrees 0"
    code, out, _ = run(capsys, "compare", poset, sky, "--json", "--oracle")
    assert code == 1
    payload = json.loads(out)
    assert payload["all_isomorphic"] is False
    first = payload["degrees"][0]
    assert first["cech"] == {"rank": 1, "torsion": []}
    assert first["topos"] == {"rank": 2, "torsion": []}
    assert [[abs(v) for v in row] for row in first["map"]] == [[1], [1]]


def test_compare_command_positive(write, capsys, tmp_path):
    poset = write("zigzag.json", builders.ZIGZAG_DOC)
    ps = random_presheaf(IntersectionPoset(builders.zigzag()), seed=5)
    sheaf = write("random.json", render_presheaf(ps))
    code, out, _ = run(capsys, "compare", poset, sheaf, "--oracle")
    assert code == 0
    assert out.splitlines()[-1] == (
        "comparison map is an isomorphism in every listed degree"
    )


def test_sphere_compare_disagrees_at_two(write, capsys):
    poset = write("sphere.json", builders.SPHERE_DOC)
    sheaf = write("constant.json", builders.CONSTANT_SPHERE_DIAGRAM_DOC)
    code, out, _ = run(capsys, "compare", poset, sheaf)
    assert code == 1
    assert "degree 2: cech 0 | topos Z | NOT isomorphic" in out


def test_degree_window_validation(write, capsys):
    poset = write("square.json", builders.SQUARE_DOC)
    sheaf = write("constant.json", builders.CONSTANT_SQUARE_DOC)
    code, _, err = run(capsys, "cech", poset, sheaf, "--degrees", "2..1")
    assert code == 2
    assert "--degrees" in err
    code, _, err = run(capsys, "cech", poset, sheaf, "--degrees", "x..y")
    assert code == 2


def test_homology_command(write, capsys):
    poset = write("sphere.json", builders.SPHERE_DOC)
    code, out, _ = run(capsys, "homology", poset)
    assert code == 0
    assert out.splitlines() == ["H_0 = Z", "H_1 = 0", "H_2 = Z"]


def test_random_poset_command(write, capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    code, _, _ = run(capsys, "random-poset", "6", "--seed", "11", "--out", str(a))
    assert code == 0
    code, _, _ = run(capsys, "random-poset", "6", "--seed", "11", "--out", str(b))
    assert a.read_text() == b.read_text()
    doc = json.loads(a.read_text())
    assert len(doc["elements"]) == 6
    code, out, _ = run(capsys, "validate", str(a))
    assert code == 0
    code, _, err = run(capsys, "random-poset", "3", "--seed", "1", "--density", "2.0")
    assert code == 2
    assert "density" in err


def test_fuzz_command(write, capsys):
    argv = ["fuzz", "--count", "6", "--seed", "13", "--max-elements", "5",
            "--presheaves", "2", "--json"]
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    code, out2, _ = run(capsys, *argv)
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["violations"] == 0
    assert payload["posets"] == 6
    assert payload["comparisons"] == 2 * payload["criterion_passes"]
    code, out, _ = run(capsys, "fuzz", "--count", "3", "--seed", "2",
                       "--max-elements", "4", "--presheaves", "1")
    assert code == 0
    assert out.strip().endswith("0 violations")


def test_module_entry_point(write, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(builders.POINT_DOC))
    proc = subprocess.run(
        [sys.executable, "-m", "posetcoh.cli", "validate", str(path)],
        capture_output=True,
        text=True,
        cwd="/root/pkg",
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1 elements, 0 cover relations, longest chain 1"
