import json

import pytest

from arcforge.cli import main
from arcforge.systems import construct_hexagon_system


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate-arcs", "--surface", "torus-1-marked", "--bound", "2")
    assert code == 0
    arcs = json.loads(out)
    assert len(arcs) == 6 and {"start", "crossings", "end", "label"} <= set(arcs[0])


def test_unknown_surface(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate-arcs", "--surface", "klein-bottle"])
    assert exc.value.code == 2


def test_negative_bound(capsys):
    code, _, err = run(capsys, "enumerate-arcs", "--bound", "-1")
    assert code == 2 and "non-negative" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--systems", str(tmp_path / "nope.json"))
    assert code == 2 and "no such file" in err


def test_intersect_and_cut(capsys, tmp_path, t2):
    h = construct_hexagon_system(t2)
    f = tmp_path / "hex.json"
    f.write_text(json.dumps(h.to_json()))
    code, out, _ = run(capsys, "intersect", "--arcs", str(f))
    assert code == 0 and json.loads(out)["matrix"] == h.matrix
    code, out, _ = run(capsys, "cut", "--system", str(f))
    assert code == 0
    assert json.loads(out)["components"] == [{"g": 0, "b": 1, "p": 0, "v": 6, "chi": "-2"}]
    code, out, _ = run(capsys, "classify", "--systems", str(f))
    assert code == 0 and json.loads(out)[0]["J"] == 3
    code, out, _ = run(capsys, "render", "--system", str(f))
    assert code == 0 and out.count('class="arc"') == 12


def test_invalid_system_exits_one(capsys, tmp_path, pool6):
    from arcforge.intersections import geometric_intersection

    a = pool6[-1]
    b = next(x for x in pool6 if geometric_intersection(a, x) > 1)
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"surface": "torus-2-marked", "k": 1, "members": [a.to_json(), b.to_json()]}))
    code, _, err = run(capsys, "cut", "--system", str(f))
    assert code == 1 and "more than 1" in err


def test_classify_non_filling_is_inconclusive(capsys, tmp_path, pool6):
    f = tmp_path / "one.json"
    f.write_text(json.dumps({"surface": "torus-2-marked", "k": 1, "members": [pool6[0].to_json()]}))
    code, _, err = run(capsys, "classify", "--systems", str(f))
    assert code == 1 and "inconclusive" in err


def test_max_systems(capsys, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "max-systems", "--surface", "torus-1-marked", "--bound", "4", "--out", str(out))
    systems = json.loads(out.read_text())
    assert code == 0 and systems and all(len(s["members"]) == 4 for s in systems)


def test_golden_matches_search(capsys, catalog6):
    code, out, _ = run(capsys, "catalog", "--golden")
    golden = json.loads(out)
    assert code == 0
    assert golden == [c.to_json() for c in catalog6]


def test_render_index_out_of_range(capsys, tmp_path, t2):
    f = tmp_path / "hex.json"
    f.write_text(json.dumps(construct_hexagon_system(t2).to_json()))
    code, _, err = run(capsys, "render", "--system", str(f), "--index", "3")
    assert code == 2 and "out of range" in err


def test_verify_formulas(capsys):
    code, out, _ = run(capsys, "verify", "formulas")
    assert code == 0 and out.rstrip().endswith("PASS (15/15)")


@pytest.mark.slow
def test_verify_unstable_bound(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "2")
    assert code == 1
    assert "bound not stabilized" in out
