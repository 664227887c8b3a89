import json

import jsonschema
import pytest
from helpers import flip_back_script_json, two_component_script_json

from veerlat import bundle
from veerlat.cli import EXIT_CODES, main
from veerlat.veering import build_from_monodromy


@pytest.fixture
def rl(tmp_path):
    path = tmp_path / "rl.json"
    assert main(["bundle", "build", "--lr", "RL", "-o", str(path)]) == 0
    return path


@pytest.fixture
def r6l(tmp_path):
    path = tmp_path / "r6l.json"
    assert main(["bundle", "build", "--lr", "R^6L", "-o", str(path)]) == 0
    return path


def test_exit_code_table():
    assert sorted(EXIT_CODES) == [0, 1, 2, 3, 4, 5, 6, 64]
    assert len(set(EXIT_CODES.values())) == len(EXIT_CODES)


def test_build_rl_has_two_tetrahedra(rl, capsys):
    cx = bundle.load(rl)
    assert cx.period == 2
    main(["bundle", "info", str(rl)])
    assert "orbit" in capsys.readouterr().out


def test_single_letter_word_exits_two(tmp_path):
    assert main(["bundle", "build", "--lr", "RRRR", "-o", str(tmp_path / "x.json")]) == 2


def test_matrix_build_matches_word(tmp_path, rl):
    path = tmp_path / "m.json"
    assert main(["bundle", "build", "--matrix", "2", "1", "1", "1", "-o", str(path)]) == 0
    assert bundle.load(path).to_tables() == bundle.load(rl).to_tables()


def test_script_builds(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(two_component_script_json()))
    assert main(["bundle", "build", "--script", str(good), "-o", str(tmp_path / "b.json")]) == 0
    back = tmp_path / "back.json"
    back.write_text(json.dumps(flip_back_script_json()))
    assert main(["bundle", "build", "--script", str(back), "-o", str(tmp_path / "c.json")]) == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"triangles": "nope"}))
    assert main(["bundle", "build", "--script", str(bad), "-o", str(tmp_path / "d.json")]) == 4


def test_usage_error_exits_64():
    with pytest.raises(SystemExit) as info:
        main(["bundle", "build"])
    assert info.value.code == 64


def test_corrupted_bundle_exits_five(rl, tmp_path):
    data = json.loads(rl.read_text())
    data["complex"]["period"] = 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["bundle", "info", str(bad)]) == 5


def test_emitted_bundle_matches_schema(rl):
    jsonschema.validate(json.loads(rl.read_text()), bundle.load_schema())


@pytest.mark.parametrize("word", ["RL", "RRLL", "R^6L"])
def test_bundle_round_trip(word, tmp_path):
    cx = build_from_monodromy(word)
    path = tmp_path / "b.json"
    bundle.save(cx, path)
    again = bundle.load(path)
    assert again.to_tables() == cx.to_tables()
    assert bundle.dumps(again) == path.read_text()


# -- sections ---------------------------------------------------------------------------------------


def test_sections_sweep_and_extrema(rl, tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert main(["sections", "sweep", str(rl), "--from", "0", "--to", "2", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert [r["layer"] for r in rows] == [0, 1, 2]
    assert all(len(r["edges"]) == 3 for r in rows)
    edge = rows[0]["edges"][0]
    assert main(["sections", "top", str(rl), "--edges", edge]) == 0
    assert edge in json.loads(capsys.readouterr().out)["edges"]


# -- verify -------------------------------------------------------------------------------------------


def test_verify_lattice(rl, tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", str(rl), "--suite", "lattice", "--seed", "7", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["failed"] == 0


def test_verify_theorems(r6l, tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", str(r6l), "--suite", "theorems", "--out", str(out)]) == 0


def test_deterministic_reports_are_byte_identical(r6l, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", str(r6l), "--seed", "3", "--deterministic", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "wall_clock_s" not in json.loads(a.read_text())


# -- pocket -------------------------------------------------------------------------------------------


def test_pocket_slope(r6l, tmp_path):
    out = tmp_path / "out"
    assert main(["pocket", str(r6l), "--slope", "1/1", "--out", str(out)]) == 0
    report = json.loads((out / "pocket.json").read_text())
    region = json.loads((out / "region.json").read_text())
    assert report["boundary_edges"] == ["6@-1"]
    assert report["maximal"]["tetrahedra"] == 1 == len(region["maximal"])
    assert report["maximal"]["d_bottom_top"] == 3
    assert report["guard"] == {"status": "below-threshold", "d_lambda": 3}
    assert report["overlap_index"] == 1
    assert report["isolated"]["status"] == "not-built"
    assert region["isolated"] is None


def test_pocket_absent_slope_lists_pivots(r6l, capsys):
    assert main(["pocket", str(r6l), "--slope", "17/5"]) == 6
    err = capsys.readouterr().err
    assert "pivot slopes" in err and "13/2" in err


def test_pocket_crossing_boundary_fails(r6l, tmp_path):
    cx = bundle.load(r6l)
    f = tmp_path / "boundary.json"
    f.write_text(json.dumps({"edges": [str(cx.tet_bottom_edge(0)), str(cx.tet_top_edge(0))]}))
    assert main(["pocket", str(r6l), "--boundary", str(f)]) == 1
