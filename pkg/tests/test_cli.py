import json

import pytest

from nagata_covers.cli import main
from oracles import tiling_counts


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_grid(capsys):
    code, out, _ = run(["gen", "grid", "--rows", 2, "--cols", 2], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["vertex_count"] == 4 and len(doc["edges"]) == 4


def test_gen_h3_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["gen", "h3", "--n", 1000, "--seed", 7, "-o", path], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed"] == 7


def test_gen_tiling_counts(capsys):
    _, out, _ = run(["gen", "tiling", "--p", 7, "--q", 3, "--depth", 3], capsys)
    doc = json.loads(out)
    v, e, _ = tiling_counts(7, 3, 3)
    assert (doc["vertex_count"], len(doc["edges"])) == (v, e)


def test_gen_bad_parameters(capsys):
    code, _, err = run(["gen", "tiling", "--p", 4, "--q", 4, "--depth", 2], capsys)
    assert code == 2 and "not hyperbolic" in err


@pytest.fixture
def grid_doc(tmp_path, capsys):
    path = tmp_path / "grid.json"
    run(["gen", "grid", "--rows", 50, "--cols", 50, "-o", path], capsys)
    return path


def test_cover_verify_round_trip(grid_doc, tmp_path, capsys):
    cover = tmp_path / "cover.json"
    assert run(["cover", grid_doc, "-s", 2, "-o", cover], capsys)[0] == 0
    doc = json.loads(cover.read_text())
    assert len(doc["classes"]) == 3
    assert min(x for x in doc["certificate"]["per_color_separation"] if x is not None) >= 2
    code, out, _ = run(["verify", "--space", grid_doc, cover], capsys)
    assert code == 0 and json.loads(out) == doc["certificate"]


def test_verify_detects_tampering(grid_doc, tmp_path, capsys):
    cover = tmp_path / "cover.json"
    run(["cover", grid_doc, "-s", 2, "-o", cover], capsys)
    doc = json.loads(cover.read_text())
    doc["certificate"]["max_diameter"] += 1
    doc["certificate"]["multiplicity"] += 1
    cover.write_text(json.dumps(doc))
    code, _, err = run(["verify", "--space", grid_doc, cover], capsys)
    assert code == 3 and "max_diameter, multiplicity" in err


def test_cover_single_vertex(tmp_path, capsys):
    g = tmp_path / "one.json"
    run(["gen", "grid", "--rows", 1, "--cols", 1, "-o", g], capsys)
    code, out, _ = run(["cover", g, "-s", 1], capsys)
    doc = json.loads(out)
    assert code == 0 and [s for c in doc["classes"] for s in c["sets"]] == [[0]]


def test_cover_h3_has_four_colors(tmp_path, capsys):
    h = tmp_path / "h.json"
    run(["gen", "h3", "--n", 800, "--seed", 1, "-o", h], capsys)
    code, out, _ = run(["cover", h, "-s", 0.5], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["classes"]) == 4 and doc["model"] == "upper-half-space"


def test_sweep(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(["gen", "grid", "--rows", 30, "--cols", 30, "-o", g], capsys)
    code, out, _ = run(["sweep", g, "--scales", 1, 2, 4, 8], capsys)
    rows = out.strip().splitlines()[1:]
    assert code == 0 and len(rows) == 4
    assert all(int(r.split("\t")[1]) <= 3 for r in rows)


def test_export(grid_doc, tmp_path, capsys):
    cover = tmp_path / "cover.json"
    run(["cover", grid_doc, "-s", 4, "-o", cover], capsys)
    code, out, _ = run(["export", "svg", grid_doc, "--cover", cover], capsys)
    assert code == 0 and out.startswith("<svg") and 'data-color="3"' in out
    code, out, _ = run(["export", "dot", grid_doc, "--cover", cover], capsys)
    assert code == 0 and out.startswith("graph")


def test_export_without_embedding(tmp_path, capsys):
    edges = tmp_path / "e.txt"
    edges.write_text("0 1 1\n1 2 1\n")
    code, _, err = run(["export", "svg", edges], capsys)
    assert code == 2 and "coords" in err


def test_argument_errors(grid_doc, capsys):
    with pytest.raises(SystemExit) as info:
        main(["cover", str(grid_doc), "-s", "-1"])
    assert info.value.code == 2
    code, _, _ = run(["cover", "/nonexistent.json", "-s", 1], capsys)
    assert code == 2


def test_ladder_exhaustion_exit_code(grid_doc, capsys, monkeypatch):
    from nagata_covers import planar

    monkeypatch.setattr(planar, "K_LADDER", (0.5,))
    monkeypatch.setattr(planar.planar_nagata_trace, "__defaults__", (0, 1.0, (0.5,)))
    code, _, err = run(["cover", grid_doc, "-s", 1], capsys)
    assert code == 4 and "ladder" in err
