import json
import math

import pytest

from nagata_covers import ArgumentError, certify, gen_grid, planar_nagata_trace, sample_upper_half_space
from nagata_covers import documents as docs


def test_graph_round_trip(tmp_path):
    pg = gen_grid(3, 4)
    path = tmp_path / "g.json"
    docs.write_document(docs.graph_to_dict(pg), path)
    back = docs.load_space_document(path)
    assert back.graph == pg.graph
    assert (back.embedding == pg.embedding).all()


def test_edge_list(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# square\n0 1 1\n1 2 2.5\n2 3\n3 0 1\n")
    pg = docs.load_space_document(path)
    assert pg.vertex_count == 4 and pg.graph.edges[1] == (1, 2, 2.5) and pg.embedding is None
    with pytest.raises(ArgumentError, match="line 1"):
        docs.read_edge_list("0 x 1\n")


def test_missing_fields():
    with pytest.raises(ArgumentError, match="vertex_count"):
        docs.graph_from_dict({"edges": []})
    with pytest.raises(ArgumentError, match="points"):
        docs.sample_from_dict({"seed": 1})


def test_sample_round_trip(tmp_path):
    sample = sample_upper_half_space(50, seed=4)
    path = tmp_path / "h.json"
    docs.write_document(docs.sample_to_dict(sample), path)
    back = docs.load_space_document(path)
    assert (back.coords == sample.coords).all() and back.seed == 4
    assert back.box == sample.box


def test_cover_round_trip():
    pg = gen_grid(8, 8)
    result = planar_nagata_trace(pg, 0, 2.0)
    text = docs.dumps(docs.cover_to_dict(result.cover, 2.0, result.certificate))
    doc = json.loads(text)
    assert [c["color"] for c in doc["classes"]] == [1, 2, 3]
    cover, s, cert = docs.cover_from_dict(doc)
    assert cover == result.cover and s == 2.0
    assert cert == certify(pg.space, cover, s)


def test_infinite_separation_is_null():
    text = docs.dumps({"x": [math.inf, 1.0]})
    assert text == '{"x":[null,1.0]}\n'
