import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nagata_covers import (ArgumentError, ColoredCover, CoverCertificate, WeightedGraph,
                           build_graph_metric, certify, is_cover, max_diameter, measured_lipschitz,
                           min_separation, multiplicity)
from oracles import exhaustive_certificate, floyd_warshall
from test_metric import connected_graphs


def test_is_cover(path_space):
    space = path_space(7)
    assert is_cover(space, ColoredCover(frozenset(), ((),)))
    assert not is_cover(space, ColoredCover({0, 1}, (({0},),)))
    assert is_cover(space, ColoredCover(range(7), ((range(4),), (range(3, 7),))))


def test_empty_sets_dropped():
    cover = ColoredCover({0}, (({0}, set()), ()))
    assert cover.set_count == 1
    assert cover.color_count == 2


def test_max_diameter(path_space):
    space = path_space(7)
    assert max_diameter(space, ColoredCover(frozenset(), ((),))) == 0
    assert max_diameter(space, ColoredCover(range(7), (tuple({i} for i in range(7)),))) == 0
    assert max_diameter(space, ColoredCover(range(7), (({0, 1, 2}, {4, 6}),))) == 2


def test_min_separation(path_space):
    space = path_space(7)
    assert min_separation(space, ColoredCover(range(7), (({0},), ({1},)))) == [math.inf, math.inf]
    assert min_separation(space, ColoredCover(range(7), (({0, 1}, {5, 6}),))) == [4]
    assert min_separation(space, ColoredCover(range(7), (({0, 1}, {1, 2}),))) == [0]


def test_multiplicity(path_space):
    one = path_space(1)
    assert multiplicity(one, ColoredCover({0}, (({0},),)), 5.0) == 1
    space = path_space(5)
    cover = ColoredCover(range(5), (({0, 1}, {2, 3}, {4}),))
    assert multiplicity(space, cover, 1) == 2
    with pytest.raises(ArgumentError):
        multiplicity(space, cover, 0)


def test_certify_empty(path_space):
    cert = certify(path_space(3), ColoredCover(frozenset(), ((),)), 1.0)
    assert cert.is_cover and cert.max_diameter == 0 and cert.multiplicity == 0


def test_certify_hand_cover(path_space):
    space = path_space(12)
    cover = ColoredCover(range(12), (({0, 1}, {5, 6, 7}), ({3}, {10, 11})))
    cert = certify(space, cover, 3)
    assert cert.per_color_separation == (4.0, 7.0)
    assert cert.disjoint_at(3)


def test_lipschitz_examples(path_space):
    space = path_space(5)
    assert measured_lipschitz(space, np.zeros(5)) == 0
    assert measured_lipschitz(space, 2.0 * np.arange(5)) == 2
    assert measured_lipschitz(path_space(1), np.zeros(1)) == 0


def test_certificate_round_trip():
    cert = CoverCertificate(True, 2, (math.inf, 3.0), 4.0, 1.0, 2)
    assert CoverCertificate.from_dict(cert.to_dict()) == cert


@st.composite
def covered_graphs(draw):
    graph = draw(connected_graphs(max_n=12))
    n = graph.vertex_count
    colors = draw(st.integers(1, 3))
    sets = draw(st.lists(st.frozensets(st.integers(0, n - 1), min_size=1), min_size=1, max_size=6))
    labels = draw(st.lists(st.integers(0, colors - 1), min_size=len(sets), max_size=len(sets)))
    classes = [[] for _ in range(colors)]
    for m, c in zip(sets, labels):
        classes[c].append(m)
    s = draw(st.sampled_from([0.5, 1.0, 2.0, 3.0, 7.0]))
    return graph, ColoredCover(range(n), tuple(tuple(c) for c in classes)), s


@given(covered_graphs())
def test_certify_matches_exhaustive(data):
    graph, cover, s = data
    space = build_graph_metric(graph)
    d = floyd_warshall(graph.vertex_count, graph.edges)
    ref = exhaustive_certificate(d, cover.domain, cover.classes, s)
    assert certify(space, cover, s) == CoverCertificate(**ref)


@given(covered_graphs(), st.floats(0.1, 5), st.floats(0.1, 5))
def test_multiplicity_monotone(data, a, b):
    graph, cover, _ = data
    space = build_graph_metric(graph)
    lo, hi = sorted((a, b))
    assert multiplicity(space, cover, lo) <= multiplicity(space, cover, hi)


@given(covered_graphs())
def test_disjoint_covers_have_small_multiplicity(data):
    graph, cover, s = data
    space = build_graph_metric(graph)
    if certify(space, cover, s).disjoint_at(s):
        assert multiplicity(space, cover, 0.49 * s) <= cover.color_count


def test_certify_deterministic():
    space = build_graph_metric(WeightedGraph(4, ((0, 1), (1, 2), (2, 3))))
    cover = ColoredCover(range(4), (({0, 1},), ({2, 3},)))
    assert certify(space, cover, 1.0) == certify(space, cover, 1.0)
