import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nagata_covers import (HOROSPHERE_CONSTANT, ArgumentError, busemann, certify, hadamard_cover,
                           hadamard_slab_provider, horosphere_plane_cover, horosphere_projection,
                           hyperbolic_distance, sample_upper_half_space)
from nagata_covers.hyperbolic import TOLERANCE, UpperHalfSpaceSample, brick_plane_provider
from nagata_covers.calculus import SlabCoverRequest
from nagata_covers.regions import Box, FlatPlane, Interval, Region
from oracles import hyperbolic_distance_oracle

heights = st.floats(0.05, 20)
horizontal = st.floats(-10, 10)
points = st.tuples(horizontal, horizontal, heights)


def test_distance_examples():
    assert hyperbolic_distance((1, 2, 3), (1, 2, 3)) == 0
    assert hyperbolic_distance((0, 0, 1), (0, 0, math.e)) == pytest.approx(1, abs=1e-15)
    assert math.cosh(1) == pytest.approx((math.e ** 2 + 1) / (2 * math.e))
    with pytest.raises(ArgumentError):
        hyperbolic_distance((0, 0, 0), (0, 0, 1))


@given(points, points)
def test_distance_matches_arccosh_form(p, q):
    assert hyperbolic_distance(p, q) == pytest.approx(hyperbolic_distance_oracle(p, q), rel=1e-9, abs=1e-7)
    assert hyperbolic_distance(p, q) == hyperbolic_distance(q, p)


def test_busemann_and_projection():
    assert busemann((0, 0, 1)) == 0
    assert busemann((0, 0, math.e)) == pytest.approx(-1)
    assert horosphere_projection((3, -2, 0.5), 0) == (3, -2, 1)
    p = (1.0, 2.0, math.exp(-0.7))
    assert horosphere_projection(p, 0.7) == pytest.approx(p)


@given(points, points, st.floats(-3, 3))
def test_projection_is_short(p, q, level):
    h0 = math.exp(-level)
    p, q = (p[0], p[1], min(p[2], h0)), (q[0], q[1], min(q[2], h0))
    d = hyperbolic_distance(p, q)
    dp = hyperbolic_distance(horosphere_projection(p, level), horosphere_projection(q, level))
    assert dp <= d + TOLERANCE


def test_sample_is_seeded_and_in_box():
    a = sample_upper_half_space(500, seed=3)
    b = sample_upper_half_space(500, seed=3)
    assert np.array_equal(a.coords, b.coords)
    assert a.coords[:, 2].min() >= 0.1 and a.coords[:, 2].max() <= 10
    assert np.abs(a.coords[:, :2]).max() <= 5
    with pytest.raises(ArgumentError):
        sample_upper_half_space(10, box=((0, 1), (0, 1), (0, 1)))


def test_sample_busemann_lipschitz():
    sample = sample_upper_half_space(1500, seed=1)
    assert sample.lipschitz_constant(sample.busemann_function().values) <= 1 + TOLERANCE


def test_region_algebra():
    unit = Region((Box(Interval(0, 1), Interval(0, 1)),))
    left = Region((Box(Interval(0, 1), Interval(0, 0.5)),))
    rest = unit - left
    assert rest.contains(0.5, 0.75) and not rest.contains(0.5, 0.25)
    assert (unit & left) == left
    assert not (left - unit)


def test_brick_provider_geometry():
    plane = FlatPlane.square(20)
    w = 1.5
    cover = brick_plane_provider(plane)(SlabCoverRequest(0.0, w))
    for cls in cover.classes:
        for i, a in enumerate(cls):
            assert plane.subset_diameter(a) <= math.sqrt(10) * w + 1e-12
            for b in cls[i + 1:]:
                assert plane.subset_distance(a, b) >= 3 * w
    inner = [a for _, a in cover.sets() if all(abs(b.v.lo) < 15 for b in a.boxes)]
    assert inner and all(plane.subset_diameter(a) == pytest.approx(math.sqrt(10) * w) for a in inner)


@pytest.mark.parametrize("level,s", [(0.0, 1.0), (1.2, 0.5), (-1.0, 2.0)])
def test_horosphere_cover(level, s):
    horo = horosphere_plane_cover(level, s, 5.0)
    plane = FlatPlane.square(5.0 / horo.height)
    cover = horo.cover
    assert cover.color_count == 3
    for cls in cover.classes:
        for i, a in enumerate(cls):
            assert plane.subset_diameter(a) <= HOROSPHERE_CONSTANT * s
            for b in cls[i + 1:]:
                assert plane.subset_distance(a, b) >= s
    # every point of the square is covered
    grid = np.linspace(-5.0 / horo.height, 5.0 / horo.height, 41)
    u, v = np.meshgrid(grid, grid)
    hit = np.zeros(u.shape, dtype=bool)
    for _, region in cover.sets():
        hit |= region.contains(u, v)
    assert hit.all()


def test_horosphere_cover_huge_scale():
    horo = horosphere_plane_cover(0.0, 1000.0, 1.0)
    assert horo.cover.set_count <= 3


def test_slab_provider_empty_and_certified():
    sample = sample_upper_half_space(2000, seed=2)
    empty = hadamard_slab_provider(sample, 50.0, 0.5)
    assert empty.set_count == 0 and empty.color_count == 3
    cover = hadamard_slab_provider(sample, 0.0, 0.5, certify_result=True)
    cert = certify(sample, cover, 0.5)
    assert cert.color_count == 3 and cert.is_cover and cert.disjoint_at(0.5, TOLERANCE)
    assert cert.max_diameter <= (HOROSPHERE_CONSTANT + 3) * 0.5 + TOLERANCE


def test_hadamard_single_point():
    sample = UpperHalfSpaceSample([[0.0, 0.0, 1.0]])
    cover = hadamard_cover(sample, 1.0)
    assert cover.set_count == 1


def test_hadamard_cover_small():
    sample = sample_upper_half_space(1500, seed=5)
    cover = hadamard_cover(sample, 0.5)
    cert = certify(sample, cover, 0.5)
    assert cert.is_cover and cert.color_count == 4 and cert.disjoint_at(0.5, TOLERANCE)
