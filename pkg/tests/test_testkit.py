import pytest

from hpq.geometry import COORD_BOUND, ConvexSequence, DirectedLine, Mode, orientation
from hpq.testkit import (
    SHAPES,
    bf_delaunay,
    bf_interval_query,
    bf_query,
    gen_convex,
    instance_from_json,
    instance_to_json,
)

from conftest import QUAD, instance, rng_for


def test_bf_query_quad():
    line = DirectedLine((-9, 2), (9, 2))  # left halfplane: y >= 2 -> {3, 4}
    assert bf_query(QUAD, Mode.FARTHEST, (0, 0), line) == 3
    assert bf_query(QUAD, Mode.NEAREST, (0, 0), line) == 4
    # empty halfplane
    assert bf_query(QUAD, Mode.FARTHEST, (0, 0), DirectedLine((-9, 9), (9, 9))) is None


def test_bf_query_ties_prefer_smaller_index():
    pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    line = DirectedLine((-9, -9), (9, -9))  # all sites
    assert bf_query(pts, Mode.FARTHEST, (0, 0), line) == 1
    assert bf_query(pts, Mode.NEAREST, (0, 0), line) == 1


def test_bf_interval_query_quad():
    assert bf_interval_query(QUAD, Mode.FARTHEST, (0, 0), 3, 4) == 3
    assert bf_interval_query(QUAD, Mode.NEAREST, (0, 0), 3, 4) == 4
    # wrapping interval covering everything
    assert bf_interval_query(QUAD, Mode.FARTHEST, (10, 10), 2, 1) == 1


def test_bf_delaunay_quad():
    assert set(bf_delaunay(QUAD, Mode.FARTHEST)) == {(1, 2, 3), (1, 3, 4)}
    assert set(bf_delaunay(QUAD, Mode.NEAREST)) == {(1, 2, 4), (2, 3, 4)}


def test_gen_convex_valid_and_deterministic():
    for shape in SHAPES:
        pts = gen_convex(4, 7, shape)
        ConvexSequence(pts)
        assert pts == gen_convex(4, 7, shape)
    pts = instance(1024, seed=1)
    n = len(pts)
    assert n == 1024
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        assert orientation(a, b, c) == 1
    assert all(abs(x) <= COORD_BOUND and abs(y) <= COORD_BOUND for x, y in pts)


def test_gen_convex_errors():
    with pytest.raises(ValueError):
        gen_convex(0, 0)
    with pytest.raises(ValueError):
        gen_convex(4, 0, "triangle")


def test_instance_json_roundtrip():
    pts = instance(16)
    text = instance_to_json(pts, Mode.NEAREST)
    back, mode = instance_from_json(text)
    assert back == pts
    assert mode is Mode.NEAREST
    with pytest.raises(ValueError):
        instance_from_json('{"mode": "nearest", "points": [[0,0],[1,0],[2,0]]}')
