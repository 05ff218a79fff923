import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpq.geometry import (
    ConvexSequence,
    DirectedLine,
    Mode,
    RationalPoint,
    better_site,
    brute_left_interval,
    circumcenter,
    cmp_dist,
    incircle_conflict,
    left_interval,
    orientation,
    side_of_line,
)
from hpq.testkit import gen_convex, random_query

from conftest import instance, rng_for

coord = st.integers(-200, 200)
point = st.tuples(coord, coord)


def test_orientation_basics():
    assert orientation((0, 0), (1, 0), (0, 1)) == 1
    assert orientation((0, 0), (0, 1), (1, 0)) == -1
    assert orientation((0, 0), (1, 1), (2, 2)) == 0


@given(point, point, point)
def test_orientation_antisymmetry(a, b, c):
    assert orientation(a, b, c) == -orientation(a, c, b)
    assert orientation(a, b, c) == orientation(b, c, a)


def test_side_of_line():
    line = DirectedLine((0, 0), (1, 0))
    assert side_of_line(line, (5, 3)) > 0  # left of west->east is above
    assert side_of_line(line, (5, -3)) < 0
    assert side_of_line(line, (17, 0)) == 0
    with pytest.raises(ValueError):
        DirectedLine((2, 2), (2, 2))


def test_incircle_examples():
    a, b, c = (0, 0), (2, 0), (0, 2)
    assert incircle_conflict(a, b, c, (1, 1), Mode.NEAREST)
    assert not incircle_conflict(a, b, c, (1, 1), Mode.FARTHEST)
    # (2,2) is exactly on the circumcircle: no strict violation either way
    assert not incircle_conflict(a, b, c, (2, 2), Mode.NEAREST)
    assert not incircle_conflict(a, b, c, (2, 2), Mode.FARTHEST)
    assert incircle_conflict(a, b, c, (3, 3), Mode.FARTHEST)
    assert not incircle_conflict(a, b, c, (3, 3), Mode.NEAREST)


@given(point, point, point, point)
def test_incircle_never_both_modes(a, b, c, d):
    if orientation(a, b, c) <= 0:
        return
    both = incircle_conflict(a, b, c, d, Mode.NEAREST) and incircle_conflict(
        a, b, c, d, Mode.FARTHEST
    )
    assert not both


def test_cmp_dist_and_better_site():
    assert cmp_dist((2, 0), (-1, 0), (0, 1)) == 1  # 9 > 5
    assert cmp_dist((0, 0), (3, 4), (5, 0)) == 0
    assert better_site((0, 0), Mode.FARTHEST, 1, (1, 0), 2, (5, 0)) == 2
    assert better_site((0, 0), Mode.NEAREST, 1, (1, 0), 2, (5, 0)) == 1
    # exact tie breaks toward the smaller index in both modes
    assert better_site((0, 0), Mode.FARTHEST, 7, (3, 4), 2, (5, 0)) == 2
    assert better_site((0, 0), Mode.NEAREST, 7, (3, 4), 2, (5, 0)) == 2


def test_circumcenter_examples():
    assert circumcenter((0, 0), (4, 0), (0, 2)) == RationalPoint(2, 1, 1)
    assert circumcenter((0, 0), (6, 0), (3, 3)) == RationalPoint(3, 0, 1)
    with pytest.raises(ValueError):
        circumcenter((0, 0), (1, 1), (2, 2))


@given(point, point, point)
def test_circumcenter_equidistant(a, b, c):
    if orientation(a, b, c) == 0:
        return
    cc = circumcenter(a, b, c)
    # exact check on d^2 * |p - center|^2
    def d2(p):
        dx = p[0] * cc.d - cc.nx
        dy = p[1] * cc.d - cc.ny
        return dx * dx + dy * dy

    assert d2(a) == d2(b) == d2(c)
    assert cc.d > 0


def test_convex_sequence_validation():
    ConvexSequence([(4, 0), (0, 4), (-4, 0), (0, -4)])
    with pytest.raises(ValueError):
        ConvexSequence([(0, 0), (1, 0), (2, 0)])  # collinear
    with pytest.raises(ValueError):
        ConvexSequence([(0, 0), (0, 1), (1, 0)])  # clockwise


def test_left_interval_diamond():
    seq = ConvexSequence([(4, 0), (0, 4), (-4, 0), (0, -4)])
    res = left_interval(seq, DirectedLine((0, -9), (0, 9)))
    assert (res.kind, res.i, res.j) == ("interval", 2, 4)
    # left of the upward line x = -5 is x <= -5: no diamond point qualifies
    res = left_interval(seq, DirectedLine((-5, -5), (-5, 5)))
    assert res.kind == "empty"
    # the reversed direction puts the whole diamond on the left
    assert left_interval(seq, DirectedLine((-5, 5), (-5, -5))).kind == "full"
    res = left_interval(seq, DirectedLine((-9, -9), (9, -9)))
    assert res.kind == "full"


def test_left_interval_matches_brute_force():
    rng = rng_for("left-interval")
    for n in (3, 4, 5, 8, 13, 50, 200):
        pts = instance(n)
        seq = ConvexSequence(pts)
        for _ in range(300):
            _, line = random_query(rng)
            assert left_interval(seq, line) == brute_left_interval(pts, line)


def test_left_interval_through_sites():
    # lines passing exactly through sites exercise the closed-halfplane rule
    rng = rng_for("left-interval-sites")
    pts = instance(64)
    seq = ConvexSequence(pts)
    for _ in range(300):
        a = pts[rng.randrange(64)]
        b = pts[rng.randrange(64)]
        if a == b:
            continue
        line = DirectedLine(a, b)
        assert left_interval(seq, line) == brute_left_interval(pts, line)
