import pytest

from hpq.geometry import DirectedLine, Mode
from hpq.interval import IntervalStructure
from hpq.testkit import SHAPES, bf_interval_query, bf_query, random_query

from conftest import QUAD, instance, rng_for


def test_quad_examples():
    far = IntervalStructure(QUAD, Mode.FARTHEST)
    near = IntervalStructure(QUAD, Mode.NEAREST)
    line = DirectedLine((-9, 2), (9, 2))  # left halfplane y >= 2 -> {3, 4}
    assert far.query((0, 0), line) == 3
    assert near.query((0, 0), line) == 4
    assert far.query((0, 0), DirectedLine((-9, 9), (9, 9))) is None  # empty
    assert far.query_interval(3, 4, (0, 0)) == 3
    assert near.query_interval(3, 4, (0, 0)) == 4
    assert far.query_interval(2, 1, (10, 10)) == 1  # wrapping, all sites


def test_degenerate_sizes():
    one = IntervalStructure([(5, 5)], Mode.FARTHEST)
    assert one.query((0, 0), DirectedLine((0, -1), (0, 1))) is None
    assert one.query((0, 0), DirectedLine((9, -1), (9, 1))) == 1
    two = IntervalStructure([(1, 0), (2, 3)], Mode.NEAREST)
    assert two.query((0, 0), DirectedLine((9, -9), (9, 9))) == 1


@pytest.mark.parametrize("mode", [Mode.FARTHEST, Mode.NEAREST], ids=lambda m: m.value)
@pytest.mark.parametrize("shape", SHAPES)
def test_matches_brute_force(mode, shape):
    rng = rng_for(f"interval-{mode.value}-{shape}")
    for n in (3, 4, 5, 8, 13, 21, 34, 64, 128):
        pts = instance(n, seed=37, shape=shape)
        st = IntervalStructure(pts, mode)
        for _ in range(200):
            q, line = random_query(rng)
            assert st.query(q, line) == bf_query(pts, mode, q, line), (mode, shape, n)


@pytest.mark.parametrize("mode", [Mode.FARTHEST, Mode.NEAREST], ids=lambda m: m.value)
def test_explicit_intervals(mode):
    rng = rng_for(f"interval-pairs-{mode.value}")
    pts = instance(40, seed=37)
    st = IntervalStructure(pts, mode)
    for i in range(1, 41):
        for j in range(1, 41):
            q = (rng.randint(-(1 << 22), 1 << 22), rng.randint(-(1 << 22), 1 << 22))
            assert st.query_interval(i, j, q) == bf_interval_query(pts, mode, q, i, j)


def test_small_quads_dense_queries():
    # dense small-coordinate queries around the quad catch boundary cases
    for mode in (Mode.FARTHEST, Mode.NEAREST):
        st = IntervalStructure(QUAD, mode)
        rng = rng_for(f"interval-dense-{mode.value}")
        for _ in range(2000):
            q = (rng.randint(-64, 64), rng.randint(-64, 64))
            a = (rng.randint(-16, 16), rng.randint(-16, 16))
            b = (rng.randint(-16, 16), rng.randint(-16, 16))
            if a == b:
                continue
            line = DirectedLine(a, b)
            assert st.query(q, line) == bf_query(QUAD, mode, q, line)
