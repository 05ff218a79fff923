import pytest

from hpq.geometry import DirectedLine, Mode
from hpq.prefix import PrefixStructure
from hpq.testkit import SHAPES, bf_interval_query, random_query

from conftest import QUAD, instance, rng_for


def build(mode, pts):
    s = PrefixStructure(mode)
    for p in pts:
        s.push(p)
    return s


def test_quad_examples():
    s = build(Mode.FARTHEST, QUAD)
    assert s.query_prefix(4, (0, 0)) == 3
    assert s.query_prefix(3, (0, 0)) == 3
    assert s.query_prefix(1, (0, 0)) == 1
    # mirrored tree topology after the four pushes: root key 3, left child 2
    assert s.dual.tree.root == 3
    assert s.dual.tree.nodes[3].left == 2


def test_query_with_line():
    s = build(Mode.FARTHEST, QUAD)
    line = DirectedLine((9, 2), (-9, 2))  # left halfplane y <= 2 -> prefix {1, 2}
    assert s.query((0, 0), line) == 2
    assert build(Mode.NEAREST, QUAD).query((0, 0), line) == 1
    assert s.query((0, 0), DirectedLine((-9, 9), (9, 9))) is None
    with pytest.raises(ValueError):
        # {3, 4} is not a prefix; general lines belong to IntervalStructure
        s.query((0, 0), DirectedLine((-9, 2), (9, 2)))


@pytest.mark.parametrize("mode", [Mode.FARTHEST, Mode.NEAREST], ids=lambda m: m.value)
@pytest.mark.parametrize("shape", SHAPES)
def test_all_prefixes_match_brute_force(mode, shape):
    rng = rng_for(f"prefix-{mode.value}-{shape}")
    for n in (3, 4, 5, 8, 13, 21, 34, 64):
        pts = instance(n, seed=23, shape=shape)
        s = build(mode, pts)
        w0 = s.store.writes
        for t in range(1, n + 1):
            for _ in range(10):
                q, _ = random_query(rng)
                assert s.query_prefix(t, q) == bf_interval_query(pts, mode, q, 1, t)
        assert s.store.writes == w0, "queries must not write to the store"


def test_push_interleaved_with_queries():
    # queries between pushes must see exactly the sites pushed so far
    rng = rng_for("prefix-interleave")
    for mode in (Mode.FARTHEST, Mode.NEAREST):
        pts = instance(40, seed=23)
        s = PrefixStructure(mode)
        for t, p in enumerate(pts, start=1):
            s.push(p)
            for _ in range(6):
                q, _ = random_query(rng)
                for u in range(1, t + 1):
                    assert s.query_prefix(u, q) == bf_interval_query(pts, mode, q, 1, u)
