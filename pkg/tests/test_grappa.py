from hpq.grappa import GrappaForest, OracleAnswer
from hpq.persistence import VersionStore

from shadow_grappa import run_shadow


def forest():
    st = VersionStore()
    g = GrappaForest(st)
    st.new_version()
    return st, g


def right_chain(g, n):
    # vertices 0 -right-> 1 -right-> ... -right-> n-1, edge marks (i, 10+i)
    for v in range(n):
        g.make_tree(v)
    for v in range(1, n):
        g.link(v - 1, v, "right", v, 10 + v)


def test_link_cut_marks_roundtrip():
    st, g = forest()
    right_chain(g, 3)
    assert g.tree_child(0, "right") == 1
    assert g.effective_marks(1) == (1, 11)
    assert g.effective_marks(2) == (2, 12)
    g.cut(1, 2)
    assert g.tree_child(1, "right") is None
    assert g.root_of(2) == 2
    assert g.effective_marks(1) == (1, 11)


def test_spine_tag_survives_cut():
    st, g = forest()
    right_chain(g, 4)
    g.mark_right_spine(0, 50)
    g.cut(2, 3)
    # the cut edge is gone; the remaining spine edges still carry the tag
    assert g.effective_marks(1)[1] == 50
    assert g.effective_marks(2)[1] == 50


def test_nested_tags_latest_wins():
    st, g = forest()
    right_chain(g, 4)
    g.mark_right_spine(0, 50)
    g.mark_right_spine(0, 60)
    for v in (1, 2, 3):
        assert g.effective_marks(v)[1] == 60
        assert g.effective_marks(v)[0] == v  # left marks untouched
    # a freshly linked spine edge keeps its explicit marks
    g.make_tree(9)
    g.link(3, 9, "right", 7, 70)
    assert g.effective_marks(9) == (7, 70)
    assert g.effective_marks(2)[1] == 60


def test_historical_versions_stable():
    st, g = forest()
    right_chain(g, 3)
    v1 = st.current
    st.new_version()
    g.mark_right_spine(0, 99)
    g.cut(0, 1)
    assert g.tree_child(0, "right", v1) == 1
    assert g.effective_marks(1, v1) == (1, 11)
    assert g.effective_marks(2, v1) == (2, 12)


def test_oracle_search_single_root():
    st, g = forest()
    g.make_tree(0)
    edge, marks = g.oracle_search(0, lambda *a: OracleAnswer.IN_FIRST, ("R", "R"))
    assert edge is None and marks == ("R", "R")


def test_randomized_shadow():
    stats = run_shadow(steps=700, seed=12345)
    assert stats["versions_checked"] == 400
    assert stats["oracle_searches"] > 1000
    assert stats["counts"]["link"] > 100 and stats["counts"]["cut"] > 100
