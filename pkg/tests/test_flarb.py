import math
import sys

from hpq.flarb import Delta, FlarbTree, _Node, amortized_bound, flarb, potential

from conftest import rng_for


def leaf_tree(side):
    t = FlarbTree()
    a, b = _Node(), _Node()
    t.nodes = {"a": a, "b": b}
    t.root = "a"
    setattr(a, side, "b")
    b.parent = "a"
    a.size = 2
    t.phi = t.potential()
    return t


def test_potential_examples():
    assert math.isclose(potential(leaf_tree("left")), math.log2(3))
    assert math.isclose(potential(leaf_tree("right")), -math.log2(3))


def test_delta_count():
    d = Delta([("a", "right", "r", "r2"), ("r2", "left", None, "r")])
    assert d.count == 3
    assert Delta().count == 0


def test_flarb_singleton():
    t = FlarbTree()
    d = flarb(t, set(), "r")
    assert t.root == "r" and len(t) == 1
    assert d.count == 0  # no prior relationships touched
    t.check()


def test_flarb_trivial_steps_and_bound():
    # empty anchored set: old root becomes the left child of the new root
    t = FlarbTree()
    flarb(t, set(), "a")
    phi0 = t.phi
    d = flarb(t, set(), "r")
    assert t.root == "r"
    assert t.nodes["r"].left == "a"
    assert d.count == 1
    assert d.count + (t.phi - phi0) <= amortized_bound(len(t), 8.0)

    # S = {a}: the old right child gets stretched under the new root
    phi0 = t.phi
    d = flarb(t, {"r"}, "r2")
    assert sorted(d.rows) == [("r", "right", None, "r2")]
    phi0 = t.phi
    d = flarb(t, {"r"}, "r3")
    # r.right: r2 -> r3 (two relationship changes), r3.left: None -> r2
    assert sorted(d.rows) == [("r", "right", "r2", "r3"), ("r3", "left", None, "r2")]
    assert d.count == 3
    assert d.count + (t.phi - phi0) <= amortized_bound(len(t), 8.0)
    t.check()


def bst_tree(rng, n):
    t = FlarbTree()
    keys = list(range(n))
    rng.shuffle(keys)
    for k in keys:
        nd = _Node()
        t.nodes[k] = nd
        if t.root is None:
            t.root = k
            continue
        cur = t.root
        while True:
            side = "left" if k < cur else "right"
            nxt = getattr(t.nodes[cur], side)
            if nxt is None:
                setattr(t.nodes[cur], side, k)
                nd.parent = cur
                break
            cur = nxt

    def sz(x):
        if x is None:
            return 0
        s = 1 + sz(t.nodes[x].left) + sz(t.nodes[x].right)
        t.nodes[x].size = s
        return s

    sz(t.root)
    t.phi = t.potential()
    return t


def anchored_set(rng, t, n):
    if t.root is None or rng.random() < 0.05:
        return set()
    s = {t.root}
    frontier = [
        c for c in (t.nodes[t.root].left, t.nodes[t.root].right) if c is not None
    ]
    target = rng.randrange(1, n + 1)
    while frontier and len(s) < target:
        x = frontier.pop(rng.randrange(len(frontier)))
        if rng.random() < 0.6:
            s.add(x)
            for c in (t.nodes[x].left, t.nodes[x].right):
                if c is not None:
                    frontier.append(c)
    return s


def test_flarb_randomized_shadow():
    """flarb on random BSTs with random anchored sets.

    Checks the defining properties: in-order preserved with the new node
    appended, the anchored set becomes the right spine (in key order), and
    the incrementally maintained potential matches a recompute.
    """
    rng = rng_for("flarb-shadow")
    sys.setrecursionlimit(10000)
    for trial in range(4000):
        n = rng.randrange(1, 14)
        t = bst_tree(rng, n)
        before = t.in_order()
        s = anchored_set(rng, t, n)
        flarb(t, s, "r")
        t.check()
        assert t.in_order() == before + ["r"]
        spine = []
        x = t.root
        while x is not None:
            spine.append(x)
            x = t.nodes[x].right
        assert spine == sorted(s) + ["r"]
        assert abs(t.phi - t.potential()) < 1e-6
