"""Randomized cross-check of GrappaForest against a naive shadow tree.

Shared by the unit test and the acceptance gate (same harness, different
operation counts).  The shadow keeps plain parent/child pointers and the
latest edge marks; deep copies per version let every historical version
be verified through the persistent store.
"""

import copy
import math
import random
from collections import defaultdict

from hpq.grappa import GrappaForest, OracleAnswer
from hpq.persistence import VersionStore

# Calibrated per-operation write bound: writes <= WRITE_C * (log2 n + 1)^2
# where n is the vertex count at the time of the operation.  Link and cut
# touch one heavy-path repair walk plus O(log n) treap splits/merges;
# measured maxima sit near 3.8x (log2 n + 1)^2 across forest sizes
# 200..3000, flat in n, so 6 leaves moderate headroom.
WRITE_C = 6.0


def write_bound(nverts: int) -> float:
    return WRITE_C * (math.log2(max(2, nverts)) + 1) ** 2


def run_shadow(steps, seed, max_checked_versions=400, oracle_per_version=4,
               vertex_cap=None):
    """Drive `steps` version rounds of random ops; verify; return stats.

    Snapshots are taken at evenly spaced versions (at most roughly
    max_checked_versions of them) so long runs stay within memory.
    vertex_cap redirects make_tree to link once the forest is big enough.
    Returns dict with op counts, per-op max writes, number of verified
    versions and oracle searches.  Raises AssertionError on any mismatch.
    """
    rng = random.Random(seed)
    snap_every = max(1, steps // max_checked_versions)
    store = VersionStore()
    g = GrappaForest(store)
    shadow = {}  # vid -> dict(parent, lchild, rchild, ml, mr)
    snapshots = {}
    next_id = [0]
    op_writes = []

    def subtree(v):
        out, st = [], [v]
        while st:
            x = st.pop()
            out.append(x)
            for f in ("lchild", "rchild"):
                if shadow[x][f] is not None:
                    st.append(shadow[x][f])
        return out

    def do_make():
        vid = next_id[0]
        next_id[0] += 1
        g.make_tree(vid)
        shadow[vid] = dict(parent=None, lchild=None, rchild=None, ml=None, mr=None)
        return True

    def do_link():
        rs = [v for v, d in shadow.items() if d["parent"] is None]
        if len(rs) < 2:
            return False
        w = rng.choice(rs)
        wtree = set(subtree(w))
        cands = [
            v
            for v in shadow
            if v not in wtree
            and (shadow[v]["lchild"] is None or shadow[v]["rchild"] is None)
        ]
        if not cands:
            return False
        v = rng.choice(cands)
        sides = [s for s in ("left", "right") if shadow[v][s[0] + "child"] is None]
        side = rng.choice(sides)
        ml, mr = rng.randrange(100), rng.randrange(100)
        g.link(v, w, side, ml, mr)
        shadow[v][side[0] + "child"] = w
        shadow[w].update(parent=v, ml=ml, mr=mr)
        return True

    def do_cut():
        cands = [v for v, d in shadow.items() if d["parent"] is not None]
        if not cands:
            return False
        w = rng.choice(cands)
        p = shadow[w]["parent"]
        g.cut(p, w)
        side = "lchild" if shadow[p]["lchild"] == w else "rchild"
        shadow[p][side] = None
        shadow[w].update(parent=None, ml=None, mr=None)
        return True

    def do_mark():
        rs = [v for v, d in shadow.items() if d["parent"] is None]
        if not rs:
            return False
        r = rng.choice(rs)
        m = rng.randrange(1000, 2000)
        g.mark_right_spine(r, m)
        x = shadow[r]["rchild"]
        while x is not None:
            shadow[x]["mr"] = m
            x = shadow[x]["rchild"]
        return True

    for step in range(steps):
        store.new_version()
        for _ in range(rng.randrange(1, 4)):
            w0 = store.writes
            r = rng.random()
            roomy = vertex_cap is None or len(shadow) < vertex_cap
            if (len(shadow) < 8 or r < 0.25) and roomy:
                ok, op = do_make(), "make"
            elif r < 0.55 or not roomy and r < 0.25:
                ok, op = do_link(), "link"
            elif r < 0.75:
                ok, op = do_cut(), "cut"
            else:
                ok, op = do_mark(), "mark"
            if ok:
                op_writes.append((op, store.writes - w0, len(shadow)))
        if step % snap_every == 0 or step == steps - 1:
            snapshots[store.current] = copy.deepcopy(shadow)

    # -- verify topology and marks at (a sample of) all versions ----------
    vers = sorted(snapshots)
    if len(vers) > max_checked_versions:
        sample = sorted(rng.sample(vers, max_checked_versions))
    else:
        sample = vers
    for ver in sample:
        snap = snapshots[ver]
        for v, d in snap.items():
            assert g._rd(v, "parent", ver) == d["parent"], (ver, v)
            assert g.tree_child(v, "left", ver) == d["lchild"], (ver, v)
            assert g.tree_child(v, "right", ver) == d["rchild"], (ver, v)
            if d["parent"] is not None:
                assert g.effective_marks(v, ver) == (d["ml"], d["mr"]), (ver, v)

    # -- oracle searches against shadow targets ----------------------------
    def shadow_oracle(snap, target):
        def in_sub(t, x):
            while t is not None:
                if t == x:
                    return True
                t = snap[t]["parent"]
            return False

        def oracle(e1, m1, e2, m2):
            c2 = e2
            v = snap[c2]["parent"]
            if target is not None and in_sub(target, c2):
                return OracleAnswer.IN_SECOND
            if target is None or target == e1 or not in_sub(target, v):
                return OracleAnswer.IN_FIRST
            return OracleAnswer.ELSEWHERE

        return oracle

    searched = 0
    root_marks = (-1, -2)
    for ver in sample:
        snap = snapshots[ver]
        rts = [v for v, d in snap.items() if d["parent"] is None]
        if not rts:
            continue
        for _ in range(oracle_per_version):
            r = rng.choice(rts)
            nodes = [x for x in snap if _sroot(snap, x) == r]
            target = rng.choice([None] + [x for x in nodes if x != r])
            edge, marks = g.oracle_search(
                r, shadow_oracle(snap, target), root_marks, ver=ver
            )
            assert edge == target, (ver, r, target, edge)
            want = root_marks if target is None else (
                snap[target]["ml"],
                snap[target]["mr"],
            )
            assert marks == want, (ver, target)
            searched += 1

    # -- per-operation write accounting ------------------------------------
    mx = defaultdict(int)
    cnt = defaultdict(int)
    for op, w, sz in op_writes:
        mx[op] = max(mx[op], w)
        cnt[op] += 1
        assert w <= write_bound(sz), (op, w, sz, write_bound(sz))

    return {
        "ops": sum(cnt.values()),
        "counts": dict(cnt),
        "max_writes": dict(mx),
        "versions_checked": len(sample),
        "oracle_searches": searched,
        "vertices": len(shadow),
    }


def _sroot(snap, v):
    while snap[v]["parent"] is not None:
        v = snap[v]["parent"]
    return v
