"""Halfplane proximity over prefixes of the site sequence.

Sites arrive one at a time (convex ccw order).  Each push opens a new
persistence version and mirrors the dual-tree restructuring (the flarb's
pointer delta) into a grappa forest whose edge marks identify the
Delaunay edges; after marking the right spine, the version is frozen.
A query against any prefix p_1..p_t replays an oracle search against the
version recorded for t, reading history only: queries write nothing.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .dual_tree import DualTree
from .geometry import DirectedLine, Mode, Point, better_site, circumcenter
from .grappa import GrappaForest, OracleAnswer
from .persistence import VersionStore


class PrefixStructure:
    def __init__(self, mode: Mode):
        self.mode = mode
        self.store = VersionStore()
        self.grappa = GrappaForest(self.store)
        self.dual = DualTree(mode)
        self.version_of: Dict[int, int] = {}  # prefix length -> version
        self._roots: Dict[int, Optional[int]] = {}  # prefix length -> tree root

    @property
    def n(self) -> int:
        return self.dual.n

    def push(self, p: Point) -> None:
        """Append the next site; opens and freezes one version."""
        ver = self.store.new_version()
        _, delta = self.dual.insert(p)
        n = self.dual.n
        if n >= 3:
            r_id = n - 1
            self.grappa.make_tree(r_id)
            if n > 3:
                # Mirror the flarb: cut every dead relationship, then link
                # the new ones with marks read off the current triangles.
                links = []
                for parent, side, old, new in delta.rows:
                    if old is not None:
                        self.grappa.cut(parent, old)
                    if new is not None:
                        links.append((parent, side, new))
                for parent, side, child in links:
                    ml, mr = self._edge_marks(parent, side, child)
                    self.grappa.link(parent, child, side, ml, mr)
            root = self.dual.tree.root
            self.grappa.mark_right_spine(root, n)
            self._roots[n] = root
        else:
            self._roots[n] = None
        self.version_of[n] = ver

    def _edge_marks(self, parent: int, side: str, child: int) -> Tuple[int, int]:
        # The Delaunay edge dual to the tree edge is the pair of sites the
        # two triangles share; the left/right marks order that pair.
        shared = sorted(set(self.dual.triangle(parent)) & set(self.dual.triangle(child)))
        if len(shared) != 2:
            raise AssertionError(f"edge ({parent},{child}) shares {shared}")
        return shared[0], shared[1]

    # -- queries (pure) ----------------------------------------------------

    def query_prefix(self, t: int, q: Point) -> int:
        """Extreme site among p_1..p_t (1-based index; t >= 1)."""
        if not 1 <= t <= self.n:
            raise ValueError(f"prefix length {t} out of range")
        q = (int(q[0]), int(q[1]))
        if t <= 3:
            return self._best_of(range(1, t + 1), q)
        ver = self.version_of[t]
        root = self._roots[t]
        if self.mode is Mode.NEAREST:
            return self._query_prefix_nearest(t, q, ver, root)

        def oracle(e1, m1, e2, m2):
            tri = sorted(set(m1) | set(m2))
            if len(tri) != 3:
                raise AssertionError(f"probed marks {m1} {m2} give {tri}")
            side = self._sector(tri, q)
            i, j, k = tri
            want = {
                "left": (i, j),
                "right": (j, k),
                "parent": (i, k),
            }[side]
            if tuple(sorted(m1)) == want:
                return OracleAnswer.IN_FIRST
            if tuple(sorted(m2)) == want:
                return OracleAnswer.IN_SECOND
            return OracleAnswer.ELSEWHERE

        edge, marks = self.grappa.oracle_search(
            root, oracle, (1, t), ver=ver
        )
        a, b = sorted(marks)
        final = {a, b, a + 1, b - 1}
        cands = {c for c in final if 1 <= c <= t}
        return self._best_of(sorted(cands), q)

    def _query_prefix_nearest(self, t: int, q: Point, ver: int, root: int) -> int:
        """Pruned walk over the version-`ver` tree for nearest mode.

        Sector routing is only sound for farthest diagrams, so nearest
        queries search subtrees with the edge-pair bound instead: a
        subtree below Delaunay edge (a, b) covers the sites strictly
        inside the arc (a..b), and if the nearest site were among them
        then min(d_a, d_b) could not exceed the distance to any site
        already seen outside the arc.  Each node's triangle is (a, v, b)
        where (a, b) is its parent edge's site pair, so the walk needs
        only historical child-pointer reads and performs zero writes.
        """
        pts = self.dual.pts
        qx, qy = q

        def d2(s):
            px, py = pts[s - 1]
            return (px - qx) ** 2 + (py - qy) ** 2

        cands = set()
        best = [None]

        def see(s):
            d = d2(s)
            if best[0] is None or d < best[0]:
                best[0] = d

        stack = [(0, root, 1, t)]
        while stack:
            bound, v, a, b = stack.pop()
            if best[0] is not None and bound > best[0]:
                continue
            for s in (a, v, b):
                if s not in cands:
                    cands.add(s)
                    see(s)
            kids = []
            lc = self.grappa.tree_child(v, "left", ver)
            if lc is not None:
                kids.append((min(d2(a), d2(v)), lc, a, v))
            rc = self.grappa.tree_child(v, "right", ver)
            if rc is not None:
                kids.append((min(d2(v), d2(b)), rc, v, b))
            kids.sort(reverse=True)
            stack.extend(kids)
        return self._best_of(sorted(cands), q)

    def _sector(self, tri: Tuple[int, int, int], q: Point) -> str:
        # Same sector logic as DualTree.sector_of, but the probed triangle
        # is reconstructed from marks (it may only exist at an old version).
        from .dual_tree import _ccw_arc_contains, _cross

        ia, ij, ik = tri
        pts = [self.dual.site(x) for x in tri]
        c = circumcenter(*pts)
        sign = self.mode.sign
        rays = []
        for t, (sx, sy) in zip(tri, pts):
            rays.append((t, (sign * (sx * c.d - c.nx), sign * (sy * c.d - c.ny))))
        v = (q[0] * c.d - c.nx, q[1] * c.d - c.ny)
        if v == (0, 0):
            return "parent"

        def pair_dir(a, b):
            lo, hi = (a, b) if a < b else (b, a)
            if (lo, hi) == (ia, ij):
                return "left"
            if (lo, hi) == (ij, ik):
                return "right"
            return "parent"

        for t, r in rays:
            if _cross(r[0], r[1], v[0], v[1]) == 0 and r[0] * v[0] + r[1] * v[1] > 0:
                others = [u for u, _ in rays if u != t]
                cands = {pair_dir(t, others[0]), pair_dir(t, others[1])}
                for choice in ("parent", "left", "right"):
                    if choice in cands:
                        return choice
        (ta, ra), (tb, rb), (tc, rc) = rays
        if not _ccw_arc_contains(ra, rc, rb):
            tb, tc = tc, tb
            rb, rc = rc, rb
        if _ccw_arc_contains(ra, rb, v):
            return pair_dir(ta, tb)
        if _ccw_arc_contains(rb, rc, v):
            return pair_dir(tb, tc)
        return pair_dir(tc, ta)

    def _best_of(self, idxs, q: Point) -> int:
        best = None
        for t in idxs:
            if best is None:
                best = t
            else:
                best = better_site(
                    q, self.mode, best, self.dual.site(best), t, self.dual.site(t)
                )
        return best

    def query(self, q: Point, line: DirectedLine) -> Optional[int]:
        """Halfplane query against the full current prefix.

        Only meaningful when the clipped interval is itself a prefix; the
        general routing lives in IntervalStructure.  Provided for direct
        prefix use: returns the best site among p_1..p_n left of the line,
        assuming that set is a prefix p_1..p_t.
        """
        from .geometry import ConvexSequence, left_interval, side_of_line

        n = self.n
        if n == 0:
            return None
        pts = self.dual.pts
        if n < 3:
            sel = [t for t in range(1, n + 1) if side_of_line(line, pts[t - 1]) >= 0]
            return self._best_of(sel, q) if sel else None
        res = left_interval(ConvexSequence(pts), line)
        if res.kind == "empty":
            return None
        if res.kind == "full":
            return self.query_prefix(n, q)
        if res.i != 1:
            raise ValueError("halfplane does not clip to a prefix")
        return self.query_prefix(res.j, q)
