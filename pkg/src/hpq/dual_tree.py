"""Dual tree of the farthest/nearest Voronoi diagram of convex sites.

The Delaunay triangulation of sites p_1..p_n in convex position is a fan
of n-2 triangles whose dual is a tree; ordering triangles by their median
site index turns that tree into a binary search tree.  Node ids equal
their BST keys (2..n-1); the node with key k is created when site k+1
arrives and never changes identity, while triangles are reassigned along
the rightmost path on each insertion.

Insertion of site n+1 removes the triangles whose circumcircle test is
violated (a connected, root-anchored subtree) and retriangulates the
freed region as a fan from p_{n+1}; on the tree this is exactly a flarb.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .flarb import Delta, FlarbTree, _Node, _path_and_pieces, flarb
from .geometry import (
    ConvexSequence,
    Mode,
    Point,
    better_site,
    circumcenter,
    orientation,
)

Tri = Tuple[int, int, int]

_EPS = 2.220446049250313e-16
_ICC_ERR = (10.0 + 96.0 * _EPS) * _EPS  # incircle float-filter coefficient


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _ccw_arc_contains(A, B, X) -> bool:
    """Is direction X strictly inside the ccw arc from A to B?

    A, B, X are nonzero integer vectors; X is assumed not parallel to A
    or B in the same direction (callers handle ties first).
    """
    cab = _cross(A[0], A[1], B[0], B[1])
    if cab > 0:
        return _cross(A[0], A[1], X[0], X[1]) > 0 and _cross(X[0], X[1], B[0], B[1]) > 0
    if cab < 0:
        return not (
            _cross(B[0], B[1], X[0], X[1]) > 0 and _cross(X[0], X[1], A[0], A[1]) > 0
        )
    # A and B opposite: the ccw arc is the open halfplane left of A.
    return _cross(A[0], A[1], X[0], X[1]) > 0


class DualTree:
    """Incremental dual tree.

    The default build keeps the rightmost path (the fan around the newest
    site) implicit: spine triangles are (spine predecessor, key, n), spine
    subtree sizes carry a shared per-insert offset, and the conflict
    prefix along the spine is found by binary search instead of node-by-
    node incircle walks.  That matters because near-cocircular instances
    re-fan a Theta(n)-sized spine on most insertions even though the
    pointer delta stays logarithmic.  ``simple=True`` selects the direct
    conflict-walk + generic-flarb build (reference implementation; the
    two are cross-checked against each other in the tests).
    """

    def __init__(self, mode: Mode, simple: bool = False):
        self.mode = mode
        self.simple = simple
        self.pts: List[Point] = []
        self.tree = FlarbTree()
        self.tri: Dict[int, Tri] = {}
        self._geo: Dict[int, tuple] = {}  # node id -> (d, nx, ny, rays)
        self.last_conflicts: Optional[Set[int]] = None  # simple mode only
        # Fast-build spine state.  Position arrays are capacity-managed
        # numpy arrays of length self._slen aligned with self._sp.
        self._sp: List[int] = []  # spine node ids, top -> bottom
        self._joined: Dict[int, int] = {}  # spine node -> epoch of its size base
        self._e = 0  # epoch: one tick per flarb; true spine size = base + (e - joined)
        self._slen = 0
        cap = 16
        self._crel = np.zeros(cap, dtype=np.int64)  # c(pos) - epoch, c = right-subtree size
        self._wllog = np.zeros(cap, dtype=np.float64)  # log2(2*lsize + 1)
        self._hasl = np.zeros(cap, dtype=bool)
        self._ltri = np.zeros((cap, 6), dtype=np.float64)  # left-child triangle coords
        self._logodd = np.log2(2.0 * np.arange(cap) + 1.0)
        self._phi_off = 0.0  # potential of off-spine nodes
        self._final = True

    @property
    def n(self) -> int:
        return len(self.pts)

    def site(self, idx1: int) -> Point:
        return self.pts[idx1 - 1]

    # -- construction -----------------------------------------------------

    def _can_append(self, p: Point) -> bool:
        pts = self.pts
        n = len(pts)
        if n >= 1 and p == pts[-1] or n >= 2 and p == pts[0]:
            return False
        if n < 2:
            return True
        if n == 2:
            return orientation(pts[0], pts[1], p) > 0
        return (
            orientation(pts[-2], pts[-1], p) > 0
            and orientation(pts[-1], p, pts[0]) > 0
            and orientation(p, pts[0], pts[1]) > 0
        )

    def insert(self, p: Point) -> Tuple[int, Delta]:
        """Append site p (must keep the sequence strictly convex ccw).

        Returns the conflict count (triangles whose circumcircle test
        died) and the pointer delta of the flarb that restructured the
        tree.  In simple mode the conflict set itself is kept in
        ``last_conflicts``.
        """
        p = (int(p[0]), int(p[1]))
        if not self._can_append(p):
            raise ValueError("appending this point breaks strict convexity")
        self.pts.append(p)
        n = len(self.pts)
        if n < 3:
            return 0, Delta()
        if self.simple:
            s, delta = self._insert_simple()
            self.last_conflicts = s
            return len(s), delta
        return self._insert_fast()

    def _insert_simple(self) -> Tuple[Set[int], Delta]:
        n = len(self.pts)
        p = self.pts[-1]
        if n == 3:
            delta = flarb(self.tree, set(), 2)
            self.tri[2] = (1, 2, 3)
            return set(), delta

        # Conflict walk: the dead triangles form a root-anchored subtree.
        sign = self.mode.sign
        px, py = p
        pts = self.pts
        tri = self.tri
        nodes = self.tree.nodes

        def conflicts(x: int) -> bool:
            ia, ib, ic = tri[x]
            ax, ay = pts[ia - 1]
            bx, by = pts[ib - 1]
            cx, cy = pts[ic - 1]
            adx = ax - px
            ady = ay - py
            bdx = bx - px
            bdy = by - py
            cdx = cx - px
            cdy = cy - py
            det = (
                (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
                - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
                + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
            )
            return det * sign > 0

        s: Set[int] = set()
        root = self.tree.root
        stack = [root] if conflicts(root) else []
        while stack:
            x = stack.pop()
            s.add(x)
            nd = nodes[x]
            for c in (nd.left, nd.right):
                if c is not None and conflicts(c):
                    stack.append(c)

        r_id = n - 1  # the new node's BST key
        delta = flarb(self.tree, s, r_id)

        # Retriangulate: the rightmost path is the fan around site n.
        prev = 1
        x = self.tree.root
        geo = self._geo
        while x is not None:
            tri[x] = (prev, x, n)
            geo.pop(x, None)
            prev = x
            x = nodes[x].right
        return s, delta

    # -- fast build --------------------------------------------------------

    def _conflicts_idx(self, ia: int, ib: int, ic: int) -> bool:
        """Exact incircle conflict of the newest site against (ia, ib, ic)."""
        pts = self.pts
        px, py = pts[-1]
        ax, ay = pts[ia - 1]
        bx, by = pts[ib - 1]
        cx, cy = pts[ic - 1]
        adx = ax - px
        ady = ay - py
        bdx = bx - px
        bdy = by - py
        cdx = cx - px
        cdy = cy - py
        det = (
            (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
            - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
            + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
        )
        return det * self.mode.sign > 0

    def _grow_arrays(self, need: int) -> None:
        cap = len(self._crel)
        if need <= cap:
            return
        while cap < need:
            cap *= 2
        for name in ("_crel", "_wllog", "_hasl"):
            old = getattr(self, name)
            new = np.zeros(cap, dtype=old.dtype)
            new[: self._slen] = old[: self._slen]
            setattr(self, name, new)
        new = np.zeros((cap, 6), dtype=np.float64)
        new[: self._slen] = self._ltri[: self._slen]
        self._ltri = new

    def _logodd_table(self, need: int) -> np.ndarray:
        if need >= len(self._logodd):
            cap = len(self._logodd)
            while cap <= need:
                cap *= 2
            self._logodd = np.log2(2.0 * np.arange(cap) + 1.0)
        return self._logodd

    def _phi_node_sized(self, x: int) -> float:
        nd = self.tree.nodes[x]
        nodes = self.tree.nodes
        wl = 1 if nd.left is None else 2 * nodes[nd.left].size + 1
        wr = 1 if nd.right is None else 2 * nodes[nd.right].size + 1
        return math.log2(wl / wr)

    def _insert_fast(self) -> Tuple[int, Delta]:
        nodes = self.tree.nodes
        pts = self.pts
        n = len(pts)
        r_id = n - 1
        sp = self._sp
        L = self._slen
        e = self._e
        self._final = False

        # 1) Conflict prefix length m by binary search: S restricted to the
        # spine is a prefix (S is ancestor-closed and spine nodes chain by
        # parent), so conflict status is monotone along it.
        def conflicting(pos: int) -> bool:
            return self._conflicts_idx(sp[pos - 1] if pos else 1, sp[pos], n - 1)

        if L == 0 or not conflicting(0):
            m = 0
        else:
            lo, hi = 1, L  # conflicting(lo-1) holds; hi = first known-bad + ...
            while lo < hi:
                mid = (lo + hi) // 2
                if conflicting(mid):
                    lo = mid + 1
                else:
                    hi = mid
            m = lo

        conf = m
        delta = Delta()

        # 2) Off-spine conflicts enter through left children of prefix
        # nodes; filter them in floating point, falling back to the exact
        # determinant only near the zero set.
        clusters: List[int] = []
        if m and self._hasl[:m].any():
            idx = np.flatnonzero(self._hasl[:m])
            T = self._ltri[idx]
            px, py = pts[-1]
            adx = T[:, 0] - px
            ady = T[:, 1] - py
            bdx = T[:, 2] - px
            bdy = T[:, 3] - py
            cdx = T[:, 4] - px
            cdy = T[:, 5] - py
            alift = adx * adx + ady * ady
            blift = bdx * bdx + bdy * bdy
            clift = cdx * cdx + cdy * cdy
            bxcy = bdx * cdy
            bycx = bdy * cdx
            axcy = adx * cdy
            aycx = ady * cdx
            axby = adx * bdy
            aybx = ady * bdx
            det = alift * (bxcy - bycx) - blift * (axcy - aycx) + clift * (axby - aybx)
            err = _ICC_ERR * (
                alift * (np.abs(bxcy) + np.abs(bycx))
                + blift * (np.abs(axcy) + np.abs(aycx))
                + clift * (np.abs(axby) + np.abs(aybx))
            )
            cand = np.flatnonzero(det * self.mode.sign > -err)
            for t in cand:
                pos = int(idx[t])
                lc = nodes[sp[pos]].left
                if self._conflicts_idx(*self.tri[lc]):
                    clusters.append(pos)

        if clusters:
            grew, extra = self._splice_clusters(clusters, delta)
            m += grew
            conf += extra
            L = self._slen

        # 3) Leavers: spine positions >= m fall off the rightmost path.
        # Materialize their sizes, freeze their triangles, and move their
        # potential terms into the off-spine pool.
        tail = sp[m] if m < L else None
        if m < L:
            joined = self._joined
            for pos in range(m, L):
                x = sp[pos]
                nodes[x].size += e - joined.pop(x)
            for pos in range(m, L):
                x = sp[pos]
                self.tri[x] = (sp[pos - 1] if pos else 1, x, n - 1)
                self._geo.pop(x, None)
                self._phi_off += self._phi_node_sized(x)

        # 4) Splice r at the bottom of the kept prefix.
        rn = _Node()
        nodes[r_id] = rn
        if m > 0:
            par = sp[m - 1]
            nodes[par].right = r_id
            rn.parent = par
            delta.rows.append((par, "right", tail, r_id))
        else:
            self.tree.root = r_id
        rn.left = tail
        tail_sz = 0
        if tail is not None:
            nodes[tail].parent = r_id
            delta.rows.append((r_id, "left", None, tail))
            tail_sz = nodes[tail].size
        rn.size = 1 + tail_sz

        # 5) Position arrays: truncate to the kept prefix, append r.
        del sp[m:]
        sp.append(r_id)
        self._grow_arrays(m + 1)
        self._slen = m + 1
        self._e = e + 1
        self._joined[r_id] = self._e
        self._crel[m] = -self._e
        self._wllog[m] = math.log2(2 * tail_sz + 1)
        self._hasl[m] = tail is not None
        if tail is not None:
            ia, ib, ic = self.tri[tail]
            self._ltri[m] = (*pts[ia - 1], *pts[ib - 1], *pts[ic - 1])

        # 6) Potential: off-spine pool plus vectorized spine sums.
        k = self._slen
        table = self._logodd_table(n)
        b_sum = float(table[self._crel[:k] + self._e].sum())
        l_sum = float(self._wllog[:k].sum())
        self.tree.phi = self._phi_off + l_sum - b_sum
        return conf, delta

    def _splice_clusters(self, clusters: List[int], delta: Delta) -> Tuple[int, int]:
        """Pull conflicting off-spine subtrees onto the spine.

        ``clusters`` holds spine positions whose left child conflicts.
        Each cluster's members slot between the position's spine
        predecessor and the position itself (in-order is preserved), all
        edits are local to that neighborhood, and positions below shift
        by the cluster size.  Returns (total injected, total conflicts).
        """
        nodes = self.tree.nodes
        tree = self.tree
        sp = self._sp
        e = self._e
        n = len(self.pts)
        grew = 0
        extra = 0
        for i in sorted(clusters, reverse=True):
            si = sp[i]
            lch = nodes[si].left
            # Collect the conflict subtree under the left child (exact).
            cset: Set[int] = {lch}
            stack = [lch]
            while stack:
                x = stack.pop()
                nd = nodes[x]
                for ch in (nd.left, nd.right):
                    if ch is not None and self._conflicts_idx(*self.tri[ch]):
                        cset.add(ch)
                        stack.append(ch)
            cpath, cpieces = _path_and_pieces(tree, cset, root=lch)
            k = len(cpath)
            extra += k
            for x in cpath:
                self._phi_off -= self._phi_node_sized(x)
            old_right = {x: nodes[x].right for x in cpath}
            old_left = {x: nodes[x].left for x in cpath}

            # Rewire: ... sp[i-1] -> cpath chain -> si ...; the last path
            # member's right subtree becomes si's new left.
            first, last = cpath[0], cpath[-1]
            tp = nodes[last].right
            if i > 0:
                u = sp[i - 1]
                nodes[u].right = first
                nodes[first].parent = u
                delta.rows.append((u, "right", si, first))
            else:
                tree.root = first
                nodes[first].parent = None
            for t in range(k):
                x = cpath[t]
                nxt = cpath[t + 1] if t + 1 < k else si
                if old_right[x] != nxt:
                    delta.rows.append((x, "right", old_right[x], nxt))
                nodes[x].right = nxt
                nodes[nxt].parent = x
                if t > 0:
                    piece = cpieces[t - 1]
                    if old_left[x] != piece:
                        delta.rows.append((x, "left", old_left[x], piece))
                    nodes[x].left = piece
                    if piece is not None:
                        nodes[piece].parent = x
            nodes[si].left = tp
            delta.rows.append((si, "left", lch, tp))
            if tp is not None:
                nodes[tp].parent = si

            # Sizes bottom-up (epoch-relative): si keeps its tracking; the
            # joiners' bases are set at the current epoch.
            c_si = int(self._crel[i]) + e
            tp_sz = nodes[tp].size if tp is not None else 0
            si_sz = 1 + tp_sz + c_si
            nodes[si].size = si_sz - (e - self._joined[si])
            c_below = si_sz
            true_sz: Dict[int, int] = {}
            for t in range(k - 1, -1, -1):
                x = cpath[t]
                lsz = nodes[nodes[x].left].size if nodes[x].left is not None else 0
                true_sz[x] = 1 + lsz + c_below
                c_below = true_sz[x]
            for x in cpath:
                nodes[x].size = true_sz[x]
                self._joined[x] = e
                self.tri.pop(x, None)
                self._geo.pop(x, None)

            # Position arrays: shift [i:] down by k, fill the new rows.
            L = self._slen
            self._grow_arrays(L + k)
            for arr in (self._crel, self._wllog, self._hasl):
                arr[i + k : L + k] = arr[i:L].copy()
            self._ltri[i + k : L + k] = self._ltri[i:L].copy()
            sp[i:i] = cpath
            self._slen = L + k
            pos_i_new = i + k
            self._wllog[pos_i_new] = math.log2(2 * tp_sz + 1)
            self._hasl[pos_i_new] = tp is not None
            if tp is not None:
                ia, ib, ic = self.tri[tp]
                self._ltri[pos_i_new] = (
                    *self.pts[ia - 1],
                    *self.pts[ib - 1],
                    *self.pts[ic - 1],
                )
            for t in range(k):
                x = cpath[t]
                # crel = c - e; c of a spine node is its right subtree size
                c_val = true_sz[cpath[t + 1]] if t + 1 < k else si_sz
                self._crel[i + t] = c_val - e
                lc = nodes[x].left
                lsz = nodes[lc].size if lc is not None else 0
                self._wllog[i + t] = math.log2(2 * lsz + 1)
                self._hasl[i + t] = lc is not None
                if lc is not None:
                    ia, ib, ic = self.tri[lc]
                    self._ltri[i + t] = (
                        *self.pts[ia - 1],
                        *self.pts[ib - 1],
                        *self.pts[ic - 1],
                    )
            grew += k
        return grew, extra

    def triangle(self, x: int) -> Tri:
        """Current triangle of node x, valid mid-build (spine implicit)."""
        if self.simple or x not in self._joined:
            return self.tri[x]
        par = self.tree.nodes[x].parent
        return (par if par is not None else 1, x, len(self.pts))

    def _ensure(self) -> None:
        """Materialize implicit spine state (sizes, triangles)."""
        if self._final or self.simple:
            return
        nodes = self.tree.nodes
        e = self._e
        joined = self._joined
        n = len(self.pts)
        for pos, x in enumerate(self._sp):
            nodes[x].size += e - joined[x]
            joined[x] = e
            self.tri[x] = (self._sp[pos - 1] if pos else 1, x, n)
            self._geo.pop(x, None)
        self._final = True

    # -- queries ----------------------------------------------------------

    def _node_geo(self, x: int):
        g = self._geo.get(x)
        if g is None:
            ia, ib, ic = self.tri[x]
            c = circumcenter(self.pts[ia - 1], self.pts[ib - 1], self.pts[ic - 1])
            sign = self.mode.sign
            rays = []
            for t in (ia, ib, ic):
                sx, sy = self.pts[t - 1]
                rays.append((t, (sign * (sx * c.d - c.nx), sign * (sy * c.d - c.ny))))
            g = (c.d, c.nx, c.ny, rays)
            self._geo[x] = g
        return g

    def sector_of(self, x: int, q: Point) -> str:
        """Which side of triangle-node x the query point falls into.

        Returns "parent", "left", or "right": the tree direction of the
        Voronoi edge toward whose pair of regions q points, seen from the
        circumcenter of x.  Boundary ties resolve parent, then left.
        """
        self._ensure()
        d, nx, ny, rays = self._node_geo(x)
        v = (q[0] * d - nx, q[1] * d - ny)
        if v == (0, 0):
            return "parent"
        ia, ib, ic = self.tri[x]

        def pair_dir(a: int, b: int) -> str:
            lo, hi = (a, b) if a < b else (b, a)
            if (lo, hi) == (ia, ib):
                return "left"
            if (lo, hi) == (ib, ic):
                return "right"
            return "parent"

        # Ties: v parallel (same direction) to a corner ray lies on the
        # boundary of the two sectors flanking that ray.
        for t, r in rays:
            if _cross(r[0], r[1], v[0], v[1]) == 0 and r[0] * v[0] + r[1] * v[1] > 0:
                others = [u for u, _ in rays if u != t]
                cands = {pair_dir(t, others[0]), pair_dir(t, others[1])}
                for choice in ("parent", "left", "right"):
                    if choice in cands:
                        return choice
        # Strict case: order the three rays ccw, then find v's arc.
        (ta, ra), (tb, rb), (tc, rc) = rays
        if not _ccw_arc_contains(ra, rc, rb):
            tb, tc = tc, tb
            rb, rc = rc, rb
        if _ccw_arc_contains(ra, rb, v):
            return pair_dir(ta, tb)
        if _ccw_arc_contains(rb, rc, v):
            return pair_dir(tb, tc)
        return pair_dir(tc, ta)

    def locate_candidates(self, q: Point) -> List[int]:
        """Site indices guaranteed to include the answer for q.

        Farthest mode descends by sector tests and returns the corners of
        the final triangle.  Nearest mode runs the pruned subtree search
        (sector routing is only sound for farthest diagrams; see _nearest).
        """
        n = len(self.pts)
        if n == 0:
            raise ValueError("no sites")
        if n <= 2:
            return list(range(1, n + 1))
        self._ensure()
        if self.mode is Mode.NEAREST:
            return self._nearest_candidates(q)
        nodes = self.tree.nodes
        x = self.tree.root
        while True:
            s = self.sector_of(x, q)
            if s == "parent":
                break
            c = nodes[x].left if s == "left" else nodes[x].right
            if c is None:
                break
            x = c
        return sorted(self.tri[x])

    def _nearest_candidates(self, q: Point) -> List[int]:
        """Branch-and-bound over the dual tree for nearest mode.

        A subtree hangs below a Delaunay edge (a, b) and covers exactly
        the sites strictly inside the arc (a..b).  If the nearest site s
        lies strictly inside that arc, then any segment from q to a site w
        outside the arc exits the union of the arc's cells through the
        boundary of cell a or cell b, giving min(d_a, d_b) <= d_w.  So a
        subtree may be skipped whenever min(d_a, d_b) strictly exceeds the
        distance to some site already seen outside the arc; every site
        tied with the minimum survives, keeping the index tie rule intact.
        """
        self._ensure()
        qx, qy = q
        pts = self.pts
        nodes = self.tree.nodes

        def d2(t):
            px, py = pts[t - 1]
            return (px - qx) ** 2 + (py - qy) ** 2

        cands = set()
        best = [None]

        def see(t):
            d = d2(t)
            if best[0] is None or d < best[0]:
                best[0] = d
            return d

        stack = [(0, self.tree.root)]
        while stack:
            bound, x = stack.pop()
            if best[0] is not None and bound > best[0]:
                continue
            i, j, k = self.tri[x]
            for t in (i, j, k):
                if t not in cands:
                    cands.add(t)
                    see(t)
            nd = nodes[x]
            kids = []
            if nd.left is not None:
                kids.append((min(d2(i), d2(j)), nd.left))
            if nd.right is not None:
                kids.append((min(d2(j), d2(k)), nd.right))
            kids.sort(reverse=True)
            stack.extend(kids)
        return sorted(cands)

    def locate(self, q: Point) -> int:
        """Site index whose Voronoi region (mode flavour) contains q.

        Plain root-to-leaf descent by sector tests; resolution takes the
        best corner of the final triangle.
        """
        return self._best_of(self.locate_candidates(q), q)

    def _best_of(self, idxs, q: Point) -> int:
        best = None
        for t in idxs:
            if best is None:
                best = t
            else:
                best = better_site(q, self.mode, best, self.site(best), t, self.site(t))
        return best

    def check(self) -> None:
        """Invariants: tree shape, BST keys, triangle/edge consistency."""
        self._ensure()
        self.tree.check()
        n = len(self.pts)
        if n < 3:
            assert not self.tree.nodes
            return
        order = self.tree.in_order()
        assert order == sorted(self.tree.nodes), "in-order is not key order"
        assert order == list(range(2, n)), order
        for x in order:
            ia, ib, ic = self.tri[x]
            assert ib == x, (x, self.tri[x])
            assert 1 <= ia < ib < ic <= n
        # Parent/child triangles share exactly two sites.
        for x in order:
            nd = self.tree.nodes[x]
            for c in (nd.left, nd.right):
                if c is not None:
                    shared = set(self.tri[x]) & set(self.tri[c])
                    assert len(shared) == 2, (x, c)


class CentroidLocator:
    """Centroid decomposition of a finished dual tree for point location.

    Each query performs at most ceil(log2 n) + 2 sector tests; the answer
    is the best site among the corners of the probed triangles.
    """

    def __init__(self, dual: DualTree):
        dual._ensure()
        self.dual = dual
        self._n_at_build = dual.n
        self.sector_tests = 0
        ids = list(dual.tree.nodes)
        adj: Dict[int, List[int]] = {x: [] for x in ids}
        for x in ids:
            nd = dual.tree.nodes[x]
            for c in (nd.left, nd.right):
                if c is not None:
                    adj[x].append(c)
                    adj[c].append(x)
        self._neighbor = {}
        for x in ids:
            nd = dual.tree.nodes[x]
            self._neighbor[x] = {
                "parent": nd.parent,
                "left": nd.left,
                "right": nd.right,
            }
        self.root = self._decompose(ids[0], adj) if ids else None

    def _decompose(self, start: int, adj) -> tuple:
        # Returns (centroid, {neighbor_id: child_decomposition}).
        removed: Set[int] = set()

        def build(seed: int):
            # Collect component.
            comp = [seed]
            seen = {seed}
            for x in comp:
                for y in adj[x]:
                    if y not in removed and y not in seen:
                        seen.add(y)
                        comp.append(y)
            total = len(comp)
            # Subtree sizes via iterative dfs from seed.
            parent = {seed: None}
            order = [seed]
            for x in order:
                for y in adj[x]:
                    if y not in removed and y != parent[x]:
                        parent[y] = x
                        order.append(y)
            size = {x: 1 for x in comp}
            for x in reversed(order):
                if parent[x] is not None:
                    size[parent[x]] += size[x]
            # Centroid: all pieces at most total // 2.
            c = seed
            while True:
                nxt = None
                for y in adj[c]:
                    if y in removed:
                        continue
                    piece = size[y] if parent.get(y) == c else total - size[c]
                    if piece > total // 2:
                        nxt = y
                        break
                if nxt is None:
                    break
                # Recompute sizes rooted at nxt cheaply by flipping.
                if parent.get(nxt) == c:
                    size[c] = total - size[nxt]
                    parent[c] = nxt
                    parent[nxt] = None
                    size[nxt] = total
                c = nxt
            removed.add(c)
            children = {}
            for y in adj[c]:
                if y not in removed:
                    children[y] = build(y)
            return (c, children)

        import sys

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 10000))
        try:
            return build(start)
        finally:
            sys.setrecursionlimit(old)

    def locate_candidates(self, q: Point) -> List[int]:
        dual = self.dual
        if dual.n != self._n_at_build:
            raise ValueError("dual tree changed since locator build")
        if dual.n <= 2 or self.root is None:
            return list(range(1, dual.n + 1))
        if dual.mode is Mode.NEAREST:
            return dual._nearest_candidates(q)
        cands: Set[int] = set()
        node = self.root
        while node is not None:
            x, children = node
            cands.update(dual.tri[x])
            self.sector_tests += 1
            s = dual.sector_of(x, q)
            w = self._neighbor[x][s]
            node = children.get(w) if w is not None else None
        return sorted(cands)

    def locate(self, q: Point) -> int:
        return self.dual._best_of(self.locate_candidates(q), q)
