"""Marked fixed-topology forests with cheap right-spine marking.

A grappa forest stores binary trees whose shape is dictated by the
caller (Link/Cut give no rebalancing freedom).  Every edge carries a
left mark and a right mark; Mark-Right-Spine overwrites the right marks
of the whole right spine of a tree in O(polylog) memory writes, and
Oracle-Search navigates a tree using only an oracle that inspects the
marks of probed edges.

Implementation: heavy-path decomposition, one treap per heavy path
(ordered top to bottom), lazy assignment tags for right marks.  Every
mutable field lives in a persistence Cell, so the whole forest is
partially persistent for free and Oracle-Search can run against any
past version without writing anything.
"""

from __future__ import annotations

import enum
import zlib
from typing import Callable, Dict, Hashable, Optional, Tuple

from .persistence import Cell, VersionStore

VId = Hashable

_FIELDS = (
    "parent",
    "lchild",
    "rchild",
    "eml",
    "emr",
    "tag",
    "top",
    "weight",
    "size",
    "wsum",
    "tp",
    "tl",
    "tr",
)


class OracleAnswer(enum.Enum):
    IN_FIRST = "first"  # target lies on the far side of the first probed edge
    IN_SECOND = "second"
    ELSEWHERE = "elsewhere"  # neither probed side (third component of T - v)


class InconsistentOracle(RuntimeError):
    pass


class GrappaForest:
    def __init__(self, store: VersionStore):
        self.store = store
        self.cells: Dict[VId, Dict[str, Cell]] = {}
        self._prio: Dict[VId, int] = {}

    # -- cell shorthands --------------------------------------------------

    def _rd(self, v: VId, f: str, ver: Optional[int] = None):
        return self.store.read(self.cells[v][f], ver)

    def _wr(self, v: VId, f: str, val) -> None:
        self.store.write(self.cells[v][f], val)

    # -- treap helpers (always operate on the latest version) -------------

    def _pull(self, x: VId) -> None:
        tl = self._rd(x, "tl")
        tr = self._rd(x, "tr")
        sz = 1
        ws = self._rd(x, "weight")
        if tl is not None:
            sz += self._rd(tl, "size")
            ws += self._rd(tl, "wsum")
        if tr is not None:
            sz += self._rd(tr, "size")
            ws += self._rd(tr, "wsum")
        self._wr(x, "size", sz)
        self._wr(x, "wsum", ws)

    def _push(self, x: VId) -> None:
        t = self._rd(x, "tag")
        if t is None:
            return
        for c in (self._rd(x, "tl"), self._rd(x, "tr")):
            if c is not None:
                self._wr(c, "tag", t)
        if not self._rd(x, "top"):
            self._wr(x, "emr", t)
        self._wr(x, "tag", None)

    def _push_chain(self, w: VId) -> None:
        """Materialize every pending tag on w's treap path, top down."""
        chain = []
        x = w
        while x is not None:
            chain.append(x)
            x = self._rd(x, "tp")
        for x in reversed(chain):
            self._push(x)

    def _treap_root(self, x: VId, ver: Optional[int] = None) -> VId:
        while True:
            p = self._rd(x, "tp", ver)
            if p is None:
                return x
            x = p

    def _rank(self, u: VId) -> int:
        tl = self._rd(u, "tl")
        r = 1 + (self._rd(tl, "size") if tl is not None else 0)
        cur = u
        while True:
            p = self._rd(cur, "tp")
            if p is None:
                return r
            if self._rd(p, "tr") == cur:
                ptl = self._rd(p, "tl")
                r += 1 + (self._rd(ptl, "size") if ptl is not None else 0)
            cur = p

    def _select(self, root: VId, k: int, ver: Optional[int] = None) -> VId:
        x = root
        while True:
            tl = self._rd(x, "tl", ver)
            ls = self._rd(tl, "size", ver) if tl is not None else 0
            if k <= ls:
                x = tl
            elif k == ls + 1:
                return x
            else:
                k -= ls + 1
                x = self._rd(x, "tr", ver)

    def _suffsum(self, u: VId) -> int:
        # Sum of weights from u to the bottom of its path == |T-subtree(u)|.
        tr = self._rd(u, "tr")
        s = self._rd(u, "weight") + (self._rd(tr, "wsum") if tr is not None else 0)
        cur = u
        while True:
            p = self._rd(cur, "tp")
            if p is None:
                return s
            if self._rd(p, "tl") == cur:
                ptr = self._rd(p, "tr")
                s += self._rd(p, "weight") + (
                    self._rd(ptr, "wsum") if ptr is not None else 0
                )
            cur = p

    def _split(self, x: Optional[VId], k: int) -> Tuple[Optional[VId], Optional[VId]]:
        """First k nodes into the left part.  Roots get tp = None by caller."""
        if x is None:
            return None, None
        self._push(x)
        tl = self._rd(x, "tl")
        ls = self._rd(tl, "size") if tl is not None else 0
        if k <= ls:
            a, b = self._split(tl, k)
            self._wr(x, "tl", b)
            if b is not None:
                self._wr(b, "tp", x)
            self._pull(x)
            if a is not None:
                self._wr(a, "tp", None)
            return a, x
        a, b = self._split(self._rd(x, "tr"), k - ls - 1)
        self._wr(x, "tr", a)
        if a is not None:
            self._wr(a, "tp", x)
        self._pull(x)
        if b is not None:
            self._wr(b, "tp", None)
        return x, b

    def _merge(self, a: Optional[VId], b: Optional[VId]) -> Optional[VId]:
        if a is None:
            return b
        if b is None:
            return a
        if self._prio[a] > self._prio[b]:
            self._push(a)
            m = self._merge(self._rd(a, "tr"), b)
            self._wr(a, "tr", m)
            self._wr(m, "tp", a)
            self._pull(a)
            return a
        self._push(b)
        m = self._merge(a, self._rd(b, "tl"))
        self._wr(b, "tl", m)
        self._wr(m, "tp", b)
        self._pull(b)
        return b

    def _set_weight(self, x: VId, delta: int) -> None:
        if delta == 0:
            return
        self._wr(x, "weight", self._rd(x, "weight") + delta)
        cur = x
        while cur is not None:
            self._wr(cur, "wsum", self._rd(cur, "wsum") + delta)
            cur = self._rd(cur, "tp")

    def _path_top(self, x: VId) -> VId:
        r = self._treap_root(x)
        while True:
            tl = self._rd(r, "tl")
            if tl is None:
                return r
            r = tl

    # -- public operations -------------------------------------------------

    def make_tree(self, v: VId) -> VId:
        if v in self.cells:
            raise ValueError(f"vertex {v!r} already exists")
        st = self.store
        self.cells[v] = {f: st.new_cell() for f in _FIELDS}
        self._prio[v] = zlib.crc32(repr(v).encode()) ^ (id(self) & 0xFFFF)
        self._wr(v, "top", True)
        self._wr(v, "weight", 1)
        self._wr(v, "size", 1)
        self._wr(v, "wsum", 1)
        return v

    def root_of(self, v: VId, ver: Optional[int] = None) -> VId:
        while True:
            p = self._rd(v, "parent", ver)
            if p is None:
                return v
            v = p

    def link(self, v: VId, w: VId, side: str, ml, mr) -> None:
        """Attach root w as the `side` child of v with edge marks (ml, mr)."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if self._rd(w, "parent") is not None:
            raise ValueError("link: w is not a root")
        field = "lchild" if side == "left" else "rchild"
        if self._rd(v, field) is not None:
            raise ValueError(f"link: v already has a {side} child")
        if self.root_of(v) == w:
            raise ValueError("link: v is inside w's tree")
        s_w = self._rd(self._treap_root(w), "wsum")
        self._wr(w, "parent", v)
        self._wr(v, field, w)
        # A tag pending from an earlier spine marking must not survive the
        # rewrite, or a later push would resurrect it over the new marks.
        self._push_chain(w)
        self._wr(w, "eml", ml)
        self._wr(w, "emr", mr)
        # Size bookkeeping: the new edge is light for now; every light edge
        # from v up to the root absorbs s_w into its junction weight.
        self._set_weight(v, s_w)
        cur = v
        while True:
            t = self._path_top(cur)
            j = self._rd(t, "parent")
            if j is None:
                break
            self._set_weight(j, s_w)
            cur = j
        self._repair_walk(v)

    def cut(self, v: VId, w: VId) -> Tuple[VId, VId]:
        """Remove the edge (v, w); returns the two resulting roots."""
        if self._rd(w, "parent") != v:
            raise ValueError("cut: (v, w) is not an edge")
        was_heavy = not self._rd(w, "top")
        if was_heavy:
            self._wr(w, "top", True)
            r = self._treap_root(v)
            k = self._rank(v)
            a, b = self._split(r, k)
            if a is not None:
                self._wr(a, "tp", None)
            if b is not None:
                self._wr(b, "tp", None)
            s_w = self._rd(b, "wsum")
        else:
            s_w = self._rd(self._treap_root(w), "wsum")
            self._set_weight(v, -s_w)
        side = "lchild" if self._rd(v, "lchild") == w else "rchild"
        self._wr(w, "parent", None)
        self._wr(v, side, None)
        cur = v
        while True:
            t = self._path_top(cur)
            j = self._rd(t, "parent")
            if j is None:
                break
            self._set_weight(j, -s_w)
            cur = j
        self._repair_walk(v)
        return self.root_of(v), w

    def _child_size(self, c: VId) -> int:
        if self._rd(c, "top"):
            return self._rd(self._treap_root(c), "wsum")
        return self._suffsum(c)

    def _repair_walk(self, v: VId) -> None:
        u = v
        while u is not None:
            self._repair(u)
            u = self._rd(u, "parent")

    def _repair(self, u: VId) -> None:
        lc = self._rd(u, "lchild")
        rc = self._rd(u, "rchild")
        if lc is None and rc is None:
            return
        heavy = None
        if lc is not None and not self._rd(lc, "top"):
            heavy = lc
        elif rc is not None and not self._rd(rc, "top"):
            heavy = rc
        if heavy is None:
            if lc is not None and rc is not None:
                desired = lc if self._child_size(lc) >= self._child_size(rc) else rc
            else:
                desired = lc if lc is not None else rc
            self._splice(u, None, desired)
            return
        other = rc if heavy == lc else lc
        if other is not None and self._child_size(other) > self._child_size(heavy):
            self._splice(u, heavy, other)

    def _splice(self, u: VId, old_heavy: Optional[VId], new_heavy: VId) -> None:
        if old_heavy is not None:
            # The old heavy edge becomes light: its carried right mark must
            # be materialized before it leaves the path treap.
            self._wr(old_heavy, "emr", self.effective_marks(old_heavy)[1])
            self._wr(old_heavy, "top", True)
            r = self._treap_root(u)
            k = self._rank(u)
            a, b = self._split(r, k)
            if a is not None:
                self._wr(a, "tp", None)
            if b is not None:
                self._wr(b, "tp", None)
            self._set_weight(u, self._rd(b, "wsum"))
            a_root = a
        else:
            a_root = self._treap_root(u)
        self._set_weight(u, -self._rd(self._treap_root(new_heavy), "wsum"))
        self._wr(new_heavy, "top", False)
        m = self._merge(a_root, self._treap_root(new_heavy))
        self._wr(m, "tp", None)

    def mark_right_spine(self, t_root: VId, m) -> None:
        """Set the right mark of every right-spine edge of the tree to m."""
        if self._rd(t_root, "parent") is not None:
            raise ValueError("mark_right_spine: not a root")
        x = t_root
        while True:
            # Walk the spine within x's heavy path.
            f = 0
            u = x
            while True:
                rc = self._rd(u, "rchild")
                if rc is None or self._rd(rc, "top"):
                    break
                u = rc
                f += 1
            if f > 0:
                self._assign_prefix(self._treap_root(x), f + 1, m)
            rc = self._rd(u, "rchild")
            if rc is None:
                return
            self._push_chain(rc)
            self._wr(rc, "emr", m)  # light spine edge: direct write
            x = rc

    def _assign_prefix(self, x: Optional[VId], cnt: int, m) -> None:
        # Tag the right marks carried by the first cnt nodes of the treap.
        while x is not None and cnt > 0:
            sz = self._rd(x, "size")
            if cnt >= sz:
                self._wr(x, "tag", m)
                return
            self._push(x)
            tl = self._rd(x, "tl")
            ls = self._rd(tl, "size") if tl is not None else 0
            if cnt <= ls:
                x = tl
            else:
                if tl is not None:
                    self._wr(tl, "tag", m)
                if not self._rd(x, "top"):
                    self._wr(x, "emr", m)
                cnt -= ls + 1
                x = self._rd(x, "tr")

    # -- mark reads (pure) -------------------------------------------------

    def effective_marks(self, w: VId, ver: Optional[int] = None) -> Tuple:
        """Marks (left, right) of the edge (parent(w), w) at a version."""
        ml = self._rd(w, "eml", ver)
        if self._rd(w, "top", ver):
            return ml, self._rd(w, "emr", ver)
        # Topmost pending tag on the treap path wins, else the stored mark.
        tag = self._rd(w, "tag", ver)
        cur = w
        while True:
            p = self._rd(cur, "tp", ver)
            if p is None:
                break
            t = self._rd(p, "tag", ver)
            if t is not None:
                tag = t
            cur = p
        if tag is not None:
            return ml, tag
        return ml, self._rd(w, "emr", ver)

    # -- oracle search (pure) ----------------------------------------------

    def oracle_search(
        self,
        t_root: VId,
        oracle: Callable,
        root_marks: Tuple,
        ver: Optional[int] = None,
        budget: Optional[int] = None,
    ):
        """Locate the edge the oracle steers to, without writing anything.

        oracle(edge1, marks1, edge2, marks2) -> OracleAnswer, where each
        edge is identified by its child vertex (None for the conceptual
        edge above the root, whose marks are root_marks).  Returns
        (edge_child_or_None, (ml, mr)).  Raises InconsistentOracle if the
        probe budget is exhausted.
        """
        rd = self._rd
        if rd(t_root, "parent", ver) is not None:
            raise ValueError("oracle_search: not a root at this version")
        if budget is None:
            budget = 4 * (self.store.current.bit_length() + 8) ** 2 + 64
        probes = [0]

        def probe(e1, m1, e2, m2):
            probes[0] += 1
            if probes[0] > budget:
                raise InconsistentOracle("probe budget exhausted")
            a = oracle(e1, m1, e2, m2)
            if not isinstance(a, OracleAnswer):
                raise InconsistentOracle(f"bad oracle answer {a!r}")
            return a

        def search(x, entry_edge, entry_marks):
            if rd(x, "lchild", ver) is None and rd(x, "rchild", ver) is None:
                return entry_edge, entry_marks
            r = self._treap_root(x, ver)
            m = rd(r, "size", ver)
            lo, hi = 1, m - 1
            best = None
            while lo <= hi:
                mid = (lo + hi) // 2
                u = self._select(r, mid, ver)
                d = self._select(r, mid + 1, ver)
                if mid == 1:
                    ue, um = entry_edge, entry_marks
                else:
                    ue, um = u, self.effective_marks(u, ver)
                a = probe(ue, um, d, self.effective_marks(d, ver))
                if a is OracleAnswer.IN_FIRST:
                    hi = mid - 1
                else:
                    best = (a, u, d, ue, um)
                    lo = mid + 1
            if best is None:
                return entry_edge, entry_marks
            a, u, d, ue, um = best
            if a is OracleAnswer.IN_SECOND:
                return d, self.effective_marks(d, ver)
            lc = rd(u, "lchild", ver)
            rc = rd(u, "rchild", ver)
            other = lc if d == rc else rc
            if other is None:
                return ue, um
            return search(other, other, self.effective_marks(other, ver))

        if rd(t_root, "lchild", ver) is None and rd(t_root, "rchild", ver) is None:
            return None, root_marks
        return search(t_root, None, root_marks)

    def tree_child(self, v: VId, side: str, ver: Optional[int] = None):
        """T-child of v on the given side at a version (pure read)."""
        return self._rd(v, "lchild" if side == "left" else "rchild", ver)

    # -- debugging helpers -------------------------------------------------

    def tree_vertices(self, t_root: VId, ver: Optional[int] = None):
        out = []
        stack = [t_root]
        while stack:
            x = stack.pop()
            out.append(x)
            for f in ("lchild", "rchild"):
                c = self._rd(x, f, ver)
                if c is not None:
                    stack.append(c)
        return out

    def check(self, t_root: VId) -> None:
        """Decomposition invariants at the latest version (tests only)."""
        for x in self.tree_vertices(t_root):
            lc = self._rd(x, "lchild")
            rc = self._rd(x, "rchild")
            kids = [c for c in (lc, rc) if c is not None]
            for c in kids:
                assert self._rd(c, "parent") == x
            heavies = [c for c in kids if not self._rd(c, "top")]
            if kids:
                assert len(heavies) == 1, (x, kids)
                h = heavies[0]
                o = [c for c in kids if c != h]
                if o:
                    assert self._child_size(h) >= self._child_size(o[0]), x
                assert self._treap_root(h) == self._treap_root(x)
            # weight = 1 + light child subtree sizes
            wt = 1 + sum(self._child_size(c) for c in kids if self._rd(c, "top"))
            assert wt == self._rd(x, "weight"), (x, wt)
            tp = self._rd(x, "tp")
            if tp is None:
                pass
