"""Halfplane proximity queries over the full cyclic site sequence.

A halfplane clips the convex polygon to one cyclic interval of sites.
Intervals touching p_1 or p_n are prefixes/suffixes; general intervals
are routed down a balanced recursion where the node covering [i0..j0]
with midpoint m stores a suffix structure over [i0..m] and a prefix
structure over [m+1..j0]; any interval strictly inside that contains m
or m+1 splits into one suffix piece and one prefix piece.

A suffix structure is a prefix structure over the reflected (y -> -y),
reversed site sequence, which is again convex ccw.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .geometry import (
    ConvexSequence,
    DirectedLine,
    Mode,
    Point,
    better_site,
    left_interval,
    side_of_line,
)
from .prefix import PrefixStructure


class SuffixStructure:
    """Best-site queries over suffixes [x..hi] of a site range."""

    def __init__(self, mode: Mode, pts: List[Point], lo: int, hi: int):
        # pts are the global sites (0-based list); the structure covers the
        # 1-based global range [lo..hi].
        self.lo = lo
        self.hi = hi
        self.prefix = PrefixStructure(mode)
        for t in range(hi, lo - 1, -1):
            x, y = pts[t - 1]
            self.prefix.push((x, -y))

    def query_suffix(self, x: int, q: Point) -> int:
        """Best site among global sites [x..hi]."""
        if not self.lo <= x <= self.hi:
            raise ValueError("suffix start out of range")
        t = self.hi - x + 1
        local = self.prefix.query_prefix(t, (q[0], -q[1]))
        return self.hi - local + 1


class IntervalStructure:
    """Farthest/nearest site in the closed left halfplane of a query line."""

    def __init__(self, pts: List[Point], mode: Mode):
        self.mode = mode
        self.pts = [(int(x), int(y)) for x, y in pts]
        self.seq = ConvexSequence(self.pts) if len(self.pts) >= 1 else None
        n = len(self.pts)
        self.n = n
        if n == 0:
            raise ValueError("no sites")
        if n >= 3:
            self.top_prefix = PrefixStructure(mode)
            for p in self.pts:
                self.top_prefix.push(p)
            self.top_suffix = SuffixStructure(mode, self.pts, 1, n)
            self._root = self._build(1, n)
        else:
            self.top_prefix = None
            self.top_suffix = None
            self._root = None
        self.route_checks = 0

    def _build(self, i0: int, j0: int):
        # Node covering intervals strictly inside [i0..j0].
        if j0 - i0 <= 1:
            return None
        m = (i0 + j0) // 2
        return (
            i0,
            j0,
            m,
            SuffixStructure(self.mode, self.pts, i0, m),
            PrefixStructure_over(self.mode, self.pts, m + 1, j0),
            self._build(i0, m),
            self._build(m + 1, j0),
        )

    # -- queries -----------------------------------------------------------

    def query(self, q: Point, line: DirectedLine) -> Optional[int]:
        """1-based index of the extreme site left of the line, or None."""
        q = (int(q[0]), int(q[1]))
        n = self.n
        if n < 3:
            sel = [
                t
                for t in range(1, n + 1)
                if side_of_line(line, self.pts[t - 1]) >= 0
            ]
            return self._best_of(sel, q) if sel else None
        res = left_interval(self.seq, line)
        if res.kind == "empty":
            return None
        if res.kind == "full":
            return self.top_prefix.query_prefix(n, q)
        return self.query_interval(res.i, res.j, q)

    def query_interval(self, i: int, j: int, q: Point) -> int:
        """Extreme site over the cyclic interval [i..j] (1-based)."""
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError("interval endpoints out of range")
        q = (int(q[0]), int(q[1]))
        if n < 3:
            sel = list(range(i, j + 1)) if i <= j else list(range(i, n + 1)) + list(
                range(1, j + 1)
            )
            return self._best_of(sel, q)
        wraps = i > j
        has1 = wraps or i == 1
        hasn = wraps or j == n
        if has1 and hasn:
            if i <= j:  # the full sequence
                return self.top_prefix.query_prefix(n, q)
            a = self.top_suffix.query_suffix(i, q)
            b = self.top_prefix.query_prefix(j, q)
            return self._pick(a, b, q)
        if has1:
            return self.top_prefix.query_prefix(j, q)
        if hasn:
            return self.top_suffix.query_suffix(i, q)
        return self._descend(self._root, i, j, q)

    def _descend(self, node, i: int, j: int, q: Point) -> int:
        if node is None:
            raise AssertionError(f"no recursion node for [{i}..{j}]")
        i0, j0, m, suf, pre, lchild, rchild = node
        self.route_checks += 1
        if not (i0 < i and j < j0):
            raise AssertionError(f"[{i}..{j}] not strictly inside [{i0}..{j0}]")
        if j < m:
            return self._descend(lchild, i, j, q)
        if i > m + 1:
            return self._descend(rchild, i, j, q)
        # The interval covers m or m+1: split into suffix + prefix parts.
        best = None
        if i <= m:
            best = suf.query_suffix(i, q)
        if j >= m + 1:
            b = pre.query_prefix(j - m, q)
            best = b if best is None else self._pick(best, b, q)
        return best

    def _pick(self, a: int, b: int, q: Point) -> int:
        return better_site(
            q, self.mode, a, self.pts[a - 1], b, self.pts[b - 1]
        )

    def _best_of(self, idxs, q: Point) -> Optional[int]:
        best = None
        for t in idxs:
            if best is None:
                best = t
            else:
                best = self._pick(best, t, q)
        return best


class PrefixStructure_over:
    """Prefix structure over a global subrange [lo..hi] of the sites."""

    def __init__(self, mode: Mode, pts: List[Point], lo: int, hi: int):
        self.lo = lo
        self.hi = hi
        self.prefix = PrefixStructure(mode)
        for t in range(lo, hi + 1):
            self.prefix.push(pts[t - 1])

    def query_prefix(self, t: int, q: Point) -> int:
        """Best global site among [lo .. lo+t-1]."""
        local = self.prefix.query_prefix(t, q)
        return self.lo + local - 1
