"""Space/query tradeoff structure for halfplane proximity.

The base structure ("okey", k = 1) logically stores one Voronoi diagram
per cyclic interval of the sites and answers a query with a single point
location.  Each additional level ("dokey" transform) places breakpoints
every m sites, keeps a recursive structure per run of m consecutive
sites plus power-of-two ("dyadic") Voronoi locators anchored at every
breakpoint, and answers a query with two recursive queries and two point
locations.  Level k uses m = n^((2k-3)/(2k-1)), giving O(n^((2k+1)/(2k-1)))
stored cells and at most 2^(k+1) elementary point locations per query.

Diagrams are materialized lazily on first use and cached; the space
accounting (stored_cells) counts the logical structure.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Tuple

from .dual_tree import CentroidLocator, DualTree
from .geometry import (
    ConvexSequence,
    DirectedLine,
    Mode,
    Point,
    cmp_dist,
    left_interval,
    side_of_line,
)


class _Diagram:
    """Lazy Voronoi locator over a fixed tuple of (orig_idx, point) sites."""

    def __init__(self, sites: List[Tuple[int, Point]], mode: Mode):
        self.sites = sites
        self.mode = mode
        self.dual: Optional[DualTree] = None
        self.centroid: Optional[CentroidLocator] = None
        self.uses = 0

    def locate_candidates(self, q: Point) -> List[int]:
        """Original indices of the candidate sites for the best of q."""
        self.uses += 1
        if len(self.sites) <= 2:
            return [idx for idx, _ in self.sites]
        if self.dual is None and self.uses == 1:
            # First touch: answer by direct extremization and defer the
            # diagram build until the interval repeats, so one-off
            # intervals never pay for construction.
            return self._scan_candidates(q)
        if self.dual is None:
            self.dual = DualTree(self.mode)
            for _, p in self.sites:
                self.dual.insert(p)
        if self.uses >= 2 and self.centroid is None:
            self.centroid = CentroidLocator(self.dual)
        if self.centroid is not None:
            locals_ = self.centroid.locate_candidates(q)
        else:
            locals_ = self.dual.locate_candidates(q)
        return [self.sites[t - 1][0] for t in locals_]

    def _scan_candidates(self, q: Point) -> List[int]:
        want_far = self.mode is Mode.FARTHEST
        best = None
        out: List[int] = []
        for idx, (px, py) in self.sites:
            d = (px - q[0]) ** 2 + (py - q[1]) ** 2
            if best is None:
                best, out = d, [idx]
            elif d == best:
                out.append(idx)
            elif (d > best) == want_far:
                best, out = d, [idx]
        return out


class _Okey:
    """k = 1: one diagram per cyclic interval, one location per query."""

    k = 1

    def __init__(self, sites: List[Tuple[int, Point]], mode: Mode):
        self.sites = sites
        self.mode = mode
        self.m = len(sites)
        self._cache: Dict[Tuple[int, int], _Diagram] = {}

    def query_interval(self, i: int, j: int, q: Point, counter: List[int]) -> List[int]:
        m = self.m
        length = (j - i) % m + 1
        counter[0] += 1
        if length <= 2:
            idxs = [self.sites[(i - 1 + t) % m][0] for t in range(length)]
            return idxs
        d = self._cache.get((i, j))
        if d is None:
            sub = [self.sites[(i - 1 + t) % m] for t in range(length)]
            d = _Diagram(sub, self.mode)
            self._cache[(i, j)] = d
        return d.locate_candidates(q)

    def stored_cells(self) -> int:
        m = self.m
        return m * m * (m + 1) // 2

    def materialized(self) -> int:
        return len(self._cache)


class _Dokey:
    """k >= 2: breakpoints every m sites, runs recurse, dyadics locate."""

    def __init__(self, sites: List[Tuple[int, Point]], mode: Mode, k: int):
        self.sites = sites
        self.mode = mode
        self.k = k
        n = len(sites)
        self.n = n
        e = (2 * k - 3) / (2 * k - 1)
        self.m_run = max(2, math.ceil(n ** e))
        self.nruns = (n + self.m_run - 1) // self.m_run
        self.subs = []
        for t in range(self.nruns):
            lo = t * self.m_run
            hi = min(n, lo + self.m_run)
            self.subs.append(_make_impl(sites[lo:hi], mode, k - 1))
        self.maxj = n.bit_length() - 1  # floor(log2 n)
        self._dyadic: Dict[Tuple[int, int, int], _Diagram] = {}

    def _bp(self, t: int) -> int:
        return t * self.m_run + 1

    def _dyadic_diagram(self, b: int, step: int, size: int) -> _Diagram:
        key = (b, step, size)
        d = self._dyadic.get(key)
        if d is None:
            n = self.n
            sub = [self.sites[(b - 1 + step * t) % n] for t in range(size)]
            if step < 0:
                sub.reverse()  # keep ccw order
            d = _Diagram(sub, self.mode)
            self._dyadic[key] = d
        return d

    def query_interval(self, i: int, j: int, q: Point, counter: List[int]) -> List[int]:
        n = self.n
        m = self.m_run
        length = (j - i) % n + 1
        # Breakpoints inside the cyclic interval [i..j].
        first = None
        last = None
        for t in range(self.nruns):
            b = self._bp(t)
            if (b - i) % n < length:
                if first is None or (b - i) % n < (first - i) % n:
                    first = b
                if last is None or (b - i) % n > (last - i) % n:
                    last = b
        if first is None:
            # Entirely inside one run.
            t = (i - 1) // m
            lo = self._bp(t)
            return self.subs[t].query_interval(i - lo + 1, j - lo + 1, q, counter)
        cands: List[int] = []
        if first != i:
            # Preceding stretch [i .. first-1] lives in the run before first.
            tp = ((first - 1) // m - 1) % self.nruns
            lo = self._bp(tp)
            e = (first - 2) % n + 1
            cands += self.subs[tp].query_interval(i - lo + 1, e - lo + 1, q, counter)
        t2 = (last - 1) // m
        lo = self._bp(t2)
        cands += self.subs[t2].query_interval(1, j - lo + 1, q, counter)
        d = (last - first) % n
        if d > 0:
            size = 1 << (d.bit_length() - 1)
            counter[0] += 2
            cands += self._dyadic_diagram(first, 1, size).locate_candidates(q)
            cands += self._dyadic_diagram(last, -1, size).locate_candidates(q)
        return cands

    def stored_cells(self) -> int:
        dy = self.nruns * 2 * ((1 << (self.maxj + 1)) - 1)
        return dy + sum(s.stored_cells() for s in self.subs)

    def materialized(self) -> int:
        return len(self._dyadic) + sum(s.materialized() for s in self.subs)


def _make_impl(sites, mode: Mode, k: int):
    if k <= 1 or len(sites) <= 4:
        return _Okey(sites, mode)
    return _Dokey(sites, mode, k)


class OkeyDokey:
    """Halfplane proximity with the k-level space/query tradeoff.

    k may be given directly or derived from eps as ceil(1/2 + 1/eps)
    (space O(n^(1+eps)) for queries in O(2^k log n) flavor).
    """

    def __init__(
        self,
        pts: List[Point],
        mode: Mode,
        k: Optional[int] = None,
        eps: Optional[float] = None,
    ):
        if k is None:
            if eps is None:
                raise ValueError("need k or eps")
            k = math.ceil(0.5 + 1.0 / eps)
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.mode = mode
        self.pts = [(int(x), int(y)) for x, y in pts]
        self.n = len(self.pts)
        if self.n == 0:
            raise ValueError("no sites")
        self.seq = ConvexSequence(self.pts)
        sites = [(t + 1, p) for t, p in enumerate(self.pts)]
        self.impl = _make_impl(sites, mode, k)
        self.last_locates = 0

    def locate_budget(self) -> int:
        return 1 << (self.k + 1)

    def query(self, q: Point, line: DirectedLine) -> Optional[int]:
        q = (int(q[0]), int(q[1]))
        if self.n < 3:
            sel = [
                t
                for t in range(1, self.n + 1)
                if side_of_line(line, self.pts[t - 1]) >= 0
            ]
            return self._best_of(sel, q) if sel else None
        res = left_interval(self.seq, line)
        if res.kind == "empty":
            self.last_locates = 0
            return None
        if res.kind == "full":
            return self.query_interval(1, self.n, q)
        return self.query_interval(res.i, res.j, q)

    def query_interval(self, i: int, j: int, q: Point) -> int:
        counter = [0]
        cands = self.impl.query_interval(i, j, q, counter)
        self.last_locates = counter[0]
        return self._best_of(cands, q)

    def stored_cells(self) -> int:
        return self.impl.stored_cells()

    def _best_of(self, idxs, q: Point) -> Optional[int]:
        best = None
        want_far = self.mode is Mode.FARTHEST
        for t in idxs:
            if best is None:
                best = t
                continue
            c = cmp_dist(q, self.pts[t - 1], self.pts[best - 1])
            if c == 0:
                if t < best:
                    best = t
            elif (c > 0) == want_far:
                best = t
        return best
