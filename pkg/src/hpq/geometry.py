"""Exact integer predicates for convex-position proximity structures.

All inputs are integer points; every predicate is decided by the sign of
an integer (or rational) expression, so there is no floating point
anywhere in the decision path.  Coordinates are expected to fit in
|x|, |y| <= 2**24 but nothing here overflows for larger inputs; Python
integers are exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Point = Tuple[int, int]

COORD_BOUND = 1 << 24


class Mode(enum.Enum):
    """Which extreme the query asks for."""

    FARTHEST = "farthest"
    NEAREST = "nearest"

    @property
    def sign(self) -> int:
        # +1 for nearest, -1 for farthest; used to flip incircle tests and
        # Voronoi sector rays between the two diagram flavours.
        return 1 if self is Mode.NEAREST else -1


@dataclass(frozen=True)
class DirectedLine:
    """Directed line through integer points a -> b (a != b)."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("degenerate directed line: a == b")


@dataclass(frozen=True)
class IntervalResult:
    """Result of clipping the site sequence against a halfplane.

    kind is one of "empty", "full", "interval"; for "interval" the sites
    in the closed left halfplane are exactly p_i..p_j in cyclic order
    (1-based, inclusive, possibly wrapping past p_n).
    """

    kind: str
    i: int = 0
    j: int = 0

    @staticmethod
    def empty() -> "IntervalResult":
        return IntervalResult("empty")

    @staticmethod
    def full() -> "IntervalResult":
        return IntervalResult("full")

    @staticmethod
    def interval(i: int, j: int) -> "IntervalResult":
        return IntervalResult("interval", i, j)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def side_of_line(line: DirectedLine, p: Point) -> int:
    """+1 if p is strictly left of the directed line, -1 right, 0 on it."""
    return orientation(line.a, line.b, p)


def _incircle_det(a: Point, b: Point, c: Point, d: Point) -> int:
    """Standard lifted 3x3 incircle determinant.

    For ccw (a, b, c): positive iff d is strictly inside the circumcircle.
    """
    adx = a[0] - d[0]
    ady = a[1] - d[1]
    bdx = b[0] - d[0]
    bdy = b[1] - d[1]
    cdx = c[0] - d[0]
    cdy = c[1] - d[1]
    al = adx * adx + ady * ady
    bl = bdx * bdx + bdy * bdy
    cl = cdx * cdx + cdy * cdy
    return (
        al * (bdx * cdy - bdy * cdx)
        - bl * (adx * cdy - ady * cdx)
        + cl * (adx * bdy - ady * bdx)
    )


def incircle_conflict(a: Point, b: Point, c: Point, d: Point, mode: Mode) -> bool:
    """Does site d invalidate the (mode-flavoured) Delaunay triangle abc?

    abc must be in ccw order.  Nearest mode: d strictly inside the
    circumcircle.  Farthest mode: d strictly outside.
    """
    det = _incircle_det(a, b, c, d)
    return det * mode.sign > 0


def cmp_dist(q: Point, a: Point, b: Point) -> int:
    """Compare squared distances |qa|^2 vs |qb|^2: -1, 0, or +1."""
    dax = a[0] - q[0]
    day = a[1] - q[1]
    dbx = b[0] - q[0]
    dby = b[1] - q[1]
    da = dax * dax + day * day
    db = dbx * dbx + dby * dby
    return (da > db) - (da < db)


def better_site(q: Point, mode: Mode, idx_a: int, a: Point, idx_b: int, b: Point) -> int:
    """Index of the preferred site among two candidates (ties: smaller index)."""
    c = cmp_dist(q, a, b)
    if c == 0:
        return min(idx_a, idx_b)
    if mode is Mode.FARTHEST:
        return idx_a if c > 0 else idx_b
    return idx_a if c < 0 else idx_b


@dataclass(frozen=True)
class RationalPoint:
    """Exact rational point (nx/d, ny/d) with d > 0."""

    nx: int
    ny: int
    d: int

    def as_floats(self) -> Tuple[float, float]:
        return (self.nx / self.d, self.ny / self.d)


def circumcenter(a: Point, b: Point, c: Point) -> RationalPoint:
    """Exact circumcenter of three non-collinear points."""
    d = 2 * (
        a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1])
    )
    if d == 0:
        raise ValueError("collinear points have no circumcenter")
    la = a[0] * a[0] + a[1] * a[1]
    lb = b[0] * b[0] + b[1] * b[1]
    lc = c[0] * c[0] + c[1] * c[1]
    nx = la * (b[1] - c[1]) + lb * (c[1] - a[1]) + lc * (a[1] - b[1])
    ny = -(la * (b[0] - c[0]) + lb * (c[0] - a[0]) + lc * (a[0] - b[0]))
    if d < 0:
        nx, ny, d = -nx, -ny, -d
    g = math.gcd(math.gcd(abs(nx), abs(ny)), d)
    if g > 1:
        nx //= g
        ny //= g
        d //= g
    return RationalPoint(nx, ny, d)


class ConvexSequence:
    """Sites p_1..p_n in strictly convex ccw position (1-based access).

    Invariant: points pairwise distinct and every cyclic consecutive
    triple has orientation +1.
    """

    def __init__(self, points: Sequence[Point]):
        pts = [(int(x), int(y)) for x, y in points]
        _validate_convex(pts)
        self._pts = pts

    def __len__(self) -> int:
        return len(self._pts)

    def __getitem__(self, idx1: int) -> Point:
        # 1-based, to match the site numbering used throughout.
        if not 1 <= idx1 <= len(self._pts):
            raise IndexError(f"site index {idx1} out of range 1..{len(self._pts)}")
        return self._pts[idx1 - 1]

    def points(self) -> List[Point]:
        return list(self._pts)

    def can_append(self, p: Point) -> bool:
        """Would appending p keep the cyclic sequence strictly convex?"""
        pts = self._pts
        n = len(pts)
        if p in pts:
            return False
        if n == 0:
            return True
        if n == 1:
            return True
        if n == 2:
            return orientation(pts[0], pts[1], p) > 0
        return (
            orientation(pts[-2], pts[-1], p) > 0
            and orientation(pts[-1], p, pts[0]) > 0
            and orientation(p, pts[0], pts[1]) > 0
        )


def _validate_convex(pts: List[Point]) -> None:
    n = len(pts)
    if len(set(pts)) != n:
        raise ValueError("duplicate points in site sequence")
    if n < 3:
        return
    for t in range(n):
        if orientation(pts[t], pts[(t + 1) % n], pts[(t + 2) % n]) <= 0:
            raise ValueError(
                f"not strictly convex ccw at cyclic triple starting index {t}"
            )


def brute_left_interval(pts: Sequence[Point], line: DirectedLine) -> IntervalResult:
    """O(n) reference for left_interval (used by tests and small n)."""
    n = len(pts)
    inside = [side_of_line(line, p) >= 0 for p in pts]
    k = sum(inside)
    if k == 0:
        return IntervalResult.empty()
    if k == n:
        return IntervalResult.full()
    # The inside set of a convex polygon vs a halfplane is one cyclic run.
    starts = [t for t in range(n) if inside[t] and not inside[t - 1]]
    if len(starts) != 1:  # pragma: no cover - guarded by convexity
        raise AssertionError("halfplane does not clip a single cyclic run")
    i = starts[0]
    j = (i + k - 1) % n
    return IntervalResult.interval(i + 1, j + 1)


def _extreme_index(pts: Sequence[Point], ux: int, uy: int, dx: int, dy: int) -> int:
    """Index (0-based) of a vertex maximizing dot((ux,uy), p).

    Ties of the primary functional (an edge parallel to the clip line) are
    broken by the secondary direction (dx, dy), which makes the cyclic
    sequence of keys strictly unimodal on a strictly convex polygon, so
    plain cyclic binary search applies.
    """
    n = len(pts)

    def key(t: int) -> Tuple[int, int]:
        p = pts[t]
        return (ux * p[0] + uy * p[1], dx * p[0] + dy * p[1])

    def up(t: int) -> bool:
        # Does the key strictly increase along edge t -> t+1?  Never a tie:
        # the secondary direction separates endpoints of a flat edge.
        return key((t + 1) % n) > key(t)

    def last_true(pred, hi: int) -> int:
        # pred is true at 0 and monotone true->false on 0..hi.
        lo = 0
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if pred(mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    k0 = key(0)
    if up(0):
        # 0 sits on the rising run; the run extends to the max M and keys
        # on it (except at 0) strictly exceed key(0), while every other
        # position fails key >= key(0) or is on the falling run.
        t = last_true(lambda t: key(t) >= k0 and up(t), n - 1)
        return (t + 1) % n
    if up(n - 1):
        return 0  # 0 is the maximum itself
    # 0 is inside the falling run.  Find the min the same way (negated),
    # then the stretch from the min to the max is plainly unimodal.
    t = last_true(lambda t: key(t) <= k0 and not up(t), n - 1)
    m = (t + 1) % n
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if up((m + mid) % n):
            lo = mid + 1
        else:
            hi = mid
    return (m + lo) % n


def left_interval(seq: ConvexSequence, line: DirectedLine) -> IntervalResult:
    """Clip the convex site sequence against the closed left halfplane of line.

    Returns Empty, Full, or the cyclic interval [i..j] (1-based) of sites
    with side_of_line >= 0.  O(log n) comparisons via extreme-point binary
    search on the convex polygon.
    """
    pts = seq.points()
    n = len(pts)
    if n < 3:
        return brute_left_interval(pts, line)
    dx = line.b[0] - line.a[0]
    dy = line.b[1] - line.a[1]
    # Left normal: side value f(p) = dot(u, p) + const with u = (-dy, dx).
    ux, uy = -dy, dx

    def f(t: int) -> int:
        return side_of_line(line, pts[t])

    hi_t = _extreme_index(pts, ux, uy, dx, dy)
    lo_t = _extreme_index(pts, -ux, -uy, -dx, -dy)
    if f(hi_t) < 0:
        return IntervalResult.empty()
    if f(lo_t) >= 0:
        return IntervalResult.full()

    def last_true(start: int, end: int, step: int) -> int:
        # Walk from argmax toward argmin along one chain; predicate
        # f >= 0 is monotone true->false.  Binary search on chain length.
        length = (end - start) * step % n
        lo, hi = 0, length  # offsets along the chain; offset 0 is argmax
        while lo < hi:
            mid = (lo + hi + 1) // 2
            t = (start + step * mid) % n
            if f(t) >= 0:
                lo = mid
            else:
                hi = mid - 1
        return (start + step * lo) % n

    j = last_true(hi_t, lo_t, 1)
    i = last_true(hi_t, lo_t, -1)
    return IntervalResult.interval(i + 1, j + 1)
