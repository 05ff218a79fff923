"""Brute-force oracles, instance generation, and instance (de)serialization.

The oracles here are deliberately naive: linear or polynomial scans whose
correctness is obvious, used as the reference against which the real
structures are checked.
"""

from __future__ import annotations

import json
import math
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import (
    COORD_BOUND,
    ConvexSequence,
    DirectedLine,
    Mode,
    Point,
    _incircle_det,
    cmp_dist,
    orientation,
    side_of_line,
)


def bf_query(pts: Sequence[Point], mode: Mode, q: Point, line: DirectedLine) -> Optional[int]:
    """Reference answer: scan all sites in the closed left halfplane.

    Returns the 1-based index of the extreme site, ties broken toward the
    smaller index, or None when the halfplane is empty of sites.
    """
    ax, ay = line.a
    bx, by = line.b
    dx = bx - ax
    dy = by - ay
    qx, qy = q
    best = None
    best_d = 0
    want_far = mode is Mode.FARTHEST
    for t, (px, py) in enumerate(pts):
        if dx * (py - ay) - dy * (px - ax) >= 0:
            ddx = px - qx
            ddy = py - qy
            d = ddx * ddx + ddy * ddy
            if best is None or (d > best_d if want_far else d < best_d):
                best = t + 1
                best_d = d
    return best


def bf_interval_query(
    pts: Sequence[Point], mode: Mode, q: Point, i: int, j: int
) -> int:
    """Reference extreme site over the cyclic interval [i..j] (1-based)."""
    n = len(pts)
    best = None
    t = i
    while True:
        idx = t
        if best is None:
            best = idx
        else:
            c = cmp_dist(q, pts[idx - 1], pts[best - 1])
            if mode is Mode.FARTHEST:
                if c > 0 or (c == 0 and idx < best):
                    best = idx
            else:
                if c < 0 or (c == 0 and idx < best):
                    best = idx
        if t == j:
            break
        t = t % n + 1
    return best


def bf_delaunay(pts: Sequence[Point], mode: Mode) -> List[Tuple[int, int, int]]:
    """All mode-flavoured Delaunay triangles of a convex point set.

    Returns sorted 1-based index triples (i < j < k).  A triple is a
    triangle iff no other site strictly violates its circumcircle; a tie
    (zero determinant) is reported as an error since the structures
    assume degeneracy-free inputs.
    """
    n = len(pts)
    out = []
    sign = mode.sign
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = pts[i], pts[j], pts[k]
                ok = True
                for t in range(n):
                    if t in (i, j, k):
                        continue
                    det = _incircle_det(a, b, c, pts[t])
                    if det == 0:
                        raise ValueError(
                            f"cocircular sites {i + 1},{j + 1},{k + 1},{t + 1}"
                        )
                    if det * sign > 0:
                        ok = False
                        break
                if ok:
                    out.append((i + 1, j + 1, k + 1))
    if len(out) != max(0, n - 2):
        raise AssertionError(
            f"expected {n - 2} triangles for n={n}, found {len(out)}"
        )
    return sorted(out)


# ---------------------------------------------------------------------------
# Instance generation


def _primitive_vectors(kmax: int) -> List[Tuple[int, int]]:
    """Primitive lattice vectors with kmax/2 < |v| <= kmax, upper halfplane,
    sorted by angle.  (Angle in [0, pi): includes (r, 0) but not (-r, 0).)"""
    lo2 = (kmax * kmax) // 4
    hi2 = kmax * kmax
    out = []
    for x in range(-kmax, kmax + 1):
        for y in range(0, kmax + 1):
            if y == 0 and x <= 0:
                continue
            n2 = x * x + y * y
            if n2 <= lo2 or n2 > hi2:
                continue
            if math.gcd(abs(x), abs(y)) != 1:
                continue
            out.append((x, y))
    out.sort(key=_angle_key)  # ccw within the upper halfplane
    return out


def _angle_key(v: Tuple[int, int]):
    # Exact angular order within the upper halfplane [0, pi): compare by
    # cross product via fractions -y/x is messy; use (quadrant, slope).
    x, y = v
    if y == 0:  # (positive x only)
        return (0, 0.0)
    return (1, -x / y)  # angle in (0, pi) increases as x/y decreases


def _vectors_for_count(half: int) -> List[Tuple[int, int]]:
    k = 4
    while True:
        vs = _primitive_vectors(k)
        if len(vs) >= half:
            return vs
        k = max(k + 2, int(k * 1.4))


def _make_convex_polygon(n: int, rng: random.Random, xscale: int = 1) -> List[Point]:
    """Strictly convex ccw integer polygon with n vertices.

    Edge vectors are distinct primitive lattice directions sorted by
    angle; the vertex set is the prefix-sum chain.  Built centrally
    symmetric (guaranteeing closure), then one vertex is dropped for odd
    n, and finally a mild shear is applied to break the symmetry that
    would otherwise mass-produce cocircular quadruples.
    """
    m = n if n % 2 == 0 else n + 1
    half = m // 2
    upper = _vectors_for_count(half)
    mu = len(upper)
    # Evenly subsample with a seeded fractional offset.
    off = rng.random()
    picks = []
    used = set()
    for t in range(half):
        idx = int((t + off) * mu / half) % mu
        while idx in used:
            idx = (idx + 1) % mu
        used.add(idx)
        picks.append(upper[idx])
    edges = picks + [(-x, -y) for (x, y) in picks]
    edges.sort(key=lambda v: (_half_id(v),) + _angle_key((v[0], v[1]) if _half_id(v) == 0 else (-v[0], -v[1])))
    # Shear to break central-symmetric cocircularity (rectangles stop
    # being rectangles); det 1 keeps primitivity and convex order.
    a = rng.choice([1, -1])
    b = rng.choice([1, -1])
    edges = [(x + a * y, y) for (x, y) in edges]
    edges = [(x, y + b * x) for (x, y) in edges]
    if xscale != 1:
        edges = [(x * xscale, y) for (x, y) in edges]
    # Scale the whole polygon toward the target radius when it is small.
    diam = sum(abs(x) for x, _ in edges) // 2 + 1
    target = 1 << 20
    s = max(1, target // max(1, diam))
    if s > 1:
        edges = [(x * s, y * s) for (x, y) in edges]
    # Prefix sums, then center.
    verts = []
    cx = cy = 0
    for x, y in edges:
        verts.append((cx, cy))
        cx += x
        cy += y
    if (cx, cy) != (0, 0):
        raise AssertionError("edge vectors do not close up")
    if n % 2 == 1:
        verts.pop(rng.randrange(len(verts)))
    # Jitter vertices when the edges are long enough to keep convexity:
    # breaks the symmetric patterns (isosceles trapezoids etc.) that make
    # quadruples cocircular.  Large n leaves no room and skips this.
    minlen = min(abs(x) + abs(y) for x, y in edges)
    delta = minlen // (8 * n)
    if delta >= 1:
        for _ in range(8):
            jit = [
                (x + rng.randint(-delta, delta), y + rng.randint(-delta, delta))
                for x, y in verts
            ]
            ln = len(jit)
            if len(set(jit)) == ln and all(
                orientation(jit[t], jit[(t + 1) % ln], jit[(t + 2) % ln]) > 0
                for t in range(ln)
            ):
                verts = jit
                break
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    mx = (min(xs) + max(xs)) // 2
    my = (min(ys) + max(ys)) // 2
    verts = [(x - mx, y - my) for x, y in verts]
    hi = max(max(abs(p[0]) for p in verts), max(abs(p[1]) for p in verts))
    if hi > COORD_BOUND:
        raise ValueError(f"n={n} does not fit in the coordinate bound")
    # Rotate the starting vertex deterministically.
    r = rng.randrange(len(verts))
    verts = verts[r:] + verts[:r]
    return verts


def _half_id(v: Tuple[int, int]) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _make_parabola(n: int, rng: random.Random) -> List[Point]:
    """n points on the integer parabola y = x^2 (x > 0), listed ccw.

    Exactly convex; no four points of a parabola with positive abscissas
    are cocircular (their x-coordinates would have to sum to zero).
    """
    xmax = int(math.isqrt(COORD_BOUND)) - 1
    if n > xmax - 1:
        raise ValueError(f"n={n} too large for the parabola-arc shape")
    xs = sorted(rng.sample(range(1, xmax + 1), n))
    return [(x, x * x) for x in xs]


SHAPES = ("circle", "ellipse", "parabola-arc")


def gen_convex(n: int, seed: int, shape: str = "circle") -> List[Point]:
    """Deterministic strictly convex ccw instance of n distinct sites."""
    if n < 1:
        raise ValueError("n must be positive")
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random((seed, n, shape).__repr__())
    for attempt in range(32):
        try:
            if shape == "parabola-arc":
                pts = _make_parabola(n, rng)
            elif shape == "ellipse":
                pts = _make_convex_polygon(n, rng, xscale=2)
            else:
                pts = _make_convex_polygon(n, rng)
        except (AssertionError, ValueError):
            continue
        if _acceptable(pts):
            return pts
    raise ValueError(f"could not generate degeneracy-free instance n={n} shape={shape}")


def _acceptable(pts: List[Point]) -> bool:
    n = len(pts)
    try:
        ConvexSequence(pts)
    except ValueError:
        return False
    if n < 4:
        return True
    if n <= 64:
        # Exhaustive cocircularity check.
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for t in range(k + 1, n):
                        if _incircle_det(pts[i], pts[j], pts[k], pts[t]) == 0:
                            return False
        return True
    # Consecutive cyclic quadruples only; larger instances rely on the
    # symmetry-breaking shear for the rest.
    for i in range(n):
        if _incircle_det(
            pts[i], pts[(i + 1) % n], pts[(i + 2) % n], pts[(i + 3) % n]
        ) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Instance files


def instance_to_json(pts: Sequence[Point], mode: Mode) -> str:
    return json.dumps(
        {"mode": mode.value, "points": [[x, y] for x, y in pts]}, indent=None
    )


def instance_from_json(text: str) -> Tuple[List[Point], Mode]:
    obj = json.loads(text)
    mode = Mode(obj["mode"])
    pts = [(int(x), int(y)) for x, y in obj["points"]]
    ConvexSequence(pts)  # validates
    for x, y in pts:
        if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
            raise ValueError("coordinate out of bounds")
    return pts, mode


def random_query(rng: random.Random, span: int = 1 << 22) -> Tuple[Point, DirectedLine]:
    q = (rng.randint(-span, span), rng.randint(-span, span))
    while True:
        a = (rng.randint(-span, span), rng.randint(-span, span))
        b = (rng.randint(-span, span), rng.randint(-span, span))
        if a != b:
            return q, DirectedLine(a, b)
