"""Halfplane proximity queries on convex position point sets.

Given sites p_1..p_n in convex position (counterclockwise) and a query
consisting of a point q and a directed line l, report the site that is
farthest from (or nearest to) q among the sites lying in the closed
halfplane to the left of l.  All geometric predicates are exact over
the integers.
"""

from .geometry import (
    Mode,
    Point,
    DirectedLine,
    IntervalResult,
    orientation,
    side_of_line,
    incircle_conflict,
    cmp_dist,
    circumcenter,
    left_interval,
    ConvexSequence,
)
from .dual_tree import DualTree, CentroidLocator
from .flarb import FlarbTree, flarb, potential
from .interval import IntervalStructure
from .okey_dokey import OkeyDokey
from .prefix import PrefixStructure

__all__ = [
    "Mode",
    "Point",
    "DirectedLine",
    "IntervalResult",
    "orientation",
    "side_of_line",
    "incircle_conflict",
    "cmp_dist",
    "circumcenter",
    "left_interval",
    "ConvexSequence",
    "DualTree",
    "CentroidLocator",
    "FlarbTree",
    "flarb",
    "potential",
    "IntervalStructure",
    "OkeyDokey",
    "PrefixStructure",
]
