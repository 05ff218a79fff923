"""Flarb: re-root a binary tree and stretch an anchored subtree into the
rightmost path, preserving in-order.

The operation takes a tree T, a connected set S of nodes containing the
root (possibly empty), and a fresh node r conceptually appended at the
end of the in-order sequence.  The nodes of S plus r become the
rightmost path of the result; every subtree hanging off them is
reattached so that the in-order sequence of old nodes is unchanged and r
is last.  The interesting guarantee is that the number of changed
parent/child relationships is amortized logarithmic against the
potential sum(lg w(left(x)) / w(right(x))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Set, Tuple

NodeId = Hashable


class _Node:
    __slots__ = ("left", "right", "parent", "size")

    def __init__(self):
        self.left: Optional[NodeId] = None
        self.right: Optional[NodeId] = None
        self.parent: Optional[NodeId] = None
        self.size: int = 1


@dataclass
class Delta:
    """Changed (parent, side, child) relationships of one flarb.

    rows: (parent, side, old_child, new_child) with side in {"left",
    "right"}; count is the symmetric-difference size (a row with both
    children present contributes 2, otherwise 1).
    """

    rows: List[Tuple[NodeId, str, Optional[NodeId], Optional[NodeId]]] = field(
        default_factory=list
    )

    @property
    def count(self) -> int:
        c = 0
        for _, _, old, new in self.rows:
            c += (old is not None) + (new is not None)
        return c


class FlarbTree:
    """Plain binary tree with parent pointers and subtree sizes."""

    def __init__(self):
        self.nodes: Dict[NodeId, _Node] = {}
        self.root: Optional[NodeId] = None
        self.phi: float = 0.0  # maintained incrementally across flarbs

    def __len__(self) -> int:
        return len(self.nodes)

    def _w(self, x: Optional[NodeId]) -> int:
        # Weight of a subtree: real nodes plus null pointers (2k + 1).
        return 1 if x is None else 2 * self.nodes[x].size + 1

    def _phi_node(self, x: NodeId) -> float:
        nd = self.nodes[x]
        return math.log2(self._w(nd.left) / self._w(nd.right))

    def potential(self) -> float:
        return sum(self._phi_node(x) for x in self.nodes)

    def in_order(self) -> List[NodeId]:
        out = []
        stack = []
        x = self.root
        while stack or x is not None:
            while x is not None:
                stack.append(x)
                x = self.nodes[x].left
            x = stack.pop()
            out.append(x)
            x = self.nodes[x].right
        return out

    def check(self) -> None:
        """Structural invariants (tests only: O(n))."""
        seen = set()
        if self.root is not None:
            assert self.nodes[self.root].parent is None
        for x, nd in self.nodes.items():
            for side, c in (("left", nd.left), ("right", nd.right)):
                if c is not None:
                    assert self.nodes[c].parent == x, (x, side, c)
        order = self.in_order()
        assert len(order) == len(self.nodes)
        for x in order:
            nd = self.nodes[x]
            sz = 1
            if nd.left is not None:
                sz += self.nodes[nd.left].size
            if nd.right is not None:
                sz += self.nodes[nd.right].size
            assert sz == nd.size, x

    def clone(self) -> "FlarbTree":
        t = FlarbTree()
        for x, nd in self.nodes.items():
            c = _Node()
            c.left, c.right, c.parent, c.size = nd.left, nd.right, nd.parent, nd.size
            t.nodes[x] = c
        t.root = self.root
        t.phi = self.phi
        return t


def _path_and_pieces(
    tree: FlarbTree, s: Set[NodeId], root: Optional[NodeId] = None
) -> Tuple[List[NodeId], List[Optional[NodeId]]]:
    """In-order restriction of anchored S, plus the non-S piece between
    each consecutive pair.

    For consecutive S-members u < v one is an ancestor of the other
    (S is ancestor-closed), and the nodes strictly between them form a
    single subtree: v's left subtree when u is the ancestor, u's right
    subtree when v is.  Which case holds falls out of the traversal: v
    was pushed while expanding u's right side iff u is its ancestor.
    """
    out: List[NodeId] = []
    pieces: List[Optional[NodeId]] = []
    stack: List[Tuple[NodeId, int]] = []
    if root is None:
        root = tree.root

    def visit(x, gen):
        while x is not None:
            stack.append((x, gen))
            l = tree.nodes[x].left
            x = l if l in s else None

    visit(root if root in s else None, 0)
    while stack:
        x, gen = stack.pop()
        if out:
            if gen == len(out):
                pieces.append(tree.nodes[x].left)
            else:
                pieces.append(tree.nodes[out[-1]].right)
        out.append(x)
        r = tree.nodes[x].right
        visit(r if r in s else None, len(out))
    return out, pieces


def flarb(tree: FlarbTree, s: Set[NodeId], r: NodeId) -> Delta:
    """Perform a flarb in place and return the pointer delta.

    S must be empty (new root above everything) or a connected set of
    nodes containing the current root.  r must be fresh.
    """
    if r in tree.nodes:
        raise ValueError("flarb: r already in tree")
    for x in s:
        if x not in tree.nodes:
            raise ValueError("flarb: S contains unknown node")
        p = tree.nodes[x].parent
        if x != tree.root and p not in s:
            raise ValueError("flarb: S is not anchored/connected")
    if s and tree.root not in s:
        raise ValueError("flarb: S does not contain the root")

    old_rel: Dict[Tuple[NodeId, str], Optional[NodeId]] = {}
    path, pieces = _path_and_pieces(tree, set(s)) if s else ([], [])
    if len(path) != len(s):
        raise ValueError("flarb: S is not connected")
    touched = list(path)
    for x in touched:
        nd = tree.nodes[x]
        old_rel[(x, "left")] = nd.left
        old_rel[(x, "right")] = nd.right

    phi_before = sum(tree._phi_node(x) for x in path)

    nodes = tree.nodes
    rn = _Node()
    nodes[r] = rn

    if not path:
        # New root over the whole old tree (or an empty tree).
        rn.left = tree.root
        if tree.root is not None:
            nodes[tree.root].parent = r
            rn.size = 1 + nodes[tree.root].size
        tree.root = r
    else:
        k = len(path)
        tail = nodes[path[-1]].right

        tree.root = path[0]
        nodes[path[0]].parent = None
        for t in range(k):
            x = nodes[path[t]]
            if t + 1 < k:
                x.right = path[t + 1]
                nodes[path[t + 1]].parent = path[t]
            else:
                x.right = r
                rn.parent = path[t]
            if t > 0:
                x.left = pieces[t - 1]
                if pieces[t - 1] is not None:
                    nodes[pieces[t - 1]].parent = path[t]
        rn.left = tail
        rn.right = None
        if tail is not None:
            nodes[tail].parent = r
        # Sizes bottom-up along the new rightmost path.
        sz = 1 + (nodes[tail].size if tail is not None else 0)
        rn.size = sz
        for t in range(k - 1, -1, -1):
            x = nodes[path[t]]
            sz += 1
            if t > 0 and x.left is not None:
                sz += nodes[x.left].size
            elif t == 0 and x.left is not None:
                sz += nodes[x.left].size
            x.size = sz

    # Delta rows and incremental potential.
    delta = Delta()
    for x in touched + [r]:
        nd = nodes[x]
        for side, new in (("left", nd.left), ("right", nd.right)):
            old = old_rel.get((x, side))
            if old != new:
                delta.rows.append((x, side, old, new))
    phi_after = sum(tree._phi_node(x) for x in (path + [r]))
    tree.phi += phi_after - phi_before
    return delta


def potential(tree: FlarbTree) -> float:
    """Recompute the potential from scratch (tests/benchmarks)."""
    return tree.potential()


def amortized_bound(n_after: int, c: float) -> float:
    """The per-step budget C * lg(2n + 1) for a tree of n nodes."""
    return c * math.log2(2 * n_after + 1)
