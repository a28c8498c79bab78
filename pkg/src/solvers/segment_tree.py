"""
Coverage Segment Tree
Leaves are the open arcs between consecutive boundary directions on a circle. Each
node stores the number of arcs listed exactly at that node (cover) and the minimum
total coverage over the leaves below it (min_below), so the root holds the minimum
coverage of any cell on the circle.
"""

import logging
from collections import Counter
from functools import cmp_to_key
from typing import Dict, Iterable, List, Sequence, Tuple

from ..geometry.exact_core import CircleVector, arc_midpoint, compare_directions, direction_key

logger = logging.getLogger(__name__)

# Padding leaves must never win a minimum.
PAD = 1 << 62

LeafRange = Tuple[int, int]


class CoverageSegmentTree:
    """Array-backed segment tree over the m elementary arcs of a circle.

    The array layout follows the usual power-of-two scheme: node 1 is the root,
    node i has children 2i and 2i+1, and leaves live at [capacity, 2*capacity).
    Arc j runs counterclockwise from boundary j to boundary j+1 (mod m); the cut
    reference lies inside the last arc.
    """

    def __init__(self, boundaries: Sequence[CircleVector], debug_checks: bool = False):
        self.boundaries: List[CircleVector] = list(boundaries)
        self.index: Dict[Tuple[int, int], int] = {
            direction_key(*w.coords): i for i, w in enumerate(self.boundaries)
        }
        assert len(self.index) == len(self.boundaries), "boundaries must be deduplicated"
        self.num_leaves = max(1, len(self.boundaries))
        self.capacity = 1
        while self.capacity < self.num_leaves:
            self.capacity *= 2
        self.debug_checks = debug_checks

        self.cover = [0] * (2 * self.capacity)
        self.min_below = [0] * (2 * self.capacity)
        for leaf in range(self.num_leaves, self.capacity):
            self.cover[self.capacity + leaf] = PAD
            self.min_below[self.capacity + leaf] = PAD
        for node in range(self.capacity - 1, 0, -1):
            self.min_below[node] = min(self.min_below[2 * node], self.min_below[2 * node + 1])

        self._arcs: Counter = Counter()

    @classmethod
    def from_directions(
        cls, directions: Iterable[Sequence], rotation: int = 0, debug_checks: bool = False
    ) -> "CoverageSegmentTree":
        """Deduplicate, sort circularly and rotate the cut by `rotation` gaps"""
        return cls(sorted_boundaries(directions, rotation), debug_checks=debug_checks)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    @property
    def root_min(self) -> int:
        return self.min_below[1]

    @property
    def reference(self) -> CircleVector:
        """Cut direction: interior of the last arc"""
        if not self.boundaries:
            return CircleVector(1, 0)
        return arc_midpoint(self.boundaries[-1], self.boundaries[0])

    def leaf_midpoint(self, leaf: int) -> CircleVector:
        if not self.boundaries:
            return CircleVector(1, 0)
        m = len(self.boundaries)
        return arc_midpoint(self.boundaries[leaf], self.boundaries[(leaf + 1) % m])

    def min_leaf(self) -> int:
        """Index of a leaf whose total coverage equals the root minimum"""
        node = 1
        while node < self.capacity:
            target = self.min_below[node] - self.cover[node]
            node = 2 * node if self.min_below[2 * node] == target else 2 * node + 1
        return node - self.capacity

    def arc_range(self, a, b) -> LeafRange:
        """Leaf range (start, end) of the open semicircle {a*alpha + b*beta > 0}

        The semicircle runs counterclockwise from (b, -a) to (-b, a).
        """
        start = self.index[direction_key(b, -a)]
        end = self.index[direction_key(-b, a)]
        return start, end

    def leaf_coverage(self, leaf: int) -> int:
        node = leaf + self.capacity
        total = 0
        while node >= 1:
            total += self.cover[node]
            node >>= 1
        return total

    # ------------------------------------------------------------------
    # mutation
    # ------------------------------------------------------------------

    def insert_range(self, start: int, end: int) -> None:
        self._arcs[(start, end)] += 1
        self._apply(start, end, 1)

    def delete_range(self, start: int, end: int) -> None:
        assert self._arcs[(start, end)] > 0, f"deleting absent arc {(start, end)}"
        self._arcs[(start, end)] -= 1
        if not self._arcs[(start, end)]:
            del self._arcs[(start, end)]
        self._apply(start, end, -1)

    def insert_arc(self, a, b) -> None:
        self.insert_range(*self.arc_range(a, b))

    def delete_arc(self, a, b) -> None:
        self.delete_range(*self.arc_range(a, b))

    def _apply(self, start: int, end: int, delta: int) -> None:
        # A circular range splits at the cut into at most two intervals.
        if start < end:
            self._add(start, end, delta)
        else:
            self._add(start, self.num_leaves, delta)
            if end > 0:
                self._add(0, end, delta)
        if self.debug_checks:
            self.check_invariants()

    def _add(self, lo: int, hi: int, delta: int) -> None:
        if lo >= hi:
            return
        lo += self.capacity
        hi += self.capacity
        first, last = lo, hi - 1
        cover, min_below = self.cover, self.min_below
        while lo < hi:
            if lo & 1:
                cover[lo] += delta
                min_below[lo] += delta
                lo += 1
            if hi & 1:
                hi -= 1
                cover[hi] += delta
                min_below[hi] += delta
            lo >>= 1
            hi >>= 1
        self._pull(first)
        self._pull(last)

    def _pull(self, node: int) -> None:
        cover, min_below = self.cover, self.min_below
        node >>= 1
        while node >= 1:
            left = min_below[2 * node]
            right = min_below[2 * node + 1]
            min_below[node] = cover[node] + (left if left < right else right)
            node >>= 1

    # ------------------------------------------------------------------
    # checking
    # ------------------------------------------------------------------

    def snapshot(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return tuple(self.cover), tuple(self.min_below)

    def check_invariants(self) -> None:
        """Recompute every node from scratch and compare"""
        for node in range(2 * self.capacity - 1, 0, -1):
            if node >= self.capacity:
                expected = self.cover[node]
            else:
                expected = self.cover[node] + min(self.min_below[2 * node], self.min_below[2 * node + 1])
            assert self.min_below[node] == expected, f"min_below broken at node {node}"

        m = self.num_leaves
        totals = [0] * m
        for (start, end), count in self._arcs.items():
            leaf = start
            while True:
                totals[leaf] += count
                leaf = (leaf + 1) % m
                if leaf == end:
                    break
        for leaf in range(m):
            assert self.leaf_coverage(leaf) == totals[leaf], f"coverage broken at leaf {leaf}"


def sorted_boundaries(directions: Iterable[Sequence], rotation: int = 0) -> List[CircleVector]:
    """Distinct directions in counterclockwise order from (1, 0), rotated by `rotation`"""
    keys = sorted({direction_key(*w) for w in directions}, key=cmp_to_key(compare_directions))
    ordered = [CircleVector(*key) for key in keys]
    if ordered and rotation:
        shift = rotation % len(ordered)
        ordered = ordered[shift:] + ordered[:shift]
    return ordered


def build_tree(boundaries: Sequence[CircleVector], debug_checks: bool = False) -> CoverageSegmentTree:
    return CoverageSegmentTree(boundaries, debug_checks=debug_checks)


def insert_arc(tree: CoverageSegmentTree, a, b) -> None:
    tree.insert_arc(a, b)


def delete_arc(tree: CoverageSegmentTree, a, b) -> None:
    tree.delete_arc(a, b)
