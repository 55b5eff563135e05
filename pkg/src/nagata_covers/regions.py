"""Unions of axis-parallel boxes in the Euclidean plane.

This is just enough geometry to run the slab combination on a continuous
plane when the slab function is the first coordinate and every slab cover
consists of boxes spanning the whole slab (the brick covers used for
horospheres).  Under that assumption all neighbourhoods, differences and
intersections the algorithm forms stay finite unions of boxes, and distances
and diameters have closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

__all__ = ["Interval", "Box", "Region", "FirstCoordinate", "FIRST_COORDINATE", "FlatPlane"]


@dataclass(frozen=True)
class Interval:
    """Real interval with independent closedness of each end."""

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    def contains(self, x):
        x = np.asarray(x)
        left = x >= self.lo if self.lo_closed else x > self.lo
        right = x <= self.hi if self.hi_closed else x < self.hi
        return left & right

    def covers(self, other: "Interval") -> bool:
        """True iff ``other`` is a subset of this interval."""
        if other.is_empty:
            return True
        left = self.lo < other.lo or (self.lo == other.lo and (self.lo_closed or not other.lo_closed))
        right = self.hi > other.hi or (self.hi == other.hi and (self.hi_closed or not other.hi_closed))
        return left and right

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lo_closed, hi_closed)

    def minus(self, other: "Interval") -> list["Interval"]:
        if other.is_empty or self.intersect(other).is_empty:
            return [self]
        parts = [
            self.intersect(Interval(-math.inf, other.lo, True, not other.lo_closed)),
            self.intersect(Interval(other.hi, math.inf, not other.hi_closed, True)),
        ]
        return [p for p in parts if not p.is_empty]

    def gap(self, other: "Interval") -> float:
        return max(0.0, other.lo - self.hi, self.lo - other.hi)

    def spread(self, other: "Interval") -> float:
        return max(self.hi - other.lo, other.hi - self.lo)


@dataclass(frozen=True)
class Box:
    u: Interval
    v: Interval

    @property
    def is_empty(self) -> bool:
        return self.u.is_empty or self.v.is_empty

    def contains(self, u, v):
        return self.u.contains(u) & self.v.contains(v)

    def intersect(self, other: "Box") -> "Box":
        return Box(self.u.intersect(other.u), self.v.intersect(other.v))

    def minus(self, other: "Box") -> list["Box"]:
        if self.intersect(other).is_empty:
            return [self]
        out = [Box(part, self.v) for part in self.u.minus(other.u)]
        middle = self.u.intersect(other.u)
        out += [Box(middle, part) for part in self.v.minus(other.v)]
        return [b for b in out if not b.is_empty]

    def distance(self, other: "Box") -> float:
        return math.hypot(self.u.gap(other.u), self.v.gap(other.v))

    def spread(self, other: "Box") -> float:
        """``sup |x - y|`` over ``x`` in this box and ``y`` in ``other``."""
        return math.hypot(self.u.spread(other.u), self.v.spread(other.v))


class Region:
    """A finite union of boxes; supports ``&``, ``|``, ``-`` and truth testing."""

    __slots__ = ("boxes",)

    def __init__(self, boxes=()):
        self.boxes = tuple(b for b in boxes if not b.is_empty)

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def __and__(self, other: "Region") -> "Region":
        return Region(a.intersect(b) for a in self.boxes for b in other.boxes)

    def __or__(self, other: "Region") -> "Region":
        return Region(self.boxes + other.boxes)

    def __sub__(self, other: "Region") -> "Region":
        pieces = list(self.boxes)
        for cut in other.boxes:
            pieces = [part for p in pieces for part in p.minus(cut)]
        return Region(pieces)

    def __repr__(self) -> str:
        return f"Region({list(self.boxes)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.boxes == other.boxes

    def __hash__(self) -> int:
        return hash(self.boxes)

    def contains(self, u, v) -> np.ndarray:
        u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
        out = np.zeros(np.broadcast(u, v).shape, dtype=bool)
        for b in self.boxes:
            out |= b.contains(u, v)
        return out


@dataclass(frozen=True)
class FirstCoordinate:
    """The 1-Lipschitz function ``(u, v) -> u`` on the plane."""


FIRST_COORDINATE = FirstCoordinate()


class FlatPlane:
    """A closed box of the Euclidean plane, seen as a space for the slab combination."""

    empty = Region()

    def __init__(self, bounds: Box):
        if bounds.is_empty:
            raise ArgumentError("plane bounds are empty")
        self.bounds = bounds
        self.domain = Region((bounds,))

    @classmethod
    def square(cls, half_width: float) -> "FlatPlane":
        side = Interval(-half_width, half_width, True, True)
        return cls(Box(side, side))

    def preimage(self, f, lo: float, hi: float, closed_right: bool = False) -> Region:
        if lo > hi:
            raise ArgumentError(f"empty interval bounds lo={lo} > hi={hi}")
        strip = Box(Interval(lo, hi, True, closed_right), Interval(-math.inf, math.inf, True, True))
        return self.domain & Region((strip,))

    def value_range(self, f) -> tuple[float, float]:
        return self.bounds.u.lo, self.bounds.u.hi

    def lipschitz_constant(self, f) -> float:
        if not isinstance(f, FirstCoordinate):
            raise ArgumentError("the flat plane only supports the first coordinate function")
        return 1.0

    def closed_neighborhood(self, members: Region, radius: float, within: Region | None = None) -> Region:
        """Closed ``radius``-neighbourhood inside ``within``.

        Only defined when every box of ``members`` spans the first-coordinate
        range of every box of ``within``; the neighbourhood is then a box union.
        """
        if radius < 0:
            raise ArgumentError(f"negative radius {radius}")
        within = self.domain if within is None else within
        out = []
        for b in members.boxes:
            for w in within.boxes:
                if not b.u.covers(w.u):
                    raise NotImplementedError("neighbourhood of a box not spanning its slab")
                grown = Interval(b.v.lo - radius, b.v.hi + radius, True, True)
                if radius == 0:
                    grown = b.v
                out.append(Box(w.u, grown).intersect(w))
        return Region(out)

    def subset_distance(self, first: Region, second: Region) -> float:
        if not first or not second:
            return math.inf
        return min(a.distance(b) for a in first.boxes for b in second.boxes)

    def subset_diameter(self, members: Region) -> float:
        if not members:
            return 0.0
        boxes = members.boxes
        return max(a.spread(b) for i, a in enumerate(boxes) for b in boxes[i:])

    def distance_probe(self, members: Region, limit: float = math.inf):
        return lambda other: self.subset_distance(members, other)
