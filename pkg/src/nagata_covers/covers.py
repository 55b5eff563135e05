"""Colored covers and the verifier that measures them.

A :class:`ColoredCover` is a domain plus ``m`` color classes, each a tuple of
non-empty subsets.  :func:`certify` measures, at a scale ``s``, everything the
constructions promise: coverage, the smallest distance between distinct sets
of one color, the largest diameter, and the ``s``-multiplicity.

Multiplicity is measured with ball centers at the points of the space only.
A closed ball ``B(p, s)`` *meets* ``S`` iff ``d(p, S) <= s``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterator

import numpy as np

from .errors import ArgumentError
from .metric import FiniteMetricSpace, RealValuedFunction, as_index

__all__ = [
    "ColoredCover",
    "CoverCertificate",
    "is_cover",
    "max_diameter",
    "min_separation",
    "multiplicity",
    "certify",
    "measured_lipschitz",
]


def _normalize(members):
    if isinstance(members, (list, tuple, set, range, np.ndarray)):
        return frozenset(int(p) for p in members)
    return members


@dataclass(frozen=True)
class ColoredCover:
    """Subsets of ``domain`` grouped into color classes (color ``i`` is ``classes[i]``).

    Empty sets are dropped on construction.  Lists, tuples and sets of point
    ids are converted to ``frozenset``; any other set-like object (for example
    a plane region) is stored unchanged.
    """

    domain: object
    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "domain", _normalize(self.domain))
        classes = tuple(
            tuple(s for s in (_normalize(m) for m in cls) if s) for cls in self.classes
        )
        if not classes:
            raise ArgumentError("a colored cover needs at least one color")
        object.__setattr__(self, "classes", classes)

    @property
    def color_count(self) -> int:
        return len(self.classes)

    def sets(self) -> Iterator[tuple[int, object]]:
        """Yield ``(color, set)`` pairs in class order."""
        for color, cls in enumerate(self.classes):
            for members in cls:
                yield color, members

    @property
    def set_count(self) -> int:
        return sum(len(cls) for cls in self.classes)

    def padded(self, color_count: int) -> "ColoredCover":
        """The same cover with empty classes appended up to ``color_count``."""
        if color_count < self.color_count:
            raise ArgumentError(f"cover already has {self.color_count} colors")
        extra = ((),) * (color_count - self.color_count)
        return ColoredCover(self.domain, self.classes + extra)

    def restricted(self, subset) -> "ColoredCover":
        """Intersect the domain and every set with ``subset``."""
        return ColoredCover(self.domain & subset,
                            tuple(tuple(m & subset for m in cls) for cls in self.classes))


@dataclass(frozen=True)
class CoverCertificate:
    """Measured properties of a cover at scale ``multiplicity_scale``.

    ``per_color_separation`` holds ``inf`` for colors with fewer than two sets.
    """

    is_cover: bool
    color_count: int
    per_color_separation: tuple
    max_diameter: float
    multiplicity_scale: float
    multiplicity: int

    def disjoint_at(self, s: float, tol: float = 0.0) -> bool:
        """True iff every color class is ``s``-disjoint (up to ``tol``)."""
        return all(sep >= s - tol for sep in self.per_color_separation)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["per_color_separation"] = [None if math.isinf(v) else v
                                       for v in self.per_color_separation]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CoverCertificate":
        seps = tuple(math.inf if v is None else float(v) for v in data["per_color_separation"])
        return cls(
            is_cover=bool(data["is_cover"]),
            color_count=int(data["color_count"]),
            per_color_separation=seps,
            max_diameter=float(data["max_diameter"]),
            multiplicity_scale=float(data["multiplicity_scale"]),
            multiplicity=int(data["multiplicity"]),
        )


def is_cover(space, cover: ColoredCover) -> bool:
    """True iff every domain point lies in at least one set."""
    covered = set()
    for _, members in cover.sets():
        covered.update(members)
    return cover.domain <= covered


def max_diameter(space, cover: ColoredCover) -> float:
    """Largest set diameter; 0 for a cover without sets."""
    return max((space.subset_diameter(m) for _, m in cover.sets()), default=0.0)


def _class_scan(space: FiniteMetricSpace, cls, scale: float | None):
    """Separation of one class and, if ``scale`` is given, per-center hit counts."""
    n = len(space)
    inside = np.zeros(n, dtype=np.int32)
    for members in cls:
        inside[as_index(members)] += 1
    separation = math.inf
    hits = np.zeros(n, dtype=np.int32) if scale is not None else None
    for members in cls:
        idx = as_index(members)
        row = space.distance_to_set(idx)
        if len(cls) > 1:
            others = inside.copy()
            others[idx] -= 1
            mask = others > 0
            if mask.any():
                separation = min(separation, float(row[mask].min()))
        if hits is not None:
            hits += row <= scale
    return separation, hits


def min_separation(space, cover: ColoredCover) -> list[float]:
    """Per color, the smallest distance between two distinct sets of that color."""
    if isinstance(space, FiniteMetricSpace):
        return [_class_scan(space, cls, None)[0] for cls in cover.classes]
    out = []
    for cls in cover.classes:
        best = math.inf
        for i, first in enumerate(cls):
            probe = space.distance_probe(first)
            for second in cls[i + 1:]:
                best = min(best, probe(second))
        out.append(best)
    return out


def multiplicity(space: FiniteMetricSpace, cover: ColoredCover, s: float) -> int:
    """Largest number of sets met by a closed ``s``-ball centered at a point of the space."""
    if not s > 0:
        raise ArgumentError(f"multiplicity scale must be positive, got {s}")
    hits = np.zeros(len(space), dtype=np.int32)
    for _, members in cover.sets():
        hits += space.distance_to_set(members, limit=s) <= s
    return int(hits.max()) if cover.set_count else 0


def certify(space: FiniteMetricSpace, cover: ColoredCover, s: float) -> CoverCertificate:
    """Measure ``cover`` at scale ``s``; deterministic in its inputs."""
    if not s > 0:
        raise ArgumentError(f"certificate scale must be positive, got {s}")
    separations = []
    hits = np.zeros(len(space), dtype=np.int32)
    for cls in cover.classes:
        sep, class_hits = _class_scan(space, cls, s)
        separations.append(sep)
        hits += class_hits
    return CoverCertificate(
        is_cover=is_cover(space, cover),
        color_count=cover.color_count,
        per_color_separation=tuple(separations),
        max_diameter=max_diameter(space, cover),
        multiplicity_scale=float(s),
        multiplicity=int(hits.max()) if cover.set_count else 0,
    )


def measured_lipschitz(space, f: RealValuedFunction) -> float:
    """``max |f(p) - f(q)| / d(p, q)`` over distinct pairs; 0 on a one-point space."""
    values = getattr(f, "values", f)
    return space.lipschitz_constant(values)
