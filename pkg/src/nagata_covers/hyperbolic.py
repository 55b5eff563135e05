"""Hyperbolic 3-space in the upper half-space model.

Points are ``(x1, x2, h)`` with height ``h > 0``.  The Busemann function of
the point at infinity is ``f = -ln h``; its level sets are the horizontal
horospheres, each flat with intrinsic metric ``|dx| / h``, and the nearest
point projection onto a horosphere from below is vertical.

The cover pipeline: a horosphere is covered by running the slab combination
on its flat plane with a brick provider, points of a slab are classified
through the vertical projection, and the resulting slab covers feed the
combination once more along ``f`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import qmc

from .calculus import (HurewiczTrace, SlabCoverProvider, SlabCoverRequest,
                       combined_constant, hurewicz_trace)
from .covers import ColoredCover
from .errors import ArgumentError, CertificationError
from .metric import FiniteMetricSpace, RealValuedFunction, as_index
from .regions import FIRST_COORDINATE, Box, FlatPlane, Interval, Region

__all__ = [
    "UpperHalfSpacePoint",
    "hyperbolic_distance",
    "busemann",
    "horosphere_projection",
    "UpperHalfSpaceSample",
    "sample_upper_half_space",
    "brick_plane_provider",
    "HorosphereCover",
    "horosphere_plane_cover",
    "PLANE_BRICK_CONSTANT",
    "HOROSPHERE_CONSTANT",
    "hadamard_slab_provider",
    "hadamard_provider",
    "hadamard_trace",
    "hadamard_cover",
    "TOLERANCE",
    "DEFAULT_BOX",
]

# geometric comparisons in this module only
TOLERANCE = 1e-9
DEFAULT_BOX = ((-5.0, 5.0), (-5.0, 5.0), (0.1, 10.0))
# bricks w x 3w: diameter sqrt(w^2 + 9 w^2)
PLANE_BRICK_CONSTANT = math.sqrt(10.0)
# diameter constant of the 3-colored horosphere cover
HOROSPHERE_CONSTANT = combined_constant(1, PLANE_BRICK_CONSTANT)


class UpperHalfSpacePoint(NamedTuple):
    x1: float
    x2: float
    h: float


def _distance_formula(dx2, dh, hp, hq):
    # 2 asinh(|p - q| / (2 sqrt(hp hq))) equals the arccosh form, without cancellation
    return 2.0 * np.arcsinh(np.sqrt(dx2 + dh * dh) / (2.0 * np.sqrt(hp * hq)))


def hyperbolic_distance(p, q) -> float:
    """``arccosh(1 + (dx1^2 + dx2^2 + dh^2) / (2 h_p h_q))``."""
    p, q = UpperHalfSpacePoint(*p), UpperHalfSpacePoint(*q)
    if not (p.h > 0 and q.h > 0):
        raise ArgumentError("heights must be positive")
    dx2 = (p.x1 - q.x1) ** 2 + (p.x2 - q.x2) ** 2
    return float(_distance_formula(dx2, p.h - q.h, p.h, q.h))


def busemann(p) -> float:
    """``-ln h``: 0 at height 1, decreasing upward."""
    return -math.log(UpperHalfSpacePoint(*p).h)


def horosphere_projection(p, level: float) -> UpperHalfSpacePoint:
    """Vertical projection onto the horosphere ``{f = level}`` (height ``e^-level``)."""
    p = UpperHalfSpacePoint(*p)
    return UpperHalfSpacePoint(p.x1, p.x2, math.exp(-level))


class UpperHalfSpaceSample(FiniteMetricSpace):
    """A finite sample of the upper half-space with the hyperbolic metric."""

    def __init__(self, coords, seed: int | None = None, box=None):
        coords = np.asarray(coords, dtype=float).reshape(-1, 3)
        super().__init__(len(coords))
        if np.any(coords[:, 2] <= 0):
            raise ArgumentError("sample heights must be positive")
        coords.setflags(write=False)
        self.coords = coords
        self.seed = seed
        self.box = box

    def point(self, i: int) -> UpperHalfSpacePoint:
        return UpperHalfSpacePoint(*self.coords[i])

    def distances(self, sources, targets=None, limit: float = np.inf) -> np.ndarray:
        a = self.coords[as_index(sources)]
        b = self.coords if targets is None else self.coords[as_index(targets)]
        dx2 = ((a[:, None, 0] - b[None, :, 0]) ** 2 + (a[:, None, 1] - b[None, :, 1]) ** 2)
        return _distance_formula(dx2, a[:, None, 2] - b[None, :, 2], a[:, None, 2], b[None, :, 2])

    def busemann_function(self) -> RealValuedFunction:
        return RealValuedFunction(-np.log(self.coords[:, 2]))

    @property
    def horizontal_extent(self) -> float:
        return float(np.abs(self.coords[:, :2]).max())


def sample_upper_half_space(n: int, box=DEFAULT_BOX, seed: int = 0) -> UpperHalfSpaceSample:
    """``n`` scrambled-Halton points, uniform in ``box = ((x1lo, x1hi), (x2lo, x2hi), (hlo, hhi))``."""
    if n < 1:
        raise ArgumentError(f"need at least one point, got {n}")
    box = tuple(tuple(float(v) for v in side) for side in box)
    if not (0 < box[2][0] <= box[2][1]):
        raise ArgumentError(f"height band must satisfy 0 < h_min <= h_max, got {box[2]}")
    unit = qmc.Halton(d=3, scramble=True, seed=seed).random(n)
    lo = np.array([side[0] for side in box])
    hi = np.array([side[1] for side in box])
    return UpperHalfSpaceSample(lo + unit * (hi - lo), seed=seed, box=box)


def brick_plane_provider(plane: FlatPlane) -> SlabCoverProvider:
    """Two-colored bricks: a slab of width ``w`` cut into ``w x 3w`` boxes of alternating color."""
    v_lo, v_hi = plane.bounds.v.lo, plane.bounds.v.hi

    def supply(request: SlabCoverRequest) -> ColoredCover:
        slab = plane.preimage(FIRST_COORDINATE, request.r, request.upper)
        length = 3 * request.width
        classes = ([], [])
        for j in range(math.floor(v_lo / length), math.floor(v_hi / length) + 1):
            brick = Box(Interval(request.r, request.upper, True, False),
                        Interval(j * length, (j + 1) * length, True, False))
            piece = slab & Region((brick,))
            if piece:
                classes[j % 2].append(piece)
        return ColoredCover(slab, (tuple(classes[0]), tuple(classes[1])))

    return SlabCoverProvider(n=1, c=PLANE_BRICK_CONSTANT, supply=supply)


@dataclass
class HorosphereCover:
    """A 3-colored cover of the horosphere ``{f = level}`` in intrinsic coordinates."""

    level: float
    height: float
    s: float
    extent: float
    trace: HurewiczTrace

    @property
    def cover(self) -> ColoredCover:
        return self.trace.cover

    @property
    def constant(self) -> float:
        return HOROSPHERE_CONSTANT

    def intrinsic(self, x1, x2):
        return np.asarray(x1, dtype=float) / self.height, np.asarray(x2, dtype=float) / self.height

    def classify(self, x1, x2) -> list[list[np.ndarray]]:
        """Membership masks ``[color][set]`` for horizontal positions ``(x1, x2)``."""
        u, v = self.intrinsic(x1, x2)
        return [[region.contains(u, v) for region in cls] for cls in self.cover.classes]


def horosphere_plane_cover(level: float, s: float, extent: float) -> HorosphereCover:
    """Cover the part ``|x1|, |x2| <= extent`` of the horosphere at ``level``.

    The horosphere is flat with metric ``|dx| / e^-level``; in those intrinsic
    coordinates the slab combination runs with ``f`` the first coordinate and
    :func:`brick_plane_provider`.  Result: 3 colors, each ``s``-disjoint,
    diameters at most ``HOROSPHERE_CONSTANT * s``.
    """
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    with np.errstate(over="ignore"):
        height = float(np.exp(-level))
    half = extent / height if height > 0 else math.inf
    if not math.isfinite(half):
        raise ArgumentError(f"horosphere at level {level} is too low to cover")
    plane = FlatPlane.square(half)
    trace = hurewicz_trace(plane, FIRST_COORDINATE, brick_plane_provider(plane), s)
    return HorosphereCover(level=level, height=height, s=float(s), extent=float(extent), trace=trace)


def hadamard_slab_provider(sample: UpperHalfSpaceSample, r: float, width: float,
                           upper: float | None = None, certify_result: bool = False) -> ColoredCover:
    """3-colored cover of the sample points with ``f`` in ``[r, upper)`` (``upper = r + width``).

    The horosphere at level ``r - width/2`` is covered at scale ``width``; a
    point belongs to a set when its vertical projection does.

    Raises
    ------
    CertificationError
        With ``certify_result=True``, if ambient separation drops below
        ``width`` or a diameter exceeds ``(HOROSPHERE_CONSTANT + 3) * width``
        (beyond :data:`TOLERANCE`).
    """
    if not width > 0:
        raise ArgumentError(f"width must be positive, got {width}")
    upper = r + width if upper is None else upper
    f = sample.busemann_function()
    slab = sample.preimage(f, r, upper)
    if not slab:
        return ColoredCover(slab, ((), (), ()))
    members = np.array(sorted(slab), dtype=np.intp)
    horo = horosphere_plane_cover(r - width / 2, width, sample.horizontal_extent)
    masks = horo.classify(sample.coords[members, 0], sample.coords[members, 1])
    classes = tuple(
        tuple(frozenset(members[mask].tolist()) for mask in color_masks) for color_masks in masks
    )
    cover = ColoredCover(slab, classes)
    if certify_result:
        _check_slab_cover(sample, cover, width)
    return cover


def _check_slab_cover(sample, cover: ColoredCover, width: float) -> None:
    from .covers import certify

    cert = certify(sample, cover, width)
    bound = (HOROSPHERE_CONSTANT + 3) * width
    if not cert.is_cover:
        raise CertificationError("slab cover misses a point")
    if not cert.disjoint_at(width, TOLERANCE):
        raise CertificationError(f"slab cover separations {cert.per_color_separation} < {width}")
    if cert.max_diameter > bound + TOLERANCE:
        raise CertificationError(f"slab cover diameter {cert.max_diameter} > {bound}")


def hadamard_provider(sample: UpperHalfSpaceSample, record: list | None = None) -> SlabCoverProvider:
    """Slab provider for the Busemann function: ``n = 2``, ``c = HOROSPHERE_CONSTANT + 3``.

    Each ``(request, cover)`` pair is appended to ``record`` when given.
    """

    def supply(request: SlabCoverRequest) -> ColoredCover:
        cover = hadamard_slab_provider(sample, request.r, request.width, request.upper)
        if record is not None:
            record.append((request, cover))
        return cover

    return SlabCoverProvider(n=2, c=HOROSPHERE_CONSTANT + 3, supply=supply)


def hadamard_trace(sample: UpperHalfSpaceSample, s: float, record: list | None = None) -> HurewiczTrace:
    """Run the combination along the Busemann function; see :func:`hadamard_cover`."""
    return hurewicz_trace(sample, sample.busemann_function(), hadamard_provider(sample, record), s,
                          lipschitz_tolerance=TOLERANCE)


def hadamard_cover(sample: UpperHalfSpaceSample, s: float) -> ColoredCover:
    """4-colored, ``s``-disjoint cover of the sample.

    Its diameter constant is :func:`~nagata_covers.calculus.combined_constant`
    with ``n = 2`` and ``c = HOROSPHERE_CONSTANT + 3``.
    """
    return hadamard_trace(sample, s).cover
