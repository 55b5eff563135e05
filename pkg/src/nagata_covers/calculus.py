"""Cover transformations: expand-and-recolor, interval bands, the
slab combination along 1-Lipschitz functions, and greedy regrouping.

The algorithms here only call a handful of methods on the ``space`` argument
(``closed_neighborhood``, ``preimage``, ``distance_probe``, ``value_range``,
``lipschitz_constant``) and the set operators ``&``, ``|``, ``-``.  Finite
metric spaces with ``frozenset`` subsets are the main client; the flat plane
of :mod:`nagata_covers.regions` is the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable

import numpy as np

from .covers import ColoredCover, measured_lipschitz
from .errors import ArgumentError, PreconditionError, RecolorError
from .metric import FiniteMetricSpace, as_index

__all__ = [
    "SlabCoverRequest",
    "SlabCoverProvider",
    "HalfOpenInterval",
    "IntervalColorCover",
    "expand_and_recolor",
    "interval_slab_colors",
    "combined_constant",
    "HurewiczTrace",
    "hurewicz_trace",
    "hurewicz_combine",
    "greedy_recolor",
    "brick_provider",
    "LAMBDA_LADDER",
]

LAMBDA_LADDER = (1.0, 0.5, 0.25, 0.125, 0.0625)


@dataclass(frozen=True)
class SlabCoverRequest:
    """Ask for a cover of ``f^-1([r, upper))``; ``upper`` defaults to ``r + width``.

    ``upper`` lets callers pass a right end that is bit-identical to their own
    slab boundary.
    """

    r: float
    width: float
    upper: float | None = None

    def __post_init__(self):
        if not self.width > 0:
            raise ArgumentError(f"slab width must be positive, got {self.width}")
        if self.upper is None:
            object.__setattr__(self, "upper", self.r + self.width)


@dataclass
class SlabCoverProvider:
    """Supplies ``(n+1, width)``-disjoint, ``c * width``-bounded covers of slabs.

    The contract is checked by certification after the fact, never at call
    time.  ``serial`` marks suppliers that must not be called concurrently.
    """

    n: int
    c: float
    supply: Callable[[SlabCoverRequest], ColoredCover]
    serial: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"provider dimension n must be >= 1, got {self.n}")
        if not self.c > 0:
            raise ArgumentError(f"provider constant c must be positive, got {self.c}")

    def __call__(self, request: SlabCoverRequest) -> ColoredCover:
        return self.supply(request)


@dataclass(frozen=True)
class HalfOpenInterval:
    lo: float
    hi: float

    def __contains__(self, x) -> bool:
        return self.lo <= x < self.hi

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class IntervalColorCover:
    """The ``n+2`` colored interval families covering ``I_k = [kt, (k+1)t)``, ``t = (n+2)s``.

    Class ``i`` (0-based) consists of the components of ``I_k`` with the strip
    ``[kt + i*s, kt + (i+1)*s)`` removed.
    """

    k: int
    n: int
    s: float
    classes: tuple

    @property
    def t(self) -> float:
        return (self.n + 2) * self.s

    def colors_containing(self, x: float) -> list[int]:
        return [i for i, cls in enumerate(self.classes) if any(x in b for b in cls)]


def _boundaries(k: int, n: int, s: float) -> list[float]:
    t = (n + 2) * s
    inner = [k * t + j * s for j in range(1, n + 2)]
    return [k * t] + inner + [(k + 1) * t]


def interval_slab_colors(k: int, n: int, s: float) -> IntervalColorCover:
    """Interval bands of ``I_k``: every point lies in exactly ``n+1`` of the ``n+2`` classes."""
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    b = _boundaries(k, n, s)
    classes = []
    for i in range(n + 2):
        parts = []
        if i > 0:
            parts.append(HalfOpenInterval(b[0], b[i]))
        if i < n + 1:
            parts.append(HalfOpenInterval(b[i + 1], b[-1]))
        classes.append(tuple(parts))
    return IntervalColorCover(k=k, n=n, s=float(s), classes=tuple(classes))


def _union(sets, empty):
    return reduce(lambda a, b: a | b, sets, empty)


def _violating_pair(space, cover: ColoredCover, s: float):
    """First ``(color, i, j, distance)`` with two sets of one color closer than ``s``."""
    for color, cls in enumerate(cover.classes):
        for i, first in enumerate(cls[:-1]):
            probe = space.distance_probe(first, limit=s)
            for j in range(i + 1, len(cls)):
                d = probe(cls[j])
                if d < s:
                    return color, i, j, d
    return None


def expand_and_recolor(space, cover: ColoredCover, s: float, check: bool = True) -> ColoredCover:
    """Turn an ``(n+1, s)``-disjoint, ``D``-bounded cover into an ``(n+2, s/3)``-disjoint,
    ``(D + 2s/3)``-bounded cover in which every point lies in two sets of different colors.

    Colors ``0..n`` hold the closed ``s/3``-neighbourhoods (inside the domain)
    of the input sets; color ``n+1`` holds each input set minus the
    neighbourhoods of all other colors.

    Raises
    ------
    PreconditionError
        If the input has fewer than two colors or two sets of one color are
        closer than ``s`` (the message names the pair).
    """
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    if cover.color_count < 2:
        raise PreconditionError("expand_and_recolor needs n + 1 >= 2 colors")
    if check:
        bad = _violating_pair(space, cover, s)
        if bad is not None:
            color, i, j, d = bad
            raise PreconditionError(
                f"input is not ({cover.color_count}, {s})-disjoint: sets {i} and {j} "
                f"of color {color} are at distance {d}")
    third = s / 3
    domain = cover.domain
    expanded = [tuple(space.closed_neighborhood(C, third, within=domain) for C in cls)
                for cls in cover.classes]
    per_color_union = [_union(cls, space.empty) for cls in expanded]
    extra = []
    for j, cls in enumerate(cover.classes):
        others = _union((u for k, u in enumerate(per_color_union) if k != j), space.empty)
        extra.extend(B - others for B in cls)
    return ColoredCover(domain, tuple(expanded) + (tuple(extra),))


def combined_constant(n: int, c: float) -> float:
    """Diameter constant of :func:`hurewicz_combine`: ``c*(c'+2) + 2(c'+1)``, ``c' = (n+2)(c+1)``.

    Equals ``(c+2)(n+2)(c+1) + 2c + 2``; for ``n = 1, c = 1`` this is 22.
    """
    cp = (n + 2) * (c + 1)
    return c * (cp + 2) + 2 * (cp + 1)


@dataclass
class HurewiczTrace:
    """Everything :func:`hurewicz_trace` built on the way to the final cover."""

    cover: ColoredCover
    n: int
    c: float
    s: float
    t: float
    c_prime: float
    s_prime: float
    bound: float
    odd_covers: dict = field(default_factory=dict)
    pieces: list = field(default_factory=list)
    even_sets: list = field(default_factory=list)
    stars: list = field(default_factory=list)
    double_absorptions: list = field(default_factory=list)


def _fit_provider_cover(cover: ColoredCover, slab, colors: int) -> ColoredCover:
    if cover.color_count > colors:
        raise PreconditionError(
            f"slab provider returned {cover.color_count} colors, at most {colors} allowed")
    return ColoredCover(slab, tuple(tuple(m & slab for m in cls) for cls in cover.classes)).padded(colors)


def hurewicz_trace(space, f, provider: SlabCoverProvider, s: float,
                   lipschitz_tolerance: float = 0.0) -> HurewiczTrace:
    """Run the slab combination and keep the intermediate families.

    See :func:`hurewicz_combine` for the construction.
    """
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    n, c = provider.n, float(provider.c)
    lip = measured_lipschitz(space, f)
    if lip > 1 + lipschitz_tolerance:
        raise PreconditionError(f"f is not 1-Lipschitz: measured constant {lip}")

    t = (n + 2) * s
    c_prime = (n + 2) * (c + 1)
    s_prime = (c_prime + 2) * s
    lo, hi = space.value_range(f)
    k_first, k_last = math.floor(lo / t) - 1, math.floor(hi / t) + 1

    pieces = [[] for _ in range(n + 2)]      # (k, set) per color
    even_sets = [[] for _ in range(n + 1)]   # (k, set) per color
    odd_covers = {}
    for k in range(k_first, k_last + 1):
        left, right = k * t, (k + 1) * t
        slab = space.preimage(f, left, right)
        if not slab:
            continue
        if k % 2:
            raw = provider(SlabCoverRequest(left, t, upper=right))
            fitted = _fit_provider_cover(raw, slab, n + 1)
            expanded = expand_and_recolor(space, fitted, t)
            odd_covers[k] = expanded
            bands = interval_slab_colors(k, n, s)
            for i in range(n + 2):
                band_sets = [space.preimage(f, b.lo, b.hi) for b in bands.classes[i]]
                for C in expanded.classes[i]:
                    for B in band_sets:
                        piece = C & B
                        if piece:
                            pieces[i].append((k, piece))
        else:
            raw = provider(SlabCoverRequest(left, s_prime))
            fitted = _fit_provider_cover(raw, slab, n + 1)
            for i, cls in enumerate(fitted.classes):
                even_sets[i].extend((k, E) for E in cls)

    final = []
    stars = []
    double = []
    for i in range(n + 1):
        pool = pieces[i]
        owner = {}
        color_stars = []
        for e_index, (k, E) in enumerate(even_sets[i]):
            probe = space.distance_probe(E, limit=s)
            grabbed = []
            for j, (kd, D) in enumerate(pool):
                if abs(kd - k) != 1 or probe(D) >= s:
                    continue
                if j in owner:
                    double.append((i, j, owner[j], e_index))
                    continue
                owner[j] = e_index
                grabbed.append(D)
            color_stars.append(_union(grabbed, E))
        rest = [D for j, (_, D) in enumerate(pool) if j not in owner]
        stars.append(color_stars)
        final.append(tuple(color_stars) + tuple(rest))
    final.append(tuple(D for _, D in pieces[n + 1]))

    cover = ColoredCover(space.domain, tuple(final))
    return HurewiczTrace(
        cover=cover, n=n, c=c, s=float(s), t=t, c_prime=c_prime, s_prime=s_prime,
        bound=combined_constant(n, c) * s, odd_covers=odd_covers, pieces=pieces,
        even_sets=even_sets, stars=stars, double_absorptions=double,
    )


def hurewicz_combine(space, f, provider: SlabCoverProvider, s: float,
                     lipschitz_tolerance: float = 0.0) -> ColoredCover:
    """Combine slab covers along a 1-Lipschitz ``f`` into an ``(n+2, s)``-disjoint cover.

    With ``t = (n+2)s``: odd slabs ``f^-1([kt, (k+1)t))`` get a provider cover
    at width ``t``, pass through :func:`expand_and_recolor`, and are cut by
    the interval bands of :func:`interval_slab_colors`.  Even slabs get a
    provider cover at width ``s' = (c'+2)s`` with ``c' = (n+2)(c+1)``; each
    even set then absorbs the odd-slab pieces of its color lying within
    distance ``< s``.  The result is ``c'' s``-bounded with ``c''`` given by
    :func:`combined_constant`.

    Parameters
    ----------
    space
        The space to cover (all of it).
    f
        A :class:`~nagata_covers.metric.RealValuedFunction` with measured
        Lipschitz constant at most ``1 + lipschitz_tolerance``.
    provider
        Slab cover source with parameters ``n >= 1`` and ``c > 0``.
    s
        Target disjointness scale.
    """
    return hurewicz_trace(space, f, provider, s, lipschitz_tolerance).cover


def _pairwise_set_distances(space, sets) -> np.ndarray:
    k = len(sets)
    out = np.full((k, k), np.inf)
    if isinstance(space, FiniteMetricSpace) and k:
        members = [as_index(m) for m in sets]
        for i, idx in enumerate(members):
            row = space.distance_to_set(idx)
            for j in range(i + 1, k):
                out[i, j] = out[j, i] = row[members[j]].min()
        return out
    for i in range(k):
        probe = space.distance_probe(sets[i])
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = probe(sets[j])
    return out


def greedy_recolor(space, cover: ColoredCover, s: float, max_colors: int):
    """Regroup the sets of ``cover`` into at most ``max_colors`` classes.

    Tries scales ``lam * s`` for ``lam`` in 1, 1/2, ..., 1/16: two sets
    conflict when closer than ``lam * s``, and the conflict graph is colored
    greedily (decreasing degree, ties by smallest point).  The sets themselves
    are unchanged.

    Returns
    -------
    (ColoredCover, float)
        The regrouped cover and the ``lam`` that worked.

    Raises
    ------
    RecolorError
        When no ``lam`` works; carries the last ``lam`` and a witness.
    """
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    if max_colors < 1:
        raise ArgumentError(f"max_colors must be >= 1, got {max_colors}")
    sets = [m for _, m in cover.sets()]
    dist = _pairwise_set_distances(space, sets)
    first_point = [min(m) if isinstance(m, frozenset) else 0 for m in sets]
    witness = ()
    for lam in LAMBDA_LADDER:
        conflict = dist < lam * s
        np.fill_diagonal(conflict, False)
        degree = conflict.sum(axis=1)
        order = sorted(range(len(sets)), key=lambda i: (-degree[i], first_point[i]))
        color = {}
        failed = False
        for i in order:
            used = {color[j]: j for j in np.flatnonzero(conflict[i]) if j in color}
            free = [c for c in range(max_colors) if c not in used]
            if not free:
                witness = (i,) + tuple(int(used[c]) for c in range(max_colors))
                failed = True
                break
            color[i] = free[0]
        if failed:
            continue
        classes = [[] for _ in range(max_colors)]
        for i in range(len(sets)):
            classes[color[i]].append(sets[i])
        return ColoredCover(cover.domain, tuple(tuple(c) for c in classes)), lam
    raise RecolorError(
        f"no scale down to {LAMBDA_LADDER[-1]} * s admits a {max_colors}-coloring",
        lam=LAMBDA_LADDER[-1], witness=witness)


def brick_provider(space: FiniteMetricSpace, f, g=None, n: int = 1, c: float = 1.0,
                   length: float = 1.0) -> SlabCoverProvider:
    """Synthetic slab provider: cut each slab into bricks along a second function ``g``.

    A slab ``f^-1([r, upper))`` is split by ``floor(g / (length * width))``
    and brick ``j`` gets color ``j mod (n+1)``.  With ``g = None`` the whole
    slab is one set.  The declared constant ``c`` is taken on trust; whether
    the bricks honor it depends on the space (check with ``certify``).
    """
    g_values = None if g is None else np.asarray(getattr(g, "values", g), dtype=float)

    def supply(request: SlabCoverRequest) -> ColoredCover:
        slab = space.preimage(f, request.r, request.upper)
        classes = [[] for _ in range(n + 1)]
        if g_values is None:
            classes[0].append(slab)
        else:
            idx = np.array(sorted(slab), dtype=np.intp)
            brick = np.floor(g_values[idx] / (length * request.width)).astype(np.int64)
            for j in np.unique(brick):
                classes[int(j) % (n + 1)].append(frozenset(idx[brick == j].tolist()))
        return ColoredCover(slab, tuple(tuple(cls) for cls in classes))

    return SlabCoverProvider(n=n, c=float(c), supply=supply)
