"""Planar graphs: annulus covers and the 3-colored cover pipeline.

The annulus generator orders the vertices of a metric annulus by angle
around the base point (or by breadth-first traversal without an embedding),
cuts the order into arcs that fit in balls of radius ``K t / 2``, and colors
the arcs alternately.  Every attempt is verified; ``K`` escalates on failure.
The pipeline feeds these annulus covers into the slab combination along
``f = d(z, .)`` and returns a cover with three colors.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import Delaunay

from .calculus import (HurewiczTrace, SlabCoverProvider, SlabCoverRequest,
                       greedy_recolor, hurewicz_trace)
from .covers import ColoredCover, CoverCertificate, certify, multiplicity
from .errors import (AnnulusCoverError, ArgumentError, CertificationError, LadderExhausted,
                     RecolorError)
from .metric import GraphMetricSpace, RealValuedFunction, WeightedGraph, build_graph_metric

__all__ = [
    "PlanarGraph",
    "AnnulusSpec",
    "AnnulusCoverResult",
    "PlanarCoverResult",
    "K_LADDER",
    "annulus",
    "annulus_cover",
    "annulus_provider",
    "planar_nagata_trace",
    "planar_nagata_cover",
    "gen_grid",
    "gen_random_planar",
    "embedding_is_planar",
]

log = logging.getLogger(__name__)

K_LADDER = (4, 8, 16, 32, 64)


class PlanarGraph:
    """A unit- or positively-weighted graph with an optional straight-line embedding."""

    def __init__(self, graph: WeightedGraph, embedding=None, name: str | None = None):
        self.graph = graph
        if embedding is not None:
            embedding = np.asarray(embedding, dtype=float).reshape(-1, 2)
            if len(embedding) != graph.vertex_count:
                raise ArgumentError(
                    f"embedding has {len(embedding)} points for {graph.vertex_count} vertices")
            embedding.setflags(write=False)
        self.embedding = embedding
        self.name = name

    @cached_property
    def space(self) -> GraphMetricSpace:
        return build_graph_metric(self.graph)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v, _ in self.graph.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(set(a)) for a in adj]


@dataclass(frozen=True)
class AnnulusSpec:
    """The closed annulus ``{x : r <= d(z, x) <= r + t}``."""

    z: int
    r: float
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ArgumentError(f"annulus width must be positive, got {self.t}")
        if self.r < 0:
            raise ArgumentError(f"annulus radius must be non-negative, got {self.r}")


@dataclass
class AnnulusCoverResult:
    """Outcome of :func:`annulus_cover`.

    ``colored`` is True when both classes are ``t``-disjoint; ``lam`` is the
    scale factor reached when the greedy fallback regrouped the arcs.
    """

    spec: AnnulusSpec
    cover: ColoredCover
    certificate: CoverCertificate
    K: float
    colored: bool
    lam: float = 1.0

    @property
    def diameter_constant(self) -> float:
        return self.certificate.max_diameter / self.spec.t

    @property
    def valid(self) -> bool:
        return self.certificate.multiplicity <= 2 and (
            not self.colored or self.certificate.disjoint_at(self.spec.t))


def annulus(space, spec: AnnulusSpec, dz=None) -> frozenset:
    """Vertices ``x`` with ``r <= d(z, x) <= r + t``."""
    space._check_point(spec.z)
    if dz is None:
        dz = space.distance_to_set([spec.z])
    mask = (dz >= spec.r) & (dz <= spec.r + spec.t)
    return frozenset(np.flatnonzero(mask).tolist())


def _angular_order(pg: PlanarGraph, z: int, members: np.ndarray, dz: np.ndarray) -> np.ndarray:
    delta = pg.embedding[members] - pg.embedding[z]
    angle = np.arctan2(delta[:, 1], delta[:, 0])
    order = np.lexsort((members, dz[members], angle))
    ordered = angle[order]
    if len(ordered) > 1:
        gaps = np.diff(np.concatenate([ordered, ordered[:1] + 2 * math.pi]))
        start = (int(np.argmax(gaps)) + 1) % len(ordered)
        order = np.roll(order, -start)
    return members[order]


def _traversal_order(pg: PlanarGraph, members: np.ndarray) -> np.ndarray:
    inside = set(members.tolist())
    seen = set()
    out = []
    for root in sorted(inside):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            out.append(v)
            for w in pg.adjacency[v]:
                if w in inside and w not in seen:
                    seen.add(w)
                    queue.append(w)
    return np.array(out, dtype=np.intp)


def _cut_arcs(space, order: np.ndarray, radius: float) -> list[np.ndarray]:
    arcs = []
    i = 0
    while i < len(order):
        row = space.distance_to_set(order[i:i + 1], limit=radius)
        far = row[order[i + 1:]] > radius
        j = i + 1 + (int(np.argmax(far)) if far.any() else len(far))
        arcs.append(order[i:j])
        i = j
    return arcs


def _fix_cycle_parity(space, arcs: list[np.ndarray], t: float) -> list[np.ndarray]:
    # an odd closed chain cannot alternate two colors: split the largest arc
    if len(arcs) < 3 or len(arcs) % 2 == 0:
        return arcs
    if space.distance_to_set(arcs[0], limit=2 * t)[arcs[-1]].min() > 2 * t:
        return arcs
    big = max(range(len(arcs)), key=lambda i: len(arcs[i]))
    if len(arcs[big]) < 2:
        return arcs
    half = len(arcs[big]) // 2
    return arcs[:big] + [arcs[big][:half], arcs[big][half:]] + arcs[big + 1:]


def _quick_check(space, classes, t: float) -> bool:
    """Separation >= t per class and t-multiplicity <= 2, with rows limited to radius t."""
    n = len(space)
    hits = np.zeros(n, dtype=np.int32)
    for cls in classes:
        inside = np.zeros(n, dtype=np.int32)
        for arc in cls:
            inside[arc] += 1
        for arc in cls:
            row = space.distance_to_set(arc, limit=t)
            others = inside.copy()
            others[arc] -= 1
            if np.any(row[others > 0] < t):
                return False
            hits += row <= t
    return int(hits.max(initial=0)) <= 2


def _bipartite_classes(space, arcs, t: float):
    """Two-color the arcs so that same-colored arcs are more than ``2t`` apart, if possible."""
    k = len(arcs)
    conflict = [[] for _ in range(k)]
    for i, arc in enumerate(arcs):
        row = space.distance_to_set(arc, limit=2 * t)
        for j in range(i + 1, k):
            if row[arcs[j]].min() <= 2 * t:
                conflict[i].append(j)
                conflict[j].append(i)
    color = [-1] * k
    for root in range(k):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in conflict[i]:
                if color[j] < 0:
                    color[j] = 1 - color[i]
                    queue.append(j)
                elif color[j] == color[i]:
                    return None
    return ([a for a, c in zip(arcs, color) if c == 0], [a for a, c in zip(arcs, color) if c == 1])


def _to_cover(domain, classes) -> ColoredCover:
    return ColoredCover(domain, tuple(tuple(frozenset(a.tolist()) for a in cls) for cls in classes))


def annulus_cover(pg: PlanarGraph, spec: AnnulusSpec, ladder=K_LADDER, dz=None) -> AnnulusCoverResult:
    """Two-colored cover of an annulus with ``t``-multiplicity at most 2.

    For each ``K`` on ``ladder`` the annulus is cut into arcs of diameter at
    most ``K t``; the first ``K`` whose arcs pass verification wins.

    Raises
    ------
    AnnulusCoverError
        When no ``K`` works; ``best`` holds the attempt with the smallest
        multiplicity.
    """
    space = pg.space
    if dz is None:
        dz = space.distance_to_set([spec.z])
    members = annulus(space, spec, dz)
    t = spec.t
    if not members:
        cover = ColoredCover(members, ((), ()))
        return AnnulusCoverResult(spec, cover, certify(space, cover, t), ladder[0], True)
    idx = np.array(sorted(members), dtype=np.intp)
    if pg.embedding is not None:
        order = _angular_order(pg, spec.z, idx, dz)
    else:
        order = _traversal_order(pg, idx)
    best = None
    for K in ladder:
        arcs = _fix_cycle_parity(space, _cut_arcs(space, order, K * t / 2), t)
        classes = (arcs[0::2], arcs[1::2])
        colored = _quick_check(space, classes, t)
        if not colored:
            split = _bipartite_classes(space, arcs, t)
            if split is not None:
                classes, colored = split, True
        cover = _to_cover(members, classes)
        lam = 1.0
        if not colored and multiplicity(space, cover, t) <= 2:
            try:
                cover, lam = greedy_recolor(space, cover, t, 2)
                colored = lam == 1.0
            except RecolorError:
                pass
        if colored:
            result = AnnulusCoverResult(spec, cover, certify(space, cover, t), K, True, lam)
            if result.valid:
                return result
        attempt = AnnulusCoverResult(spec, cover, certify(space, cover, t), K, False, lam)
        if best is None or attempt.certificate.multiplicity < best.certificate.multiplicity:
            best = attempt
    raise AnnulusCoverError(
        f"no K in {tuple(ladder)} gave a 2-colored cover of annulus r={spec.r}, t={t}", best)


def annulus_provider(pg: PlanarGraph, z: int, K: float, record: list | None = None,
                     dz=None) -> SlabCoverProvider:
    """Slab provider for ``f = d(z, .)`` backed by :func:`annulus_cover` at a fixed ``K``.

    Declares ``n = 1`` and ``c = K`` (arcs have diameter at most ``K`` times
    the width).  Each annulus result is appended to ``record`` when given.
    """
    space = pg.space
    if dz is None:
        dz = space.distance_to_set([z])

    def supply(request: SlabCoverRequest) -> ColoredCover:
        r = max(request.r, 0.0)
        spec = AnnulusSpec(z, r, max(request.width, request.upper - r))
        result = annulus_cover(pg, spec, ladder=(K,), dz=dz)
        if record is not None:
            record.append(result)
        return result.cover

    return SlabCoverProvider(n=1, c=float(K), supply=supply)


@dataclass
class PlanarCoverResult:
    """Outcome of :func:`planar_nagata_trace`."""

    cover: ColoredCover
    trace: HurewiczTrace
    K: float
    z: int
    s: float
    certificate: CoverCertificate
    annuli: list = field(default_factory=list)
    failed_K: list = field(default_factory=list)

    @property
    def bound(self) -> float:
        return self.trace.bound


def planar_nagata_trace(pg: PlanarGraph, z: int = 0, s: float = 1.0, ladder=K_LADDER) -> PlanarCoverResult:
    """Three-colored, ``s``-disjoint cover of a planar graph, with all intermediate data.

    ``f = d(z, .)`` is sliced into slabs; annulus covers at a fixed ``K``
    serve as the slab provider.  If some annulus fails at ``K``, the whole
    combination restarts with the next ``K``.

    Raises
    ------
    LadderExhausted
        If every ``K`` fails.
    CertificationError
        If the final cover is not a 3-colored ``s``-disjoint cover of all
        vertices (an implementation bug).
    """
    if not s > 0:
        raise ArgumentError(f"s must be positive, got {s}")
    space = pg.space
    space._check_point(z)
    dz = space.distance_to_set([z])
    f = RealValuedFunction(dz)
    failed = []
    for K in ladder:
        record = []
        try:
            trace = hurewicz_trace(space, f, annulus_provider(pg, z, K, record, dz), s)
        except AnnulusCoverError as exc:
            log.info("K=%s failed: %s", K, exc)
            failed.append(K)
            continue
        cert = certify(space, trace.cover, s)
        if not (cert.is_cover and cert.color_count <= 3 and cert.disjoint_at(s)):
            raise CertificationError(f"planar cover failed certification at s={s}: {cert}")
        return PlanarCoverResult(trace.cover, trace, K, z, float(s), cert, record, failed)
    raise LadderExhausted(f"every K in {tuple(ladder)} failed at s={s}")


def planar_nagata_cover(pg: PlanarGraph, z: int = 0, s: float = 1.0) -> ColoredCover:
    """Cover all vertices with three ``s``-disjoint colors of bounded diameter."""
    return planar_nagata_trace(pg, z, s).cover


# -- generators -------------------------------------------------------------

def gen_grid(rows: int, cols: int) -> PlanarGraph:
    """``rows x cols`` unit grid; vertex ``i * cols + j`` sits at ``(j, i)``."""
    if rows < 1 or cols < 1:
        raise ArgumentError(f"grid needs rows, cols >= 1, got {rows} x {cols}")
    idx = np.arange(rows * cols).reshape(rows, cols)
    horizontal = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    vertical = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    edges = tuple((int(u), int(v), 1.0) for u, v in np.concatenate([horizontal, vertical]))
    jj, ii = np.meshgrid(np.arange(cols), np.arange(rows))
    coords = np.stack([jj.ravel(), ii.ravel()], axis=1).astype(float)
    return PlanarGraph(WeightedGraph(rows * cols, edges), coords, name=f"grid-{rows}x{cols}")


def gen_random_planar(n_points: int, seed: int = 0) -> PlanarGraph:
    """Delaunay triangulation of ``n_points`` uniform points in the unit disk, unit edge lengths."""
    if n_points < 3:
        raise ArgumentError(f"need at least 3 points, got {n_points}")
    rng = np.random.default_rng(seed)
    radius = np.sqrt(rng.random(n_points))
    theta = 2 * math.pi * rng.random(n_points)
    points = np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=1)
    tri = Delaunay(points)
    pairs = set()
    for simplex in tri.simplices:
        a, b, c = sorted(int(x) for x in simplex)
        pairs.update(((a, b), (a, c), (b, c)))
    edges = tuple((u, v, 1.0) for u, v in sorted(pairs))
    return PlanarGraph(WeightedGraph(n_points, edges), points, name=f"delaunay-{n_points}-{seed}")


def embedding_is_planar(pg: PlanarGraph) -> bool:
    """True iff the straight-line drawing has no crossings (edges meet only at endpoints)."""
    from shapely import MultiLineString

    if pg.embedding is None:
        raise ArgumentError("graph has no embedding (missing field 'coords')")
    if not pg.graph.edges:
        return True
    lines = [(tuple(pg.embedding[u]), tuple(pg.embedding[v])) for u, v, _ in pg.graph.edges]
    return bool(MultiLineString(lines).is_simple)
