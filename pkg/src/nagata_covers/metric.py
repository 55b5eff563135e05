"""Finite metric spaces and the set operations every cover construction uses.

Points are the integers ``0 .. n-1``; subsets are ``frozenset`` objects of
those integers.  A space only has to know how to produce distance rows
(:meth:`FiniteMetricSpace.distances` and
:meth:`FiniteMetricSpace.distance_to_set`); balls, diameters, neighbourhoods
and preimages are derived from those two primitives.

Conventions: ``diam(empty) = 0`` and ``d(empty, T) = inf``, so empty sets
satisfy every boundedness and disjointness requirement vacuously.  All
threshold comparisons are exact ``<=`` / ``>=``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

from .errors import ArgumentError, ConstructionError

__all__ = [
    "WeightedGraph",
    "RealValuedFunction",
    "FiniteMetricSpace",
    "GraphMetricSpace",
    "build_graph_metric",
    "as_index",
]

# bytes allowed for a cached all-pairs matrix
CACHE_BUDGET = 256 * 2**20
# float64 matrices are only cached up to this many points
FLOAT_CACHE_POINTS = 5000
_CHUNK = 512


def as_index(members) -> np.ndarray:
    """Return the members of a subset as an ``intp`` array."""
    if isinstance(members, np.ndarray):
        return members.astype(np.intp, copy=False)
    if isinstance(members, (frozenset, set)):
        return np.fromiter(members, dtype=np.intp, count=len(members))
    return np.asarray(list(members), dtype=np.intp)


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with positive edge lengths on vertices ``0 .. vertex_count-1``."""

    vertex_count: int
    edges: tuple = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ArgumentError("a graph needs at least one vertex")
        edges = []
        for e in self.edges:
            if len(e) == 2:
                u, v, w = e[0], e[1], 1.0
            else:
                u, v, w = e
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ArgumentError(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            if not (w > 0 and math.isfinite(w)):
                raise ArgumentError(f"edge ({u}, {v}) has non-positive weight {w}")
            edges.append((u, v, w))
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def unit_weights(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)


@dataclass(frozen=True)
class RealValuedFunction:
    """A function on the points of a space, stored as a value per point.

    ``claimed_lipschitz`` is what the caller asserts; the measured constant is
    available from :func:`nagata_covers.covers.measured_lipschitz`.
    """

    values: np.ndarray
    claimed_lipschitz: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __call__(self, p: int) -> float:
        return float(self.values[p])

    def __len__(self):
        return len(self.values)


class FiniteMetricSpace:
    """Base class: a finite point set ``0 .. n-1`` with a metric.

    Subclasses implement :meth:`distances`; everything else is derived.
    Instances are immutable after construction.
    """

    empty = frozenset()

    def __init__(self, n: int):
        if n < 1:
            raise ConstructionError("a metric space needs at least one point")
        self._n = int(n)

    def __len__(self) -> int:
        return self._n

    @property
    def points(self) -> range:
        return range(self._n)

    @cached_property
    def domain(self) -> frozenset:
        return frozenset(range(self._n))

    # -- primitives -----------------------------------------------------

    def distances(self, sources, targets=None, limit: float = np.inf) -> np.ndarray:
        """Distance matrix ``(len(sources), len(targets))``; targets default to all points.

        Entries larger than ``limit`` may be reported as ``inf``.
        """
        raise NotImplementedError

    def distance_to_set(self, members, targets=None, limit: float = np.inf) -> np.ndarray:
        """``d(members, x)`` for every target ``x`` (all points by default).

        Entries larger than ``limit`` may be reported as ``inf``; an empty
        ``members`` gives ``inf`` everywhere.
        """
        idx = as_index(members)
        size = self._n if targets is None else len(as_index(targets))
        out = np.full(size, np.inf)
        for start in range(0, len(idx), _CHUNK):
            block = self.distances(idx[start:start + _CHUNK], targets, limit)
            np.minimum(out, block.min(axis=0), out=out)
        return out

    def dist(self, p: int, q: int) -> float:
        return float(self.distance_to_set([p], targets=[q])[0])

    # -- derived operations ----------------------------------------------

    def _check_point(self, p):
        if not 0 <= p < self._n:
            raise ArgumentError(f"point {p} is not in the space")

    def closed_ball(self, center: int, radius: float) -> frozenset:
        """``{p : d(center, p) <= radius}``."""
        if radius < 0:
            raise ArgumentError(f"negative radius {radius}")
        self._check_point(center)
        row = self.distance_to_set([center], limit=radius)
        return frozenset(np.flatnonzero(row <= radius).tolist())

    def subset_diameter(self, members) -> float:
        """Largest pairwise distance inside ``members``; 0 for fewer than two points."""
        if len(members) < 2:
            return 0.0
        idx = as_index(members)
        best = 0.0
        for start in range(0, len(idx), _CHUNK):
            block = self.distances(idx[start:start + _CHUNK], idx)
            best = max(best, float(block.max()))
        return best

    def subset_distance(self, first, second) -> float:
        """``inf { d(x, y) : x in first, y in second }``; ``inf`` if either is empty."""
        if not first or not second:
            return math.inf
        if len(first) > len(second):
            first, second = second, first
        return float(self.distance_to_set(first, targets=second).min())

    def closed_neighborhood(self, members, radius: float, within=None) -> frozenset:
        """``{p : d(p, members) <= radius}``, optionally intersected with ``within``."""
        if radius < 0:
            raise ArgumentError(f"negative radius {radius}")
        if not members:
            return self.empty
        row = self.distance_to_set(members, limit=radius)
        found = frozenset(np.flatnonzero(row <= radius).tolist())
        return found if within is None else found & within

    def preimage(self, f: RealValuedFunction, lo: float, hi: float,
                 closed_right: bool = False) -> frozenset:
        """Points with ``f(p)`` in ``[lo, hi)`` (or ``[lo, hi]``)."""
        if lo > hi:
            raise ArgumentError(f"empty interval bounds lo={lo} > hi={hi}")
        values = f.values
        if closed_right:
            mask = (values >= lo) & (values <= hi)
        else:
            mask = (values >= lo) & (values < hi)
        return frozenset(np.flatnonzero(mask).tolist())

    def value_range(self, f: RealValuedFunction) -> tuple[float, float]:
        return float(np.min(f.values)), float(np.max(f.values))

    def distance_probe(self, members, limit: float = np.inf) -> Callable[[Iterable[int]], float]:
        """Precompute ``d(members, .)`` and return ``T -> d(members, T)``.

        With a finite ``limit`` the probe answers ``inf`` for sets farther
        away than ``limit``.
        """
        if not members:
            return lambda other: math.inf
        row = self.distance_to_set(members, limit=limit)

        def probe(other) -> float:
            if not other:
                return math.inf
            return float(row[as_index(other)].min())

        probe.row = row
        return probe

    def lipschitz_constant(self, values: np.ndarray) -> float:
        """Exact ``max |f(p) - f(q)| / d(p, q)`` over distinct pairs, by chunked scan."""
        values = np.asarray(values, dtype=float)
        if self._n < 2:
            return 0.0
        best = 0.0
        everything = np.arange(self._n)
        for start in range(0, self._n, _CHUNK):
            rows = everything[start:start + _CHUNK]
            block = self.distances(rows)
            diff = np.abs(values[rows, None] - values[None, :])
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(block > 0, diff / block, 0.0)
            best = max(best, float(ratio.max()))
        return best

    def check_metric_axioms(self, triples: int | None = None, seed: int = 0,
                            rtol: float = 0.0) -> None:
        """Raise :class:`ConstructionError` if the metric axioms fail.

        With ``triples=None`` every triple is checked (use on small spaces);
        otherwise ``triples`` random pairs ``(p, q)`` are checked against every third point.
        """
        n = self._n
        if triples is None:
            full = self.distances(np.arange(n))
            if np.any(np.diag(full) != 0):
                raise ConstructionError("d(p, p) != 0")
            if not np.array_equal(full, full.T):
                bad = np.argwhere(full != full.T)[0]
                raise ConstructionError(f"asymmetric distance at {tuple(bad)}")
            off = ~np.eye(n, dtype=bool)
            if np.any(full[off] <= 0):
                raise ConstructionError("distinct points at distance 0")
            for q in range(n):
                via = full[:, q, None] + full[None, q, :]
                if np.any(full > via * (1 + rtol)):
                    p, r = np.argwhere(full > via * (1 + rtol))[0]
                    raise ConstructionError(f"triangle inequality fails for ({p}, {q}, {r})")
            return
        rng = np.random.default_rng(seed)
        picks = rng.integers(0, n, size=(triples, 2))
        for p, q in picks:
            from_p = self.distance_to_set([p])
            from_q = self.distance_to_set([q])
            if from_p[p] != 0 or from_p[q] != from_q[p]:
                raise ConstructionError(f"d({p}, {p}) != 0 or asymmetric distance at ({p}, {q})")
            bad = np.flatnonzero(from_p > (from_p[q] + from_q) * (1 + rtol))
            if len(bad):
                raise ConstructionError(f"triangle inequality fails for ({p}, {q}, {bad[0]})")


class GraphMetricSpace(FiniteMetricSpace):
    """Shortest-path metric on the vertices of a connected :class:`WeightedGraph`.

    All-pairs distances are cached lazily when they fit the memory budget:
    float64 up to 5000 points, or a compact unsigned integer matrix when every
    weight is an integer (distances are then exact integers).  Otherwise rows
    are computed on demand with Dijkstra.
    """

    def __init__(self, graph: WeightedGraph, cache: bool | None = None):
        super().__init__(graph.vertex_count)
        self.graph = graph
        best = {}
        for u, v, w in graph.edges:
            key = (u, v) if u < v else (v, u)
            if key not in best or w < best[key]:
                best[key] = w
        if best:
            keys = np.array(list(best.keys()), dtype=np.intp)
            weights = np.array(list(best.values()), dtype=float)
        else:
            keys = np.zeros((0, 2), dtype=np.intp)
            weights = np.zeros(0)
        self._edge_u, self._edge_v, self._edge_w = keys[:, 0], keys[:, 1], weights
        n = graph.vertex_count
        self.csr = sp.csr_matrix((weights, (keys[:, 0], keys[:, 1])), shape=(n, n))
        self._integral = bool(np.all(weights == np.round(weights)))
        self._cache_allowed = cache
        self._matrix = None

    # -- cache ------------------------------------------------------------

    def _cache_dtype(self):
        n = self._n
        if self._cache_allowed is False:
            return None
        if self._integral:
            bound = float(self._edge_w.sum()) if len(self._edge_w) else 0.0
            for dtype in (np.uint16, np.uint32):
                if bound < np.iinfo(dtype).max and n * n * np.dtype(dtype).itemsize <= CACHE_BUDGET:
                    return dtype
        if n <= FLOAT_CACHE_POINTS or self._cache_allowed:
            return np.float64
        return None

    @property
    def matrix(self) -> np.ndarray | None:
        """The cached all-pairs matrix, computed on first access (``None`` if over budget)."""
        if self._matrix is None:
            dtype = self._cache_dtype()
            if dtype is None:
                return None
            n = self._n
            out = np.empty((n, n), dtype=dtype)
            for start in range(0, n, _CHUNK):
                rows = np.arange(start, min(n, start + _CHUNK))
                out[start:start + len(rows)] = dijkstra(self.csr, directed=False, indices=rows)
            self._matrix = out
        return self._matrix

    # -- primitives -----------------------------------------------------

    def distances(self, sources, targets=None, limit: float = np.inf) -> np.ndarray:
        sources = as_index(sources)
        matrix = self.matrix
        if matrix is not None:
            block = matrix[sources] if targets is None else matrix[np.ix_(sources, as_index(targets))]
            return block.astype(float, copy=False)
        block = dijkstra(self.csr, directed=False, indices=sources, limit=limit)
        block = np.atleast_2d(block)
        return block if targets is None else block[:, as_index(targets)]

    def distance_to_set(self, members, targets=None, limit: float = np.inf) -> np.ndarray:
        idx = as_index(members)
        if len(idx) == 0:
            size = self._n if targets is None else len(as_index(targets))
            return np.full(size, np.inf)
        if self._matrix is not None and len(idx) * self._n <= 4_000_000:
            row = self._matrix[idx].min(axis=0).astype(float)
        else:
            row = dijkstra(self.csr, directed=False, indices=idx, min_only=True, limit=limit)
        return row if targets is None else row[as_index(targets)]

    def subset_diameter(self, members) -> float:
        if len(members) < 2:
            return 0.0
        if self.matrix is not None:
            return super().subset_diameter(members)
        # without a cache, bound the search radius by twice one eccentricity
        idx = as_index(members)
        ecc = float(self.distance_to_set(idx[:1], targets=idx).max())
        limit = 2 * ecc
        best = 0.0
        for start in range(0, len(idx), _CHUNK):
            block = dijkstra(self.csr, directed=False, indices=idx[start:start + _CHUNK], limit=limit)
            best = max(best, float(np.atleast_2d(block)[:, idx].max()))
        return best

    def lipschitz_constant(self, values: np.ndarray) -> float:
        # on a path metric the worst ratio is attained along an edge
        values = np.asarray(values, dtype=float)
        if self._n < 2 or len(self._edge_w) == 0:
            return 0.0
        diff = np.abs(values[self._edge_u] - values[self._edge_v])
        return float((diff / self._edge_w).max())


def build_graph_metric(graph: WeightedGraph, cache: bool | None = None) -> GraphMetricSpace:
    """Shortest-path metric of a connected graph.

    Raises
    ------
    ConstructionError
        If the graph is disconnected; the message names two vertices in
        different components.
    """
    n = graph.vertex_count
    space = GraphMetricSpace(graph, cache=cache)
    if n > 1:
        count, labels = connected_components(space.csr, directed=False)
        if count > 1:
            other = int(np.flatnonzero(labels != labels[0])[0])
            raise ConstructionError(f"graph is disconnected: vertices 0 and {other} are not connected")
    if n > 2:
        space.check_metric_axioms(triples=min(32, n), rtol=1e-12)
    return space
