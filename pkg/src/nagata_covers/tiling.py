"""Regular hyperbolic tilings ``{p, q}`` grown face by face.

Faces live in the Poincaré disk.  The central ``p``-gon has circumradius
``R`` with ``cosh R = cot(pi/p) cot(pi/q)``; every other face is the mirror
image of a face one layer further in, reflected across a shared edge.
Depth counts these layers (depth 0 is the central face alone).  Vertices are
stored in Klein coordinates, where geodesics are straight, so the drawing is
a crossing-free straight-line embedding.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial import cKDTree

from .errors import ArgumentError
from .metric import WeightedGraph
from .planar import PlanarGraph

__all__ = ["gen_hyperbolic_tiling", "central_circumradius"]

# points closer than this in the disk are the same point
_MERGE = 1e-6


def central_circumradius(p: int, q: int) -> float:
    return math.acosh(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)))


def _reflect(points: np.ndarray, a: complex, b: complex) -> np.ndarray:
    """Mirror ``points`` across the hyperbolic geodesic through ``a`` and ``b``."""
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-14 * max(abs(a), abs(b), 1e-300) ** 2:
        # geodesic through the origin: a Euclidean line
        theta = np.angle(a) if abs(a) > abs(b) else np.angle(b)
        return np.exp(2j * theta) * np.conj(points)
    # circle through a and b orthogonal to the unit circle: |c|^2 = rho^2 + 1
    # |c - a|^2 = |c|^2 - 1  =>  2 Re(conj(c) a) = |a|^2 + 1, same for b
    m = np.array([[a.real, a.imag], [b.real, b.imag]])
    rhs = np.array([abs(a) ** 2 + 1, abs(b) ** 2 + 1]) / 2
    cx, cy = np.linalg.solve(m, rhs)
    c = complex(cx, cy)
    rho2 = abs(c) ** 2 - 1
    return c + rho2 / np.conj(points - c)


def gen_hyperbolic_tiling(p: int, q: int, depth: int) -> PlanarGraph:
    """Unit-length edge graph of the ``{p, q}`` tiling grown to ``depth`` face layers."""
    if p < 3 or q < 3 or depth < 0:
        raise ArgumentError(f"need p, q >= 3 and depth >= 0, got p={p}, q={q}, depth={depth}")
    if not 1 / p + 1 / q < 1 / 2:
        raise ArgumentError(f"{{{p},{q}}} is not hyperbolic: 1/p + 1/q must be < 1/2")
    rho = math.tanh(central_circumradius(p, q) / 2)
    angles = 2 * math.pi * np.arange(p) / p
    first = np.append(rho * np.exp(1j * angles), 0j)  # last entry is the face center
    faces = [first]
    frontier = [first]
    centers = [0j]
    for _ in range(depth):
        tree = cKDTree(np.column_stack([np.real(centers), np.imag(centers)]))
        fresh = []
        fresh_centers = []
        for face in frontier:
            for k in range(p):
                image = _reflect(face, complex(face[k]), complex(face[(k + 1) % p]))
                center = image[-1]
                if tree.query([center.real, center.imag])[0] < _MERGE:
                    continue
                if any(abs(center - other) < _MERGE for other in fresh_centers):
                    continue
                fresh.append(image)
                fresh_centers.append(center)
        faces += fresh
        centers += fresh_centers
        frontier = fresh
    corners = np.concatenate([face[:p] for face in faces])
    xy = np.column_stack([corners.real, corners.imag])
    merge = DisjointSet(range(len(xy)))
    for i, j in cKDTree(xy).query_pairs(_MERGE):
        merge.merge(i, j)
    roots = sorted({merge[i] for i in range(len(xy))})
    ids = {root: k for k, root in enumerate(roots)}
    label = np.array([ids[merge[i]] for i in range(len(xy))])
    pairs = set()
    for f in range(len(faces)):
        idx = label[f * p:(f + 1) * p]
        for k in range(p):
            u, v = int(idx[k]), int(idx[(k + 1) % p])
            pairs.add((min(u, v), max(u, v)))
    disk = xy[roots]
    klein = 2 * disk / (1 + (disk ** 2).sum(axis=1, keepdims=True))
    edges = tuple((u, v, 1.0) for u, v in sorted(pairs))
    return PlanarGraph(WeightedGraph(len(roots), edges), klein, name=f"tiling-{p}-{q}-{depth}")
