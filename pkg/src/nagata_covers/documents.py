"""Reading and writing graph, sample, cover and certificate documents.

Documents are JSON with sorted keys and compact separators, so equal
content gives byte-identical files.  Infinite separations are written as
``null``.  Graphs may also be read from a whitespace edge list ``u v w``.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path

import numpy as np

from .covers import ColoredCover, CoverCertificate
from .errors import ArgumentError
from .hyperbolic import UpperHalfSpaceSample
from .metric import WeightedGraph
from .planar import PlanarGraph

__all__ = [
    "dumps",
    "graph_to_dict",
    "graph_from_dict",
    "read_edge_list",
    "sample_to_dict",
    "sample_from_dict",
    "cover_to_dict",
    "cover_from_dict",
    "load_space_document",
    "read_document",
    "write_document",
]

log = logging.getLogger(__name__)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if math.isinf(value) or math.isnan(value) else value
    return obj


def dumps(doc: dict) -> str:
    return json.dumps(_plain(doc), sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def write_document(doc: dict, path=None) -> str:
    text = dumps(doc)
    if path is not None:
        Path(path).write_text(text)
    return text


def read_document(path) -> dict:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"{path}: not a JSON document ({exc})") from None
    if not isinstance(doc, dict):
        raise ArgumentError(f"{path}: expected a JSON object")
    return doc


# -- graphs ------------------------------------------------------------------

def graph_to_dict(pg: PlanarGraph) -> dict:
    doc = {
        "vertex_count": pg.vertex_count,
        "edges": [[u, v, w] for u, v, w in pg.graph.edges],
    }
    if pg.embedding is not None:
        doc["coords"] = pg.embedding.tolist()
    if pg.name:
        doc["name"] = pg.name
    return doc


def graph_from_dict(doc: dict) -> PlanarGraph:
    for key in ("vertex_count", "edges"):
        if key not in doc:
            raise ArgumentError(f"graph document is missing field '{key}'")
    edges = []
    for e in doc["edges"]:
        if len(e) not in (2, 3):
            raise ArgumentError(f"edge {e!r} must be [u, v] or [u, v, w]")
        edges.append((int(e[0]), int(e[1]), float(e[2]) if len(e) == 3 else 1.0))
    graph = WeightedGraph(int(doc["vertex_count"]), tuple(edges))
    if doc.get("coords") is not None:
        log.warning("embedding read from input is trusted, not checked for crossings")
    return PlanarGraph(graph, doc.get("coords"), name=doc.get("name"))


def read_edge_list(text: str) -> PlanarGraph:
    """Parse ``u v [w]`` lines (``#`` starts a comment); vertices are 0-based."""
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ArgumentError(f"line {lineno}: expected 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ArgumentError(f"line {lineno}: cannot parse {line!r}") from None
        edges.append((u, v, w))
        top = max(top, u, v)
    if top < 0:
        raise ArgumentError("edge list is empty")
    return PlanarGraph(WeightedGraph(top + 1, tuple(edges)))


# -- samples -----------------------------------------------------------------

def sample_to_dict(sample: UpperHalfSpaceSample) -> dict:
    return {
        "model": "upper-half-space",
        "points": sample.coords.tolist(),
        "seed": sample.seed,
        "box": [list(side) for side in sample.box] if sample.box is not None else None,
    }


def sample_from_dict(doc: dict) -> UpperHalfSpaceSample:
    if "points" not in doc:
        raise ArgumentError("sample document is missing field 'points'")
    box = doc.get("box")
    box = tuple(tuple(side) for side in box) if box is not None else None
    return UpperHalfSpaceSample(doc["points"], seed=doc.get("seed"), box=box)


def load_space_document(path):
    """Return a :class:`PlanarGraph` or :class:`UpperHalfSpaceSample` from ``path``."""
    text = Path(path).read_text()
    if not text.lstrip().startswith("{"):
        return read_edge_list(text)
    doc = read_document(path)
    if "points" in doc:
        return sample_from_dict(doc)
    return graph_from_dict(doc)


# -- covers ------------------------------------------------------------------

def cover_to_dict(cover: ColoredCover, s: float, certificate: CoverCertificate,
                  measured: dict | None = None, model: str | None = None) -> dict:
    """Colors are numbered from 1; points and sets are sorted."""
    doc = {
        "domain": sorted(cover.domain),
        "s": float(s),
        "classes": [
            {"color": i + 1, "sets": sorted(sorted(m) for m in cls)}
            for i, cls in enumerate(cover.classes)
        ],
        "certificate": certificate.to_dict(),
    }
    if measured is not None:
        doc["measured"] = measured
    if model is not None:
        doc["model"] = model
    return doc


def cover_from_dict(doc: dict) -> tuple[ColoredCover, float, CoverCertificate | None]:
    for key in ("domain", "s", "classes"):
        if key not in doc:
            raise ArgumentError(f"cover document is missing field '{key}'")
    classes = sorted(doc["classes"], key=lambda c: c["color"])
    colors = [c["color"] for c in classes]
    if colors != list(range(1, len(classes) + 1)):
        raise ArgumentError(f"cover colors must be 1..m, got {colors}")
    cover = ColoredCover(doc["domain"], tuple(tuple(c["sets"]) for c in classes))
    cert = doc.get("certificate")
    return cover, float(doc["s"]), CoverCertificate.from_dict(cert) if cert is not None else None
