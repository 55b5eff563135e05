"""SVG and Graphviz DOT drawings of graphs with cover sets."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .covers import ColoredCover
from .errors import ArgumentError

__all__ = ["PALETTE", "to_svg", "to_dot"]

PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")


def _color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def _opacity(k: int) -> float:
    # golden-ratio steps keep neighbouring sets of one color distinguishable
    return round(0.25 + 0.35 * ((k * 0.6180339887) % 1.0), 3)


def to_svg(coords, edges=(), cover: ColoredCover | None = None, size: int = 800) -> str:
    """Draw the embedding; each cover set is the filled hull of its points.

    One fill color per cover color, a distinct opacity per set.
    """
    if coords is None:
        raise ArgumentError("cannot draw without an embedding (missing field 'coords')")
    xy = np.asarray(coords, dtype=float).reshape(-1, 2)
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    margin = 0.04 * size
    scale = (size - 2 * margin) / span
    px = margin + (xy[:, 0] - lo[0]) * scale
    py = size - margin - (xy[:, 1] - lo[1]) * scale
    radius = max(1.0, min(4.0, 0.3 * scale))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    if cover is not None:
        for k, (color, members) in enumerate(cover.sets()):
            idx = np.array(sorted(members))
            fill, alpha = _color(color), _opacity(k)
            pts = np.column_stack([px[idx], py[idx]])
            hull = None
            if len(idx) >= 3:
                try:
                    hull = ConvexHull(pts).vertices
                except QhullError:
                    hull = None
            out.append(f'<g class="set" data-color="{color + 1}" fill="{fill}" '
                       f'fill-opacity="{alpha}" stroke="{fill}">')
            if hull is not None:
                path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts[hull])
                out.append(f'<polygon points="{path}"/>')
            else:
                out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{2 * radius:.2f}"/>' for x, y in pts)
            out.append("</g>")
    out.append('<g stroke="#444" stroke-width="0.6">')
    out.extend(f'<line x1="{px[u]:.2f}" y1="{py[u]:.2f}" x2="{px[v]:.2f}" y2="{py[v]:.2f}"/>'
               for u, v, *_ in edges)
    out.append("</g>")
    out.append('<g fill="#222">')
    out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius:.2f}"/>' for x, y in zip(px, py))
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


def to_dot(vertex_count: int, edges, coords=None, cover: ColoredCover | None = None,
           name: str = "G") -> str:
    """Undirected DOT graph; vertices are filled with the color of their first set."""
    first = {}
    if cover is not None:
        for color, members in cover.sets():
            for p in members:
                first.setdefault(p, color)
    lines = [f'graph "{escape(name)}" {{', "  node [shape=circle, style=filled, label=\"\"];"]
    for v in range(vertex_count):
        attrs = [f'fillcolor="{_color(first[v])}"' if v in first else 'fillcolor="white"']
        if coords is not None:
            x, y = coords[v]
            attrs.append(f'pos="{x:.6g},{y:.6g}!"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v, w in edges:
        lines.append(f'  {u} -- {v} [weight="{w:g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
