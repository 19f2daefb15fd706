"""Graph renderings of separatrix diagrams: DOT text and plain SVG.

Colors follow the usual drawing convention: stable separatrices (into a
saddle) red, unstable ones (out of a saddle) green, saddle connections
black, boundary arcs bold.  The SVG embedder is intentionally minimal: it
places vertices on a circle in id order and draws straight edges, which is
deterministic and dependency free, not a planar embedding.
"""

from __future__ import annotations

import math

from .diagram import (
    EdgeKind,
    SADDLE_TYPES,
    SeparatrixDiagram,
    VertexType,
)

_SHAPE = {
    VertexType.I_SOURCE: "circle",
    VertexType.I_SINK: "doublecircle",
    VertexType.I_SADDLE: "diamond",
    VertexType.B_SOURCE: "box",
    VertexType.B_SINK: "box",
    VertexType.B_SADDLE_REP: "trapezium",
    VertexType.B_SADDLE_ATT: "invtrapezium",
}


def edge_color(d: SeparatrixDiagram, eid: int) -> str:
    """red for stable, green for unstable, black otherwise."""
    rec = d.edges[eid]
    if rec.kind is not EdgeKind.SEPARATRIX:
        return "black"
    upstream = d.vtype_of_dart(rec.origin)
    return "green" if upstream in SADDLE_TYPES else "red"


def _hole_members(d: SeparatrixDiagram) -> list[list[int]]:
    members = []
    for face in sorted(d.holes):
        seen = []
        for dart in d.cmap.faces[face]:
            vid = d.cmap.vertex_of[dart]
            if vid not in seen:
                seen.append(vid)
        members.append(seen)
    return members


def diagram_to_dot(d: SeparatrixDiagram) -> str:
    lines = ["digraph separatrix {"]
    clustered = set()
    for i, members in enumerate(_hole_members(d)):
        lines.append("  subgraph cluster_hole_%d {" % i)
        lines.append('    label="hole %d";' % i)
        for vid in members:
            lines.append('    v%d [shape=%s, label="%d %s"];'
                         % (vid, _SHAPE[d.vtypes[vid]], vid,
                            d.vtypes[vid].value))
            clustered.add(vid)
        lines.append("  }")
    for vid, vtype in enumerate(d.vtypes):
        if vid not in clustered:
            lines.append('  v%d [shape=%s, label="%d %s"];'
                         % (vid, _SHAPE[vtype], vid, vtype.value))
    for eid, rec in enumerate(d.edges):
        tail = d.cmap.vertex_of[rec.origin]
        head = d.cmap.vertex_of[d.cmap.alpha[rec.origin]]
        attrs = ["color=%s" % edge_color(d, eid)]
        if rec.kind is EdgeKind.BOUNDARY_ARC:
            attrs.append("style=bold")
        lines.append("  v%d -> v%d [%s];" % (tail, head, ", ".join(attrs)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _positions(d: SeparatrixDiagram, size: float) -> list[tuple[float, float]]:
    n = d.n_vertices
    r = size * 0.4
    cx = cy = size / 2
    return [(cx + r * math.cos(2 * math.pi * k / n - math.pi / 2),
             cy + r * math.sin(2 * math.pi * k / n - math.pi / 2))
            for k in range(n)]


def diagram_to_svg(d: SeparatrixDiagram, size: float = 400.0) -> str:
    pos = _positions(d, size)
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%g" height="%g" '
           'viewBox="0 0 %g %g">' % (size, size, size, size)]
    drawn: dict[tuple[int, int], int] = {}
    for eid, rec in enumerate(d.edges):
        tail = d.cmap.vertex_of[rec.origin]
        head = d.cmap.vertex_of[d.cmap.alpha[rec.origin]]
        x1, y1 = pos[tail]
        x2, y2 = pos[head]
        # bow parallel edges (and loops) apart so they stay distinguishable
        bend = drawn.get((min(tail, head), max(tail, head)), 0)
        drawn[(min(tail, head), max(tail, head))] = bend + 1
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        nx, ny = -(y2 - y1), (x2 - x1)
        norm = math.hypot(nx, ny) or 1.0
        off = (bend + 1) * 0.12 * (size * 0.1 if tail == head else 1.0)
        cx = mx + nx / norm * off * (40 if tail != head else 1)
        cy = my + ny / norm * off * (40 if tail != head else 1)
        if tail == head:
            cx, cy = x1 + off * 3, y1 - off * 3
        width = 4 if rec.kind is EdgeKind.BOUNDARY_ARC else 2
        out.append('<path d="M %g %g Q %g %g %g %g" stroke="%s" '
                   'stroke-width="%d" fill="none"/>'
                   % (x1, y1, cx, cy, x2, y2, edge_color(d, eid), width))
    for vid, (x, y) in enumerate(pos):
        boundary = d.vtypes[vid] not in (VertexType.I_SOURCE,
                                         VertexType.I_SINK,
                                         VertexType.I_SADDLE)
        out.append('<circle cx="%g" cy="%g" r="10" fill="%s" '
                   'stroke="black"/>' % (x, y,
                                         "white" if boundary else "gray"))
        out.append('<text x="%g" y="%g" font-size="11" '
                   'text-anchor="middle">%d</text>' % (x, y + 4, vid))
    out.append("</svg>")
    return "\n".join(out) + "\n"
