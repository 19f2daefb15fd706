"""Line-oriented text serialization of separatrix diagrams (".sdg").

The grammar is small and diff friendly:

    surface <disk|annulus|pants>
    vertex <id> <type>
    rot <id>: <dart> <dart> ...        counterclockwise rotation
    edge <dart> <dart> <boundary|sep|conn> from <dart>
    hole <face-least-dart>
    # comment

Printing emits the canonical whitespace form (rotations start at their
least dart, ids ascend), so ``parse(print(d)) == d`` on valid diagrams and
``print(parse(text))`` normalizes any accepted text.
"""

from __future__ import annotations

from .diagram import (
    EdgeKind,
    EdgeRecord,
    SeparatrixDiagram,
    Surface,
    VertexType,
    surface_of,
)
from .mapcore import CombMap, MapError


class SdgParseError(ValueError):
    """Raised with a line number when the text is not a valid diagram."""


_VTYPES = {t.value: t for t in VertexType}
_EKINDS = {k.value: k for k in EdgeKind}


def print_diagram(d: SeparatrixDiagram) -> str:
    lines = ["surface %s" % surface_of(d).value]
    for vid, vtype in enumerate(d.vtypes):
        lines.append("vertex %d %s" % (vid, vtype.value))
    for vid, cycle in enumerate(d.cmap.vertices):
        lines.append("rot %d: %s" % (vid, " ".join(map(str, cycle))))
    for eid, (a, b) in enumerate(d.cmap.edges):
        rec = d.edges[eid]
        lines.append("edge %d %d %s from %d" % (a, b, rec.kind.value,
                                                rec.origin))
    for face in sorted(d.holes):
        lines.append("hole %d" % min(d.cmap.faces[face]))
    return "\n".join(lines) + "\n"


def _fail(lineno: int, msg: str) -> SdgParseError:
    return SdgParseError("line %d: %s" % (lineno, msg))


def parse_diagram(text: str) -> SeparatrixDiagram:
    surface: Surface | None = None
    vtype_by_id: dict[int, VertexType] = {}
    cycle_by_id: dict[int, list[int]] = {}
    edge_lines: list[tuple[int, int, EdgeKind, int]] = []
    hole_darts: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "surface":
                surface = Surface(parts[1])
            elif key == "vertex":
                vid = int(parts[1])
                if vid in vtype_by_id:
                    raise _fail(lineno, "duplicate vertex %d" % vid)
                vtype_by_id[vid] = _VTYPES[parts[2]]
            elif key == "rot":
                if not parts[1].endswith(":"):
                    raise _fail(lineno, "rot wants 'rot <id>:'")
                vid = int(parts[1][:-1])
                if vid in cycle_by_id:
                    raise _fail(lineno, "duplicate rotation %d" % vid)
                cycle_by_id[vid] = [int(p) for p in parts[2:]]
            elif key == "edge":
                if len(parts) != 6 or parts[4] != "from":
                    raise _fail(lineno, "edge wants 'edge a b kind from d'")
                edge_lines.append((int(parts[1]), int(parts[2]),
                                   _EKINDS[parts[3]], int(parts[5])))
            elif key == "hole":
                hole_darts.extend(int(p) for p in parts[1:])
            else:
                raise _fail(lineno, "unknown keyword %r" % key)
        except SdgParseError:
            raise
        except (ValueError, KeyError, IndexError) as exc:
            raise _fail(lineno, "cannot read %r (%s)" % (line, exc)) from exc

    if surface is None:
        raise SdgParseError("missing surface line")
    if vtype_by_id.keys() != cycle_by_id.keys():
        raise SdgParseError("vertex and rot ids do not match")

    darts = [dd for c in cycle_by_id.values() for dd in c]
    n = len(darts)
    if sorted(darts) != list(range(n)):
        raise SdgParseError("rotations must cover darts 0..%d once" % (n - 1))
    sigma = [0] * n
    for cycle in cycle_by_id.values():
        for i, dd in enumerate(cycle):
            sigma[dd] = cycle[(i + 1) % len(cycle)]
    alpha = [-1] * n
    kind_from: dict[tuple[int, int], tuple[EdgeKind, int]] = {}
    for a, b, kind, origin in edge_lines:
        if not (0 <= a < n and 0 <= b < n) or alpha[a] != -1 or alpha[b] != -1:
            raise SdgParseError("edge %d %d reuses or misses a dart" % (a, b))
        if origin not in (a, b):
            raise SdgParseError("edge %d %d: origin %d is not an endpoint"
                                % (a, b, origin))
        alpha[a], alpha[b] = b, a
        kind_from[tuple(sorted((a, b)))] = (kind, origin)
    if -1 in alpha:
        raise SdgParseError("dart %d has no edge" % alpha.index(-1))

    try:
        cmap = CombMap(sigma, alpha)
    except MapError as exc:
        raise SdgParseError(str(exc)) from exc

    # file vertex ids must agree with the orbit order of sigma so that
    # printing is a left inverse of parsing
    vtypes = []
    for vid, orbit in enumerate(cmap.vertices):
        file_vid = next((v for v, c in cycle_by_id.items()
                         if set(c) == set(orbit)), None)
        if file_vid != vid:
            raise SdgParseError(
                "vertex ids must ascend with their least dart")
        vtypes.append(vtype_by_id[vid])
    edges = tuple(EdgeRecord(*kind_from[pair]) for pair in cmap.edges)
    holes = set()
    for dd in hole_darts:
        if not 0 <= dd < n:
            raise SdgParseError("hole dart %d out of range" % dd)
        holes.add(cmap.face_of[dd])

    d = SeparatrixDiagram(cmap, vtypes, edges, holes)
    if surface_of(d) is not surface:
        raise SdgParseError("declared surface %s but holes describe %s"
                            % (surface.value, surface_of(d).value))
    return d


def write_file(d: SeparatrixDiagram, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(print_diagram(d))


def read_file(path: str) -> SeparatrixDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())
