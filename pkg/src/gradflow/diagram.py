"""Typed separatrix diagrams over combinatorial maps.

A diagram models a gradient flow on a sphere with 1-3 holes.  The surface
is closed up: every boundary circle is capped by a distinguished *hole
face*, so the underlying map always lives on the sphere (Euler
characteristic 2) and all faces are disks.

Edge colors are never stored; they are derived from direction and endpoint
types (into a saddle = stable/red, out of a saddle = unstable/green,
saddle-to-saddle = connection/black).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .mapcore import CombMap, MapError, euler_characteristic
from .mapcore import mirror as mirror_map
from .mapcore import relabel as relabel_map


class VertexType(Enum):
    I_SOURCE = "iSource"
    I_SINK = "iSink"
    I_SADDLE = "iSaddle"
    B_SOURCE = "bSource"
    B_SINK = "bSink"
    B_SADDLE_REP = "bSaddleRep"
    B_SADDLE_ATT = "bSaddleAtt"


SADDLE_TYPES = frozenset({VertexType.I_SADDLE, VertexType.B_SADDLE_REP,
                          VertexType.B_SADDLE_ATT})
BOUNDARY_TYPES = frozenset({VertexType.B_SOURCE, VertexType.B_SINK,
                            VertexType.B_SADDLE_REP, VertexType.B_SADDLE_ATT})
NODE_TYPES = frozenset({VertexType.I_SOURCE, VertexType.I_SINK,
                        VertexType.B_SOURCE, VertexType.B_SINK})
SOURCE_TYPES = frozenset({VertexType.I_SOURCE, VertexType.B_SOURCE})
SINK_TYPES = frozenset({VertexType.I_SINK, VertexType.B_SINK})
# emitters/absorbers of the flow restricted to a boundary circle
EMITTER_TYPES = frozenset({VertexType.B_SOURCE, VertexType.B_SADDLE_REP})
ABSORBER_TYPES = frozenset({VertexType.B_SINK, VertexType.B_SADDLE_ATT})

#: contribution of each vertex type to the doubled Poincare index sum
DOUBLED_INDEX = {
    VertexType.I_SOURCE: 2,
    VertexType.I_SINK: 2,
    VertexType.I_SADDLE: -2,
    VertexType.B_SOURCE: 1,
    VertexType.B_SINK: 1,
    VertexType.B_SADDLE_REP: -1,
    VertexType.B_SADDLE_ATT: -1,
}


class EdgeKind(Enum):
    BOUNDARY_ARC = "boundary"
    SEPARATRIX = "sep"
    CONNECTION = "conn"


@dataclass(frozen=True)
class EdgeRecord:
    """Edge kind plus flow direction: the flow runs away from ``origin``."""
    kind: EdgeKind
    origin: int  # dart id at the upstream endpoint


class Surface(Enum):
    DISK = "disk"
    ANNULUS = "annulus"
    PANTS = "pants"

    @property
    def holes(self) -> int:
        return {"disk": 1, "annulus": 2, "pants": 3}[self.value]

    @property
    def doubled_index(self) -> int:
        # 2 * chi(surface) with chi = 2 - holes
        return 2 * (2 - self.holes)


class UnsupportedSurface(ValueError):
    pass


class IsHoleFace(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[str, str], ...]

    def __bool__(self) -> bool:
        return self.ok


class SeparatrixDiagram:
    """A combinatorial map plus vertex types, edge records and hole faces.

    Immutable; all operations return new diagrams.
    """

    __slots__ = ("cmap", "vtypes", "edges", "holes")

    def __init__(self, cmap: CombMap, vtypes, edges, holes):
        if len(vtypes) != len(cmap.vertices):
            raise ValueError("need one vertex type per vertex")
        if len(edges) != len(cmap.edges):
            raise ValueError("need one edge record per edge")
        self.cmap = cmap
        self.vtypes = tuple(vtypes)
        self.edges = tuple(edges)
        self.holes = frozenset(holes)
        for f in self.holes:
            if not 0 <= f < len(cmap.faces):
                raise ValueError("hole %r is not a face id" % (f,))
        for i, e in enumerate(self.edges):
            if e.origin not in cmap.edges[i]:
                raise ValueError("edge %d origin dart %d not on that edge" % (i, e.origin))

    # -- basic accessors ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.cmap.vertices)

    def vtype_of_dart(self, d: int) -> VertexType:
        return self.vtypes[self.cmap.vertex_of[d]]

    def edge_record_of_dart(self, d: int) -> EdgeRecord:
        return self.edges[self.cmap.edge_of[d]]

    def kind_of_dart(self, d: int) -> EdgeKind:
        return self.edge_record_of_dart(d).kind

    def dart_is_out(self, d: int) -> bool:
        """True if the flow leaves the vertex of ``d`` along this edge."""
        return self.edge_record_of_dart(d).origin == d

    def dart_on_hole(self, d: int) -> bool:
        return self.cmap.face_of[d] in self.holes

    def edge_endpoints(self, edge_id: int) -> tuple[int, int]:
        a, b = self.cmap.edges[edge_id]
        return self.cmap.vertex_of[a], self.cmap.vertex_of[b]

    def connection_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.kind is EdgeKind.CONNECTION]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SeparatrixDiagram) and self.cmap == other.cmap
                and self.vtypes == other.vtypes and self.edges == other.edges
                and self.holes == other.holes)

    def __hash__(self) -> int:
        return hash((self.cmap, self.vtypes, self.edges, self.holes))


# -- derived quantities ----------------------------------------------------

def doubled_index_sum(d: SeparatrixDiagram) -> int:
    return sum(DOUBLED_INDEX[t] for t in d.vtypes)


def surface_of(d: SeparatrixDiagram) -> Surface:
    h = len(d.holes)
    if h == 1:
        return Surface.DISK
    if h == 2:
        return Surface.ANNULUS
    if h == 3:
        return Surface.PANTS
    raise UnsupportedSurface("diagram has %d holes; supported range is 1..3" % h)


@dataclass(frozen=True)
class FaceWord:
    """Cyclic word of a face over {F, B} plus the corner vertices.

    ``word[i]`` describes the i-th dart of the face cycle: F when the walk
    traverses the edge with the flow, B against it.  ``corners[i]`` is the
    vertex between positions i and i+1 (cyclically).
    """
    darts: tuple[int, ...]
    word: str
    corners: tuple[int, ...]

    def alternations(self) -> int:
        k = len(self.word)
        return sum(self.word[i] != self.word[(i + 1) % k] for i in range(k))

    def corner_after(self, i: int) -> int:
        return self.corners[i]


def face_word(d: SeparatrixDiagram, face_id: int) -> FaceWord:
    if face_id in d.holes:
        raise IsHoleFace("face %d is a hole face" % face_id)
    return _face_word_unchecked(d, face_id)


def _face_word_unchecked(d: SeparatrixDiagram, face_id: int) -> FaceWord:
    darts = d.cmap.faces[face_id]
    word = "".join("F" if d.dart_is_out(x) else "B" for x in darts)
    k = len(darts)
    corners = tuple(d.cmap.vertex_of[darts[(i + 1) % k]] for i in range(k))
    return FaceWord(darts, word, corners)


# -- flow operations --------------------------------------------------------

_REVERSED_TYPE = {
    VertexType.I_SOURCE: VertexType.I_SINK,
    VertexType.I_SINK: VertexType.I_SOURCE,
    VertexType.I_SADDLE: VertexType.I_SADDLE,
    VertexType.B_SOURCE: VertexType.B_SINK,
    VertexType.B_SINK: VertexType.B_SOURCE,
    VertexType.B_SADDLE_REP: VertexType.B_SADDLE_ATT,
    VertexType.B_SADDLE_ATT: VertexType.B_SADDLE_REP,
}


def reverse_flow(d: SeparatrixDiagram) -> SeparatrixDiagram:
    """Reverse every trajectory: flip edge directions and dual the types."""
    vtypes = tuple(_REVERSED_TYPE[t] for t in d.vtypes)
    edges = tuple(EdgeRecord(e.kind, d.cmap.alpha[e.origin]) for e in d.edges)
    return SeparatrixDiagram(d.cmap, vtypes, edges, d.holes)


def mirror_diagram(d: SeparatrixDiagram) -> SeparatrixDiagram:
    """Orientation-reversing copy; flow data is unchanged."""
    m = mirror_map(d.cmap)
    # sigma-orbits are equal as sets, so vertex ids carry over; alpha is
    # unchanged, so edge ids carry over.  Faces move: the mirrored face
    # through alpha(x) plays the role of the original face through x.
    holes = frozenset(m.face_of[d.cmap.alpha[d.cmap.faces[f][0]]] for f in d.holes)
    return SeparatrixDiagram(m, d.vtypes, d.edges, holes)


def relabel_diagram(d: SeparatrixDiagram, perm) -> SeparatrixDiagram:
    """Apply a dart relabeling (old -> new) to the whole diagram."""
    m = relabel_map(d.cmap, perm)
    vtypes = [None] * len(m.vertices)
    for old_vid, orb in enumerate(d.cmap.vertices):
        vtypes[m.vertex_of[perm[orb[0]]]] = d.vtypes[old_vid]
    edges = [None] * len(m.edges)
    for old_eid, (a, _) in enumerate(d.cmap.edges):
        rec = d.edges[old_eid]
        edges[m.edge_of[perm[a]]] = EdgeRecord(rec.kind, perm[rec.origin])
    holes = frozenset(m.face_of[perm[d.cmap.faces[f][0]]] for f in d.holes)
    return SeparatrixDiagram(m, vtypes, edges, holes)


# -- validation --------------------------------------------------------------

def _boundary_darts(d: SeparatrixDiagram, vid: int) -> list[int]:
    return [x for x in d.cmap.vertices[vid]
            if d.kind_of_dart(x) is EdgeKind.BOUNDARY_ARC]


def validate(d: SeparatrixDiagram, codim: int | None = None) -> ValidationReport:
    """Run the full rule set V1..V9 and collect violations.

    ``codim`` pins the expected number of connection edges (0 or 1); when
    None, either count is accepted.
    """
    v: list[tuple[str, str]] = []
    cmap = d.cmap

    # V1: map validity and connectivity are enforced by the CombMap
    # constructor; re-assert the involution property defensively.
    try:
        for x in range(cmap.ndarts):
            if cmap.alpha[cmap.alpha[x]] != x or cmap.alpha[x] == x:
                raise MapError("alpha broken at dart %d" % x)
    except MapError as exc:
        v.append(("V1", str(exc)))

    # V2: hole faces are pure boundary arcs; every boundary arc touches
    # exactly one hole face; 1 <= h <= 3.
    h = len(d.holes)
    if not 1 <= h <= 3:
        v.append(("V2", "hole count %d outside 1..3" % h))
    for f in d.holes:
        for x in cmap.faces[f]:
            if d.kind_of_dart(x) is not EdgeKind.BOUNDARY_ARC:
                v.append(("V2", "hole face %d contains non-boundary dart %d" % (f, x)))
                break
    for eid, rec in enumerate(d.edges):
        if rec.kind is EdgeKind.BOUNDARY_ARC:
            a, b = cmap.edges[eid]
            n_on_hole = d.dart_on_hole(a) + d.dart_on_hole(b)
            if n_on_hole != 1:
                v.append(("V2", "boundary arc %d lies on %d hole faces" % (eid, n_on_hole)))

    # V3: sphere closure.
    chi = euler_characteristic(cmap)
    if chi != 2:
        v.append(("V3", "Euler characteristic of the closure is %d, not 2" % chi))

    # V4: local vertex rules and edge endpoint rules.
    for vid, t in enumerate(d.vtypes):
        darts = cmap.vertices[vid]
        outs = [d.dart_is_out(x) for x in darts]
        kinds = [d.kind_of_dart(x) for x in darts]
        bnd = [k is EdgeKind.BOUNDARY_ARC for k in kinds]
        where = "vertex %d (%s)" % (vid, t.value)
        if t is VertexType.I_SOURCE:
            if not all(outs) or any(bnd):
                v.append(("V4", where + ": interior source needs all darts outgoing separatrices"))
        elif t is VertexType.I_SINK:
            if any(outs) or any(bnd):
                v.append(("V4", where + ": interior sink needs all darts incoming separatrices"))
        elif t is VertexType.I_SADDLE:
            if len(darts) != 4 or any(bnd):
                v.append(("V4", where + ": interior saddle needs exactly 4 interior darts"))
            elif sum(outs) != 2:
                v.append(("V4", where + ": interior saddle needs 2 in and 2 out darts"))
        else:
            b = [x for x, isb in zip(darts, bnd) if isb]
            interior = [x for x, isb in zip(darts, bnd) if not isb]
            if len(b) != 2:
                v.append(("V4", where + ": boundary vertex needs exactly 2 boundary darts"))
                continue
            emit = t in EMITTER_TYPES
            if any(d.dart_is_out(x) != emit for x in b):
                v.append(("V4", where + ": boundary darts must all flow %s" %
                          ("out" if emit else "in")))
            if t is VertexType.B_SADDLE_REP and not (
                    len(interior) == 1 and not d.dart_is_out(interior[0])):
                v.append(("V4", where + ": needs exactly one incoming interior dart"))
            if t is VertexType.B_SADDLE_ATT and not (
                    len(interior) == 1 and d.dart_is_out(interior[0])):
                v.append(("V4", where + ": needs exactly one outgoing interior dart"))
            if t is VertexType.B_SOURCE and not all(d.dart_is_out(x) for x in interior):
                v.append(("V4", where + ": interior darts of a boundary source must flow out"))
            if t is VertexType.B_SINK and any(d.dart_is_out(x) for x in interior):
                v.append(("V4", where + ": interior darts of a boundary sink must flow in"))
            # interval rule: the two boundary darts are sigma-adjacent at the
            # hole corner, so the interior darts fill a single interval.
            b0, b1 = b
            if interior and cmap.sigma[b0] != b1 and cmap.sigma[b1] != b0:
                v.append(("V4", where + ": interior darts split the boundary-dart interval"))

    for eid, rec in enumerate(d.edges):
        a, b = cmap.edges[eid]
        ta, tb = d.vtypes[cmap.vertex_of[a]], d.vtypes[cmap.vertex_of[b]]
        where = "edge %d (%s)" % (eid, rec.kind.value)
        if rec.kind is EdgeKind.SEPARATRIX:
            pair = {ta in SADDLE_TYPES, tb in SADDLE_TYPES}
            if pair != {True, False}:
                v.append(("V4", where + ": separatrix must join a saddle and a node"))
        elif rec.kind is EdgeKind.CONNECTION:
            if not (ta in SADDLE_TYPES and tb in SADDLE_TYPES):
                v.append(("V4", where + ": connection must join two saddles"))
            if cmap.vertex_of[a] == cmap.vertex_of[b]:
                v.append(("V4", where + ": connection loop at one saddle"))
        else:
            if not (ta in BOUNDARY_TYPES and tb in BOUNDARY_TYPES):
                v.append(("V4", where + ": boundary arc must join boundary vertices"))

    # V5: in/out alternation around interior saddles.
    for vid, t in enumerate(d.vtypes):
        if t is VertexType.I_SADDLE:
            darts = cmap.vertices[vid]
            if len(darts) == 4:
                pat = [d.dart_is_out(x) for x in darts]
                if pat[0] == pat[1] or pat[1] == pat[2] or pat[2] == pat[3]:
                    v.append(("V5", "vertex %d: saddle darts do not alternate in/out" % vid))

    # V6: along each hole, emitters and absorbers alternate; every boundary
    # arc runs emitter -> absorber.
    for eid, rec in enumerate(d.edges):
        if rec.kind is EdgeKind.BOUNDARY_ARC:
            up = d.vtype_of_dart(rec.origin)
            down = d.vtype_of_dart(cmap.alpha[rec.origin])
            if up not in EMITTER_TYPES or down not in ABSORBER_TYPES:
                v.append(("V6", "boundary arc %d does not run emitter to absorber" % eid))

    # V7: every non-hole face is a flow rectangle -- its cyclic F/B word has
    # exactly two alternations, turning F->B at a sink and B->F at a source.
    for fid in range(len(cmap.faces)):
        if fid in d.holes:
            continue
        fw = _face_word_unchecked(d, fid)
        if fw.alternations() != 2:
            v.append(("V7", "face %d word %s is not a parallel region" % (fid, fw.word)))
            continue
        k = len(fw.word)
        for i in range(k):
            a_letter, b_letter = fw.word[i], fw.word[(i + 1) % k]
            corner_t = d.vtypes[fw.corners[i]]
            if a_letter == "F" and b_letter == "B" and corner_t not in SINK_TYPES:
                v.append(("V7", "face %d: F->B corner at %s vertex %d" %
                          (fid, corner_t.value, fw.corners[i])))
            if a_letter == "B" and b_letter == "F" and corner_t not in SOURCE_TYPES:
                v.append(("V7", "face %d: B->F corner at %s vertex %d" %
                          (fid, corner_t.value, fw.corners[i])))

    # V8: connection count matches the codimension; no connection between
    # boundary saddles that are adjacent along a hole.
    conns = d.connection_edges()
    if codim is not None and len(conns) != codim:
        v.append(("V8", "diagram has %d connection edges, expected %d" % (len(conns), codim)))
    elif codim is None and len(conns) > 1:
        v.append(("V8", "diagram has %d connection edges, expected at most 1" % len(conns)))
    for eid in conns:
        va, vb = d.edge_endpoints(eid)
        if (d.vtypes[va] in BOUNDARY_TYPES and d.vtypes[vb] in BOUNDARY_TYPES
                and _hole_adjacent(d, va, vb)):
            v.append(("V8", "connection edge %d joins hole-adjacent boundary saddles" % eid))

    # V9: doubled Poincare index sum.
    if 1 <= h <= 3:
        want = 2 * (2 - h)
        got = doubled_index_sum(d)
        if got != want:
            v.append(("V9", "doubled index sum %d, expected %d" % (got, want)))

    return ValidationReport(not v, tuple(v))


def _hole_adjacent(d: SeparatrixDiagram, va: int, vb: int) -> bool:
    for eid, rec in enumerate(d.edges):
        if rec.kind is EdgeKind.BOUNDARY_ARC:
            ends = set(d.edge_endpoints(eid))
            if ends == {va, vb}:
                return True
    return False
