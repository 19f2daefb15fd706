"""Exhaustive enumeration of separatrix diagrams up to equivalence.

Strategy: generate, validate, canonicalize.  For every feasible multiset of
vertex types we enumerate all ways to wire saddle separatrices to nodes and
all rotation orders, build the combinatorial map, keep the valid ones, and
deduplicate by canonical code.  Equivalence includes reflections and hole
renumbering; flow reversal gives a distinct class.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .canon import canonical_code, diagram_from_code
from .diagram import (
    DOUBLED_INDEX,
    EdgeKind,
    EdgeRecord,
    SeparatrixDiagram,
    Surface,
    VertexType,
    validate,
)
from .mapcore import CombMap, Disconnected

DEFAULT_CAP = 8

EMITTERS = (VertexType.B_SOURCE, VertexType.B_SADDLE_REP)
ABSORBERS = (VertexType.B_SINK, VertexType.B_SADDLE_ATT)
INTERIOR = (VertexType.I_SOURCE, VertexType.I_SINK, VertexType.I_SADDLE)


class CapExceeded(ValueError):
    """Requested point count is above the configured enumeration cap."""


def current_cap() -> int:
    raw = os.environ.get("GRADFLOW_CAP")
    if raw is None:
        return DEFAULT_CAP
    return int(raw)


@dataclass(frozen=True)
class TypeMultiset:
    """Vertex types of a candidate diagram: one tuple per hole, cyclic order,
    plus a sorted tuple of interior types."""
    holes: tuple[tuple[VertexType, ...], ...]
    interior: tuple[VertexType, ...]

    @property
    def n_points(self) -> int:
        return sum(len(h) for h in self.holes) + len(self.interior)

    def doubled_index(self) -> int:
        return (sum(DOUBLED_INDEX[t] for h in self.holes for t in h)
                + sum(DOUBLED_INDEX[t] for t in self.interior))


def _hole_typings(size: int) -> list[tuple[VertexType, ...]]:
    """Alternating emitter/absorber typings of one hole, up to rotation."""
    half = size // 2
    tkey = lambda typing: tuple(t.value for t in typing)
    seen = set()
    out = []
    for es in itertools.product(EMITTERS, repeat=half):
        for bs in itertools.product(ABSORBERS, repeat=half):
            typing = tuple(itertools.chain.from_iterable(zip(es, bs)))
            rots = [typing[i:] + typing[:i] for i in range(0, size, 2)]
            canon = min(rots, key=tkey)
            if tkey(canon) not in seen:
                seen.add(tkey(canon))
                out.append(canon)
    return sorted(out, key=tkey)


def type_multisets(surface: Surface, n: int, codim: int) -> list[TypeMultiset]:
    """All feasible vertex type multisets for ``n`` singular points."""
    h = surface.holes
    singles: list[tuple[VertexType, ...]] = []
    for size in range(2, n + 1, 2):
        singles.extend(_hole_typings(size))
    out = []
    for combo in itertools.combinations_with_replacement(singles, h):
        n_boundary = sum(len(t) for t in combo)
        n_int = n - n_boundary
        if n_int < 0:
            continue
        for nsrc in range(n_int + 1):
            for nsnk in range(n_int - nsrc + 1):
                nsad = n_int - nsrc - nsnk
                interior = ((VertexType.I_SOURCE,) * nsrc
                            + (VertexType.I_SINK,) * nsnk
                            + (VertexType.I_SADDLE,) * nsad)
                tm = TypeMultiset(tuple(combo), interior)
                if tm.doubled_index() != surface.doubled_index:
                    continue
                if _dart_balance_ok(tm, codim):
                    out.append(tm)
    return out


def _dart_balance_ok(tm: TypeMultiset, codim: int) -> bool:
    flat = [t for h in tm.holes for t in h] + list(tm.interior)
    n_sad = flat.count(VertexType.I_SADDLE)
    n_rep = flat.count(VertexType.B_SADDLE_REP)
    n_att = flat.count(VertexType.B_SADDLE_ATT)
    n_isrc = flat.count(VertexType.I_SOURCE)
    n_isnk = flat.count(VertexType.I_SINK)
    n_src = n_isrc + flat.count(VertexType.B_SOURCE)
    n_snk = n_isnk + flat.count(VertexType.B_SINK)
    s_in = 2 * n_sad + n_rep   # stable separatrix slots, fed by sources
    s_out = 2 * n_sad + n_att  # unstable separatrix slots, into sinks
    if codim == 1:
        if n_sad + n_rep + n_att < 2 or s_in < 1 or s_out < 1:
            return False
        s_in -= 1
        s_out -= 1
    if s_in < n_isrc or s_out < n_isnk:
        return False
    if s_in > 0 and n_src == 0:
        return False
    if s_out > 0 and n_snk == 0:
        return False
    return True


# -- assembly ----------------------------------------------------------------


def _orderings(slots: list, interior_vertex: bool):
    """All rotation orders of a vertex's separatrix slots.

    Interior vertices are cyclic (first slot pinned); boundary vertices have
    a linear interval between their two boundary darts.
    """
    if not slots:
        yield ()
        return
    if interior_vertex:
        for rest in itertools.permutations(slots[1:]):
            yield (slots[0],) + rest
    else:
        yield from itertools.permutations(slots)


def _assemble(tm: TypeMultiset, codim: int):
    """Yield every raw diagram (possibly invalid) for one type multiset."""
    # global vertex numbering: boundary vertices hole by hole, then interior
    vtypes: list[VertexType] = [t for h in tm.holes for t in h] + list(tm.interior)
    hole_ranges = []
    base = 0
    for h in tm.holes:
        hole_ranges.append(range(base, base + len(h)))
        base += len(h)

    in_slots: list[tuple[int, int]] = []   # (saddle vertex, local index)
    out_slots: list[tuple[int, int]] = []
    for vid, t in enumerate(vtypes):
        if t is VertexType.I_SADDLE:
            in_slots += [(vid, 0), (vid, 1)]
            out_slots += [(vid, 0), (vid, 1)]
        elif t is VertexType.B_SADDLE_REP:
            in_slots.append((vid, 0))
        elif t is VertexType.B_SADDLE_ATT:
            out_slots.append((vid, 0))

    sources = [v for v, t in enumerate(vtypes)
               if t in (VertexType.I_SOURCE, VertexType.B_SOURCE)]
    sinks = [v for v, t in enumerate(vtypes)
             if t in (VertexType.I_SINK, VertexType.B_SINK)]

    if codim == 1:
        conn_choices = [(o, i) for o in out_slots for i in in_slots if o[0] != i[0]]
    else:
        conn_choices = [None]

    for conn in conn_choices:
        free_in = [s for s in in_slots if s != (conn[1] if conn else None)]
        free_out = [s for s in out_slots if s != (conn[0] if conn else None)]
        for in_owner in _slot_assignments(free_in, sources, vtypes, VertexType.I_SOURCE):
            for out_owner in _slot_assignments(free_out, sinks, vtypes, VertexType.I_SINK):
                yield from _wire(tm, vtypes, hole_ranges, conn,
                                 free_in, in_owner, free_out, out_owner)


def _slot_assignments(slots, nodes, vtypes, must_cover):
    """Maps slot -> node vertex such that every ``must_cover`` node is used."""
    required = [v for v in nodes if vtypes[v] is must_cover]
    if not nodes:
        if slots:
            return
        yield {}
        return
    for combo in itertools.product(nodes, repeat=len(slots)):
        if all(v in combo for v in required):
            yield dict(zip(slots, combo))


def _wire(tm, vtypes, hole_ranges, conn, free_in, in_owner, free_out, out_owner):
    by_node: dict[int, list] = {}
    for slot, v in in_owner.items():
        by_node.setdefault(v, []).append(("in", slot))
    for slot, v in out_owner.items():
        by_node.setdefault(v, []).append(("out", slot))

    node_ids = sorted(by_node)
    pools = [list(_orderings(by_node[v], vtypes[v] in (VertexType.I_SOURCE,
                                                       VertexType.I_SINK)))
             for v in node_ids]
    for choice in itertools.product(*pools):
        ordering = dict(zip(node_ids, choice))
        built = _build_one(tm, vtypes, hole_ranges, conn, ordering)
        if built is not None:
            yield built


def _build_one(tm, vtypes, hole_ranges, conn, ordering):
    rotation: list[list[int]] = [[] for _ in vtypes]
    next_dart = 0

    def new_dart(v):
        nonlocal next_dart
        d = next_dart
        next_dart += 1
        rotation[v].append(d)
        return d

    # boundary darts: rotation at each hole vertex starts (in, out)
    pos_in: dict[int, int] = {}
    pos_out: dict[int, int] = {}
    for rng in hole_ranges:
        for v in rng:
            pos_in[v] = new_dart(v)
            pos_out[v] = new_dart(v)

    # saddle interior darts
    saddle_in_dart: dict[tuple[int, int], int] = {}
    saddle_out_dart: dict[tuple[int, int], int] = {}
    for v, t in enumerate(vtypes):
        if t is VertexType.I_SADDLE:
            saddle_in_dart[(v, 0)] = new_dart(v)
            saddle_out_dart[(v, 0)] = new_dart(v)
            saddle_in_dart[(v, 1)] = new_dart(v)
            saddle_out_dart[(v, 1)] = new_dart(v)
        elif t is VertexType.B_SADDLE_REP:
            saddle_in_dart[(v, 0)] = new_dart(v)
        elif t is VertexType.B_SADDLE_ATT:
            saddle_out_dart[(v, 0)] = new_dart(v)

    pairing: list[tuple[int, int]] = []
    specs: dict[frozenset, tuple[EdgeKind, int]] = {}

    # node darts in rotation order, paired with their slots
    for v, slots in ordering.items():
        for direction, slot in slots:
            d = new_dart(v)
            if direction == "in":
                sd = saddle_in_dart[slot]
                pairing.append((d, sd))
                specs[frozenset({d, sd})] = (EdgeKind.SEPARATRIX, d)
            else:
                sd = saddle_out_dart[slot]
                pairing.append((d, sd))
                specs[frozenset({d, sd})] = (EdgeKind.SEPARATRIX, sd)

    if conn is not None:
        od = saddle_out_dart[conn[0]]
        idart = saddle_in_dart[conn[1]]
        pairing.append((od, idart))
        specs[frozenset({od, idart})] = (EdgeKind.CONNECTION, od)

    # boundary arcs
    hole_marks = []
    for rng in hole_ranges:
        vs = list(rng)
        m = len(vs)
        for j in range(m):
            a, b = vs[j], vs[(j + 1) % m]
            d_out, d_in = pos_out[a], pos_in[b]
            pairing.append((d_out, d_in))
            origin = d_out if vtypes[a] in EMITTERS else d_in
            specs[frozenset({d_out, d_in})] = (EdgeKind.BOUNDARY_ARC, origin)
        hole_marks.append(pos_out[vs[0]])

    try:
        m = _map_from(rotation, pairing)
    except Disconnected:
        return None
    # map ids are sigma-orbits ordered by least dart, which can differ from
    # the assembly numbering; route the types through a dart of each vertex
    mapped_types = [None] * len(m.vertices)
    for v, t in enumerate(vtypes):
        mapped_types[m.vertex_of[rotation[v][0]]] = t
    edges = [EdgeRecord(*specs[frozenset(p)]) for p in m.edges]
    holes = {m.face_of[d] for d in hole_marks}
    return SeparatrixDiagram(m, mapped_types, edges, holes)


def _map_from(rotation, pairing) -> CombMap:
    n = sum(len(c) for c in rotation)
    sigma = [0] * n
    for cycle in rotation:
        for i, d in enumerate(cycle):
            sigma[d] = cycle[(i + 1) % len(cycle)]
    alpha = [0] * n
    for a, b in pairing:
        alpha[a] = b
        alpha[b] = a
    return CombMap(sigma, alpha)


# -- public enumeration ------------------------------------------------------

_CACHE: dict[tuple[Surface, int, int], tuple[SeparatrixDiagram, ...]] = {}


def _enumerate(surface: Surface, n: int, codim: int,
               cap: int | None = None) -> tuple[SeparatrixDiagram, ...]:
    limit = cap if cap is not None else current_cap()
    if n > limit:
        raise CapExceeded("n=%d exceeds the enumeration cap %d" % (n, limit))
    key = (surface, n, codim)
    if key not in _CACHE:
        seen: dict[bytes, None] = {}
        for tm in type_multisets(surface, n, codim):
            for d in _assemble(tm, codim):
                if not validate(d, codim=codim).ok:
                    continue
                seen.setdefault(canonical_code(d))
        codes = sorted(seen)
        _CACHE[key] = tuple(diagram_from_code(c) for c in codes)
    return _CACHE[key]


def enumerate_morse(surface: Surface, n: int,
                    cap: int | None = None) -> tuple[SeparatrixDiagram, ...]:
    """All Morse flow diagrams with exactly ``n`` singular points."""
    return _enumerate(surface, n, 0, cap)


def enumerate_connections(surface: Surface, n: int,
                          cap: int | None = None) -> tuple[SeparatrixDiagram, ...]:
    """All diagrams with one saddle connection and ``n`` singular points."""
    return _enumerate(surface, n, 1, cap)


def census(surface: Surface, n: int, cap: int | None = None) -> dict[str, int]:
    """Counts for one table row: Morse classes plus bifurcations by kind."""
    from .bifurcation import classify_connection, sn_census

    row = {"morse": len(enumerate_morse(surface, n, cap))}
    for kind, count in sn_census(surface, n, cap).items():
        row[kind] = count
    for d in enumerate_connections(surface, n, cap):
        kind = classify_connection(d)
        row[kind] = row.get(kind, 0) + 1
    return row
