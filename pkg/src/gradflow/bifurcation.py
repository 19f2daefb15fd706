"""Bifurcation sites on Morse diagrams and saddle-connection handling.

A saddle-node family is located on the codim-0 diagram before the
bifurcation by marking one edge orbit (the contracting trajectory class).
Connection bifurcations live on codim-1 diagrams and are classified by
where the two saddles of the black edge sit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .canon import edge_orbits
from .diagram import (
    BOUNDARY_TYPES,
    SADDLE_TYPES,
    SINK_TYPES,
    SOURCE_TYPES,
    EdgeKind,
    EdgeRecord,
    SeparatrixDiagram,
    Surface,
    VertexType,
    reverse_flow,
    validate,
)
from .mapcore import CombMap


class SnKind(Enum):
    SN = "SN"    # interior saddle + interior node
    HN = "HN"    # boundary saddle + interior node (node at the moment)
    HS = "HS"    # interior saddle + boundary node (saddle at the moment)
    BSN = "BSN"  # boundary saddle + boundary node along an arc
    BDS = "BDS"  # two boundary saddles along an arc
    EXCLUDED_NODE_NODE = "nodeNode"  # source-sink arc; reported, never counted


SITE_KINDS = (SnKind.SN, SnKind.HN, SnKind.HS, SnKind.BSN, SnKind.BDS)


class NotCodimZero(ValueError):
    pass


class NotCodimOne(ValueError):
    pass


class NotAFeasibleSite(ValueError):
    pass


class InvalidResolution(ValueError):
    pass


@dataclass(frozen=True)
class BifurcationSite:
    """One family of saddle-node bifurcations: an edge orbit plus its kind.

    ``polarity`` says whether the node of the annihilating pair is on the
    source side or the sink side; None for BDS and the excluded arcs.
    """
    kind: SnKind
    edge_orbit: tuple[int, ...]
    polarity: str | None


def _hole_sizes(d: SeparatrixDiagram) -> dict[int, int]:
    return {f: len(d.cmap.faces[f]) for f in d.holes}


def _edge_hole(d: SeparatrixDiagram, edge_id: int) -> int:
    for x in d.cmap.edges[edge_id]:
        f = d.cmap.face_of[x]
        if f in d.holes:
            return f
    raise ValueError("edge %d is not on a hole face" % edge_id)


def _classify_edge(d: SeparatrixDiagram, edge_id: int,
                   hole_sizes: dict[int, int]) -> tuple[SnKind, str | None] | None:
    rec = d.edges[edge_id]
    va, vb = d.edge_endpoints(edge_id)
    ta, tb = d.vtypes[va], d.vtypes[vb]
    if rec.kind is EdgeKind.SEPARATRIX:
        (ts, tn) = (ta, tb) if ta in SADDLE_TYPES else (tb, ta)
        if ts is VertexType.I_SADDLE:
            kind = SnKind.SN if tn not in BOUNDARY_TYPES else SnKind.HS
        else:
            if tn in BOUNDARY_TYPES:
                return None  # boundary saddle to boundary node: no family
            kind = SnKind.HN
        polarity = "sourceSide" if tn in SOURCE_TYPES else "sinkSide"
        return kind, polarity
    if rec.kind is EdgeKind.BOUNDARY_ARC:
        # contracting an arc of a 2-vertex hole would close the other arc
        # into a loop, so only holes with 3 or more points carry sites
        if hole_sizes[_edge_hole(d, edge_id)] < 3:
            return None
        saddles = (ta in SADDLE_TYPES) + (tb in SADDLE_TYPES)
        if saddles == 2:
            return SnKind.BDS, None
        if saddles == 0:
            return SnKind.EXCLUDED_NODE_NODE, None
        tn = tb if ta in SADDLE_TYPES else ta
        return SnKind.BSN, "sourceSide" if tn in SOURCE_TYPES else "sinkSide"
    return None


def saddle_node_sites(d: SeparatrixDiagram,
                      include_excluded: bool = False) -> list[BifurcationSite]:
    """All saddle-node bifurcation families of one Morse diagram.

    Families are edge orbits under the automorphism group: trajectories
    related by a symmetry give the same bifurcation up to homeomorphism.
    """
    if d.connection_edges():
        raise NotCodimZero("diagram has a saddle connection")
    hole_sizes = _hole_sizes(d)
    sites = []
    for orbit in edge_orbits(d):
        got = _classify_edge(d, orbit[0], hole_sizes)
        if got is None:
            continue
        kind, polarity = got
        if kind is SnKind.EXCLUDED_NODE_NODE and not include_excluded:
            continue
        sites.append(BifurcationSite(kind, orbit, polarity))
    return sites


def site_profile(d: SeparatrixDiagram) -> dict[str, int]:
    """Counts per kind, e.g. {"SN": 2, "HN": 1, "HS": 1}."""
    c = Counter(s.kind.value for s in saddle_node_sites(d))
    return dict(c)


def sn_breakdown(surface: Surface, n: int,
                 cap: int | None = None) -> tuple[dict[str, int], ...]:
    """Per-diagram site profiles, in enumeration order."""
    from .enumerator import enumerate_morse

    return tuple(site_profile(d) for d in enumerate_morse(surface, n, cap))


def sn_census(surface: Surface, n: int, cap: int | None = None) -> dict[str, int]:
    """Total saddle-node families over all Morse diagrams with ``n`` points."""
    totals: Counter = Counter()
    for profile in sn_breakdown(surface, n, cap):
        totals.update(profile)
    return {k.value: totals.get(k.value, 0) for k in SITE_KINDS}


# -- post-bifurcation surgery -------------------------------------------------

class _Surgeon:
    """Mutable scratch copy of one diagram for local rewiring.

    Rotations are plain lists, the edge pairing is a dart -> dart dict, and
    per-dart kind/direction flags replace the edge records until build time.
    """

    def __init__(self, d: SeparatrixDiagram):
        m = d.cmap
        self.rot = [list(c) for c in m.vertices]
        self.vtypes: list[VertexType | None] = list(d.vtypes)
        self.partner = {x: m.alpha[x] for x in range(m.ndarts)}
        self.kind: dict[int, EdgeKind] = {}
        self.out: dict[int, bool] = {}
        for eid, (a, b) in enumerate(m.edges):
            rec = d.edges[eid]
            for x in (a, b):
                self.kind[x] = rec.kind
                self.out[x] = rec.origin == x
        self.hole_marker = {f: m.faces[f][0] for f in d.holes}
        self._next = m.ndarts

    def fresh(self) -> int:
        x = self._next
        self._next += 1
        return x

    def delete_edge(self, x: int) -> None:
        y = self.partner.pop(x)
        self.partner.pop(y)
        for z in (x, y):
            self.kind.pop(z)
            self.out.pop(z)
            for r in self.rot:
                if z in r:
                    r.remove(z)
                    break

    def build(self) -> SeparatrixDiagram:
        live = sorted(self.partner)
        renum = {old: new for new, old in enumerate(live)}
        sigma = [0] * len(live)
        for cycle in self.rot:
            for i, x in enumerate(cycle):
                sigma[renum[x]] = renum[cycle[(i + 1) % len(cycle)]]
        alpha = [renum[self.partner[x]] for x in live]
        m = CombMap(sigma, alpha)
        vtypes: list[VertexType | None] = [None] * len(m.vertices)
        for vid, cycle in enumerate(self.rot):
            if cycle:
                vtypes[m.vertex_of[renum[cycle[0]]]] = self.vtypes[vid]
        edges = []
        for a, b in m.edges:
            x = live[a]
            edges.append(EdgeRecord(self.kind[x], a if self.out[x] else b))
        holes = {m.face_of[renum[x]] for x in self.hole_marker.values()}
        return SeparatrixDiagram(m, vtypes, edges, holes)


def _cyclic_after(cycle: list[int], x: int) -> list[int]:
    i = cycle.index(x)
    return cycle[i + 1:] + cycle[:i]


def _sep_darts(d: SeparatrixDiagram, eid: int) -> tuple[int, int]:
    """Edge darts ordered (saddle side, node side)."""
    a, b = d.cmap.edges[eid]
    return (a, b) if d.vtype_of_dart(a) in SADDLE_TYPES else (b, a)


def _finish(s: _Surgeon) -> SeparatrixDiagram | None:
    try:
        out = s.build()
    except (ValueError, KeyError):
        return None
    return out if validate(out, codim=0).ok else None


def _contract_sn(d: SeparatrixDiagram, eid: int) -> SeparatrixDiagram | None:
    """Annihilate an interior saddle and the interior sink it feeds.

    Double contraction of the map: first the contracting separatrix, then
    the saddle's other unstable separatrix, so the sink's remaining fan is
    spliced order-preserving into the surviving sink's rotation.  The two
    stable separatrices become generic trajectories and are dropped.
    """
    m = d.cmap
    e_s, e_n = _sep_darts(d, eid)
    sv, nv = m.vertex_of[e_s], m.vertex_of[e_n]
    f_s = next(x for x in m.vertices[sv]
               if x != e_s and d.dart_is_out(x))
    f_m = m.alpha[f_s]
    mv = m.vertex_of[f_m]
    if mv == nv:
        raise NotAFeasibleSite("saddle and node are joined by two separatrices")
    stable = [x for x in m.vertices[sv] if not d.dart_is_out(x)]

    s = _Surgeon(d)
    moved = _cyclic_after(s.rot[nv], e_n)
    i = s.rot[mv].index(f_m)
    s.rot[mv][i:i + 1] = moved
    s.rot[nv] = []
    s.delete_edge(e_s)
    s.delete_edge(f_s)
    for x in stable:
        s.delete_edge(x)
    s.vtypes[sv] = s.vtypes[nv] = None
    return _finish(s)


def _contract_hn(d: SeparatrixDiagram, eid: int) -> SeparatrixDiagram | None:
    """Merge an interior sink into the boundary saddle absorbing it.

    Plain edge contraction; the merged vertex keeps the saddle's two
    boundary arcs and inherits the node's remaining fan, so it becomes a
    boundary sink.  Always forced.
    """
    m = d.cmap
    e_b, e_n = _sep_darts(d, eid)
    bv, nv = m.vertex_of[e_b], m.vertex_of[e_n]

    s = _Surgeon(d)
    moved = _cyclic_after(s.rot[nv], e_n)
    i = s.rot[bv].index(e_b)
    s.rot[bv][i:i + 1] = moved
    s.rot[nv] = []
    s.delete_edge(e_b)
    s.vtypes[bv] = VertexType.B_SINK
    s.vtypes[nv] = None
    return _finish(s)


def _contract_hs(d: SeparatrixDiagram, eid: int) -> SeparatrixDiagram | None:
    """Merge an interior saddle into the boundary sink it feeds.

    The merged point is a boundary saddle with the surviving unstable
    separatrix as its interior dart.  Forced only when the boundary sink
    has no other incoming separatrix; otherwise those separatrices would
    need an unforced re-target and the result is None.
    """
    m = d.cmap
    e_s, e_n = _sep_darts(d, eid)
    sv, nv = m.vertex_of[e_s], m.vertex_of[e_n]
    if len(m.vertices[nv]) != 3:
        return None
    f_s = next(x for x in m.vertices[sv]
               if x != e_s and d.dart_is_out(x))
    stable = [x for x in m.vertices[sv] if not d.dart_is_out(x)]

    s = _Surgeon(d)
    s.rot[nv][s.rot[nv].index(e_n)] = f_s
    s.delete_edge(e_s)
    for x in stable:
        s.delete_edge(x)
    s.rot[sv].remove(f_s)
    s.vtypes[nv] = VertexType.B_SADDLE_ATT
    s.vtypes[sv] = None
    return _finish(s)


def _contract_bsn(d: SeparatrixDiagram, eid: int) -> SeparatrixDiagram | None:
    """Annihilate a boundary saddle-node pair along their shared arc.

    Both points leave the hole and the two outer arcs heal into one.  The
    saddle's interior separatrix becomes generic; forced only when the node
    has no interior fan, since its separatrices would otherwise be orphaned.
    """
    m = d.cmap
    a, b = m.edges[eid]
    rv, nv = m.vertex_of[a], m.vertex_of[b]
    if d.vtypes[rv] not in SADDLE_TYPES:
        rv, nv = nv, rv
    if len(m.vertices[nv]) != 2:
        return None
    sep = next(x for x in m.vertices[rv]
               if d.kind_of_dart(x) is EdgeKind.SEPARATRIX)
    a_r = next(x for x in m.vertices[rv]
               if d.kind_of_dart(x) is EdgeKind.BOUNDARY_ARC and m.edge_of[x] != eid)
    a_n = next(x for x in m.vertices[nv] if m.edge_of[x] != eid)
    w_r, w_n = m.alpha[a_r], m.alpha[a_n]
    hole = _edge_hole(d, eid)

    s = _Surgeon(d)
    s.delete_edge(sep)
    s.delete_edge(a if m.vertex_of[a] == rv else b)
    # splice the two outer arcs into one; both surviving darts already carry
    # the right direction flags, since emitters and absorbers are unchanged
    for x in (a_r, a_n):
        s.partner.pop(x)
        s.kind.pop(x)
        s.out.pop(x)
    s.partner[w_r] = w_n
    s.partner[w_n] = w_r
    s.rot[rv] = []
    s.rot[nv] = []
    s.vtypes[rv] = s.vtypes[nv] = None
    s.hole_marker[hole] = w_r if d.dart_on_hole(w_r) else w_n
    return _finish(s)


def _boundary_slot_swap(s: _Surgeon, vid: int, old: int, fresh: int) -> None:
    """Replace boundary dart ``old`` of vertex ``vid`` by ``fresh`` and move
    ``old`` to the adjacent end of the interior fan (it just lifted off the
    boundary, so it stays next to its former slot)."""
    r = s.rot[vid]
    i = r.index(old)
    other = next(x for x in r if x != old and s.kind[x] is EdgeKind.BOUNDARY_ARC)
    r[i] = fresh
    if r[(i + 1) % len(r)] == other:
        r.insert(i, old)
    else:
        r.insert(i + 1, old)


def _contract_bds(d: SeparatrixDiagram, eid: int) -> SeparatrixDiagram | None:
    """Merge two adjacent boundary saddles into one interior saddle.

    Edge contraction of the shared arc; the two outer arcs lift off the
    boundary into separatrices and a fresh arc closes the hole behind them.
    Forced only when the lifted arcs end at a boundary sink and start at a
    boundary source, whose fans can grow.
    """
    m = d.cmap
    a, b = m.edges[eid]
    rv, av = m.vertex_of[a], m.vertex_of[b]
    if d.vtypes[rv] is not VertexType.B_SADDLE_REP:
        rv, av = av, rv
    e_r = a if m.vertex_of[a] == rv else b
    e_a = m.alpha[e_r]
    u_r = next(x for x in m.vertices[rv]
               if d.kind_of_dart(x) is EdgeKind.BOUNDARY_ARC and x != e_r)
    u_a = next(x for x in m.vertices[av]
               if d.kind_of_dart(x) is EdgeKind.BOUNDARY_ARC and x != e_a)
    ur_p, ua_p = m.alpha[u_r], m.alpha[u_a]
    uv, wv = m.vertex_of[ur_p], m.vertex_of[ua_p]
    if d.vtypes[uv] is not VertexType.B_SINK or d.vtypes[wv] is not VertexType.B_SOURCE:
        return None  # a neighboring boundary saddle cannot absorb a lifted arc
    hole = _edge_hole(d, eid)

    s = _Surgeon(d)
    s.rot[rv] = _cyclic_after(s.rot[rv], e_r) + _cyclic_after(s.rot[av], e_a)
    s.rot[av] = []
    s.vtypes[rv] = VertexType.I_SADDLE
    s.vtypes[av] = None
    s.delete_edge(e_r)
    for x in (u_r, ur_p, u_a, ua_p):
        s.kind[x] = EdgeKind.SEPARATRIX
    n_u, n_w = s.fresh(), s.fresh()
    s.partner[n_u] = n_w
    s.partner[n_w] = n_u
    s.kind[n_u] = s.kind[n_w] = EdgeKind.BOUNDARY_ARC
    s.out[n_u], s.out[n_w] = False, True
    _boundary_slot_swap(s, uv, ur_p, n_u)
    _boundary_slot_swap(s, wv, ua_p, n_w)
    s.hole_marker[hole] = n_w if d.dart_on_hole(ua_p) else n_u
    return _finish(s)


_CONTRACTORS = {
    SnKind.SN: _contract_sn,
    SnKind.HN: _contract_hn,
    SnKind.HS: _contract_hs,
    SnKind.BSN: _contract_bsn,
    SnKind.BDS: _contract_bds,
}


def contract(d: SeparatrixDiagram, site: BifurcationSite) -> SeparatrixDiagram | None:
    """Post-bifurcation diagram for one site, or None when not forced.

    The saddle-node pair annihilates (SN, BSN: two points gone) or merges
    (HN, HS, BDS: one point gone).  Source-side sites are handled by flow
    reversal, contracting on the sink side, and reversing back.
    """
    if site.kind is SnKind.EXCLUDED_NODE_NODE:
        raise NotAFeasibleSite("source-sink arcs never contract")
    eid = site.edge_orbit[0]
    rec = d.edges[eid]
    if (rec.kind is EdgeKind.BOUNDARY_ARC
            and _hole_sizes(d)[_edge_hole(d, eid)] < 3):
        raise NotAFeasibleSite("contracting would close the complementary arc "
                               "into a loop")
    if site.polarity == "sourceSide":
        out = _CONTRACTORS[site.kind](reverse_flow(d), eid)
        return None if out is None else reverse_flow(out)
    return _CONTRACTORS[site.kind](d, eid)


# -- saddle connections ------------------------------------------------------

def classify_connection(d: SeparatrixDiagram) -> str:
    """SC (both saddles interior), HSC (one boundary) or BSC (both)."""
    conns = d.connection_edges()
    if len(conns) != 1:
        raise NotCodimOne("diagram has %d connection edges" % len(conns))
    va, vb = d.edge_endpoints(conns[0])
    boundary = (d.vtypes[va] in BOUNDARY_TYPES) + (d.vtypes[vb] in BOUNDARY_TYPES)
    return ("SC", "HSC", "BSC")[boundary]


def _sigma_step(rot: tuple[int, ...], x: int, forward: bool) -> int:
    i = rot.index(x)
    return rot[(i + (1 if forward else -1)) % len(rot)]


def _walk_to_node(d: SeparatrixDiagram, start: int, forward: bool) -> tuple[int, int]:
    """Follow the flow from dart ``start`` to a sink (forward) or source.

    Boundary arcs may pass through a boundary saddle; the walk then leaves
    along its single interior separatrix.  Returns (node vertex, arrival
    dart at that node).
    """
    m = d.cmap
    cur = start
    terminal = SINK_TYPES if forward else SOURCE_TYPES
    for _ in range(2 * m.ndarts):
        y = m.alpha[cur]
        v = m.vertex_of[y]
        if d.vtypes[v] in terminal:
            return v, y
        cur = next(x for x in m.vertices[v]
                   if d.kind_of_dart(x) is EdgeKind.SEPARATRIX
                   and d.dart_is_out(x) == forward)
    raise InvalidResolution("flow walk did not reach a node")


def resolve_connection(c: SeparatrixDiagram, side: str) -> SeparatrixDiagram:
    """Break the saddle connection by sliding one separatrix past the other.

    The black edge is deleted; the upstream saddle's freed unstable dart is
    re-targeted to the sink fed by the downstream saddle on the chosen side,
    and the downstream saddle's freed stable dart to the matching source.
    Each new separatrix splits the face that contained the old connection,
    so it is inserted right after the arrival dart on the left and right
    before it on the right.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right', got %r" % (side,))
    conns = c.connection_edges()
    if len(conns) != 1:
        raise NotCodimOne("diagram has %d connection edges" % len(conns))
    m = c.cmap
    o = c.edges[conns[0]].origin
    i = m.alpha[o]
    s1, s2 = m.vertex_of[o], m.vertex_of[i]
    left = side == "left"
    tv, a_t = _walk_to_node(c, _sigma_step(m.vertices[s2], i, left), True)
    qv, a_q = _walk_to_node(c, _sigma_step(m.vertices[s1], o, left), False)

    s = _Surgeon(c)
    n_t, n_q = s.fresh(), s.fresh()
    s.partner[o] = n_t
    s.partner[n_t] = o
    s.partner[i] = n_q
    s.partner[n_q] = i
    for x, out in ((o, True), (n_t, False), (i, False), (n_q, True)):
        s.kind[x] = EdgeKind.SEPARATRIX
        s.out[x] = out
    for vid, anchor, fresh in ((tv, a_t, n_t), (qv, a_q, n_q)):
        r = s.rot[vid]
        j = r.index(anchor)
        r.insert(j + 1 if left else j, fresh)
    try:
        out = s.build()
    except ValueError as exc:
        raise InvalidResolution(str(exc)) from exc
    rep = validate(out, codim=0)
    if not rep.ok:
        raise InvalidResolution("rewired diagram fails validation: %r"
                                % (rep.violations,))
    return out
