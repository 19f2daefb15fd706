"""Canonical codes and isomorphism testing for separatrix diagrams.

Two independent routes are provided on purpose:

* :func:`canonical_code` minimizes a breadth-first transcript over all start
  darts (and over the mirror image unless told otherwise); equal codes mean
  equivalent diagrams.
* :func:`are_isomorphic` searches for an explicit dart bijection by
  propagating a single seed assignment through sigma and alpha.

The two must always agree; the test suite checks them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import EdgeKind, EdgeRecord, SeparatrixDiagram, VertexType, mirror_diagram
from .mapcore import CombMap

_VT_INDEX = {t: i for i, t in enumerate(VertexType)}
_VT_LIST = list(VertexType)
_EK_INDEX = {k: i for i, k in enumerate(EdgeKind)}
_EK_LIST = list(EdgeKind)


def _bfs_order(m: CombMap, start: int) -> list[int]:
    """Dart labels in discovery order: from each dart visit sigma then alpha."""
    label = [-1] * m.ndarts
    order = [start]
    label[start] = 0
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        for nxt in (m.sigma[d], m.alpha[d]):
            if label[nxt] < 0:
                label[nxt] = len(order)
                order.append(nxt)
    return order


def _transcript(d: SeparatrixDiagram, start: int) -> bytes:
    m = d.cmap
    order = _bfs_order(m, start)
    label = [0] * m.ndarts
    for new, old in enumerate(order):
        label[old] = new
    rows = bytearray()
    for old in order:
        rec = d.edge_record_of_dart(old)
        rows.append(label[m.sigma[old]])
        rows.append(label[m.alpha[old]])
        rows.append(_VT_INDEX[d.vtype_of_dart(old)])
        rows.append(_EK_INDEX[rec.kind])
        rows.append(1 if rec.origin == old else 0)
        rows.append(1 if m.face_of[old] in d.holes else 0)
    return bytes(rows)


def canonical_code(d: SeparatrixDiagram, include_mirror: bool = True) -> bytes:
    """Lexicographically least transcript over all starts (and the mirror)."""
    if d.cmap.ndarts == 0:
        return b""
    if d.cmap.ndarts > 255:
        raise ValueError("transcript encoding supports at most 255 darts")
    candidates = [d]
    if include_mirror:
        candidates.append(mirror_diagram(d))
    return min(_transcript(c, s)
               for c in candidates for s in range(d.cmap.ndarts))


def canonical_form(d: SeparatrixDiagram, include_mirror: bool = True) -> SeparatrixDiagram:
    """The canonical representative, rebuilt from the winning transcript.

    Depends only on the code, so isomorphic diagrams yield equal objects.
    """
    return diagram_from_code(canonical_code(d, include_mirror))


def diagram_from_code(code: bytes) -> SeparatrixDiagram:
    n, rem = divmod(len(code), 6)
    if rem or n == 0:
        raise ValueError("malformed code of length %d" % len(code))
    sigma = [code[6 * i] for i in range(n)]
    alpha = [code[6 * i + 1] for i in range(n)]
    m = CombMap(sigma, alpha)
    vtypes = [None] * len(m.vertices)
    for dart in range(n):
        vtypes[m.vertex_of[dart]] = _VT_LIST[code[6 * dart + 2]]
    edges = [None] * len(m.edges)
    for dart in range(n):
        if code[6 * dart + 4]:
            edges[m.edge_of[dart]] = EdgeRecord(_EK_LIST[code[6 * dart + 3]], dart)
    if any(e is None for e in edges):
        raise ValueError("code has an edge without an origin dart")
    holes = {m.face_of[dart] for dart in range(n) if code[6 * dart + 5]}
    return SeparatrixDiagram(m, vtypes, edges, holes)


@dataclass(frozen=True)
class Isomorphism:
    """A dart bijection carrying one diagram onto another."""
    darts: tuple[int, ...]
    orientation_reversing: bool


def _propagate(a: SeparatrixDiagram, b: SeparatrixDiagram, seed_target: int):
    """Try to extend the assignment dart 0 -> seed_target to a full map."""
    ma, mb = a.cmap, b.cmap
    n = ma.ndarts
    f = [-1] * n
    f[0] = seed_target
    stack = [0]
    hit = [False] * n
    hit[seed_target] = True
    while stack:
        x = stack.pop()
        for xn, yn in ((ma.sigma[x], mb.sigma[f[x]]), (ma.alpha[x], mb.alpha[f[x]])):
            if f[xn] == -1:
                if hit[yn]:
                    return None
                f[xn] = yn
                hit[yn] = True
                stack.append(xn)
            elif f[xn] != yn:
                return None
    for x in range(n):
        if a.vtype_of_dart(x) is not b.vtype_of_dart(f[x]):
            return None
        ra, rb = a.edge_record_of_dart(x), b.edge_record_of_dart(f[x])
        if ra.kind is not rb.kind:
            return None
        if (ra.origin == x) != (rb.origin == f[x]):
            return None
        if (ma.face_of[x] in a.holes) != (mb.face_of[f[x]] in b.holes):
            return None
    return tuple(f)


def are_isomorphic(a: SeparatrixDiagram, b: SeparatrixDiagram,
                   include_mirror: bool = True) -> Isomorphism | None:
    """Explicit isomorphism search, independent of the transcript codes."""
    if a.cmap.ndarts != b.cmap.ndarts:
        return None
    if sorted(t.value for t in a.vtypes) != sorted(t.value for t in b.vtypes):
        return None
    targets = [(b, False)]
    if include_mirror:
        targets.append((mirror_diagram(b), True))
    for target, reversing in targets:
        for seed in range(a.cmap.ndarts):
            f = _propagate(a, target, seed)
            if f is not None:
                return Isomorphism(f, reversing)
    return None


def automorphisms(d: SeparatrixDiagram,
                  include_mirror: bool = True) -> list[Isomorphism]:
    """All self-maps, including orientation-reversing ones by default."""
    out = []
    targets = [(d, False)]
    if include_mirror:
        targets.append((mirror_diagram(d), True))
    for target, reversing in targets:
        for seed in range(d.cmap.ndarts):
            f = _propagate(d, target, seed)
            if f is not None:
                out.append(Isomorphism(f, reversing))
    return out


def edge_orbits(d: SeparatrixDiagram,
                include_mirror: bool = True) -> tuple[tuple[int, ...], ...]:
    """Edges grouped under the automorphism group, sorted by least member."""
    autos = automorphisms(d, include_mirror)
    nedges = len(d.cmap.edges)
    parent = list(range(nedges))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for iso in autos:
        for eid, (x, _) in enumerate(d.cmap.edges):
            other = d.cmap.edge_of[iso.darts[x]]
            ra, rb = find(eid), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for eid in range(nedges):
        groups.setdefault(find(eid), []).append(eid)
    return tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))
