"""Dart-based oriented combinatorial maps.

Conventions used by every module in this package:

* darts are dense integers ``0 .. 2E-1``;
* ``sigma`` is the counterclockwise rotation of the darts around their
  vertex, ``alpha`` is the fixed-point-free involution pairing the two
  darts of each edge;
* the face walk is ``phi = sigma o alpha``, i.e. ``phi(d) = sigma[alpha[d]]``.
  This is the single place where the face convention is defined; everything
  else calls :attr:`CombMap.faces`.

Vertices, edges and faces are the orbits of ``sigma``, ``alpha`` and ``phi``
respectively, listed in increasing order of their least dart, with each
cycle written starting from its least dart.  That ordering is what makes
ids and byte codes reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class MapError(ValueError):
    """Base class for malformed combinatorial maps."""


class FixedPointInAlpha(MapError):
    pass


class DuplicateDart(MapError):
    pass


class Disconnected(MapError):
    pass


class NotABijection(MapError):
    pass


def _orbits(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, least dart first, sorted by least dart."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        d = perm[start]
        while d != start:
            cycle.append(d)
            seen[d] = True
            d = perm[d]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def _index_of(orbits: tuple[tuple[int, ...], ...], ndarts: int) -> tuple[int, ...]:
    idx = [0] * ndarts
    for i, orb in enumerate(orbits):
        for d in orb:
            idx[d] = i
    return tuple(idx)


class CombMap:
    """An oriented combinatorial map; immutable after construction."""

    __slots__ = ("sigma", "alpha", "vertices", "edges", "faces",
                 "vertex_of", "edge_of", "face_of")

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int]):
        n = len(sigma)
        if len(alpha) != n:
            raise MapError("sigma and alpha must act on the same darts")
        if sorted(sigma) != list(range(n)) or sorted(alpha) != list(range(n)):
            raise MapError("sigma and alpha must be permutations of 0..%d" % (n - 1))
        for d in range(n):
            if alpha[d] == d:
                raise FixedPointInAlpha("dart %d is its own edge partner" % d)
            if alpha[alpha[d]] != d:
                raise MapError("alpha is not an involution at dart %d" % d)
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        self.vertices = _orbits(self.sigma)
        self.edges = tuple(sorted({tuple(sorted((d, self.alpha[d]))) for d in range(n)}))
        phi = tuple(self.sigma[self.alpha[d]] for d in range(n))
        self.faces = _orbits(phi)
        self.vertex_of = _index_of(self.vertices, n)
        self.edge_of = _index_of(self.edges, n)
        self.face_of = _index_of(self.faces, n)
        self._check_connected()

    # -- construction ----------------------------------------------------

    def _check_connected(self) -> None:
        n = len(self.sigma)
        if n == 0:
            return
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if not seen[e]:
                    seen[e] = True
                    stack.append(e)
        for d in range(n):
            if not seen[d]:
                raise Disconnected("dart %d is not reachable from dart 0" % d)

    @property
    def ndarts(self) -> int:
        return len(self.sigma)

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    def degree(self, vertex: int) -> int:
        return len(self.vertices[vertex])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CombMap)
                and self.sigma == other.sigma and self.alpha == other.alpha)

    def __hash__(self) -> int:
        return hash((self.sigma, self.alpha))

    def __repr__(self) -> str:
        return "CombMap(sigma=%r, alpha=%r)" % (self.sigma, self.alpha)


def build_map(rotation: Iterable[Sequence[int]],
              pairing: Iterable[Sequence[int]]) -> CombMap:
    """Build a validated map from per-vertex dart cycles and edge pairs.

    Dart ids must be the dense range ``0..2E-1``; every dart appears exactly
    once in ``rotation`` and once in ``pairing``.  Degree-0 vertices (empty
    rotation cycles) are rejected.
    """
    rotation = [list(c) for c in rotation]
    pairing = [tuple(p) for p in pairing]
    seen: set[int] = set()
    for cycle in rotation:
        if not cycle:
            raise MapError("empty rotation cycle (degree-0 vertex)")
        for d in cycle:
            if d in seen:
                raise DuplicateDart("dart %d appears twice in the rotation" % d)
            seen.add(d)
    n = len(seen)
    if seen != set(range(n)):
        raise MapError("dart ids must be dense integers 0..%d" % (n - 1))

    sigma = [0] * n
    for cycle in rotation:
        for i, d in enumerate(cycle):
            sigma[d] = cycle[(i + 1) % len(cycle)]

    alpha = [-1] * n
    for pair in pairing:
        if len(pair) != 2:
            raise MapError("pairing entries must be dart pairs, got %r" % (pair,))
        a, b = pair
        if a == b:
            raise FixedPointInAlpha("dart %d paired with itself" % a)
        for d in (a, b):
            if d < 0 or d >= n:
                raise MapError("dart %d not present in the rotation" % d)
            if alpha[d] != -1:
                raise DuplicateDart("dart %d appears twice in the pairing" % d)
        alpha[a] = b
        alpha[b] = a
    for d in range(n):
        if alpha[d] == -1:
            raise MapError("dart %d missing from the pairing" % d)

    return CombMap(sigma, alpha)


def faces(m: CombMap) -> tuple[tuple[int, ...], ...]:
    """Partition of the darts into phi-orbits, ordered by least dart."""
    return m.faces


def euler_characteristic(m: CombMap) -> int:
    return len(m.vertices) - len(m.edges) + len(m.faces)


def relabel(m: CombMap, perm: Sequence[int]) -> CombMap:
    """Conjugate sigma and alpha by a dart permutation ``perm`` (old -> new)."""
    n = m.ndarts
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotABijection("relabeling is not a bijection on 0..%d" % (n - 1))
    sigma = [0] * n
    alpha = [0] * n
    for d in range(n):
        sigma[perm[d]] = perm[m.sigma[d]]
        alpha[perm[d]] = perm[m.alpha[d]]
    return CombMap(sigma, alpha)


def mirror(m: CombMap) -> CombMap:
    """Orientation reversal: replace sigma by its inverse."""
    n = m.ndarts
    inv = [0] * n
    for d in range(n):
        inv[m.sigma[d]] = d
    return CombMap(inv, m.alpha)
