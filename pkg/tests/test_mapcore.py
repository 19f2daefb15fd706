from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradflow.mapcore import (
    CombMap,
    Disconnected,
    DuplicateDart,
    FixedPointInAlpha,
    MapError,
    NotABijection,
    build_map,
    euler_characteristic,
    mirror,
    relabel,
)


def square_map():
    # one vertex of degree 4, two edges, on the sphere
    return build_map([(0, 1, 2, 3)], [(0, 2), (1, 3)])


class TestConstruction:
    def test_minimal_two_vertex_map(self):
        m = build_map([(0, 1), (2, 3)], [(1, 2), (0, 3)])
        assert m.vertices == ((0, 1), (2, 3))
        assert m.edges == ((0, 3), (1, 2))
        assert m.faces == ((0, 2), (1, 3))
        assert euler_characteristic(m) == 2

    def test_degree_one_vertices_allowed(self):
        m = build_map([(0,), (1,)], [(0, 1)])
        assert m.degree(0) == 1
        assert euler_characteristic(m) == 2

    def test_empty_rotation_cycle_rejected(self):
        with pytest.raises(MapError):
            build_map([(0, 1), ()], [(0, 1)])

    def test_self_paired_dart_rejected(self):
        with pytest.raises(FixedPointInAlpha):
            build_map([(0, 1)], [(0, 0), (1, 1)])

    def test_duplicate_dart_in_rotation(self):
        with pytest.raises(DuplicateDart):
            build_map([(0, 1), (1, 2)], [(0, 1), (2, 2)])

    def test_duplicate_dart_in_pairing(self):
        with pytest.raises(DuplicateDart):
            build_map([(0, 1, 2, 3)], [(0, 1), (1, 2)])

    def test_missing_pairing(self):
        with pytest.raises(MapError):
            build_map([(0, 1, 2, 3)], [(0, 1)])

    def test_sparse_dart_ids_rejected(self):
        with pytest.raises(MapError):
            build_map([(0, 5)], [(0, 5)])

    def test_disconnected_rejected(self):
        with pytest.raises(Disconnected):
            CombMap([1, 0, 3, 2], [1, 0, 3, 2])

    def test_alpha_not_involution_rejected(self):
        with pytest.raises(MapError):
            CombMap([0, 1, 2], [1, 2, 0])


class TestOrbits:
    def test_square_orbits(self):
        # one vertex with alternating edge pairing is the torus
        m = square_map()
        assert m.vertices == ((0, 1, 2, 3),)
        assert m.edges == ((0, 2), (1, 3))
        # phi(d) = sigma[alpha[d]]
        assert m.phi(0) == m.sigma[2] == 3
        assert m.faces == ((0, 3, 2, 1),)
        assert euler_characteristic(m) == 0

    def test_index_lookups(self):
        m = square_map()
        for d in range(4):
            assert d in m.vertices[m.vertex_of[d]]
            assert d in m.edges[m.edge_of[d]]
            assert d in m.faces[m.face_of[d]]


class TestRelabelAndMirror:
    def test_relabel_identity(self):
        m = square_map()
        assert relabel(m, list(range(4))) == m

    def test_relabel_bad_perm(self):
        with pytest.raises(NotABijection):
            relabel(square_map(), [0, 0, 1, 2])

    def test_relabel_conjugates(self):
        m = build_map([(0, 1), (2, 3)], [(1, 2), (0, 3)])
        perm = [2, 3, 0, 1]
        r = relabel(m, perm)
        for d in range(4):
            assert r.sigma[perm[d]] == perm[m.sigma[d]]
            assert r.alpha[perm[d]] == perm[m.alpha[d]]

    def test_mirror_is_involution(self):
        m = square_map()
        assert mirror(mirror(m)) == m

    def test_mirror_preserves_counts(self):
        m = build_map([(0, 1, 2), (3, 4, 5), (6,), (7,)],
                      [(1, 3), (0, 4), (2, 6), (5, 7)])
        w = mirror(m)
        assert len(w.vertices) == len(m.vertices)
        assert len(w.edges) == len(m.edges)
        assert len(w.faces) == len(m.faces)
        assert euler_characteristic(w) == 2


@st.composite
def random_sphere_like_map(draw):
    """Random connected map obtained by pairing darts of a single vertex."""
    nedges = draw(st.integers(min_value=1, max_value=5))
    darts = list(range(2 * nedges))
    perm = draw(st.permutations(darts))
    pairing = [(perm[2 * i], perm[2 * i + 1]) for i in range(nedges)]
    return build_map([tuple(darts)], pairing)


@given(random_sphere_like_map())
def test_orbit_partitions(m):
    for orbits in (m.vertices, m.edges, m.faces):
        all_darts = sorted(itertools.chain.from_iterable(orbits))
        assert all_darts == list(range(m.ndarts))
        assert all(orb[0] == min(orb) for orb in orbits)
        starts = [orb[0] for orb in orbits]
        assert starts == sorted(starts)


@given(random_sphere_like_map())
def test_one_vertex_map_is_even_genus_surface(m):
    chi = euler_characteristic(m)
    assert chi <= 2 and chi % 2 == 0
