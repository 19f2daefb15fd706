from __future__ import annotations

import itertools
import random

import pytest

from gradflow.canon import (
    are_isomorphic,
    automorphisms,
    canonical_code,
    canonical_form,
    diagram_from_code,
    edge_orbits,
)
from gradflow.diagram import EdgeKind, mirror_diagram, relabel_diagram, reverse_flow, validate

from conftest import disk_four_interior_pair, disk_minimal, disk_three_sink, disk_three_source

ALL = [disk_minimal, disk_three_sink, disk_three_source, disk_four_interior_pair]


def random_relabelings(d, count=6, seed=7):
    rng = random.Random(seed)
    n = d.cmap.ndarts
    out = []
    for _ in range(count):
        perm = list(range(n))
        rng.shuffle(perm)
        out.append(relabel_diagram(d, perm))
    return out


class TestCanonicalCode:
    @pytest.mark.parametrize("builder", ALL)
    def test_code_is_relabeling_invariant(self, builder):
        d = builder()
        code = canonical_code(d)
        for r in random_relabelings(d):
            assert canonical_code(r) == code

    @pytest.mark.parametrize("builder", ALL)
    def test_code_is_mirror_invariant(self, builder):
        d = builder()
        assert canonical_code(mirror_diagram(d)) == canonical_code(d)

    def test_distinct_diagrams_get_distinct_codes(self):
        codes = {canonical_code(b()) for b in ALL}
        assert len(codes) == len(ALL)

    def test_reverse_flow_not_quotiented(self):
        assert canonical_code(disk_three_sink()) != canonical_code(disk_three_source())

    def test_code_roundtrip(self):
        for b in ALL:
            d = b()
            code = canonical_code(d)
            rebuilt = diagram_from_code(code)
            assert validate(rebuilt, codim=0).ok
            assert canonical_code(rebuilt) == code

    def test_canonical_form_is_idempotent(self):
        for b in ALL:
            c = canonical_form(b())
            assert canonical_form(c) == c

    def test_bad_code_rejected(self):
        with pytest.raises(ValueError):
            diagram_from_code(b"\x00\x01\x02")


class TestIsomorphism:
    @pytest.mark.parametrize("builder", ALL)
    def test_relabelings_are_isomorphic(self, builder):
        d = builder()
        for r in random_relabelings(d, count=4):
            iso = are_isomorphic(d, r)
            assert iso is not None
            n = d.cmap.ndarts
            assert sorted(iso.darts) == list(range(n))

    def test_pairwise_agreement_with_codes(self):
        diagrams = [b() for b in ALL]
        diagrams += [mirror_diagram(d) for d in diagrams]
        diagrams += random_relabelings(diagrams[1], count=2)
        for a, b in itertools.combinations(diagrams, 2):
            same_code = canonical_code(a) == canonical_code(b)
            assert (are_isomorphic(a, b) is not None) == same_code

    def test_mirror_detected_as_reversing_when_chiral_axis_absent(self):
        d = disk_three_sink()
        iso = are_isomorphic(d, mirror_diagram(d))
        assert iso is not None

    def test_reversed_flow_is_not_isomorphic(self):
        assert are_isomorphic(disk_three_sink(), reverse_flow(disk_three_sink())) is None


class TestAutomorphisms:
    def test_identity_always_present(self):
        for b in ALL:
            d = b()
            autos = automorphisms(d)
            ident = tuple(range(d.cmap.ndarts))
            assert any(a.darts == ident and not a.orientation_reversing for a in autos)

    def test_minimal_disk_has_reflection(self):
        autos = automorphisms(disk_minimal())
        assert any(a.orientation_reversing for a in autos)

    def test_orbits_partition_edges(self):
        for b in ALL:
            d = b()
            orbits = edge_orbits(d)
            flat = sorted(itertools.chain.from_iterable(orbits))
            assert flat == list(range(len(d.cmap.edges)))

    def test_orbits_respect_edge_kind(self):
        for b in ALL:
            d = b()
            for orb in edge_orbits(d):
                kinds = {d.edges[e].kind for e in orb}
                assert len(kinds) == 1

    def test_three_point_disk_arc_orbit(self):
        d = disk_three_sink()
        orbits = edge_orbits(d)
        arc_ids = sorted(e for e, rec in enumerate(d.edges)
                         if rec.kind is EdgeKind.BOUNDARY_ARC)
        # the reflection through the separatrix swaps the two arcs
        assert tuple(arc_ids) in orbits
