from __future__ import annotations

from collections import Counter

import pytest

from gradflow.bifurcation import (
    BifurcationSite,
    InvalidResolution,
    NotAFeasibleSite,
    NotCodimOne,
    NotCodimZero,
    SnKind,
    classify_connection,
    contract,
    resolve_connection,
    saddle_node_sites,
    site_profile,
    sn_census,
)
from gradflow.canon import canonical_code, edge_orbits
from gradflow.diagram import (
    EdgeKind,
    Surface,
    doubled_index_sum,
    mirror_diagram,
    reverse_flow,
    validate,
)
from gradflow.enumerator import enumerate_connections, enumerate_morse

from conftest import disk_minimal, disk_three_sink

# computed totals per surface and point count (orbit-reduced, reversals
# included); the acceptance gate compares these against the published rows
SN_CENSUS = {
    (Surface.DISK, 2): {"SN": 0, "HN": 0, "HS": 0, "BSN": 0, "BDS": 0},
    (Surface.DISK, 3): {"SN": 0, "HN": 2, "HS": 0, "BSN": 0, "BDS": 0},
    (Surface.DISK, 4): {"SN": 2, "HN": 2, "HS": 4, "BSN": 2, "BDS": 0},
    (Surface.DISK, 5): {"SN": 8, "HN": 8, "HS": 6, "BSN": 6, "BDS": 2},
    (Surface.DISK, 6): {"SN": 30, "HN": 12, "HS": 42, "BSN": 24, "BDS": 5},
    (Surface.ANNULUS, 4): {"SN": 0, "HN": 0, "HS": 0, "BSN": 0, "BDS": 0},
    (Surface.ANNULUS, 5): {"SN": 0, "HN": 4, "HS": 6, "BSN": 0, "BDS": 0},
    (Surface.ANNULUS, 6): {"SN": 10, "HN": 8, "HS": 30, "BSN": 14, "BDS": 4},
    (Surface.PANTS, 6): {"SN": 0, "HN": 0, "HS": 0, "BSN": 0, "BDS": 0},
}

ALL_CASES = sorted(SN_CENSUS, key=lambda k: (k[0].value, k[1]))

DROP = {SnKind.SN: 2, SnKind.BSN: 2, SnKind.HN: 1, SnKind.HS: 1, SnKind.BDS: 1}


class TestSites:
    def test_minimal_disk_has_no_sites(self):
        assert saddle_node_sites(disk_minimal()) == []

    def test_three_point_disk_has_one_hn(self):
        sites = saddle_node_sites(disk_three_sink())
        assert [s.kind for s in sites] == [SnKind.HN]
        assert sites[0].polarity == "sinkSide"

    @pytest.mark.parametrize("surf,n", ALL_CASES)
    def test_census_totals(self, surf, n):
        assert sn_census(surf, n) == SN_CENSUS[(surf, n)]

    def test_disk_four_bsn_diagrams(self):
        # exactly two classes carry a single BSN site, and nothing else
        profiles = [site_profile(d) for d in enumerate_morse(Surface.DISK, 4)]
        assert profiles.count({"BSN": 1}) == 2

    def test_disk_five_double_hs_diagram(self):
        profiles = [site_profile(d) for d in enumerate_morse(Surface.DISK, 5)]
        assert profiles.count({"HS": 2}) == 1

    def test_codim_one_rejected(self):
        c = enumerate_connections(Surface.DISK, 5)[0]
        with pytest.raises(NotCodimZero):
            saddle_node_sites(c)

    def test_sites_subpartition_edge_orbits(self):
        for d in enumerate_morse(Surface.DISK, 5):
            orbits = set(edge_orbits(d))
            for s in saddle_node_sites(d):
                assert s.edge_orbit in orbits

    def test_reverse_flow_preserves_kind_and_flips_polarity(self):
        flip = {"sourceSide": "sinkSide", "sinkSide": "sourceSide", None: None}
        for d in enumerate_morse(Surface.DISK, 5):
            fwd = {s.edge_orbit: s for s in saddle_node_sites(d)}
            rev = {s.edge_orbit: s for s in saddle_node_sites(reverse_flow(d))}
            assert fwd.keys() == rev.keys()
            for orb, s in fwd.items():
                assert rev[orb].kind is s.kind
                assert rev[orb].polarity == flip[s.polarity]

    def test_site_counts_mirror_invariant(self):
        for d in enumerate_morse(Surface.ANNULUS, 5):
            assert site_profile(d) == site_profile(mirror_diagram(d))

    def test_excluded_node_node_reported_on_request(self):
        found = []
        for d in enumerate_morse(Surface.DISK, 4):
            for s in saddle_node_sites(d, include_excluded=True):
                if s.kind is SnKind.EXCLUDED_NODE_NODE:
                    found.append(s)
        assert found  # source-sink arcs exist on 3-vertex holes
        for d in enumerate_morse(Surface.DISK, 4):
            kinds = {s.kind for s in saddle_node_sites(d)}
            assert SnKind.EXCLUDED_NODE_NODE not in kinds


class TestContract:
    def test_every_contraction_validates_and_reenumerates(self):
        for surf, n in ALL_CASES:
            for d in enumerate_morse(surf, n):
                for site in saddle_node_sites(d):
                    try:
                        out = contract(d, site)
                    except NotAFeasibleSite:
                        continue
                    if out is None:
                        continue
                    assert validate(out, codim=0).ok
                    assert out.n_vertices == n - DROP[site.kind]
                    pool = {canonical_code(x)
                            for x in enumerate_morse(surf, n - DROP[site.kind])}
                    assert canonical_code(out) in pool

    def test_sn_contraction_reaches_three_point_disk(self):
        # the 5-point disk classes with two SN sites contract down to a
        # valid 3-point diagram along the single-edge site
        hits = 0
        for d in enumerate_morse(Surface.DISK, 5):
            for site in saddle_node_sites(d):
                if site.kind is not SnKind.SN:
                    continue
                try:
                    out = contract(d, site)
                except NotAFeasibleSite:
                    continue
                assert out is not None and out.n_vertices == 3
                hits += 1
        assert hits > 0

    def test_hn_contraction_conserves_doubled_index(self):
        d = disk_three_sink()
        (site,) = saddle_node_sites(d)
        out = contract(d, site)
        assert out is not None
        # (-1) + (+2) -> (+1): the sum is unchanged at the surface value
        assert doubled_index_sum(out) == doubled_index_sum(d) == 2

    def test_hn_contraction_always_forced(self):
        for surf, n in ALL_CASES:
            for d in enumerate_morse(surf, n):
                for site in saddle_node_sites(d):
                    if site.kind is SnKind.HN:
                        assert contract(d, site) is not None

    def test_bsn_on_two_vertex_hole_is_infeasible(self):
        d = disk_minimal()
        arc = next(i for i, e in enumerate(d.edges)
                   if e.kind is EdgeKind.BOUNDARY_ARC)
        fake = BifurcationSite(SnKind.BSN, (arc,), "sinkSide")
        with pytest.raises(NotAFeasibleSite):
            contract(d, fake)

    def test_double_separatrix_sn_is_infeasible(self):
        # a saddle whose unstable separatrices both feed one sink cannot
        # annihilate with it: the twin separatrix would have no target
        raised = 0
        for d in enumerate_morse(Surface.DISK, 5):
            for site in saddle_node_sites(d):
                if site.kind is SnKind.SN and len(site.edge_orbit) == 2:
                    ends = {d.edge_endpoints(e) for e in site.edge_orbit}
                    if len(ends) == 1:
                        with pytest.raises(NotAFeasibleSite):
                            contract(d, site)
                        raised += 1
        assert raised == 2

    def test_excluded_site_never_contracts(self):
        for d in enumerate_morse(Surface.DISK, 4):
            for s in saddle_node_sites(d, include_excluded=True):
                if s.kind is SnKind.EXCLUDED_NODE_NODE:
                    with pytest.raises(NotAFeasibleSite):
                        contract(d, s)
                    return
        pytest.fail("no excluded site found")


class TestConnections:
    def test_classification_counts(self):
        got = Counter(classify_connection(c)
                      for c in enumerate_connections(Surface.PANTS, 6))
        assert got == {"BSC": 4}

    def test_annulus_four_single_bsc(self):
        (c,) = enumerate_connections(Surface.ANNULUS, 4)
        assert classify_connection(c) == "BSC"

    def test_classify_requires_codim_one(self):
        with pytest.raises(NotCodimOne):
            classify_connection(disk_minimal())

    def test_class_invariant_under_mirror_and_reverse(self):
        for c in enumerate_connections(Surface.ANNULUS, 5):
            k = classify_connection(c)
            assert classify_connection(mirror_diagram(c)) == k
            assert classify_connection(reverse_flow(c)) == k


class TestResolve:
    def test_both_sides_valid_and_reenumerate(self):
        for surf in (Surface.DISK, Surface.ANNULUS, Surface.PANTS):
            for n in (4, 5, 6):
                conns = enumerate_connections(surf, n)
                if not conns:
                    continue
                pool = {canonical_code(x) for x in enumerate_morse(surf, n)}
                for c in conns:
                    for side in ("left", "right"):
                        out = resolve_connection(c, side)
                        assert validate(out, codim=0).ok
                        assert canonical_code(out) in pool
                        assert (sorted(t.value for t in out.vtypes)
                                == sorted(t.value for t in c.vtypes))

    def test_sides_differ_in_general(self):
        diff = [c for c in enumerate_connections(Surface.DISK, 6)
                if canonical_code(resolve_connection(c, "left"))
                != canonical_code(resolve_connection(c, "right"))]
        assert len(diff) == 7

    def test_five_point_disk_sides_agree_by_symmetry(self):
        # each 5-point connection class has a reflection exchanging the two
        # sides, so the two resolutions are isomorphic there
        from gradflow.canon import automorphisms

        for c in enumerate_connections(Surface.DISK, 5):
            assert any(a.orientation_reversing for a in automorphisms(c))
            assert (canonical_code(resolve_connection(c, "left"))
                    == canonical_code(resolve_connection(c, "right")))

    def test_bad_side_rejected(self):
        c = enumerate_connections(Surface.DISK, 5)[0]
        with pytest.raises(ValueError):
            resolve_connection(c, "up")

    def test_codim_zero_rejected(self):
        with pytest.raises(NotCodimOne):
            resolve_connection(disk_minimal(), "left")
