from __future__ import annotations

import math

import pytest

from gradflow.normal_forms import (
    CATASTROPHES,
    FAMILY_IDS,
    SWEEP,
    Catastrophe,
    ZeroOnWindowBoundary,
    c_invariance,
    catalog,
    family,
    gradient_consistency,
    poincare_index,
    verify_family,
    zeros,
)


@pytest.fixture(scope="module")
def reports():
    return {fid: verify_family(fid) for fid in FAMILY_IDS}


class TestCatalogs:
    def test_all_families_verify(self, reports):
        assert set(reports) == set(FAMILY_IDS)

    def test_sn_source_zero_positions(self):
        fam = family("sn-source")
        cat = catalog(fam, -1)
        located = sorted((round(z.x, 8), round(z.y, 8), z.index) for z in cat)
        assert located == [(0.0, -1.0, -1), (0.0, 1.0, 1)]
        assert zeros(fam, 1) == []

    def test_sc_zeros_at_moment(self):
        cat = catalog(family("sc"), 0)
        assert sorted((round(z.x, 8), round(z.y, 8)) for z in cat) == [
            (-1.0, 0.0), (1.0, 0.0)]
        assert [z.index for z in cat] == [-1, -1]

    def test_bds_progression(self, reports):
        cats = reports["bds"].catalogs
        assert [(z.on_boundary, z.index) for z in cats[-1]] == [
            (True, -1), (True, -1)]
        assert [(z.on_boundary, z.regular, z.index) for z in cats[0]] == [
            (True, False, -2)]
        assert [(z.on_boundary, z.index) for z in cats[1]] == [(False, -1)]

    @pytest.mark.parametrize("fid,total", [
        ("sn-source", 0), ("sn-sink", 0), ("sc", -4),
        ("bsn-source", 0), ("bsn-sink", 0),
        ("bds", -2), ("ss-sink", 2), ("ss-source", 2),
    ])
    def test_doubled_index_total_constant(self, reports, fid, total):
        rep = reports[fid]
        for a in SWEEP:
            if rep.catalogs[a]:
                assert rep.doubled_index_total(a) == total

    def test_residuals_below_tolerance(self, reports):
        for fid, rep in reports.items():
            fam = rep.family
            for a in SWEEP:
                for z in rep.catalogs[a]:
                    p, q = fam.value(z.x, z.y, a)
                    assert math.hypot(p, q) < 1e-10

    def test_regular_index_matches_determinant_sign(self, reports):
        for rep in reports.values():
            fam = rep.family
            for a in SWEEP:
                for z in rep.catalogs[a]:
                    if not z.regular:
                        continue
                    (px, py), (qx, qy) = fam.jacobian(z.x, z.y, a)
                    det = px * qy - py * qx
                    assert z.index == (1 if det > 0 else -1)

    def test_window_enlargement_is_monotone(self):
        fam = family("sc")
        small = zeros(fam, 1, (-1.5, 1.5, -1.5, 1.5))
        big = zeros(fam, 1, (-3.0, 3.0, -3.0, 3.0))
        for z in small:
            assert any(math.hypot(z.x - w.x, z.y - w.y) < 1e-8 for w in big)

    def test_zero_on_window_edge_rejected(self):
        with pytest.raises(ZeroOnWindowBoundary):
            zeros(family("sc"), 0, (-1.0, 1.0, -1.0, 1.0))

    def test_boundary_zero_index_uses_doubled_field(self):
        fam = family("bds")
        cat = zeros(fam, -1)
        assert all(z.on_boundary for z in cat)
        assert [poincare_index(fam, -1, z) for z in cat] == [-1, -1]


class TestGradients:
    @pytest.mark.parametrize("cat", CATASTROPHES, ids=lambda c: c.id)
    def test_catastrophes_are_gradients(self, cat):
        assert gradient_consistency(cat)

    def test_perturbed_potential_fails(self):
        base = CATASTROPHES[0]
        bent = dict(base.f)
        key = next(iter(bent))
        bent[key] = bent[key] + 1
        assert not gradient_consistency(
            Catastrophe(base.id, bent, base.family_id))


class TestCoupling:
    def test_bds_invariant_across_c(self):
        rep = c_invariance("bds", [-1.0, 0.0, 1.0])
        assert rep.invariant
        assert rep.degenerate_c == ()

    def test_ss_coupling_sign_flips_node_stability(self):
        rep = c_invariance("ss-sink", [1.0, -1.0])
        assert not rep.invariant
        assert rep.catalogs[1.0][1] == ((False, 1, "sink"),)
        assert rep.catalogs[-1.0][1] == ((False, 1, "source"),)

    def test_ss_zero_coupling_is_degenerate(self):
        rep = c_invariance("ss-sink", [0.0])
        assert rep.degenerate_c == (0.0,)
