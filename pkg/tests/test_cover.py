"""Real toric space assembly: Betti numbers, integral cohomology, conditions."""

import pytest

from smallcover.catalog import get_entry
from smallcover.cover import (
    RealToricSpace,
    betti_table,
    evaluate_conditions,
    integral_cohomology,
    is_orientable_3d,
    mod2_betti,
    mu_profile,
    rational_betti,
)
from smallcover.homology import CohomologyProfile, FinAbGroup


def space(name):
    entry = get_entry(name)
    return RealToricSpace(entry.complex, entry.chi)


def classical_projective_profile(n):
    """H^*(real projective n-space; Z) from the textbook description."""
    groups = {0: FinAbGroup.free(1)}
    for q in range(2, n + 1, 2):
        if q < n or n % 2 == 0:
            groups[q] = FinAbGroup(0, (2,))
    if n % 2 == 1:
        groups[n] = FinAbGroup.free(1)
    return CohomologyProfile(groups)


class TestBettiNumbers:
    def test_rp3_mod2(self):
        assert mod2_betti(space("rp3")) == (1, 1, 1, 1)

    def test_rp3_rational(self):
        assert rational_betti(space("rp3")) == (1, 0, 0, 1)

    def test_torus_squared(self):
        M = space("gon4")
        assert rational_betti(M) == (1, 2, 1)
        assert mod2_betti(M) == (1, 2, 1)

    def test_octahedron_linear(self):
        assert mod2_betti(space("cross3")) == (1, 3, 3, 1)
        assert rational_betti(space("cross3")) == (1, 3, 3, 1)

    def test_klein_bottle(self):
        M = space("gon4klein")
        assert rational_betti(M) == (1, 1, 0)
        assert mod2_betti(M) == (1, 2, 1)


class TestIntegralCohomology:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_projective_space_regression(self, n):
        M = space(f"rp{n}")
        assert integral_cohomology(M) == classical_projective_profile(n)

    def test_join_negative_witness(self):
        profile = integral_cohomology(space("deltas0"))
        assert profile.group(3).torsion == (2,)
        assert profile.group(2).torsion == (2,)
        assert profile.group(1) == FinAbGroup.free(1)

    def test_klein_bottle_groups(self):
        profile = integral_cohomology(space("gon4klein"))
        assert profile.group(1) == FinAbGroup.free(1)
        assert profile.group(2) == FinAbGroup(0, (2,))

    def test_three_torus(self):
        profile = integral_cohomology(space("cross3"))
        assert [profile.group(q).rank for q in range(4)] == [1, 3, 3, 1]
        assert all(profile.group(q).is_torsion_free() for q in range(4))


class TestMuProfile:
    def test_projective_plane_pattern(self):
        profile = CohomologyProfile(
            {0: FinAbGroup.free(1), 2: FinAbGroup(0, (2,))}
        )
        assert mu_profile(profile) == (0, 0, 1)

    def test_torsion_free(self):
        assert mu_profile(CohomologyProfile({0: FinAbGroup.free(1)})) == (0,)

    def test_odd_torsion_invisible(self):
        profile = CohomologyProfile({2: FinAbGroup(0, (3, 4))})
        assert mu_profile(profile) == (0, 0, 1)


class TestBettiTable:
    def test_internal_identity(self):
        for name in ("rp3", "rp4", "deltas0", "gon4klein", "cross3mixed"):
            table = betti_table(space(name))
            n = len(table.b) - 1
            for q in range(n + 1):
                assert table.b_mod2[q] == table.b[q] + table.mu[q] + table.mu[q + 1]

    def test_rp3_mu(self):
        assert betti_table(space("rp3")).mu == (0, 0, 1, 0, 0)


class TestConditions:
    def test_positive_instance(self):
        report = evaluate_conditions(space("rp4"))
        assert set(report.conditions.values()) == {True}
        assert report.verdict == "equivalent-true"
        assert report.sq1_witness is None

    def test_negative_instance(self):
        report = evaluate_conditions(space("deltas0"))
        assert set(report.conditions.values()) == {False}
        assert report.verdict == "equivalent-false"
        assert report.torsion_witness == {3: (2,)}
        assert report.sq1_witness is not None

    def test_orientable_3d_betti_identity(self):
        # orientable 3-dimensional instances satisfy the k = 1 difference
        # identity with both sides zero
        table = betti_table(space("rp3"))
        assert table.b[2] - table.b[1] == 0
        assert table.b_mod2[2] - table.b_mod2[1] == 0

    def test_condition_subset(self):
        report = evaluate_conditions(space("rp3"), conditions=(1, 7))
        assert set(report.conditions) == {1, 7}

    def test_unknown_condition(self):
        with pytest.raises(ValueError):
            evaluate_conditions(space("rp3"), conditions=(8,))

    def test_all_catalog_instances_agree(self):
        from smallcover.catalog import catalog

        for name, entry in catalog().items():
            if entry.chi is None or name == "bier9":
                continue
            report = evaluate_conditions(space(name))
            assert report.hypotheses.all_hold(), name
            assert report.agree(), (name, report.conditions)


class TestOrientability:
    def test_projective_three_space(self):
        assert is_orientable_3d(space("rp3"))

    def test_three_torus(self):
        assert is_orientable_3d(space("cross3"))

    def test_join_is_nonorientable(self):
        assert not is_orientable_3d(space("deltas0"))

    def test_wrong_dimension(self):
        with pytest.raises(ValueError):
            is_orientable_3d(space("rp2"))

    def test_agrees_with_degree_three_torsion(self):
        for name in ("rp3", "cross3", "cross3mixed", "cross3notsimplex", "deltas0"):
            M = space(name)
            torsion_free = integral_cohomology(M).group(3).is_torsion_free()
            assert is_orientable_3d(M) == torsion_free, name
