"""Characteristic matrices: validation, classification, descriptors."""

import random

import pytest

from smallcover.charmap import (
    CharacteristicMatrix,
    CharMapError,
    PullbackLabel,
    block_product,
    classify_pullback,
    classify_via_flips,
    lambda_boundary_simplex,
    omega_descriptors,
    ridge_flip_support,
)
from smallcover.gf2 import BitMatrix, BitVec, enumerate_gl
from smallcover.simplicial import (
    SimplicialComplex,
    boundary_of_simplex,
    cross_polytope_boundary,
)


def octahedron_linear():
    K = cross_polytope_boundary(3)
    cols = [BitVec.unit(3, i) for i in range(3)] * 2
    cols = cols[:3] + cols[:3]
    return CharacteristicMatrix(K, BitMatrix.from_columns(cols))


def join_negative():
    s0 = SimplicialComplex([1, 2], [(1,), (2,)])
    chi_s0 = CharacteristicMatrix(
        s0, BitMatrix.from_columns([BitVec.unit(1, 0), BitVec.unit(1, 0)])
    )
    return block_product(lambda_boundary_simplex(2), chi_s0)


def brute_force_is_simplex_pullback(chi):
    """Oracle: search all of GL(n, 2) for a basis change putting every column
    inside the standard target set."""
    n = chi.n
    target = {1 << i for i in range(n)} | {(1 << n) - 1}
    cols = {chi.matrix.column(j).bits for j in range(chi.m)}
    for g in enumerate_gl(n):
        if all(g.apply(BitVec(n, c)).bits in target for c in cols):
            return True
    return False


def brute_force_is_linear_model(chi):
    n = chi.n
    target = {1 << i for i in range(n)}
    cols = {chi.matrix.column(j).bits for j in range(chi.m)}
    for g in enumerate_gl(n):
        if all(g.apply(BitVec(n, c)).bits in target for c in cols):
            return True
    return False


class TestValidation:
    def test_boundary_simplex_valid(self):
        chi = lambda_boundary_simplex(2)
        assert chi.n == 2 and chi.m == 3
        assert chi.matrix == BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])

    def test_octahedron_valid(self):
        octahedron_linear()

    def test_repeated_column_on_edge_rejected(self):
        K = boundary_of_simplex(2)
        with pytest.raises(CharMapError) as err:
            CharacteristicMatrix(K, BitMatrix.from_lists([[1, 0, 1], [0, 1, 0]]))
        assert "facet (1, 3)" in str(err.value)

    def test_column_count_mismatch(self):
        with pytest.raises(CharMapError):
            CharacteristicMatrix(boundary_of_simplex(2), BitMatrix.identity(2))


class TestClassifyPullback:
    def test_boundary_simplex_is_proper(self):
        cls = classify_pullback(lambda_boundary_simplex(3))
        assert cls.label is PullbackLabel.SIMPLEX_PROPER
        assert cls.is_simplex_pullback
        assert cls.coloring == {1: 1, 2: 2, 3: 3, 4: 4}

    def test_octahedron_is_linear(self):
        cls = classify_pullback(octahedron_linear())
        assert cls.label is PullbackLabel.LINEAR_MODEL
        assert cls.is_simplex_pullback

    def test_join_is_not_simplex(self):
        cls = classify_pullback(join_negative())
        assert cls.label is PullbackLabel.NOT_SIMPLEX
        assert not cls.is_simplex_pullback
        assert cls.coloring is None

    def test_join_matches_gl3_brute_force(self):
        assert not brute_force_is_simplex_pullback(join_negative())

    def test_witness_reproduces_coloring(self):
        for chi in (lambda_boundary_simplex(3), octahedron_linear()):
            cls = classify_pullback(chi)
            g = cls.basis_change
            n = chi.n
            for j, label in enumerate(chi.complex.labels):
                image = g.apply(chi.matrix.column(j)).bits
                if cls.coloring[label] <= n:
                    assert image == 1 << (cls.coloring[label] - 1)
                else:
                    assert image == (1 << n) - 1

    def test_coloring_nondegenerate_on_facets(self):
        for chi in (lambda_boundary_simplex(4), octahedron_linear()):
            coloring = classify_pullback(chi).coloring
            for facet in chi.complex.facets:
                colors = [coloring[v] for v in facet]
                assert len(set(colors)) == len(colors)


class TestRidgeFlipSupport:
    def test_boundary_simplex_full_support(self):
        chi = lambda_boundary_simplex(3)
        facet = (1, 2, 3)
        for i in (1, 2, 3):
            assert ridge_flip_support(chi, facet, i) == frozenset({1, 2, 3})

    def test_octahedron_singleton_support(self):
        chi = octahedron_linear()
        for facet in chi.complex.facets:
            for i in (1, 2, 3):
                assert ridge_flip_support(chi, facet, i) == frozenset({i})

    def test_join_has_intermediate_support(self):
        chi = join_negative()
        full = frozenset({1, 2, 3})
        bad = []
        for facet in chi.complex.facets:
            for i in (1, 2, 3):
                s = ridge_flip_support(chi, facet, i)
                if s != frozenset({i}) and s != full:
                    bad.append((facet, i, s))
        assert bad, "expected some support outside {{i}, [n]}"


class TestClassifyViaFlips:
    def test_agreement_on_fixed_instances(self):
        for chi in (
            lambda_boundary_simplex(2),
            lambda_boundary_simplex(3),
            octahedron_linear(),
            join_negative(),
        ):
            assert classify_via_flips(chi).label == classify_pullback(chi).label

    def test_requires_closed_pseudomanifold(self):
        K = SimplicialComplex([1, 2, 3], [(1, 2, 3)])
        chi = CharacteristicMatrix(K, BitMatrix.identity(3))
        with pytest.raises(CharMapError):
            classify_via_flips(chi)

    def test_agreement_and_brute_force_on_random_octahedra(self):
        rng = random.Random(314)
        checked = 0
        while checked < 12:
            cols = [BitVec(3, rng.getrandbits(3)) for _ in range(6)]
            try:
                chi = CharacteristicMatrix(
                    cross_polytope_boundary(3), BitMatrix.from_columns(cols)
                )
            except CharMapError:
                continue
            checked += 1
            cls = classify_pullback(chi)
            assert classify_via_flips(chi).label == cls.label
            assert cls.is_simplex_pullback == brute_force_is_simplex_pullback(chi)
            assert (cls.label is PullbackLabel.LINEAR_MODEL) == brute_force_is_linear_model(chi)

    def test_invariance_under_basis_change(self):
        rng = random.Random(11)
        chi = octahedron_linear()
        gls = list(enumerate_gl(3))
        for _ in range(10):
            g = gls[rng.randrange(len(gls))]
            cols = [g.apply(chi.matrix.column(j)) for j in range(chi.m)]
            changed = CharacteristicMatrix(chi.complex, BitMatrix.from_columns(cols))
            assert classify_pullback(changed).label is PullbackLabel.LINEAR_MODEL

    def test_invariance_under_vertex_relabeling(self):
        chi = lambda_boundary_simplex(3)
        perm = {1: 3, 2: 1, 3: 4, 4: 2}
        K = chi.complex
        relabeled = SimplicialComplex(
            sorted(perm.values()),
            [tuple(sorted(perm[v] for v in f)) for f in K.facets],
        )
        inv = {w: v for v, w in perm.items()}
        cols = [chi.column_for_label(inv[w]) for w in relabeled.labels]
        changed = CharacteristicMatrix(relabeled, BitMatrix.from_columns(cols))
        assert classify_pullback(changed).label is PullbackLabel.SIMPLEX_PROPER


class TestOmegaDescriptors:
    def test_boundary_simplex_two(self):
        chi = lambda_boundary_simplex(2)
        cls = classify_pullback(chi)
        descs = omega_descriptors(chi, cls.coloring)
        assert len(descs) == 4
        by_coeff = {d.coeffs.bits: d for d in descs}
        rho1 = by_coeff[0b01]
        assert rho1.support == {1, 3}
        assert rho1.s_omega == {1}
        assert rho1.chi_omega == {1, 3}
        zero = by_coeff[0]
        assert zero.support == frozenset()
        assert zero.chi_omega == frozenset()
        both = by_coeff[0b11]
        assert both.support == {1, 2}
        assert both.chi_omega == {1, 2}

    def test_even_subset_bijection(self):
        chi = lambda_boundary_simplex(3)
        descs = omega_descriptors(chi, classify_pullback(chi).coloring)
        chis = {d.chi_omega for d in descs}
        assert len(chis) == 8
        assert all(len(c) % 2 == 0 for c in chis)

    def test_color_swap_is_still_consistent(self):
        # swapping colors 1 and 2 matches a different basis change, so it is
        # a legitimate witness and must be accepted
        chi = lambda_boundary_simplex(2)
        omega_descriptors(chi, {1: 2, 2: 1, 3: 3})

    def test_inconsistent_coloring_rejected(self):
        chi = lambda_boundary_simplex(2)
        bad = {1: 1, 2: 2, 3: 2}  # describes a different row space
        with pytest.raises(CharMapError):
            omega_descriptors(chi, bad)

    def test_canonical_order(self):
        chi = octahedron_linear()
        descs = omega_descriptors(chi)
        assert [d.coeffs.bits for d in descs] == list(range(8))


class TestBuilders:
    def test_lambda_boundary_simplex_columns(self):
        chi = lambda_boundary_simplex(2)
        assert [chi.matrix.column(j).coords() for j in range(3)] == [
            (1, 0), (0, 1), (1, 1),
        ]

    def test_block_product_of_segments(self):
        seg = lambda_boundary_simplex(1)
        prod = block_product(seg, seg)
        assert prod.n == 2 and prod.m == 4
        cols = [prod.matrix.column(j).coords() for j in range(4)]
        assert cols == [(1, 0), (1, 0), (0, 1), (0, 1)]
        assert classify_pullback(prod).label is PullbackLabel.LINEAR_MODEL

    def test_block_product_join_instance(self):
        chi = join_negative()
        cols = [chi.matrix.column(j).coords() for j in range(5)]
        assert cols == [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (0, 0, 1)]
