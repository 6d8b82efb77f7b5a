import pytest

from signedkron.groups import Unsupported
from signedkron.homspace import (commutant_dimension, containment_check,
                                 gram_matrix, hom_report, in_span,
                                 span_dimension)
from signedkron.intertwiners import build_T, sparse_product
from signedkron.partitions import (BoundExceeded, cup, enumerate_partitions,
                                   identity_pairing, make_partition,
                                   one_block)
from signedkron.superspace import make_superspace

SP2 = make_superspace(1, 0, -1)
SP4 = make_superspace(2, 0, -1)
O3 = make_superspace(0, 3, 1)
MIX3 = make_superspace(1, 1, 1)


class TestGram:
    def test_identity_gram_is_dimension(self):
        for space in (SP2, O3, MIX3):
            G = gram_matrix([identity_pairing()], space, 1, 1)
            assert G == [[space.n]]

    def test_cup_at_sp2(self):
        assert gram_matrix([cup()], SP2, 0, 2) == [[2]]

    def test_pairings_classical(self):
        # diagonal n^2, off-diagonal n for the three 4-point pairings
        for n in (2, 3):
            space = make_superspace(0, n, 1)
            parts = enumerate_partitions(0, 4, "p2")
            G = gram_matrix(parts, space, 0, 4)
            dense = [build_T(p, space).dense() for p in parts]
            for a in range(3):
                for b in range(3):
                    expected = int((dense[a] * dense[b]).sum())
                    assert G[a][b] == expected
                    assert G[a][b] == (n * n if a == b else n)

    def test_reorder_invariance(self):
        parts = enumerate_partitions(0, 4, "p2")
        r1 = span_dimension("p2", 0, 4, SP2)
        G = gram_matrix(list(reversed(parts)), SP2, 0, 4)
        from signedkron.exactrank import integer_rank
        assert integer_rank(G) == r1


class TestSpanDimension:
    def test_single_pairing(self):
        assert span_dimension("p2", 0, 2, SP2) == 1
        assert span_dimension("p2", 0, 2, O3) == 1

    def test_degenerate_at_n2(self):
        assert span_dimension("p2", 0, 4, SP2) == 2

    def test_full_rank_at_n4(self):
        assert span_dimension("p2", 0, 4, SP4) == 3

    def test_odd_cells_are_zero(self):
        assert span_dimension("p2", 0, 3, O3) == 0
        assert span_dimension("peven", 1, 2, SP2) == 0

    def test_fixed_point_relabel_invariance(self):
        # two classical spaces of the same dimension give equal ranks
        a = make_superspace(0, 3, 1)
        for k, l in [(1, 1), (0, 4), (2, 2)]:
            assert span_dimension("peven", k, l, a) == \
                span_dimension("peven", k, l, make_superspace(0, 3, 1))

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            span_dimension("p2", 5, 5, SP2)


class TestCommutant:
    def test_sp2_invariant_form(self):
        assert commutant_dimension("obar", 0, 2, SP2, seed=1) == 1

    def test_sp2_fourth_power(self):
        assert commutant_dimension("obar", 0, 4, SP2, seed=1) == 2

    def test_hbar_matches_even_partition_count(self):
        assert commutant_dimension("hbar", 0, 2, SP4, seed=1) == 1

    def test_scalar_cell(self):
        assert commutant_dimension("obar", 0, 0, SP2, seed=1) == 1

    def test_odd_cell_vanishes(self):
        assert commutant_dimension("obar", 0, 1, SP2, seed=1) == 0
        assert commutant_dimension("obar", 1, 2, O3, seed=1) == 0

    def test_state_bound(self):
        with pytest.raises(BoundExceeded):
            commutant_dimension("obar", 4, 4, make_superspace(0, 4, 1))

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            commutant_dimension("obar", 0, 2, SP2, samples=4)

    def test_monotone_stabilization(self):
        dims = [commutant_dimension("obar", 2, 2, SP2, samples=s, seed=3)
                for s in (8, 16, 32)]
        assert dims[0] >= dims[1] == dims[2]


class TestContainment:
    def test_identity_commutes(self):
        assert containment_check("p2", 1, 1, "obar", make_superspace(2, 1, 1),
                                 samples=20, seed=5) <= 1e-10

    def test_symplectic_form_invariant(self):
        assert containment_check("p2", 0, 2, "obar", SP4,
                                 samples=20, seed=5) <= 1e-10

    def test_hbar_one_three(self):
        assert containment_check("peven", 1, 3, "hbar", SP4,
                                 samples=20, seed=5) <= 1e-10

    def test_unsupported_pairing(self):
        with pytest.raises(Unsupported):
            containment_check("peven", 1, 1, "obar", SP2)
        with pytest.raises(Unsupported):
            containment_check("nc2", 1, 1, "obar", SP2)


class TestHomReport:
    def test_sp2_four_points_equal(self):
        rep = hom_report("obar", "p2", 0, 4, SP2, samples=16, seed=7)
        assert rep.verdict == "equal"
        assert rep.span_rank == rep.commutant_dim == 2

    def test_o3_brauer(self):
        rep = hom_report("obar", "p2", 2, 2, O3, samples=16, seed=7)
        assert rep.verdict == "equal"
        assert rep.span_rank == rep.commutant_dim == 3

    def test_hbar_single_pair_equal_through_six_legs(self):
        for eps in (1, -1):
            space = make_superspace(1, 0, eps)
            for k, l in [(1, 1), (0, 2), (0, 4), (1, 3), (2, 2), (3, 3)]:
                rep = hom_report("hbar", "peven", k, l, space,
                                 samples=16, seed=7)
                assert rep.verdict == "equal", (eps, k, l)

    def test_hbar_two_pairs_has_local_invariants(self):
        # with two index pairs the wreath product keeps pair-local
        # invariants at four legs: commutant (36+6+6)/8 = 6 by the fourth
        # character moment, against only four partition maps
        for eps in (1, -1):
            rep = hom_report("hbar", "peven", 1, 3, make_superspace(2, 0, eps),
                             samples=16, seed=7)
            assert rep.verdict == "span-deficient"
            assert rep.span_rank == 4
            assert rep.commutant_dim == 6
            assert rep.containment_max_residual <= 1e-10

    def test_mixed_signature_span_deficiency(self):
        # at a mixed signature the hyperoctahedral representation splits,
        # the commutant gains a block the partition maps cannot see
        rep = hom_report("hbar", "peven", 1, 1, MIX3, samples=16, seed=7)
        assert rep.verdict == "span-deficient"
        assert rep.span_rank == 1
        assert rep.commutant_dim == 2
        assert rep.containment_max_residual <= 1e-10

    def test_adjoint_symmetry(self):
        a = hom_report("obar", "p2", 1, 3, SP2, samples=16, seed=7)
        b = hom_report("obar", "p2", 3, 1, SP2, samples=16, seed=7)
        assert (a.span_rank, a.commutant_dim) == (b.span_rank, b.commutant_dim)


class TestSpanClosure:
    def test_product_vector_in_span(self):
        # the minimal span-valued product lands exactly on a two-term
        # combination inside the four-point cell
        sigma = cup()
        pi = make_partition(2, 4, [["u1", "d1", "d2", "d4"], ["u2", "d3"]])
        product = sparse_product(build_T(pi, SP2), build_T(sigma, SP2))
        parts = enumerate_partitions(0, 4, "peven")
        assert in_span(product, parts, SP2, 0, 4)

    def test_mixed_signature_product_leaves_span(self):
        sigma = one_block(1, 3)
        pi = make_partition(3, 1, [["u1", "u3"], ["u2", "d1"]])
        product = sparse_product(build_T(pi, MIX3), build_T(sigma, MIX3))
        parts = enumerate_partitions(1, 1, "peven")
        assert not in_span(product, parts, MIX3, 1, 1)

    def test_span_closure_on_single_pair_space(self):
        # on the single-pair space every nonzero composition product stays
        # inside the exact linear span of the target cell's maps
        import itertools
        cells = [(0, 2), (2, 2), (1, 3), (2, 0), (1, 1), (3, 1), (0, 4)]
        checked = 0
        for (k, l), (l2, L) in itertools.product(cells, cells):
            if l != l2:
                continue
            for sigma in enumerate_partitions(k, l, "peven"):
                for pi in enumerate_partitions(l, L, "peven"):
                    product = sparse_product(build_T(pi, SP2),
                                             build_T(sigma, SP2))
                    if not product:
                        continue
                    parts = enumerate_partitions(k, L, "peven")
                    assert in_span(product, parts, SP2, k, L), (sigma, pi)
                    checked += 1
        assert checked >= 60
