import pytest
from hypothesis import given, settings, strategies as st

from signedkron.partitions import (ArityMismatch, BoundExceeded, MiddleStats,
                                   NotAPartition, OddBlock, Partition, cap,
                                   compose, crossing, cup,
                                   enumerate_partitions,
                                   half_commutation_crossing,
                                   identity_pairing, involution,
                                   is_noncrossing, make_partition,
                                   membership_named, named_partition,
                                   one_block, partition_from_dict,
                                   partition_to_dict, tensor)

from conftest import brute_force_even_partitions


class TestConstruction:
    def test_cup_is_smallest(self):
        part = make_partition(0, 2, [["d1", "d2"]])
        assert part == cup()
        assert (part.k, part.l) == (0, 2)

    def test_one_three_block(self):
        part = make_partition(1, 3, [["u1", "d1", "d2", "d3"]])
        assert part == one_block(1, 3)
        assert len(part.blocks) == 1

    def test_singletons_rejected(self):
        with pytest.raises(OddBlock):
            make_partition(1, 1, [["u1"], ["d1"]])

    def test_overlap_rejected(self):
        with pytest.raises(NotAPartition):
            make_partition(0, 2, [["d1", "d2"], ["d2", "d1"]])

    def test_gap_rejected(self):
        with pytest.raises(NotAPartition):
            make_partition(0, 4, [["d1", "d2"]])

    def test_out_of_range_rejected(self):
        with pytest.raises(NotAPartition):
            make_partition(0, 2, [["d1", "d3"]])

    def test_canonical_order_independent(self):
        a = make_partition(2, 2, [["u1", "d2"], ["u2", "d1"]])
        b = make_partition(2, 2, [["d1", "u2"], ["d2", "u1"]])
        assert a == b
        assert hash(a) == hash(b)

    def test_json_round_trip(self):
        part = one_block(1, 3)
        data = partition_to_dict(part)
        assert data == {"k": 1, "l": 3, "blocks": [["u1", "d1", "d2", "d3"]]}
        assert partition_from_dict(data) == part

    def test_named_partitions(self):
        assert named_partition("cup") == cup()
        assert named_partition("onethreeblock") == one_block(1, 3)
        with pytest.raises(ValueError):
            named_partition("nope")


class TestEnumeration:
    def test_cell_0_2(self):
        assert enumerate_partitions(0, 2, "peven") == [cup()]

    def test_pair_counts_small(self):
        assert len(enumerate_partitions(0, 4, "p2")) == 3
        assert len(enumerate_partitions(0, 4, "nceven")) == 3

    @pytest.mark.parametrize("m,count", [(1, 1), (2, 3), (3, 15), (4, 105)])
    def test_double_factorial(self, m, count):
        assert len(enumerate_partitions(0, 2 * m, "p2")) == count

    @pytest.mark.parametrize("m,count", [(1, 1), (2, 2), (3, 5), (4, 14)])
    def test_catalan(self, m, count):
        assert len(enumerate_partitions(0, 2 * m, "nc2")) == count

    @pytest.mark.parametrize("k,l", [(1, 0), (0, 1), (2, 1), (1, 2), (3, 2)])
    def test_odd_total_empty(self, k, l):
        assert enumerate_partitions(k, l, "peven") == []

    @pytest.mark.parametrize("k,l", [(0, 2), (1, 1), (0, 4), (2, 2), (1, 3),
                                     (3, 3), (0, 6)])
    def test_against_insertion_enumerator(self, k, l):
        ours = set(enumerate_partitions(k, l, "peven"))
        theirs = brute_force_even_partitions(k, l)
        assert ours == theirs

    def test_classes_nest(self):
        for (k, l) in [(0, 4), (2, 2), (1, 3), (3, 3)]:
            peven = set(enumerate_partitions(k, l, "peven"))
            p2 = set(enumerate_partitions(k, l, "p2"))
            nceven = set(enumerate_partitions(k, l, "nceven"))
            nc2 = set(enumerate_partitions(k, l, "nc2"))
            assert nc2 <= p2 <= peven
            assert nc2 <= nceven <= peven
            assert nceven == {p for p in peven if is_noncrossing(p)}
            assert nc2 == {p for p in p2 if is_noncrossing(p)}

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            enumerate_partitions(7, 7, "p2")

    def test_sorted_duplicate_free(self):
        parts = enumerate_partitions(2, 2, "peven")
        assert parts == sorted(set(parts))


class TestNoncrossing:
    def test_standard_crossing_lower_row(self):
        assert not is_noncrossing(make_partition(0, 4, [["d1", "d3"],
                                                        ["d2", "d4"]]))

    def test_identity_pairing(self):
        assert is_noncrossing(identity_pairing(2))

    def test_single_block(self):
        assert is_noncrossing(one_block(1, 3))

    def test_two_row_crossing(self):
        assert not is_noncrossing(crossing())

    def test_nested_lower(self):
        assert is_noncrossing(make_partition(0, 4, [["d1", "d4"],
                                                    ["d2", "d3"]]))


class TestOperations:
    def test_tensor_strings(self):
        ident = identity_pairing()
        assert tensor(ident, ident) == identity_pairing(2)

    def test_tensor_cap_cup(self):
        part = tensor(cap(), cup())
        assert part == make_partition(2, 2, [["u1", "u2"], ["d1", "d2"]])

    def test_tensor_block_cup(self):
        part = tensor(one_block(1, 3), cup())
        assert part == make_partition(1, 5, [["u1", "d1", "d2", "d3"],
                                             ["d4", "d5"]])

    def test_involution_cap(self):
        assert involution(cap()) == cup()

    def test_involution_block(self):
        assert involution(one_block(1, 3)) == one_block(3, 1)

    def test_involution_identity(self):
        assert involution(identity_pairing(2)) == identity_pairing(2)

    def test_compose_loop(self):
        result, stats = compose(cup(), cap())
        assert result == Partition(0, 0, [])
        assert stats == MiddleStats(1, (2,))

    def test_compose_identity_law(self):
        for part in enumerate_partitions(2, 2, "peven"):
            result, stats = compose(part, identity_pairing(2))
            assert result == part
            assert stats.removed_components == 0

    def test_compose_block_with_caps(self):
        result, stats = compose(one_block(0, 4), tensor(cap(), cap()))
        assert result == Partition(0, 0, [])
        assert stats.removed_components == 1
        assert stats.component_sizes == (4,)

    def test_compose_arity(self):
        with pytest.raises(ArityMismatch):
            compose(cup(), one_block(4, 0))

    def test_half_commutation_shape(self):
        part = half_commutation_crossing()
        assert membership_named(part, "p2")
        assert not membership_named(part, "nc2")


class TestInvariants:
    @pytest.mark.parametrize("k,l", [(0, 2), (1, 1), (2, 2), (1, 3), (0, 4),
                                     (3, 3), (2, 4)])
    def test_canonical_idempotent(self, k, l):
        for part in enumerate_partitions(k, l, "peven"):
            rebuilt = Partition(part.k, part.l, part.blocks)
            assert rebuilt == part
            assert rebuilt.blocks == part.blocks

    def test_tensor_associative(self):
        parts = enumerate_partitions(1, 1, "peven") + \
            enumerate_partitions(0, 2, "peven") + \
            enumerate_partitions(2, 2, "peven")
        for a in parts:
            for b in parts:
                for c in parts:
                    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))

    def test_involution_antimultiplicative(self):
        parts = enumerate_partitions(2, 2, "peven") + \
            enumerate_partitions(1, 3, "peven")
        for a in parts:
            for b in parts:
                assert involution(tensor(a, b)) == \
                    tensor(involution(a), involution(b))

    def test_involution_involutive(self):
        for k, l in [(2, 2), (1, 3), (0, 4)]:
            for part in enumerate_partitions(k, l, "peven"):
                assert involution(involution(part)) == part

    def test_glued_blocks_stay_even(self):
        # each middle point absorbs one leg from either side, so outer
        # blocks keep even size; the guard must never fire
        cells = [(0, 2), (2, 0), (1, 1), (2, 2), (1, 3), (3, 1), (0, 4),
                 (4, 0), (3, 3)]
        pool = {cell: enumerate_partitions(*cell, "peven") for cell in cells}
        for (k, l) in cells:
            for (l2, L) in cells:
                if l != l2:
                    continue
                for sigma in pool[(k, l)]:
                    for pi in pool[(l2, L)]:
                        result, _ = compose(sigma, pi)
                        assert all(len(b) % 2 == 0 for b in result.blocks)

    def test_compose_associative_partition_part(self):
        cells = [(1, 1), (1, 3), (3, 1), (2, 2), (0, 2), (2, 0), (3, 3)]
        pool = {cell: enumerate_partitions(*cell, "peven") for cell in cells}
        triples = 0
        for (k1, l1) in cells:
            for (k2, l2) in cells:
                if l1 != k2:
                    continue
                for (k3, l3) in cells:
                    if l2 != k3:
                        continue
                    for a in pool[(k1, l1)]:
                        for b in pool[(k2, l2)]:
                            ab = compose(a, b)[0]
                            for c in pool[(k3, l3)]:
                                left = compose(ab, c)[0]
                                right = compose(a, compose(b, c)[0])[0]
                                assert left == right
                                triples += 1
        assert triples > 100


@st.composite
def random_partitions(draw):
    k = draw(st.integers(min_value=0, max_value=3))
    l = draw(st.integers(min_value=0, max_value=3))
    if (k + l) % 2:
        l = l + 1 if l < 3 else l - 1
    cell = enumerate_partitions(k, l, "peven")
    if not cell:
        return Partition(0, 0, [])
    return cell[draw(st.integers(min_value=0, max_value=len(cell) - 1))]


@given(random_partitions(), random_partitions())
@settings(max_examples=60, deadline=None)
def test_tensor_arity_property(a, b):
    combined = tensor(a, b)
    assert combined.k == a.k + b.k
    assert combined.l == a.l + b.l
    assert len(combined.blocks) == len(a.blocks) + len(b.blocks)
    assert involution(combined) == tensor(involution(a), involution(b))


@given(random_partitions())
@settings(max_examples=60, deadline=None)
def test_compose_with_identity_property(part):
    if part.l:
        assert compose(part, identity_pairing(part.l))[0] == part
    if part.k:
        assert compose(identity_pairing(part.k), part)[0] == part
