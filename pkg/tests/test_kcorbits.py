import pytest
from hypothesis import given, strategies as st

from lcalc.kcorbits import (
    Composition,
    Dominance,
    Partition,
    compositions_of,
    doubling_orbit,
    dominance_compare,
    greater_or_noncomparable,
    semi_whittaker_dim_bound,
    valid_nilpotent_orbit,
)
from lcalc.symmfunc import partitions_of

D = Dominance


def test_dominance_examples():
    assert dominance_compare((2, 2), (2, 1, 1)) == D.GREATER
    assert dominance_compare((3, 1, 1, 1), (2, 2, 2)) == D.INCOMPARABLE
    assert dominance_compare((3, 2), (3, 2)) == D.EQUAL
    assert dominance_compare((2, 1, 1), (2, 2)) == D.LESS
    assert dominance_compare((2,), (1,)) == D.INCOMPARABLE


def test_composition_uses_sorted_form():
    assert dominance_compare(Composition((1, 0, 3)), (3, 1)) == D.EQUAL
    assert Composition.parse("1,0,3").underlying_partition() == Partition((3, 1))


def test_greater_or_noncomparable():
    assert greater_or_noncomparable((3, 1), (2, 2))
    assert not greater_or_noncomparable((2, 2), (2, 2))
    assert not greater_or_noncomparable((2, 1, 1), (2, 2))
    with pytest.raises(ValueError):
        greater_or_noncomparable((2, 1), (2, 2))


partition_pairs = st.integers(1, 9).flatmap(
    lambda n: st.tuples(*(st.sampled_from(list(partitions_of(n))) for _ in range(3))))


@given(partition_pairs)
def test_dominance_is_partial_order(triple):
    a, b, c = triple
    assert dominance_compare(a, a) == D.EQUAL
    ab, ba = dominance_compare(a, b), dominance_compare(b, a)
    flip = {D.LESS: D.GREATER, D.GREATER: D.LESS, D.EQUAL: D.EQUAL, D.INCOMPARABLE: D.INCOMPARABLE}
    assert ba == flip[ab]
    if ab == D.EQUAL:
        assert a == b
    ge = (D.GREATER, D.EQUAL)
    if ab in ge and dominance_compare(b, c) in ge:
        assert dominance_compare(a, c) in ge


def test_validity_examples():
    assert valid_nilpotent_orbit("Sp", (3, 3, 1, 1))
    assert not valid_nilpotent_orbit("Sp", (3, 1))
    assert valid_nilpotent_orbit("SO", (2, 2, 1, 1, 1, 1))
    assert not valid_nilpotent_orbit("SO", (2, 1))
    assert valid_nilpotent_orbit("GL", (2, 1))


def test_doubling_orbit_examples():
    assert doubling_orbit("Sp", 2, 4) == Partition((3, 3, 3, 3, 1, 1, 1, 1))
    assert doubling_orbit("SO", 1, 2) == Partition((1, 1, 1, 1))
    with pytest.raises(ValueError):
        doubling_orbit("Sp", 2, 3)


def test_dim_bound_examples():
    for c in range(1, 5):
        assert semi_whittaker_dim_bound(1, c, (1,) * c) == 1
    assert semi_whittaker_dim_bound(2, 1, (2,)) == 1
    assert semi_whittaker_dim_bound(2, 2, (3, 1)) == 0
    assert semi_whittaker_dim_bound(2, 2, (2, 2)) == 1
    with pytest.raises(ValueError):
        semi_whittaker_dim_bound(2, 2, (2, 1))


@pytest.mark.parametrize("k,c", [(k, c) for k in range(1, 6) for c in range(1, 5)])
def test_rectangle_has_multiplicity_one(k, c):
    assert semi_whittaker_dim_bound(k, c, Partition.rectangle(k, c)) == 1


@pytest.mark.parametrize("k,c", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_vanishing_for_large_parts(k, c):
    for lam in compositions_of(k * c):
        if max(lam) > k:
            assert semi_whittaker_dim_bound(k, c, lam) == 0


def test_bound_depends_only_on_multiset_not_on_padding():
    assert semi_whittaker_dim_bound(2, 2, (2, 0, 2)) == semi_whittaker_dim_bound(2, 2, (2, 2))


def test_compositions_of():
    assert list(compositions_of(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(list(compositions_of(10))) == 2 ** 9
    assert list(compositions_of(2, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_malformed_partitions():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Composition.parse("2,x")
