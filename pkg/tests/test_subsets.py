import itertools

import pytest
from hypothesis import given, strategies as st

from geoprod import IntegerSubset, composition_count, enumerate_geo, geo_groups
from geoprod.subsets import bounded_composition_count

st_ground = st.lists(st.integers(1, 20), min_size=0, max_size=8, unique=True)


def members(subsets):
    return [s.elements for s in subsets]


def test_enumerate_small_ground_sets():
    assert members(enumerate_geo([1, 2])) == [(1,), (2,), (1, 2)]
    assert members(enumerate_geo([1])) == [(1,)]
    assert members(enumerate_geo([])) == []


def test_group_of_three_matches_canonical_listing():
    groups = dict(geo_groups([1, 2, 3]))
    assert members(groups[3]) == [(3,), (1, 2, 3), (1, 3), (2, 3)]


def test_non_contiguous_ground_set():
    got = members(enumerate_geo([2, 4]))
    assert got == [(2,), (4,), (2, 4)]


def test_subset_validation():
    with pytest.raises(ValueError):
        IntegerSubset(())
    with pytest.raises(ValueError):
        IntegerSubset((2, 2))
    with pytest.raises(ValueError):
        IntegerSubset((3, 1))
    with pytest.raises(ValueError):
        IntegerSubset((0, 1))
    s = IntegerSubset((2, 5, 9))
    assert s.greatest == 9
    assert len(s) == 3
    assert 5 in s


@given(ground=st_ground)
def test_enumeration_is_complete_and_grouped(ground):
    ground_sorted = sorted(ground)
    seen = members(enumerate_geo(ground))
    expected = set()
    for size in range(1, len(ground_sorted) + 1):
        expected.update(itertools.combinations(ground_sorted, size))
    assert len(seen) == len(set(seen)) == len(expected)
    assert set(seen) == expected
    maxima = [s[-1] for s in seen]
    assert maxima == sorted(maxima)


def test_parity_bookkeeping():
    for size in range(1, 13):
        odd = even = 0
        for subset in enumerate_geo(range(1, size + 1)):
            if len(subset) % 2:
                odd += 1
            else:
                even += 1
        assert odd - even == 1


def test_group_sizes_double():
    for m, group in geo_groups(range(1, 9)):
        assert len(group) == 2 ** (m - 1)


def brute_force_compositions(n, parts, largest=None):
    hi = n if largest is None else largest
    return sum(
        1
        for combo in itertools.product(range(1, hi + 1), repeat=parts)
        if sum(combo) == n
    )


def test_composition_count_examples():
    assert composition_count(1, 1) == 1
    assert composition_count(3, 2) == brute_force_compositions(3, 2) == 2
    assert composition_count(5, 3) == brute_force_compositions(5, 3) == 6
    assert composition_count(2, 3) == 0
    with pytest.raises(ValueError):
        composition_count(4, 0)


@given(n=st.integers(1, 12), parts=st.integers(1, 4))
def test_composition_count_matches_enumeration(n, parts):
    assert composition_count(n, parts) == brute_force_compositions(n, parts)


@given(n=st.integers(1, 14), parts=st.integers(1, 3), largest=st.integers(1, 6))
def test_bounded_composition_count_matches_enumeration(n, parts, largest):
    assert bounded_composition_count(n, parts, largest) == brute_force_compositions(
        n, parts, largest
    )
