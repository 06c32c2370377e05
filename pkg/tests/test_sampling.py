import cmath
import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from geoprod import (
    DegenerateRatioError,
    RatioConstraintError,
    RatioSchedule,
    TruncationSpec,
    ZeroFunctionValueError,
    AnalyticFunctionModel,
    builtin,
    consolidated_product,
    evaluate,
    poly_exp_model,
    sample_points,
    sampling_point,
    sampling_product,
    sampling_quotient,
    subset_prefactor,
)


def test_sampling_point_examples():
    assert sampling_point(1, 1, 2) == pytest.approx(0.5)
    assert sampling_point(1, 3, 2) == pytest.approx(0.125)
    # oracle: sqrt(3)/2 by direct real arithmetic
    assert sampling_point(2, 1, 2) == pytest.approx(math.sqrt(3) / 2)


def test_sampling_point_degenerate_ratio():
    with pytest.raises(DegenerateRatioError):
        sampling_point(1, 1, 1.0)
    with pytest.raises(DegenerateRatioError):
        sampling_point(4, 2, 1j)  # (1j)**4 == 1


def test_ratio_schedule_validation():
    with pytest.raises(RatioConstraintError):
        RatioSchedule.common(0.9).validate([1])
    bad = 0.5 + 1.1j  # |r| > 1, Re(r**2) < 1/2
    with pytest.raises(RatioConstraintError):
        RatioSchedule.common(bad).validate([2])
    RatioSchedule.common(bad, entire_function_mode=True).validate([2])
    RatioSchedule.common(2).validate([1, 2, 3, 4])


def test_prime_power_schedule_ratios():
    schedule = RatioSchedule.prime_power(2)
    assert schedule.ratio_for(1) == pytest.approx(4)
    assert schedule.ratio_for(2) == pytest.approx(9)
    assert schedule.ratio_for(3) == pytest.approx(25)


def test_truncation_spec_normalizes():
    spec = TruncationSpec((4, 2, 2), 10, RatioSchedule.common(2))
    assert spec.s_max == (2, 4)
    with pytest.raises(ValueError):
        TruncationSpec((), 10, RatioSchedule.common(2))
    with pytest.raises(ValueError):
        TruncationSpec((1,), 0, RatioSchedule.common(2))


def test_single_factor_product_reproduces_factor():
    # oracle: geometric series gives exactly exp(c_k z**k) in the deep limit
    f = builtin("poly-exp:0,1")
    got = sampling_product(f, (2,), 1.0, RatioSchedule.common(2), 60)
    assert got == pytest.approx(math.e, rel=1e-10)


def test_empty_subset_returns_function_value():
    f = builtin("exp")
    assert sampling_product(f, (), 0.7, RatioSchedule.common(2), 10) == pytest.approx(
        math.exp(0.7)
    )


@pytest.mark.parametrize("cap", [5, 20])
def test_singleton_partial_geometric_sum(cap):
    # oracle: sum over n <= N of (r-1)/r**n equals 1 - r**-N
    f = builtin("exp")
    got = sampling_product(f, (1,), 1.0, RatioSchedule.common(2), cap)
    assert got == pytest.approx(math.exp(1 - 2.0**-cap), rel=1e-13)


def test_box_product_matches_brute_force_common():
    f = builtin("poly-exp:0.3,0.2,0.1")
    r, z, cap = 1.7, 0.6 + 0.2j, 5
    got = sampling_product(f, (1, 3), z, RatioSchedule.common(r), cap)
    direct = 1 + 0j
    for tup in itertools.product(range(1, cap + 1), repeat=2):
        coef = sampling_point(1, tup[0], r) * sampling_point(3, tup[1], r)
        direct *= evaluate(f, coef * z)
    assert got == pytest.approx(direct, rel=1e-12)


def test_box_product_matches_brute_force_per_k():
    f = builtin("poly-exp:0.3,0.2,0.1")
    schedule = RatioSchedule.per_k([1.5, 2.0, 2.5])
    z, cap = 0.6 + 0.2j, 5
    got = sampling_product(f, (1, 3), z, schedule, cap)
    direct = 1 + 0j
    for tup in itertools.product(range(1, cap + 1), repeat=2):
        coef = sampling_point(1, tup[0], 1.5) * sampling_point(3, tup[1], 2.5)
        direct *= evaluate(f, coef * z)
    assert got == pytest.approx(direct, rel=1e-12)


def test_consolidated_equals_singleton_box():
    f = builtin("exp")
    box = sampling_product(f, (1,), 0.9, RatioSchedule.common(2), 30)
    consolidated = consolidated_product(f, (1,), 0.9, 2, 30)
    assert consolidated == pytest.approx(box, rel=1e-13)


def test_consolidated_matches_direct_total_budget_enumeration():
    # oracle: enumerate every index tuple with n_1 + n_2 <= n_max directly
    f = builtin("exp")
    r, z, n_max = 2.0, 1.0, 30
    got = consolidated_product(f, (1, 2), z, r, n_max)
    direct = 1 + 0j
    for n1 in range(1, n_max + 1):
        for n2 in range(1, n_max - n1 + 1):
            coef = sampling_point(1, n1, r) * sampling_point(2, n2, r)
            direct *= evaluate(f, coef * z)
    assert got == pytest.approx(direct, rel=1e-10)


def test_consolidated_exponents_follow_composition_counts():
    # with s = {1,2}: one composition at n = 2, two at n = 3
    f = builtin("exp")
    r, z = 2.0, 0.5
    a = subset_prefactor((1, 2), RatioSchedule.common(r))
    expected = evaluate(f, a * z / r**2) * evaluate(f, a * z / r**3) ** 2
    got = consolidated_product(f, (1, 2), z, r, 3)
    assert got == pytest.approx(expected, rel=1e-13)


def test_quotient_single_subset_is_product():
    f = builtin("exp")
    schedule = RatioSchedule.common(2)
    quotient = sampling_quotient(f, [(1,)], 0.8, schedule, 25)
    product = sampling_product(f, (1,), 0.8, schedule, 25)
    assert quotient == pytest.approx(product, rel=1e-13)


def test_quotient_odd_over_even_layout():
    f = builtin("exp")
    schedule = RatioSchedule.common(2)
    z, n_max = 0.7, 20
    family = [(1,), (2,), (1, 2)]
    quotient = sampling_quotient(f, family, z, schedule, n_max)
    p1 = consolidated_product(f, (1,), z, 2, n_max)
    p2 = consolidated_product(f, (2,), z, 2, n_max)
    p12 = consolidated_product(f, (1, 2), z, 2, n_max)
    assert quotient == pytest.approx(p1 * p2 / p12, rel=1e-12)


def test_full_family_quotient_recovers_function():
    # oracle: direct evaluation of exp(z + z**2) at z = 0.5
    f = builtin("poly-exp:1,1")
    z = 0.5
    family = [(1,), (2,), (1, 2)]
    got = sampling_quotient(f, family, z, RatioSchedule.common(2), 50)
    assert got == pytest.approx(cmath.exp(z + z * z), rel=1e-8)


def test_index_removal_property():
    rng = random.Random(4242)
    for _ in range(12):
        k = rng.randint(1, 5)
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        coeffs = [0j] * k
        coeffs[k - 1] = c
        f = poly_exp_model(coeffs)
        others = [j for j in range(1, 6) if j != k]
        rng.shuffle(others)
        with_k = tuple(sorted([k] + others[:2]))
        without_k = tuple(j for j in with_k if j != k)
        r = rng.uniform(1.5, 3.0)
        z = cmath.rect(rng.uniform(0, 1), rng.uniform(-math.pi, math.pi))
        schedule = RatioSchedule.common(r)
        lhs = sampling_product(f, with_k, z, schedule, 60)
        rhs = sampling_product(f, without_k, z, schedule, 60)
        assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


def test_multiplicativity_in_the_function():
    f = builtin("poly-exp:0.4,-0.1")
    g = builtin("poly-exp:-0.2,0.3")
    fg = poly_exp_model([0.2, 0.2])
    schedule = RatioSchedule.common(1.8)
    z, cap = 0.5 + 0.3j, 25
    for subset in [(1,), (2,), (1, 2)]:
        left = sampling_product(fg, subset, z, schedule, cap)
        right = sampling_product(f, subset, z, schedule, cap) * sampling_product(
            g, subset, z, schedule, cap
        )
        assert left == pytest.approx(right, rel=1e-10)


def test_family_additivity_for_disjoint_families():
    f = builtin("poly-exp:0.5,0.2,-0.1")
    schedule = RatioSchedule.common(2.2)
    z, n_max = 0.4, 25
    family_one = [(1,), (1, 2)]
    family_two = [(2,), (3,), (1, 3)]
    combined = sampling_quotient(f, family_one + family_two, z, schedule, n_max)
    split = sampling_quotient(f, family_one, z, schedule, n_max) * sampling_quotient(
        f, family_two, z, schedule, n_max
    )
    assert combined == pytest.approx(split, rel=1e-10)


@given(
    r=st.floats(1.2, 3.0),
    cap=st.integers(1, 6),
    z_mag=st.floats(0.1, 2.0),
)
@settings(max_examples=40)
def test_points_stay_strictly_inside(r, cap, z_mag):
    z = complex(z_mag, 0)
    for point in sample_points((1, 2, 3), RatioSchedule.common(r), cap, z):
        assert abs(point) < abs(z)


def test_scaling_property_point_sets():
    schedule = RatioSchedule.common(1.9)
    z = 0.4 + 0.1j
    singles = list(sample_points((1, 2), schedule, 4, z))
    doubled = list(sample_points((1, 2), schedule, 4, 2 * z))
    assert doubled == [2 * p for p in singles]


def test_zero_function_value_aborts_with_point():
    f = AnalyticFunctionModel(lambda z: 1 - z, label="linear")
    schedule = RatioSchedule.common(2)
    # the n = 1 sampled point is (r-1)/r * z = 1 when z = 2
    with pytest.raises(ZeroFunctionValueError) as err:
        sampling_product(f, (1,), 2.0, schedule, 10)
    assert err.value.point == pytest.approx(1 + 0j)


def test_per_k_schedule_needs_enough_ratios():
    schedule = RatioSchedule.per_k([2.0])
    with pytest.raises(ValueError):
        schedule.ratio_for(2)
