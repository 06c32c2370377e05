import cmath
import math
import random

import pytest
from hypothesis import given, strategies as st

from geoprod import (
    DivergentProductError,
    DomainError,
    ExtrapolationOrderError,
    LogProduct,
    ZeroFunctionValueError,
    accumulate,
    extrapolate_limit,
    limit_schedule,
    principal_root,
)

st_annulus = st.builds(
    cmath.rect,
    st.floats(0.1, 10.0),
    st.floats(-math.pi, math.pi),
)
st_order = st.integers(1, 12)


def test_principal_root_examples():
    assert principal_root(4, 2) == pytest.approx(2.0)
    assert principal_root(-1, 2) == pytest.approx(1j)
    v = principal_root(3, 2)
    assert abs(v * v - 3) <= 1e-12  # oracle: square and compare
    assert v == pytest.approx(1.7320508075688772)


def test_principal_root_zero_or_bad_order():
    with pytest.raises(DomainError):
        principal_root(0, 3)
    with pytest.raises(ValueError):
        principal_root(2, 0)


@given(w=st_annulus, k=st_order)
def test_principal_root_inverts_power(w, k):
    v = principal_root(w, k)
    assert abs(v**k - w) <= 1e-12 * abs(w)
    # branch window, with rounding slack at the +/- pi/k seam
    assert -math.pi / k - 1e-9 <= cmath.phase(v) <= math.pi / k + 1e-9


def test_principal_root_thousand_random_points():
    rng = random.Random(20240817)
    for _ in range(1000):
        w = cmath.rect(rng.uniform(0.1, 10.0), rng.uniform(-math.pi, math.pi))
        k = rng.randint(1, 12)
        v = principal_root(w, k)
        assert abs(v**k - w) <= 1e-12 * abs(w)


def test_accumulator_basic_product():
    acc = accumulate(LogProduct(), 2, 3)
    assert acc.value() == pytest.approx(8.0)
    assert acc.factor_count == 1


def test_accumulator_phase_unwraps():
    acc = accumulate(LogProduct(), cmath.exp(1j * math.pi / 2), 4)
    assert acc.phase == pytest.approx(2 * math.pi)
    assert acc.value() == pytest.approx(1.0)


def test_accumulator_symmetric_cancellation():
    acc = LogProduct()
    for _ in range(1000):
        acc = acc.times(10.0)
    for _ in range(1000):
        acc = acc.times(0.1)
    assert acc.value() == pytest.approx(1.0, abs=1e-9)
    assert acc.factor_count == 2000


def test_accumulator_zero_factor_rejected():
    with pytest.raises(ZeroFunctionValueError):
        LogProduct().times(0.0, point=0.5 + 0j)


def test_accumulator_roundtrip_matches_direct_product():
    rng = random.Random(99)
    for trial in range(5):
        count = rng.choice([100, 1000, 10_000])
        factors = [
            cmath.rect(math.exp(rng.uniform(-0.04, 0.04)), rng.uniform(-math.pi, math.pi))
            for _ in range(count)
        ]
        direct = 1 + 0j
        acc = LogProduct()
        for f in factors:
            direct *= f
            acc = acc.times(f)
        assert 1e-100 <= abs(direct) <= 1e100
        assert acc.value() == pytest.approx(direct, rel=1e-10)


def test_accumulator_survives_out_of_range_products():
    acc = LogProduct()
    for _ in range(20):
        acc = acc.times(1e300)
    assert acc.log_magnitude == pytest.approx(20 * math.log(1e300))
    with pytest.raises(DivergentProductError):
        acc.value()


def test_extrapolate_constant():
    samples = [(1.5, 5.0), (1.25, 5.0), (1.125, 5.0)]
    value, estimate = extrapolate_limit(samples)
    assert value == pytest.approx(5.0)
    assert estimate <= 1e-12


def test_extrapolate_linear_exact():
    samples = [(r, 1.0 + (r - 1.0)) for r in (1.5, 1.25, 1.125)]
    value, _ = extrapolate_limit(samples)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_extrapolate_exponential():
    samples = [(1 + 2.0**-j, math.exp(2.0**-j)) for j in range(1, 7)]
    value, estimate = extrapolate_limit(samples)
    assert abs(value - 1.0) <= 1e-6  # oracle: analytic limit exp(0)
    assert estimate <= 1e-5


def test_extrapolate_argument_errors():
    with pytest.raises(ExtrapolationOrderError):
        extrapolate_limit([(1.5, 1.0), (1.25, 1.0)])
    with pytest.raises(ExtrapolationOrderError):
        extrapolate_limit([(1.25, 1.0), (1.5, 1.0), (1.125, 1.0)])
    with pytest.raises(ExtrapolationOrderError):
        extrapolate_limit([(1.5, 1.0), (1.25, 1.0), (1.0, 1.0)])


def test_limit_schedule_decreases_to_one():
    sched = limit_schedule(3, 10)
    assert sched[0] == 1.125
    assert all(a > b > 1 for a, b in zip(sched, sched[1:]))
