import cmath
import math

import pytest
from hypothesis import given, strategies as st

from geoprod import (
    AnalyticFunctionModel,
    DomainError,
    ZeroFunctionValueError,
    builtin,
    evaluate,
    factor_value,
    parse_complex,
    poly_exp_model,
    residual_factor_model,
)

st_coeff = st.builds(
    complex,
    st.floats(-1.0, 1.0),
    st.floats(-1.0, 1.0),
)


def test_evaluate_builtins_at_reference_points():
    assert evaluate(builtin("exp"), 1) == pytest.approx(math.e)
    assert evaluate(builtin("half-sine"), 0) == 1.0
    assert evaluate(builtin("bump"), 0) == 1.0
    assert evaluate(builtin("half-sine"), math.pi / 2) == pytest.approx(1.5)
    assert evaluate(builtin("exp"), 2) == pytest.approx(math.e**2)
    # oracle: direct formula 1 - exp(-1)
    assert evaluate(builtin("bump"), 1) == pytest.approx(1 - math.exp(-1.0))


def test_model_requires_one_at_origin():
    with pytest.raises(ValueError):
        AnalyticFunctionModel(lambda z: z + 2, label="shifted")


def test_evaluate_domain_check():
    model = builtin("half-sine")
    with pytest.raises(DomainError):
        evaluate(model, 6.5)


def test_evaluate_zero_value_carries_point():
    model = AnalyticFunctionModel(lambda z: 1 - z, label="linear")
    with pytest.raises(ZeroFunctionValueError) as err:
        evaluate(model, 1.0)
    assert err.value.point == 1 + 0j


def test_bump_rejects_far_off_axis_points():
    with pytest.raises(DomainError):
        evaluate(builtin("bump"), 0.5j)


def test_factor_value_examples():
    assert factor_value(1, 1, 1) == pytest.approx(math.e)
    assert factor_value(0, 5, 7) == 1.0
    assert factor_value(1, 2, 2) == pytest.approx(cmath.exp(4))  # oracle: direct exp


def test_builtin_unknown_name():
    with pytest.raises(ValueError):
        builtin("sinc")


def test_poly_exp_parsing_round_trip():
    model = builtin("poly-exp:0.3,-0.2")
    assert model.log_taylor_coeffs == (0.3 + 0j, -0.2 + 0j)
    z = 0.7
    assert evaluate(model, z) == pytest.approx(cmath.exp(0.3 * z - 0.2 * z * z))
    complex_model = builtin("poly-exp:1+2i,0.5i")
    assert complex_model.log_taylor_coeffs == (1 + 2j, 0.5j)


def test_bump_is_even():
    bump = builtin("bump")
    for x in (0.2, 0.5, 1.0, 1.4):
        assert evaluate(bump, x) == evaluate(bump, -x)


@given(coeffs=st.lists(st_coeff, min_size=1, max_size=5), z=st_coeff)
def test_factor_product_reassembles_model(coeffs, z):
    model = poly_exp_model(coeffs)
    product = 1 + 0j
    for k, c in enumerate(coeffs, start=1):
        product *= factor_value(c, k, z)
    assert product == pytest.approx(evaluate(model, z), rel=1e-12, abs=1e-12)


@given(coeffs=st.lists(st_coeff, min_size=1, max_size=4))
def test_coefficients_agree_with_evaluator_inside_half_radius(coeffs):
    model = poly_exp_model(coeffs)
    for z in (0.1, 0.4j, -0.3 + 0.2j):
        direct = cmath.exp(sum(c * z ** (k + 1) for k, c in enumerate(coeffs)))
        assert evaluate(model, z) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_residual_factor_model_masks_covered_orders():
    model = poly_exp_model([1, 2, 3])
    residual = residual_factor_model(model, {1, 3})
    assert residual.log_taylor_coeffs == (0j, 2 + 0j, 0j)
    with pytest.raises(ValueError):
        residual_factor_model(builtin("bump"), {2})


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", 1 + 0j),
        ("-0.5", -0.5 + 0j),
        ("2i", 2j),
        ("i", 1j),
        ("-i", -1j),
        ("1+2i", 1 + 2j),
        ("0.3-0.25i", 0.3 - 0.25j),
        ("1e-3+2.5e-2i", 0.001 + 0.025j),
        ("1.41421356237", 1.41421356237 + 0j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "2+", "abc", "1++2i"])
def test_parse_complex_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_complex(text)
