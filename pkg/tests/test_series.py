import numpy as np
import pytest

from harmclass.series import (
    TruncatedSeries,
    cauchy_product,
    differentiate,
    evaluate,
    integrate_coeffs,
    lincomb,
    series_from_json,
    series_to_json,
)


def coeffs(s):
    return list(s.coeffs)


def test_differentiate_identity():
    assert coeffs(differentiate(TruncatedSeries([0, 1]))) == [1]


def test_differentiate_term_by_term():
    assert coeffs(differentiate(TruncatedSeries([0, 1, 0.25]))) == [1, 0.5]


def test_differentiate_monomial():
    out = differentiate(TruncatedSeries([0, 0, 0, 1 / 3]))
    assert np.allclose(out.coeffs, [0, 0, 1])


def test_differentiate_constant_floors_at_order_zero():
    out = differentiate(TruncatedSeries([5.0]))
    assert coeffs(out) == [0]


def test_integrate_inverts_differentiate():
    s = TruncatedSeries([0, 1, 0.5 - 0.25j, 0.1])
    back = integrate_coeffs(differentiate(s))
    assert np.allclose(back.coeffs, s.coeffs)


def test_evaluate_identity():
    assert evaluate(TruncatedSeries([0, 1]), 0.3 + 0.4j) == pytest.approx(0.3 + 0.4j)


def test_evaluate_coefficient_sum_at_one():
    assert evaluate(TruncatedSeries([0, 1, 0.25]), 1.0) == pytest.approx(1.25)


def test_evaluate_alternating_geometric_tail():
    # 20 terms of 1/(1+z) at z = 0.5; the dropped tail is below 1e-5
    s = TruncatedSeries([(-1.0) ** n for n in range(20)])
    assert evaluate(s, 0.5) == pytest.approx(2 / 3, abs=1e-5)


def test_evaluate_vectorized_matches_scalar():
    s = TruncatedSeries([0.1, 1, -0.3j, 0.05])
    zs = np.array([0.1, 0.2 + 0.3j, -0.7j])
    vec = evaluate(s, zs)
    for z, v in zip(zs, vec):
        assert evaluate(s, complex(z)) == pytest.approx(v)


def test_cauchy_product_squares_binomial():
    one_plus_z = TruncatedSeries([1, 1])
    out = cauchy_product(one_plus_z, one_plus_z, order=2)
    assert np.allclose(out.coeffs, [1, 2, 1])


def test_cauchy_product_truncates():
    a = TruncatedSeries([1, 1, 1])
    out = cauchy_product(a, a, order=1)
    assert np.allclose(out.coeffs, [1, 2])


def test_cauchy_product_rejects_negative_order():
    with pytest.raises(ValueError):
        cauchy_product(TruncatedSeries([1]), TruncatedSeries([1]), order=-1)


def test_lincomb_pads_shorter_series():
    a = TruncatedSeries([0, 1])
    b = TruncatedSeries([0, 1, 2])
    out = lincomb([0.5, 0.5], [a, b])
    assert np.allclose(out.coeffs, [0, 1, 1])


def test_coefficients_are_frozen():
    s = TruncatedSeries([0, 1])
    with pytest.raises(ValueError):
        s.coeffs[0] = 1.0


def test_json_round_trip():
    s = TruncatedSeries([0, 1, 0.25 - 0.5j])
    d = series_to_json(s)
    assert d["order"] == 2
    assert series_from_json(d) == s


def test_json_rejects_inconsistent_record():
    with pytest.raises(ValueError):
        series_from_json({"order": 3, "re": [0, 1], "im": [0, 0]})


def test_normalization_predicate():
    assert TruncatedSeries([0, 1, 9]).is_normalized()
    assert not TruncatedSeries([0.1, 1]).is_normalized()
    assert not TruncatedSeries([0, 0.5]).is_normalized()
    assert not TruncatedSeries([1.0]).is_normalized()
