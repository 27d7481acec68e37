import numpy as np
import pytest

from harmclass.factory import (
    build_member,
    certify,
    extremal_h,
    member_to_json,
    sample_certified_h,
)
from harmclass.model import ClassParams, jacobian_at, moebius_dilatation, rotation_dilatation
from harmclass.series import TruncatedSeries

P011 = ClassParams(0, 0, 1)


def test_extremal_n2_delta1():
    h = extremal_h(2, 0.0, P011)
    assert np.allclose(h.coeffs, [0, 1, 0.25])


def test_extremal_n2_delta0():
    h = extremal_h(2, 0.0, ClassParams(0, 0, 0))
    assert np.allclose(h.coeffs, [0, 1, 0.5])
    assert certify(h, ClassParams(0, 0, 0)).budget_sum == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5, 9])
@pytest.mark.parametrize("theta", [0.0, 1.3, -2.0])
@pytest.mark.parametrize("alpha,beta,delta", [(0, 0, 1), (0.4, 0.2, 0), (0.8, 0.6, 2.5)])
def test_extremal_saturates_budget(n, theta, alpha, beta, delta):
    params = ClassParams(alpha, beta, delta)
    cert = certify(extremal_h(n, theta, params), params)
    assert cert.ok
    assert cert.budget_sum == pytest.approx(1.0, abs=1e-12)


def test_extremal_rejects_small_index():
    with pytest.raises(ValueError):
        extremal_h(1, 0.0, P011)


def test_certify_identity():
    cert = certify(TruncatedSeries([0, 1]), P011)
    assert cert.ok and cert.budget_sum == 0.0


def test_certify_budget_overrun():
    cert = certify(TruncatedSeries([0, 1, 0.3]), P011)
    assert cert.budget_sum == pytest.approx(1.2)
    assert not cert.ok


def test_certify_rejects_unnormalized():
    with pytest.raises(ValueError):
        certify(TruncatedSeries([0.5, 1]), P011)


def test_sampler_zero_fill_is_identity():
    h = sample_certified_h(P011, max_degree=10, fill=0.0, rng_seed=1)
    assert np.allclose(h.coeffs, np.eye(11)[1])


@pytest.mark.parametrize("seed", [0, 7, 991])
@pytest.mark.parametrize("fill", [0.25, 1.0])
def test_sampler_hits_requested_budget(seed, fill):
    params = ClassParams(0.3, 0.2, 1.5)
    h = sample_certified_h(params, max_degree=12, fill=fill, rng_seed=seed)
    cert = certify(h, params)
    assert cert.ok
    assert cert.budget_sum == pytest.approx(fill, abs=1e-12)


def test_sampler_is_deterministic():
    a = sample_certified_h(P011, 16, 0.7, rng_seed=123)
    b = sample_certified_h(P011, 16, 0.7, rng_seed=123)
    c = sample_certified_h(P011, 16, 0.7, rng_seed=124)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert not np.array_equal(a.coeffs, c.coeffs)


def test_sampler_preconditions():
    with pytest.raises(ValueError):
        sample_certified_h(ClassParams(0, 0, -0.5), 8, 0.5, 1)
    with pytest.raises(ValueError):
        sample_certified_h(P011, 1, 0.5, 1)
    with pytest.raises(ValueError):
        sample_certified_h(P011, 8, 1.5, 1)


def test_build_member_rotation_gives_half_square():
    member = build_member(TruncatedSeries([0, 1]), rotation_dilatation(), P011)
    assert member.g.coeffs[2] == pytest.approx(0.5)
    assert abs(member.g.coeffs[1]) == 0.0


def test_build_member_records_beta():
    params = ClassParams(0, 0.3, 1)
    member = build_member(extremal_h(2, 0.0, params), moebius_dilatation(0.3), params)
    assert abs(member.g.coeffs[1]) == pytest.approx(0.3, abs=1e-13)


def test_build_member_rejects_beta_mismatch():
    with pytest.raises(ValueError):
        build_member(TruncatedSeries([0, 1]), moebius_dilatation(0.4), P011)


def test_build_member_rejects_uncertified():
    with pytest.raises(ValueError):
        build_member(TruncatedSeries([0, 1, 0.3]), rotation_dilatation(), P011)


def test_convex_combination_of_disjoint_extremals():
    h2 = extremal_h(2, 0.0, P011)
    h3 = extremal_h(3, 0.0, P011)
    mixed = TruncatedSeries(0.5 * np.pad(h2.coeffs, (0, 1)) + 0.5 * h3.coeffs)
    cert = certify(mixed, P011)
    assert cert.ok
    assert cert.budget_sum == pytest.approx(1.0, abs=1e-12)


def test_sampled_members_are_sense_preserving():
    """Certified h + admissible dilatation keeps the Jacobian positive."""
    rng = np.random.default_rng(5)
    r = np.linspace(0.015, 0.99, 64)
    theta = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    z = r[:, None] * np.exp(1j * theta)[None, :]
    for params in (P011, ClassParams(0.3, 0.5, 0)):
        for _ in range(5):
            h = sample_certified_h(params, 12, float(rng.uniform()), int(rng.integers(1 << 30)))
            member = build_member(h, moebius_dilatation(params.beta, 0.4, 1.0), params)
            assert np.min(jacobian_at(member, z)) > 0.0


def test_member_json_header():
    params = ClassParams(0, 0.3, 1)
    member = build_member(extremal_h(2, 0.0, params), moebius_dilatation(0.3), params)
    record = member_to_json(member, params, seed=9)
    assert record["params"] == {"alpha": 0.0, "beta": 0.3, "delta": 1.0}
    assert record["seed"] == 9
    assert record["h"]["order"] == 2
    assert len(record["g"]["re"]) == record["g"]["order"] + 1
    assert record["dilatation"]["kind"] == "moebius"
