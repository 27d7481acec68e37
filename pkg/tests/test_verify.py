import json
import math

import numpy as np
import pytest

from harmclass.bounds import bloch_bound
from harmclass.factory import build_member, extremal_h
from harmclass.model import (
    ClassParams,
    custom_dilatation,
    harmonic_map,
    rotation_dilatation,
)
from harmclass.series import TruncatedSeries
from harmclass.verify import (
    default_polar_grid,
    report_to_dict,
    run_member_suite,
    verify_area,
    verify_bloch,
    verify_coefficients,
    verify_convexity,
    verify_covering,
    verify_distortion,
    verify_member,
)

P011 = ClassParams(0, 0, 1)


def extremal_member():
    return build_member(extremal_h(2, 0.0, P011), rotation_dilatation(), P011)


def identity_member():
    w_zero = custom_dilatation(TruncatedSeries([0.0, 0.0]), beta=0.0)
    return harmonic_map(TruncatedSeries([0, 1]), w_zero)


def half_square_member():
    return build_member(TruncatedSeries([0, 1]), rotation_dilatation(), P011)


def test_extremal_member_passes_all_seven():
    reports = verify_member(extremal_member(), P011, n_max=8)
    assert [r.theorem for r in reports] == [
        "coeff",
        "distortion",
        "g_growth",
        "area",
        "f_growth",
        "covering",
        "bloch",
    ]
    assert all(r.passed for r in reports)


def test_extremal_member_coefficient_equality():
    rep = verify_coefficients(extremal_member(), P011, n_max=6)
    assert rep.passed
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)
    assert rep.witness == "n=2"


def test_extremal_member_touches_distortion_envelope():
    rep = verify_distortion(extremal_member(), P011)
    assert rep.passed
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_extremal_member_sits_on_covering_floor():
    rep = verify_covering(extremal_member(), P011)
    assert rep.passed
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-10)


def test_identity_member_coefficients_trivial():
    rep = verify_coefficients(identity_member(), P011, n_max=8)
    assert rep.passed


def test_identity_member_covering_proxy():
    rep = verify_covering(identity_member(), P011)
    assert rep.passed
    # min |z| on the r = 0.999 circle is 0.999, far above the floor ~ 5/12
    assert rep.worst_margin == pytest.approx(0.999 - 5 / 12, abs=1e-3)


def test_vanishing_dilatation_violates_area_envelope():
    """f = z has Jacobian 1 and area pi, which exceeds the upper envelope:
    the proof needs |w| to reach the lower dilatation envelope, and w = 0
    does not.  The report must record the violation, not raise."""
    rep = verify_area(identity_member(), P011)
    assert not rep.passed
    assert rep.worst_margin == pytest.approx(97 * math.pi / 120 - math.pi, abs=1e-6)


def test_half_square_member_area_is_half_pi():
    rep = verify_area(half_square_member(), P011, tol=1e-9)
    assert rep.passed
    measured = float(rep.witness.split()[1])
    assert measured == pytest.approx(math.pi / 2, abs=1e-6)


def test_half_square_member_bloch_peak():
    rep = verify_bloch(half_square_member(), P011)
    assert rep.passed
    measured = float(rep.witness.split()[1])
    # sup of (1 - r^2)(1 + r) is 32/27; the grid gets within its resolution
    assert measured <= 32 / 27 + 1e-12
    assert measured == pytest.approx(32 / 27, abs=5e-4)
    assert bloch_bound(P011).bound > measured


def test_bloch_grid_refinement_is_monotone():
    member = extremal_member()
    measured = []
    for n_radii in (16, 32, 64):
        grid = default_polar_grid(n_radii=n_radii, n_angles=64)
        rep = verify_bloch(member, P011, grid)
        assert rep.passed
        measured.append(bloch_bound(P011).bound - rep.worst_margin)
    assert measured[0] <= measured[1] + 1e-15
    assert measured[1] <= measured[2] + 1e-15


def test_convexity_of_identical_extremals():
    h2 = extremal_h(2, 0.0, P011)
    rep = verify_convexity(h2, h2, [0.0, 0.25, 0.5, 0.75, 1.0], P011)
    assert rep.passed
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_convexity_of_disjoint_extremals():
    rep = verify_convexity(
        extremal_h(2, 0.0, P011), extremal_h(3, 0.0, P011), [0.5], P011
    )
    assert rep.passed
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_convexity_of_random_certified_pairs():
    from harmclass.factory import sample_certified_h

    rng = np.random.default_rng(17)
    for _ in range(10):
        h1 = sample_certified_h(P011, 10, float(rng.uniform()), int(rng.integers(1 << 30)))
        h2 = sample_certified_h(P011, 14, float(rng.uniform()), int(rng.integers(1 << 30)))
        rep = verify_convexity(h1, h2, [0.0, 0.25, 0.5, 0.75, 1.0], P011)
        assert rep.passed


def test_convexity_rejects_nonzero_beta():
    h2 = extremal_h(2, 0.0, P011)
    with pytest.raises(ValueError):
        verify_convexity(h2, h2, [0.5], ClassParams(0, 0.2, 1))


def test_convexity_rejects_uncertified_input():
    with pytest.raises(ValueError):
        verify_convexity(
            TruncatedSeries([0, 1, 0.9]), extremal_h(2, 0.0, P011), [0.5], P011
        )


def test_covering_requires_enough_samples():
    with pytest.raises(ValueError):
        verify_covering(extremal_member(), P011, boundary_samples=32)


def test_report_serializes_to_json_line():
    rep = verify_coefficients(extremal_member(), P011, n_max=4)
    record = report_to_dict(rep, member=3, alpha=0.0)
    line = json.dumps(record, sort_keys=True)
    parsed = json.loads(line)
    assert parsed["theorem"] == "coeff"
    assert parsed["member"] == 3
    assert parsed["passed"] is True
    assert parsed["slack"] == 1e-9


def test_member_suite_is_deterministic():
    a = run_member_suite(P011, members=3, seed=99)
    b = run_member_suite(P011, members=3, seed=99)
    margins_a = [(idx, r.theorem, r.worst_margin) for idx, _, reps in a for r in reps]
    margins_b = [(idx, r.theorem, r.worst_margin) for idx, _, reps in b for r in reps]
    assert margins_a == margins_b


def test_member_suite_reports_seven_per_member():
    results = run_member_suite(ClassParams(0.3, 0.5, 1), members=4, seed=3)
    assert len(results) == 4
    for _, _, reports in results:
        assert len(reports) == 7
        assert all(r.passed for r in reports)
