"""Independent numerical verification of the bounds against concrete members.

For a given map the suite measures the quantity each inequality controls
(coefficient moduli, |h'| and |g'| on grids, area, growth, boundary minimum
modulus, weighted stretch supremum) and reports the worst margin against the
corresponding bound.  Violations are reported, never raised: a negative
margin is data about the bound, not an exception in the code.

Two checks deliberately reference the derived companions of the stated
growth forms (see the bounds module):

  * g-growth lower margins are only scored where the envelope derivation is
    sound - all radii when beta = 0, radii <= beta otherwise.  Beyond that
    regime the stated bound is violated even by the identity-like member
    h = z with a Moebius dilatation, so scoring it would only measure the
    formula's defect, which the cross-check records already capture.
  * covering / f-growth lower margins compare against ``f_growth_floor``,
    which the degree-2 extremal member attains with equality; the stated
    lower form lies strictly above that attainable envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .factory import build_member, certify, sample_certified_h
from .model import (
    ClassParams,
    HarmonicMapSpec,
    evaluate_dilatation,
    jacobian_at,
    moebius_dilatation,
)
from .numerics import adaptive_quadrature
from .series import TruncatedSeries, differentiate, evaluate, lincomb

__all__ = [
    "DEFAULT_SLACK",
    "MEMBER_THEOREMS",
    "PolarGrid",
    "VerificationReport",
    "default_polar_grid",
    "verify_coefficients",
    "verify_distortion",
    "verify_g_growth",
    "verify_area",
    "verify_f_growth",
    "verify_covering",
    "verify_bloch",
    "verify_convexity",
    "verify_member",
    "run_member_suite",
    "report_to_dict",
]

DEFAULT_SLACK = 1e-9

MEMBER_THEOREMS = ("coeff", "distortion", "g_growth", "area", "f_growth", "covering", "bloch")


@dataclass(frozen=True)
class PolarGrid:
    """Evaluation grid: radii in (0, 1) crossed with equispaced angles."""

    radii: np.ndarray
    angles: np.ndarray

    def points(self) -> np.ndarray:
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]


def default_polar_grid(
    n_radii: int = 64, n_angles: int = 128, r_max: float = 0.995
) -> PolarGrid:
    """Chebyshev-spaced radii (clustered near 0 and r_max) x uniform angles.

    Uses the Lobatto flavor without the origin, so doubling either count
    yields a strict superset of points: measured grid suprema are then
    non-decreasing under refinement.
    """
    j = np.arange(1, n_radii + 1)
    radii = 0.5 * r_max * (1.0 - np.cos(np.pi * j / n_radii))
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return PolarGrid(radii=radii, angles=angles)


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    passed: bool
    worst_margin: float
    witness: str
    slack: float


def _report(theorem: str, worst: float, witness: str, slack: float) -> VerificationReport:
    return VerificationReport(
        theorem=theorem,
        passed=bool(worst >= -slack),
        worst_margin=float(worst),
        witness=witness,
        slack=slack,
    )


def report_to_dict(report: VerificationReport, **extra) -> dict:
    rec = {
        "theorem": report.theorem,
        "passed": report.passed,
        "worst_margin": report.worst_margin,
        "witness": report.witness,
        "slack": report.slack,
    }
    rec.update(extra)
    return rec


def _track(margins: np.ndarray, witnesses, worst: float, witness: str):
    idx = int(np.argmin(margins))
    if margins.flat[idx] < worst:
        return float(margins.flat[idx]), witnesses(idx)
    return worst, witness


def verify_coefficients(
    f: HarmonicMapSpec,
    params: ClassParams,
    n_max: int,
    slack: float = DEFAULT_SLACK,
) -> VerificationReport:
    """Check |b_n| <= coefficient bound for 2 <= n <= n_max."""
    n_top = min(n_max, f.g.order)
    worst = math.inf
    witness = "no index checked"
    for n in range(2, n_top + 1):
        margin = bounds.bn_bound(params, n) - abs(f.g.coeffs[n])
        if margin < worst:
            worst, witness = margin, f"n={n}"
    if math.isinf(worst):
        worst = 0.0
    return _report("coeff", worst, witness, slack)


def verify_distortion(
    f: HarmonicMapSpec,
    params: ClassParams,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
) -> VerificationReport:
    """Check the |h'| and |g'| envelopes at every grid point."""
    grid = grid or default_polar_grid()
    z = grid.points()
    hp = np.abs(evaluate(differentiate(f.h), z))
    gp = hp * np.abs(evaluate_dilatation(f.w, z))
    worst = math.inf
    witness = ""
    for r_idx, r in enumerate(grid.radii):
        h_env = bounds.hprime_envelope(params, r)
        g_env = bounds.gprime_envelope(params, r)
        for label, vals, env in (("|h'|", hp[r_idx], h_env), ("|g'|", gp[r_idx], g_env)):
            for side, margin_row in (
                ("lower", vals - env.lower),
                ("upper", env.upper - vals),
            ):
                worst, witness = _track(
                    margin_row,
                    lambda i, r=r, label=label, side=side: (
                        f"{label} {side} at r={r:.6g}, "
                        f"theta={grid.angles[i]:.6g}"
                    ),
                    worst,
                    witness,
                )
    return _report("distortion", worst, witness, slack)


def _cumulative_radial(integrand, radii: np.ndarray, tol: float, kink: float | None = None):
    """Integrals from 0 to each grid radius, reusing panels between radii."""
    out = np.empty(radii.size)
    prev_r = 0.0
    acc = 0.0
    for i, r in enumerate(radii):
        if r > prev_r:
            cuts = (kink,) if kink is not None and prev_r < kink < r else ()
            acc += adaptive_quadrature(integrand, prev_r, r, tol, breakpoints=cuts)
            prev_r = r
        out[i] = acc
    return out


def verify_g_growth(
    f: HarmonicMapSpec,
    params: ClassParams,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check |g| against the growth envelope, quadrature form authoritative.

    Upper margins are scored at all radii; lower margins only on the sound
    regime (all radii for beta = 0, radii <= beta otherwise).
    """
    grid = grid or default_polar_grid()
    z = grid.points()
    gm = np.abs(evaluate(f.g, z))
    beta = params.beta
    c = bounds.distortion_slope(params)

    upper_ref = _cumulative_radial(
        lambda x: (beta + x) / (1.0 + beta * x) * (1.0 + c * x), grid.radii, tol
    )
    lower_ref = _cumulative_radial(
        lambda x: abs(beta - x) / (1.0 - beta * x) * (1.0 - c * x),
        grid.radii,
        tol,
        kink=beta,
    )
    worst = math.inf
    witness = ""
    for r_idx, r in enumerate(grid.radii):
        worst, witness = _track(
            upper_ref[r_idx] - gm[r_idx],
            lambda i, r=r: f"|g| upper at r={r:.6g}, theta={grid.angles[i]:.6g}",
            worst,
            witness,
        )
        if beta == 0.0 or r <= beta:
            worst, witness = _track(
                gm[r_idx] - lower_ref[r_idx],
                lambda i, r=r: f"|g| lower at r={r:.6g}, theta={grid.angles[i]:.6g}",
                worst,
                witness,
            )
    return _report("g_growth", worst, witness, slack)


def _measure_area(
    f: HarmonicMapSpec, tol: float = 1e-8, n_angles: int = 128
) -> float:
    """Area of the image counted with multiplicity: tensor quadrature of the
    Jacobian in polar coordinates (adaptive radial x trapezoid angular)."""
    angles = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)

    def ring_mean(r: float) -> float:
        if r == 0.0:
            return 0.0
        return r * float(np.mean(jacobian_at(f, r * angles)))

    return 2.0 * math.pi * adaptive_quadrature(ring_mean, 0.0, 1.0, tol)


def verify_area(
    f: HarmonicMapSpec,
    params: ClassParams,
    tol: float = 1e-8,
    slack: float = DEFAULT_SLACK,
) -> VerificationReport:
    """Measure the Jacobian integral and place it inside the area envelope."""
    measured = _measure_area(f, tol)
    env = bounds.area_envelope(params, min(tol, bounds.DEFAULT_QUAD_TOL))
    margins = (measured - env.lower, env.upper - measured)
    if margins[0] <= margins[1]:
        worst, witness = margins[0], f"area {measured:.12g} vs lower {env.lower:.12g}"
    else:
        worst, witness = margins[1], f"area {measured:.12g} vs upper {env.upper:.12g}"
    return _report("area", worst, witness, slack)


def _f_values(f: HarmonicMapSpec, z: np.ndarray) -> np.ndarray:
    return evaluate(f.h, z) + np.conj(evaluate(f.g, z))


def verify_f_growth(
    f: HarmonicMapSpec,
    params: ClassParams,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check |f| against the upper growth bound and the attainable floor."""
    grid = grid or default_polar_grid()
    z = grid.points()
    fm = np.abs(_f_values(f, z))
    beta = params.beta
    c = bounds.distortion_slope(params)
    tail = _cumulative_radial(
        lambda x: (beta + x) / (1.0 + beta * x) * (1.0 + c * x), grid.radii, tol
    )
    upper_ref = grid.radii + 0.5 * c * grid.radii**2 + tail
    floor_ref = _cumulative_radial(
        lambda x: (1.0 - c * x) * (1.0 - beta) * (1.0 - x) / (1.0 + beta * x),
        grid.radii,
        tol,
    )
    worst = math.inf
    witness = ""
    for r_idx, r in enumerate(grid.radii):
        worst, witness = _track(
            upper_ref[r_idx] - fm[r_idx],
            lambda i, r=r: f"|f| upper at r={r:.6g}, theta={grid.angles[i]:.6g}",
            worst,
            witness,
        )
        worst, witness = _track(
            fm[r_idx] - floor_ref[r_idx],
            lambda i, r=r: f"|f| floor at r={r:.6g}, theta={grid.angles[i]:.6g}",
            worst,
            witness,
        )
    return _report("f_growth", worst, witness, slack)


def verify_covering(
    f: HarmonicMapSpec,
    params: ClassParams,
    boundary_samples: int = 256,
    slack: float = DEFAULT_SLACK,
    tol: float = bounds.DEFAULT_QUAD_TOL,
) -> VerificationReport:
    """Proxy covering check: the boundary minimum modulus at r = 0.999 must
    clear the attainable growth floor.

    This verifies the inequality the covering statement integrates, not image
    containment itself.
    """
    if boundary_samples < 64:
        raise ValueError("need at least 64 boundary samples")
    r = 0.999
    z = r * np.exp(2j * np.pi * np.arange(boundary_samples) / boundary_samples)
    fm = np.abs(_f_values(f, z))
    floor = bounds.f_growth_floor(params, r, tol)
    idx = int(np.argmin(fm))
    worst = float(fm[idx] - floor)
    witness = (
        f"proxy min |f| {fm[idx]:.12g} at theta={2 * math.pi * idx / boundary_samples:.6g} "
        f"vs floor {floor:.12g}"
    )
    return _report("covering", worst, witness, slack)


def verify_bloch(
    f: HarmonicMapSpec,
    params: ClassParams,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
) -> VerificationReport:
    """Grid supremum of (1 - |z|^2)(|h'| + |g'|) against the Bloch bound."""
    grid = grid or default_polar_grid()
    z = grid.points()
    hp = np.abs(evaluate(differentiate(f.h), z))
    stretch = hp * (1.0 + np.abs(evaluate_dilatation(f.w, z)))
    weighted = (1.0 - grid.radii[:, None] ** 2) * stretch
    bound = bounds.bloch_bound(params).bound
    r_idx, t_idx = np.unravel_index(int(np.argmax(weighted)), weighted.shape)
    measured = float(weighted[r_idx, t_idx])
    witness = (
        f"measured {measured:.12g} at r={grid.radii[r_idx]:.6g}, "
        f"theta={grid.angles[t_idx]:.6g} vs bound {bound:.12g}"
    )
    return _report("bloch", bound - measured, witness, slack)


def verify_convexity(
    h1: TruncatedSeries,
    h2: TruncatedSeries,
    lambdas,
    params: ClassParams,
    slack: float = DEFAULT_SLACK,
) -> VerificationReport:
    """Convex combinations of certified analytic parts stay certified (beta = 0)."""
    if params.beta != 0.0:
        raise ValueError("convexity statement requires beta = 0")
    params.require_nonnegative_delta()
    for h in (h1, h2):
        if not certify(h, params).ok:
            raise ValueError("convexity inputs must be certified")
    worst = math.inf
    witness = ""
    for lam in lambdas:
        if not 0.0 <= lam <= 1.0:
            raise ValueError("lambda values must lie in [0, 1]")
        mix = lincomb([lam, 1.0 - lam], [h1, h2])
        budget = certify(mix, params).budget_sum
        margin = 1.0 - budget
        if margin < worst:
            worst, witness = margin, f"lambda={lam:.6g}, budget={budget:.12g}"
    return _report("convexity", worst, witness, slack)


def verify_member(
    f: HarmonicMapSpec,
    params: ClassParams,
    n_max: int = 12,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
    area_tol: float = 1e-8,
) -> list[VerificationReport]:
    """All seven per-member checks, in a fixed order."""
    grid = grid or default_polar_grid()
    return [
        verify_coefficients(f, params, n_max, slack),
        verify_distortion(f, params, grid, slack),
        verify_g_growth(f, params, grid, slack),
        verify_area(f, params, area_tol, slack),
        verify_f_growth(f, params, grid, slack),
        verify_covering(f, params, slack=slack),
        verify_bloch(f, params, grid, slack),
    ]


def run_member_suite(
    params: ClassParams,
    members: int,
    seed: int,
    n_max: int = 12,
    max_degree: int = 16,
    grid: PolarGrid | None = None,
    slack: float = DEFAULT_SLACK,
) -> list[tuple[int, HarmonicMapSpec, list[VerificationReport]]]:
    """Sample ``members`` seeded random members and verify each one.

    Members draw a random certified analytic part (budget fill uniform in
    [0, 1]) and a Moebius dilatation with random rotation phases; the whole
    stream is determined by ``seed``.
    """
    rng = np.random.default_rng(seed)
    grid = grid or default_polar_grid()
    out = []
    for index in range(members):
        fill = float(rng.uniform())
        sub_seed = int(rng.integers(0, 2**31 - 1))
        mu = float(rng.uniform(0.0, 2.0 * math.pi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        h = sample_certified_h(params, max_degree, fill, sub_seed)
        member = build_member(h, moebius_dilatation(params.beta, mu, phi), params)
        out.append((index, member, verify_member(member, params, n_max, grid, slack)))
    return out
