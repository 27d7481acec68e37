"""Data model for the harmonic-map class: parameters, dilatations and the
coefficient convolution that produces the co-analytic part.

A map is f = h + conj(g) with analytic part h (normalized: h(0) = 0,
h'(0) = 1) and co-analytic part g determined by the dilatation w through
g' = w * h'.  The first co-analytic coefficient satisfies |b1| = |w(0)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .series import TruncatedSeries, differentiate, evaluate

__all__ = [
    "ClassParams",
    "DilatationSpec",
    "HarmonicMapSpec",
    "moebius_dilatation",
    "rotation_dilatation",
    "custom_dilatation",
    "default_truncation_order",
    "dilatation_coeffs",
    "evaluate_dilatation",
    "co_analytic_from",
    "harmonic_map",
    "jacobian_at",
    "lambda_at",
]

#: Tail target for the automatic dilatation truncation order.
COEFF_TAIL_TARGET = 1e-12

#: Tolerance for exact-identity checks (|b1| = beta, normalization, ...).
IDENT_TOL = 1e-12


@dataclass(frozen=True)
class ClassParams:
    """Class triple: order parameter alpha, |g'(0)| = beta, exponent delta.

    alpha and beta live in [0, 1).  delta is unrestricted at the data level;
    every bound evaluator additionally requires delta >= 0 (the hypothesis
    shared by all the inequalities this package computes).
    """

    alpha: float
    beta: float
    delta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must be in [0, 1), got {self.alpha}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must be in [0, 1), got {self.beta}")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")

    def require_nonnegative_delta(self) -> None:
        if self.delta < 0:
            raise ValueError(
                f"delta must be >= 0 for bound evaluation, got {self.delta}"
            )


def default_truncation_order(beta: float) -> int:
    """Truncation order keeping the dilatation coefficient tail below 1e-12.

    The geometric tail sum_{n>N} |c_n| = (1-beta^2) beta^N / (1-beta) is
    solved for N; the result is floored at 64 so small-beta series keep a
    comfortable default resolution.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError("beta must be in [0, 1)")
    if beta == 0.0:
        return 64
    n = math.log(COEFF_TAIL_TARGET * (1.0 - beta) / (1.0 - beta * beta)) / math.log(beta)
    return max(64, int(math.ceil(n)))


@dataclass(frozen=True)
class DilatationSpec:
    """Admissible dilatation: |w| < 1 on the disk with |w(0)| = beta.

    kinds:
      * ``moebius``  - w(z) = e^{i mu} (e^{i phi} z + beta) / (1 + beta e^{i phi} z)
      * ``rotation`` - w(z) = e^{i(mu + phi)} z (the beta = 0 disk automorphism)
      * ``custom``   - an explicit truncated series
    """

    kind: str
    beta: float
    mu: float = 0.0
    phi: float = 0.0
    series: Optional[TruncatedSeries] = field(default=None)

    def __post_init__(self) -> None:
        if self.kind not in ("moebius", "rotation", "custom"):
            raise ValueError(f"unknown dilatation kind {self.kind!r}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError("beta must be in [0, 1)")
        if self.kind == "rotation" and self.beta != 0.0:
            raise ValueError("rotation dilatation has w(0) = 0, so beta must be 0")
        if self.kind == "custom":
            if self.series is None:
                raise ValueError("custom dilatation requires a series")
        elif self.series is not None:
            raise ValueError("series is only meaningful for the custom kind")


def moebius_dilatation(beta: float, mu: float = 0.0, phi: float = 0.0) -> DilatationSpec:
    return DilatationSpec(kind="moebius", beta=beta, mu=mu, phi=phi)


def rotation_dilatation(mu: float = 0.0, phi: float = 0.0) -> DilatationSpec:
    return DilatationSpec(kind="rotation", beta=0.0, mu=mu, phi=phi)


def custom_dilatation(series: TruncatedSeries, beta: float) -> DilatationSpec:
    """Wrap an explicit series, checking |c0| = beta and |w| < 1 on a grid.

    The modulus check samples |z| <= 0.999; it is a necessary screen, not a
    proof of admissibility on the open disk.
    """
    if abs(abs(series.coeffs[0]) - beta) > IDENT_TOL:
        raise ValueError("custom dilatation must have |c0| = beta")
    radii = np.linspace(0.1, 0.999, 10)
    angles = np.exp(2j * np.pi * np.arange(64) / 64)
    z = radii[:, None] * angles[None, :]
    if np.max(np.abs(evaluate(series, z))) >= 1.0:
        raise ValueError("custom dilatation reaches modulus >= 1 inside the disk")
    return DilatationSpec(kind="custom", beta=beta, series=series)


def dilatation_coeffs(w: DilatationSpec, order: int) -> TruncatedSeries:
    """Power-series coefficients of the dilatation, truncated at ``order``.

    For the Moebius kind the geometric expansion gives c0 = e^{i mu} beta and
    c_n = e^{i mu} e^{i n phi} (1 - beta^2)(-beta)^{n-1} for n >= 1, which
    realizes |c1| = 1 - |c0|^2 (the largest value the Schwarz-Pick coefficient
    inequality allows).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if w.kind == "custom":
        coeffs = np.zeros(order + 1, dtype=complex)
        take = min(order, w.series.order) + 1
        coeffs[:take] = w.series.coeffs[:take]
        return TruncatedSeries(coeffs)
    coeffs = np.zeros(order + 1, dtype=complex)
    if w.kind == "rotation":
        if order >= 1:
            coeffs[1] = np.exp(1j * (w.mu + w.phi))
        return TruncatedSeries(coeffs)
    beta = w.beta
    coeffs[0] = beta * np.exp(1j * w.mu)
    if order >= 1:
        n = np.arange(1, order + 1)
        coeffs[1:] = (
            np.exp(1j * w.mu)
            * np.exp(1j * n * w.phi)
            * (1.0 - beta * beta)
            * (-beta) ** (n - 1)
        )
    return TruncatedSeries(coeffs)


def evaluate_dilatation(w: DilatationSpec, z):
    """Evaluate w(z) from the closed form when one exists.

    Verification code calls this rather than the truncated series so that the
    reference value is independent of the series machinery being checked.
    """
    z = np.asarray(z, dtype=complex)
    if w.kind == "custom":
        return evaluate(w.series, z)
    if w.kind == "rotation":
        out = np.exp(1j * (w.mu + w.phi)) * z
        return complex(out) if out.ndim == 0 else out
    u = np.exp(1j * w.phi) * z
    out = np.exp(1j * w.mu) * (u + w.beta) / (1.0 + w.beta * u)
    return complex(out) if out.ndim == 0 else out


def co_analytic_from(h: TruncatedSeries, w: DilatationSpec, order: int) -> TruncatedSeries:
    """Co-analytic coefficients from g' = w h':

        n b_n = sum_{k=0}^{n-1} (k+1) a_{k+1} c_{n-1-k},   b_0 = 0.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if not h.is_normalized():
        raise ValueError("analytic part must be normalized (a0 = 0, a1 = 1)")
    hp = differentiate(h).coeffs
    c = dilatation_coeffs(w, order - 1).coeffs
    gp = np.convolve(hp, c)[:order]
    b = np.zeros(order + 1, dtype=complex)
    b[1:] = gp / np.arange(1, order + 1)
    return TruncatedSeries(b)


@dataclass(frozen=True)
class HarmonicMapSpec:
    """A class member: analytic part, dilatation, derived co-analytic part."""

    h: TruncatedSeries
    w: DilatationSpec
    g: TruncatedSeries

    def __post_init__(self) -> None:
        if self.g.order < 1:
            raise ValueError("co-analytic part must carry at least b1")
        if abs(abs(self.g.coeffs[1]) - self.w.beta) > IDENT_TOL:
            raise ValueError("|b1| must equal the dilatation beta")


def harmonic_map(h: TruncatedSeries, w: DilatationSpec, order: int | None = None) -> HarmonicMapSpec:
    """Assemble a HarmonicMapSpec, deriving g at a tail-controlled order.

    No membership certificate is checked here; see the factory module for the
    certified constructor.
    """
    if order is None:
        order = max(h.order + 1, default_truncation_order(w.beta))
    return HarmonicMapSpec(h=h, w=w, g=co_analytic_from(h, w, order))


def jacobian_at(f: HarmonicMapSpec, z):
    """J_f(z) = |h'(z)|^2 (1 - |w(z)|^2); positive iff sense-preserving."""
    hp = evaluate(differentiate(f.h), z)
    wv = evaluate_dilatation(f.w, z)
    out = np.abs(hp) ** 2 * (1.0 - np.abs(wv) ** 2)
    return float(out) if np.ndim(out) == 0 else out


def lambda_at(f: HarmonicMapSpec, z):
    """|h'(z)| + |g'(z)| = |h'(z)| (1 + |w(z)|), the maximal directional stretch."""
    hp = evaluate(differentiate(f.h), z)
    wv = evaluate_dilatation(f.w, z)
    out = np.abs(hp) * (1.0 + np.abs(wv))
    return float(out) if np.ndim(out) == 0 else out
