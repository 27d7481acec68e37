"""Numerical kernels: adaptive quadrature, digamma, real polynomials,
Descartes sign variation, interval variation counts and bisection.

Everything here is deliberately dependency-free and testable in isolation;
the higher-level bound evaluators treat these as trusted primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureError

__all__ = [
    "Polynomial",
    "adaptive_quadrature",
    "digamma",
    "sign_variations",
    "vincent_variation_count",
    "isolate_root",
    "bisect_bracket",
]

# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
# (nodes are symmetric; only the non-negative half is stored).
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
)
_WGK = (
    0.022935322010529224,
    0.06309209262997855,
    0.10479001032225019,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
)
_WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)


def _gauss_kronrod_15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One 15-point Kronrod panel; returns (estimate, error_estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fc = f(mid)
    kronrod = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        dx = half * _XGK[i]
        f1 = f(mid - dx)
        f2 = f(mid + dx)
        kronrod += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            gauss += _WG[i // 2] * (f1 + f2)
    kronrod *= half
    gauss *= half
    return kronrod, abs(kronrod - gauss)


def _adaptive_panel(f, a, b, tol, depth, depth_limit) -> float:
    est, err = _gauss_kronrod_15(f, a, b)
    if err <= tol:
        return est
    if depth >= depth_limit:
        raise QuadratureError(
            f"quadrature on [{a:.17g}, {b:.17g}] did not converge within "
            f"{depth_limit} subdivision levels (error estimate {err:.3g}, tol {tol:.3g})"
        )
    mid = 0.5 * (a + b)
    if mid <= a or mid >= b:
        raise QuadratureError(
            f"quadrature interval [{a:.17g}, {b:.17g}] cannot be subdivided further"
        )
    half_tol = 0.5 * tol
    return _adaptive_panel(f, a, mid, half_tol, depth + 1, depth_limit) + _adaptive_panel(
        f, mid, b, half_tol, depth + 1, depth_limit
    )


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    breakpoints: Sequence[float] = (),
    depth_limit: int = 40,
) -> float:
    """Integrate ``f`` over [a, b] to absolute tolerance ``tol``.

    The interval is split at the supplied interior breakpoints first (known
    kinks), then each panel is refined adaptively with the 15-point Kronrod
    rule.  Failure to converge within ``depth_limit`` bisection levels raises
    QuadratureError rather than returning a silently degraded estimate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if b < a:
        raise ValueError("integration bounds must satisfy a <= b")
    if b == a:
        return 0.0
    cuts = sorted({float(x) for x in breakpoints if a < x < b})
    edges = [a, *cuts, b]
    total = b - a
    result = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        result += _adaptive_panel(f, lo, hi, tol * (hi - lo) / total, 0, depth_limit)
    return result


# B_{2k}/(2k) for the asymptotic tail psi(x) = log x - 1/(2x) - sum B_{2k}/(2k x^{2k}).
_PSI_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function for x > 0.

    Shifts the argument up to >= 8 with psi(x) = psi(x+1) - 1/x, then sums
    the asymptotic series; absolute error is below 1e-13 on the shifted range.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError("digamma requires x > 0")
    acc = 0.0
    while x < 8.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for coef in _PSI_TAIL:
        tail -= coef * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x + tail


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with ascending coefficients.

    Trailing zero coefficients are tolerated on input (degenerate storage);
    ``degree`` is always recomputed from the last exactly-nonzero entry.
    """

    coeffs: np.ndarray = field()

    def __init__(self, coeffs) -> None:
        arr = np.asarray(coeffs, dtype=float).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        val = np.full(x.shape, self.coeffs[-1], dtype=float)
        for c in self.coeffs[-2::-1]:
            val = val * x + c
        return float(val) if val.ndim == 0 else val


def sign_variations(p: Polynomial | Sequence[float]) -> int:
    """Strict sign changes in the sequence of nonzero coefficients."""
    coeffs = p.coeffs if isinstance(p, Polynomial) else np.asarray(p, dtype=float)
    signs = np.sign(coeffs[coeffs != 0.0])
    if signs.size < 2:
        return 0
    return int(np.sum(signs[1:] != signs[:-1]))


def vincent_variation_count(p: Polynomial, a: float, b: float) -> int:
    """Sign variations of (1+x)^n * p((a + b x)/(1 + x)).

    The count bounds the number of roots of ``p`` in (a, b) and matches it
    modulo 2.  Transformed coefficients are built by exact binomial
    convolution, never by sampling, so the sign pattern is reliable.
    """
    if not 0 <= a < b:
        raise ValueError("interval must satisfy 0 <= a < b")
    n = p.degree
    acc = np.zeros(n + 1)
    lin = np.array([a, b])  # a + b*x
    lin_pow = np.array([1.0])  # (a + b x)^i, updated incrementally
    for i in range(n + 1):
        ci = p.coeffs[i] if i < p.coeffs.size else 0.0
        if ci != 0.0:
            shift_pow = _binomial_row(n - i)  # (1 + x)^(n-i)
            term = np.convolve(lin_pow, shift_pow)
            acc[: term.size] += ci * term
        if i < n:
            lin_pow = np.convolve(lin_pow, lin)
    return sign_variations(acc)


def _binomial_row(m: int) -> np.ndarray:
    row = np.ones(m + 1)
    for k in range(1, m + 1):
        row[k] = row[k - 1] * (m - k + 1) / k
    return row


def bisect_bracket(
    p: Callable[[float], float], a: float, b: float, tol: float
) -> tuple[float, float]:
    """Bisect a sign-changing bracket down to width <= tol.

    Returns the final bracket.  Stops early if the midpoint is no longer
    representable strictly between the endpoints, so tol = 0 drives the
    bracket to floating-point resolution.
    """
    fa = p(a)
    fb = p(b)
    if fa == 0.0:
        return (a, a)
    if fb == 0.0:
        return (b, b)
    if (fa > 0) == (fb > 0):
        raise ValueError(f"endpoints do not bracket a root: p({a}) and p({b}) share a sign")
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = p(mid)
        if fm == 0.0:
            return (mid, mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return (a, b)


def isolate_root(p: Polynomial, a: float, b: float, tol: float) -> float:
    """Bisection root refinement on a bracketing interval; midpoint of the
    final bracket of width <= tol."""
    lo, hi = bisect_bracket(p, a, b, tol)
    return 0.5 * (lo + hi)
