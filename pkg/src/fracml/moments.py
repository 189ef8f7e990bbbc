"""Heat polynomials and the analytic moment laws of the operator catalog,
plus a trapezoid moment oracle for sampled slices.

Every fractional law follows one umbral substitution rule: expand the
ordinary n-th moment in powers of operational time tau and replace tau^m
by t^(alpha m) times the fractional moment of order -alpha*m.  Applied
per operator this yields closed ML-type expressions, which the slice
oracle cross-checks numerically.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DomainError, MissingMomentError, RegimeError
from .mlf import MLParams, ml_point
from .quadrature import DEFAULT_SPEC, QuadSpec, integrate_finite
from .solver import SQUEEZE_TAU_MAX, FieldSlice, InitialCondition


class TruncationWarning(UserWarning):
    """Grid too narrow (or too coarse) for the requested moment."""


def heat_poly(n: int, big_x: float, big_y: float) -> float:
    """Heat polynomial: n! sum_r X^(n-2r) Y^r / ((n-2r)! r!)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    total = 0.0
    for r in range(n // 2 + 1):
        total += (
            big_x ** (n - 2 * r)
            * big_y**r
            * math.factorial(n)
            / (math.factorial(n - 2 * r) * math.factorial(r))
        )
    return total


def frac_heat_poly(n: int, alpha: float, big_x: float, big_y: float) -> float:
    """Fractional heat polynomial: r! in the Y-expansion becomes
    Gamma(1 + alpha r); requires Y >= 0 and reduces to heat_poly at
    alpha = 1."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if big_y < 0.0:
        raise DomainError(f"need Y >= 0, got {big_y}")
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"need alpha in (0, 1], got {alpha}")
    total = 0.0
    for r in range(n // 2 + 1):
        total += (
            big_x ** (n - 2 * r)
            * big_y ** (alpha * r)
            * math.factorial(n)
            / (math.factorial(n - 2 * r) * math.gamma(1.0 + alpha * r))
        )
    return total


def _moment(ic: InitialCondition, n: int) -> float:
    value = ic.moment(n)
    if not math.isfinite(value):
        raise MissingMomentError(f"initial moment of order {n} is not finite")
    return value


def moment_diffusion(n: int, alpha: float, ic: InitialCondition, t: float) -> float:
    """n-th moment under fractional diffusion: the initial density
    integrated against the fractional heat polynomial at (xi, t^alpha);
    for centered data the second moment is 2 t^alpha / Gamma(1+alpha)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if t < 0.0:
        raise DomainError(f"need t >= 0, got {t}")
    total = 0.0
    for r in range(n // 2 + 1):
        total += (
            _moment(ic, n - 2 * r)
            * t ** (alpha * r)
            * math.factorial(n)
            / (math.factorial(n - 2 * r) * math.gamma(1.0 + alpha * r))
        )
    return total


def moment_dilation(n: int, alpha: float, ic: InitialCondition, t: float) -> float:
    """n-th moment under fractional dilation flow: sigma^n E(-(n+1) t^alpha)."""
    sig = _moment(ic, n)
    return sig * ml_point(MLParams(alpha), -(n + 1.0) * t**alpha).value


def moment_diffusion_damping(
    n: int, alpha: float, a: float, b: float, ic: InitialCondition, t: float
) -> float:
    """n-th moment under diffusion+damping: the double sum over the heat
    polynomial row r and the binomial split s, each term carrying
    E(b t^alpha (n-2s)).

    The (-1)^s sign from expanding (1 - e^(-2 b tau c))^r is included; the
    printed n = 2 reduction (a/b + sigma^2) E(2 b t^alpha) - a/b pins it.
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"need a, b > 0, got a={a}, b={b}")
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    p = MLParams(alpha)
    total = 0.0
    for r in range(n // 2 + 1):
        sig = _moment(ic, n - 2 * r)
        for s in range(r + 1):
            ml = ml_point(p, b * t**alpha * (n - 2.0 * s)).value
            total += (
                (-1.0) ** s
                * (a / (2.0 * b)) ** r
                * sig
                * math.factorial(n)
                / (math.factorial(s) * math.factorial(r - s) * math.factorial(n - 2 * r))
                * ml
            )
    return total


def moment_squared_dilation(n: int, alpha: float, ic: InitialCondition, t: float) -> float:
    """n-th moment under the squared-dilation flow: sigma^n E((2n + n^2) t^alpha)."""
    sig = _moment(ic, n)
    return sig * ml_point(MLParams(alpha), (2.0 * n + n * n) * t**alpha).value


def moment_squeeze_ratio(
    n: int,
    alpha: float,
    ic: InitialCondition,
    t: float,
    quad: QuadSpec = DEFAULT_SPEC,
    squeeze_tau_max: float = SQUEEZE_TAU_MAX,
) -> float:
    """Squeeze-operator moment as the ratio to the zeroth moment (the
    kernel is known only up to proportionality): row r carries the
    three-parameter ML factor of the quadratic damping at parameters
    (alpha, 1 + alpha r, 1 + r)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    tau_equiv = t**alpha / math.gamma(1.0 + alpha) if t > 0.0 else 0.0
    if tau_equiv > squeeze_tau_max:
        raise RegimeError(
            f"squeeze window: t^alpha/Gamma(1+alpha) = {tau_equiv:.3g} exceeds {squeeze_tau_max:g}"
        )
    return _squeeze_raw(n, alpha, ic, t, quad) / _squeeze_raw(0, alpha, ic, t, quad)


# the three-parameter series keeps its cancellation flag under ~1e11 for
# gamma <= 4 inside this argument radius
_PRABHAKAR_ARG_MAX = 4.0


def _squeeze_raw(n: int, alpha: float, ic: InitialCondition, t: float, quad: QuadSpec) -> float:
    if t == 0.0:
        return _moment(ic, n)
    ta = t**alpha
    lo, hi = ic.effective_support()
    # keep the three-parameter series inside its cancellation guard; the
    # discarded wings must carry no data mass
    xi_lim = math.sqrt(2.0 * _PRABHAKAR_ARG_MAX / ta)
    lo, hi = max(lo, -xi_lim), min(hi, xi_lim)
    if max(abs(ic.f(lo)), abs(ic.f(hi))) > 1e-10 * max(abs(ic.f(0.5 * (lo + hi))), 1e-30):
        warnings.warn(
            "initial data extends past the evaluable argument window; "
            "squeeze moment may be truncated",
            TruncationWarning,
            stacklevel=3,
        )
    total = 0.0
    for r in range(n // 2 + 1):
        p = MLParams(alpha, beta=1.0 + alpha * r, gamma=1.0 + r)

        def integrand(xi: float) -> float:
            return ic.f(xi) * xi ** (n - 2 * r) * ml_point(p, -0.5 * xi * xi * ta).value

        part, _err = integrate_finite(integrand, lo, hi, quad)
        total += (0.5 * ta) ** r * math.factorial(n) / math.factorial(n - 2 * r) * part
    return total


def numeric_moment(field: FieldSlice, n: int) -> float:
    """Trapezoid moment of a slice with a Richardson refinement estimate;
    warns when the boundary integrand is not negligible relative to its
    peak (grid too narrow) or when halving the grid moves the value."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    x = field.grid
    if x.size < 3:
        raise DomainError("need at least 3 grid points for a moment")
    g = x**n * field.values
    full = float(np.trapezoid(g, x))
    half = float(np.trapezoid(g[::2], x[::2]))
    peak = float(np.max(np.abs(g)))
    if peak > 0.0 and max(abs(g[0]), abs(g[-1])) > 1e-10 * peak:
        warnings.warn(
            f"boundary integrand is {max(abs(g[0]), abs(g[-1])) / peak:.2e} of peak; "
            "grid may truncate the moment",
            TruncationWarning,
            stacklevel=2,
        )
    refinement = (full - half) / 3.0
    if abs(refinement) > 0.01 * max(abs(full), 1e-300):
        warnings.warn(
            f"trapezoid refinement moved the moment by {refinement:.3g}; grid may be too coarse",
            TruncationWarning,
            stacklevel=2,
        )
    return full + refinement
