"""Deformed convolution calculus for products of Mittag-Leffler functions.

The product of two one-parameter functions at lam*x and lam*y expands in
powers of lam with coefficients alpha_power(n; x, y) / Gamma(1+alpha*n),
where alpha_power generalizes (x+y)^n through deformed binomials.  The
same coefficients arise from the n-th moments of the convolution kernel
built out of two subordination kernels; both routes are implemented and
cross-validated, together with the closed alpha = 1/2 forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .mlf import MLParams, ml_point
from .quadrature import DEFAULT_SPEC, QuadSpec, integrate_finite
from .specfun import HypArgs, alpha_binomial, hyp_pfq
from .stable import subordination_kernel

_EXP_FLOOR = 745.0


@dataclass(frozen=True)
class GCoeff:
    """One evaluated deformed-power coefficient (x (+)_alpha y)^n."""

    n: int
    alpha: float
    x: float
    y: float
    value: float

    @classmethod
    def make(cls, n: int, alpha: float, x: float, y: float) -> "GCoeff":
        return cls(n, alpha, x, y, alpha_power_sum(n, alpha, x, y))


def alpha_power_sum(n: int, alpha: float, x: float, y: float) -> float:
    """Finite sum over r of binom_alpha(n, r) x^(n-r) y^r; equals (x+y)^n
    at alpha = 1."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    total = 0.0
    for r in range(n + 1):
        total += alpha_binomial(n, r, alpha) * x ** (n - r) * y**r
    return total


def _hyp2f1_regular(b: float, z: float) -> float:
    """2F1(1, b; 3/2; z) for any real z <= 1, via the direct series when
    it converges and the Pfaff map z -> z/(z-1) otherwise (keeps the
    argument inside the validated series window)."""
    terminating = b <= 0.0 and float(b).is_integer()
    if terminating or abs(z) < 1.0:
        return hyp_pfq(HypArgs(upper=(1.0, b), lower=(1.5,), z=z)).value
    w = z / (z - 1.0)
    part = hyp_pfq(HypArgs(upper=(0.5, b), lower=(1.5,), z=w))
    return (1.0 - z) ** (-b) * part.value


def alpha_power_half_closed(n: int, x: float, y: float) -> float:
    """Closed alpha = 1/2 form of the deformed power: a gamma prefactor
    times a symmetric pair of 2F1 values (terminating for odd n)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if x <= 0.0 or y <= 0.0:
        raise DomainError(f"closed form needs x, y > 0, got {x}, {y}")
    b = (1.0 - n) / 2.0
    pref = 2.0 * math.gamma(1.0 + n / 2.0) / (math.sqrt(math.pi) * math.gamma((1.0 + n) / 2.0))
    first = y * x ** (n - 1.0) * _hyp2f1_regular(b, -(y * y) / (x * x))
    second = x * y ** (n - 1.0) * _hyp2f1_regular(b, -(x * x) / (y * y))
    return pref * (first + second)


def ml_product_kernel(
    alpha: float, u: float, x: float, y: float, quad: QuadSpec = DEFAULT_SPEC
) -> float:
    """Kernel whose exponential transform is the product of two ML values:
    the finite convolution of two subordination kernels with scales x, y."""
    if u <= 0.0:
        raise DomainError(f"need u > 0, got {u}")
    if x <= 0.0 or y <= 0.0:
        raise DomainError(f"need x, y > 0, got {x}, {y}")

    def integrand(xi: float) -> float:
        if xi <= 0.0 or xi >= u:
            return 0.0
        return subordination_kernel(alpha, xi, x) * subordination_kernel(alpha, u - xi, y)

    value, _err = integrate_finite(integrand, 0.0, u, quad)
    return value


def _product_kernel_cutoff(alpha: float, x: float, y: float, n: int) -> float:
    """Upper u-limit where u^n times the convolution kernel is dead.

    The kernel inherits the slower of the two stretched-exponential
    tails: exponent c * (u/2)^(1/(1-alpha)) with c from the wider scale.
    """
    power = 1.0 / (1.0 - alpha)
    big = (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha))
    c = big * max(x, y) ** (-alpha / (1.0 - alpha)) * 0.5**power
    u = max((2.0 * (x**alpha + y**alpha)) ** (1 / alpha), 1.0)
    g = lambda t: n * math.log(t) - c * t**power
    peak = max((n / (c * power)) ** (1.0 / power), u) if n else u
    g_max = g(peak)
    t = peak
    step = max(peak, 1.0)
    while g(t) > g_max - 55.0:
        t += step
        step *= 1.5
    return t


def alpha_power_by_moments(
    n: int, alpha: float, x: float, y: float, quad: QuadSpec = DEFAULT_SPEC
) -> float:
    """Deformed power recovered from the n-th moment of the convolution
    kernel at raised scales, normalized by the fractional moment
    n! / Gamma(1 + alpha n)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    xs = x ** (1.0 / alpha)
    ys = y ** (1.0 / alpha)
    inner = QuadSpec(
        abs_tol=quad.abs_tol * 0.1,
        rel_tol=quad.rel_tol * 0.1,
        max_subdivisions=quad.max_subdivisions,
        split_point=quad.split_point,
    )
    cutoff = _product_kernel_cutoff(alpha, xs, ys, n)

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        return u**n * ml_product_kernel(alpha, u, xs, ys, inner)

    value, _err = integrate_finite(integrand, 0.0, cutoff, quad)
    return value * math.gamma(1.0 + alpha * n) / math.factorial(n)


def product_identity_residual(
    alpha: float,
    lam: float,
    x: float,
    y: float,
    n_terms: int = 120,
    quad: QuadSpec = DEFAULT_SPEC,
) -> float:
    """|sum_n lam^n alpha_power(n;x,y) / Gamma(1+alpha n)  -  E(lam x) E(lam y)|.

    The partial sum is monitored: if its tail has not settled by n_terms
    a ConvergenceError is raised instead of returning a drifting value.
    """
    total = 0.0
    lam_pow = 1.0
    tail = [math.inf, math.inf]
    for n in range(n_terms):
        term = lam_pow * alpha_power_sum(n, alpha, x, y) / math.gamma(1.0 + alpha * n)
        total += term
        lam_pow *= lam
        tail = [tail[1], abs(term)]
        if max(tail) < 1e-14 * max(abs(total), 1e-300):
            break
    else:
        raise ConvergenceError(
            f"product expansion not settled after {n_terms} terms", best=total, terms=n_terms
        )
    left = ml_point(MLParams(alpha), lam * x, quad=quad).value
    right = ml_point(MLParams(alpha), lam * y, quad=quad).value
    return abs(total - left * right)
