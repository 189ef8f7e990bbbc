"""Mittag-Leffler evaluation by three independent routes, plus the two
self-consistency identities the package uses as built-in checks.

Routes:

* series  - the defining power series (one- and three-parameter),
  guarded against catastrophic cancellation at strongly negative
  arguments;
* integral - the exponential integral against the subordination kernel,
  authoritative exactly where the series cancels;
* umbral  - the series with each coefficient produced by the fractional
  moment substitution rule (replace the r-th power of the shift symbol
  by the Stieltjes moment of order -alpha*r), kept as an independently
  coded path that validates the substitution used by the solvers.

Identities: the Laplace-transform check against 1/(1+a), and the
fractional relaxation ODE residual with the Riemann-Liouville derivative
evaluated through its Caputo decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CancellationError, ConvergenceError, DomainError, RangeOverflowError
from .quadrature import DEFAULT_SPEC, QuadSpec, integrate_finite
from .stable import RationalAlpha, stieltjes_moment, subordination_kernel

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10_000
CANCEL_LIMIT = 1e12
Z_SERIES_SWITCH = 10.0
_EXP_FLOOR = 745.0


@dataclass(frozen=True)
class MLParams:
    """(alpha, beta, gamma) triple; beta = gamma = 1 is the one-parameter
    function, (alpha, 1 + alpha*delta, 1 + delta) the family used by the
    squeeze-operator moments."""

    alpha: float
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"need alpha in (0, 1], got {self.alpha}")
        if self.beta <= 0.0:
            raise DomainError(f"need beta > 0, got {self.beta}")

    @property
    def one_parameter(self) -> bool:
        return self.beta == 1.0 and self.gamma == 1.0


@dataclass
class MLResult:
    """Evaluation record: value, route taken, series terms or integrand
    evaluations consumed, and the cancellation-severity flag
    max|term| / |value| (1.0 for benign sums)."""

    value: float
    method: str
    count: int
    flag: float


def ml_series(
    p: MLParams,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    cancel_limit: float = CANCEL_LIMIT,
) -> MLResult:
    """Power series sum_r (gamma)_r z^r / (r! Gamma(beta + alpha r)).

    Stops after two consecutive terms below tol * |partial sum|.  Raises
    CancellationError when max|term| / |sum| exceeds cancel_limit (the
    strongly negative-argument regime belongs to the integral route).
    """
    term = 1.0 / math.gamma(p.beta)
    total = term
    comp = 0.0
    max_abs = abs(term)
    small_streak = 0
    r = 0
    while r < max_terms:
        ratio = (
            z
            * (p.gamma + r)
            / (r + 1.0)
            * math.exp(math.lgamma(p.beta + p.alpha * r) - math.lgamma(p.beta + p.alpha * (r + 1)))
        )
        term *= ratio
        r += 1
        if not math.isfinite(term):
            raise ConvergenceError(f"series term overflow at r={r} (z={z})", best=total, terms=r)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        max_abs = max(max_abs, abs(term))
        if abs(term) < tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ConvergenceError(
            f"series not converged after {max_terms} terms (z={z})", best=total, terms=r
        )
    severity = max_abs / max(abs(total), 1e-300)
    if severity > cancel_limit:
        raise CancellationError(
            f"series cancellation at z={z} (severity {severity:.3g})",
            severity=severity,
            best=total,
        )
    return MLResult(value=total, method="series", count=r, flag=severity)


def ml_umbral(
    alpha: float,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    cancel_limit: float = CANCEL_LIMIT,
) -> MLResult:
    """One-parameter function as sum_n z^n M(-alpha n) / n! with M the
    fractional moment of the stable density (the shift-substitution rule,
    coded independently of ml_series)."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"umbral route needs alpha in (0,1), got {alpha}")
    total = 1.0  # n = 0: M(0) = 1
    max_abs = 1.0
    small_streak = 0
    if z == 0.0:
        return MLResult(1.0, "umbral", 1, 1.0)
    ln_abs_z = math.log(abs(z))
    zn_over_fact = 1.0  # z^n / n! by recurrence
    n = 0
    while n < max_terms:
        n += 1
        sigma = -alpha * n
        if n <= 170:
            # moment Gamma(1 - sigma/alpha) / Gamma(1 - sigma) at full precision
            zn_over_fact *= z / n
            term = zn_over_fact * (math.gamma(1.0 - sigma / alpha) / math.gamma(1.0 - sigma))
        else:
            ln_moment = math.lgamma(1.0 - sigma / alpha) - math.lgamma(1.0 - sigma)
            ln_term = n * ln_abs_z - math.lgamma(n + 1.0) + ln_moment
            if ln_term > 700.0:
                raise ConvergenceError(f"umbral term overflow at n={n}", best=total, terms=n)
            sign = -1.0 if (z < 0.0 and n % 2 == 1) else 1.0
            term = sign * math.exp(ln_term)
        total += term
        max_abs = max(max_abs, abs(term))
        if abs(term) < tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ConvergenceError(
            f"umbral series not converged after {max_terms} terms (z={z})", best=total, terms=n
        )
    severity = max_abs / max(abs(total), 1e-300)
    if severity > cancel_limit:
        raise CancellationError(
            f"umbral cancellation at z={z} (severity {severity:.3g})",
            severity=severity,
            best=total,
        )
    return MLResult(value=total, method="umbral", count=n, flag=severity)


def umbral_term(alpha: float, n: int) -> float:
    """Coefficient M(-alpha n) / n! produced by the substitution rule;
    equals 1 / Gamma(1 + alpha n) analytically."""
    m = stieltjes_moment(alpha, -alpha * n)
    return m.value / math.factorial(n)


def _tail_cutoff(lam: float, c: float, power: float) -> float:
    """Upper limit Y with lam*y - c*y^power below the running max by ~50."""
    if lam <= 0.0:
        base = (55.0 / c) ** (1.0 / power)
        if lam < 0.0:
            base = min(base, 55.0 / -lam)
        return base
    # growing exponential against the stretched tail: pass the saddle,
    # then walk down 50 e-folds
    y = max((lam / (c * power)) ** (1.0 / (power - 1.0)), 1e-6)
    g_max = lam * y - c * y**power
    step = max(y, 1.0)
    while lam * y - c * y**power > g_max - 55.0:
        y += step
        step *= 1.5
    return y


def ml_integral(alpha: float, lam: float, x: float, quad: QuadSpec = DEFAULT_SPEC) -> MLResult:
    """One-parameter value at lam * x via the exponential integral of the
    subordination kernel with scale x^(1/alpha).

    The kernel decays like a stretched exponential with power 1/(1-alpha)
    > 1, so lam > 0 stays integrable; the cutoff adapts to lam.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"integral route needs alpha in (0,1), got {alpha}")
    if x <= 0.0:
        raise DomainError(f"integral route needs x > 0, got {x}")
    scale = x ** (1.0 / alpha)
    power = 1.0 / (1.0 - alpha)
    c = (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha)) * scale ** (-alpha / (1.0 - alpha))
    cutoff = _tail_cutoff(lam, c, power)
    evals = 0

    def integrand(y: float) -> float:
        nonlocal evals
        evals += 1
        k = subordination_kernel(alpha, y, scale)
        if k == 0.0:
            return 0.0
        expo = lam * y
        if expo >= 700.0:
            raise RangeOverflowError(f"exponential overflow at y={y} (lam={lam})")
        return k * math.exp(expo)

    value, err = integrate_finite(integrand, 0.0, cutoff, quad)
    return MLResult(value=value, method="integral", count=evals, flag=err)


def ml_point(
    p: MLParams,
    z: float,
    method: str = "auto",
    quad: QuadSpec = DEFAULT_SPEC,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    cancel_limit: float = CANCEL_LIMIT,
    z_switch: float = Z_SERIES_SWITCH,
) -> MLResult:
    """Evaluate with an explicit route or auto-dispatch.

    Auto: series inside |z| <= z_switch when its cancellation flag stays
    under the guard, the integral route otherwise (one-parameter only;
    alpha = 1 falls back to exp, which the series equals exactly).
    """
    if method == "series":
        return ml_series(p, z, tol=tol, max_terms=max_terms, cancel_limit=cancel_limit)
    if method == "umbral":
        if not p.one_parameter:
            raise DomainError("umbral route is defined for the one-parameter function")
        return ml_umbral(p.alpha, z, tol=tol, max_terms=max_terms, cancel_limit=cancel_limit)
    if method == "integral":
        if not p.one_parameter:
            raise DomainError("integral route is defined for the one-parameter function")
        return ml_integral(p.alpha, z, 1.0, quad=quad)
    if method != "auto":
        raise DomainError(f"unknown method {method!r}")
    if p.one_parameter and p.alpha == 1.0:
        return MLResult(math.exp(z), "exp", 1, 1.0)
    if abs(z) <= z_switch or not p.one_parameter:
        # dispatch threshold is stricter than the hard series guard: once
        # the flag passes 1e8 the integral route is already more accurate
        dispatch_limit = min(cancel_limit, 1e8) if p.one_parameter else cancel_limit
        try:
            return ml_series(p, z, tol=tol, max_terms=max_terms, cancel_limit=dispatch_limit)
        except (CancellationError, ConvergenceError):
            if not p.one_parameter:
                raise
    return ml_integral(p.alpha, z, 1.0, quad=quad)


def ml_value(alpha: float, z: float, quad: QuadSpec = DEFAULT_SPEC) -> float:
    """Convenience: one-parameter value with auto dispatch."""
    return ml_point(MLParams(alpha), z, quad=quad).value


def laplace_identity_residual(
    ra: RationalAlpha, a: float, quad: QuadSpec = DEFAULT_SPEC
) -> float:
    """|integral_0^inf e^-x E(-a x^alpha) dx - 1/(1+a)| for |a| < 1."""
    if abs(a) >= 1.0:
        raise DomainError(f"identity holds for |a| < 1, got a={a}")
    alpha = ra.value
    p = MLParams(alpha)

    def integrand(x: float) -> float:
        if x <= 0.0:
            return 1.0
        return math.exp(-x) * ml_point(p, -a * x**alpha, quad=quad).value

    value, _err = integrate_finite(integrand, 0.0, 50.0, quad)
    return abs(value - 1.0 / (1.0 + a))


def ml_series_derivative(
    alpha: float, b: float, y: float, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> float:
    """d/dy of the one-parameter function at b*y^alpha, summed termwise:
    sum_{r>=1} b^r alpha r y^(alpha r - 1) / Gamma(1 + alpha r)."""
    if y <= 0.0:
        raise DomainError(f"termwise derivative needs y > 0, got {y}")
    w = b * y**alpha
    total = 0.0
    term_pow = 1.0
    small_streak = 0
    for r in range(1, max_terms + 1):
        term_pow *= w
        term = term_pow * alpha * r / (y * math.gamma(1.0 + alpha * r))
        total += term
        if abs(term) < tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
        if 1.0 + alpha * (r + 1) > 170.0 and abs(w) < 1.0:
            return total
    raise ConvergenceError(f"derivative series not converged (w={w})", best=total)


def fractional_ode_residual(
    alpha: float, b: float, x: float, quad: QuadSpec = DEFAULT_SPEC
) -> float:
    """Residual of the relaxation identity: the order-alpha
    Riemann-Liouville derivative of E(b t^alpha) at t = x minus
    b E(b x^alpha) + x^-alpha / Gamma(1 - alpha).

    The left side uses the Caputo decomposition: the x^-alpha boundary
    term plus the convolution of (x-y)^-alpha with the termwise series
    derivative (finite differences would be wrecked by the singular
    weight).
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if x <= 0.0:
        raise DomainError(f"need x > 0, got {x}")
    gamma_term = x ** (-alpha) / math.gamma(1.0 - alpha)

    def integrand(y: float) -> float:
        if y <= 0.0 or y >= x:
            return 0.0
        return (x - y) ** (-alpha) * ml_series_derivative(alpha, b, y)

    conv, _err = integrate_finite(integrand, 0.0, x, quad)
    lhs = gamma_term + conv / math.gamma(1.0 - alpha)
    rhs = b * ml_point(MLParams(alpha), b * x**alpha, quad=quad).value + gamma_term
    return abs(lhs - rhs)
