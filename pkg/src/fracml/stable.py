"""One-sided stable laws with Laplace transform exp(-p^alpha), 0 < alpha < 1.

Three evaluation routes for the density, each authoritative in its own
regime and cross-validated against the others:

* the finite sum of generalized hypergeometric functions for rational
  alpha = l/k (small arguments, small numerators),
* the alternating large-argument series (moderate to large arguments),
* an exact angular integral with positive integrand (everything else,
  in particular alpha near 1 and the deep left tail where the other two
  cancel catastrophically in double precision).

Also here: the fractional (Stieltjes) moments, the subordination kernel
that rewrites Mittag-Leffler relaxation as an integral over an ordinary
exponential, and a seeded Monte Carlo sampler used as an independent
oracle by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CancellationError, ConvergenceError, DomainError, RangeOverflowError
from .quadrature import DEFAULT_SPEC, QuadSpec, integrate_finite
from .specfun import SeriesSum, HypArgs, delta_sequence, gamma, hyp_pfq

K_MAX_DEFAULT = 12
SWITCH_U_DEFAULT = 1.0
PHI_MAX_TERMS = 4000
# exp(-x) underflows to 0.0 below this
_EXP_FLOOR = 745.0
# ln of the tolerated max|term|/|sum| before the rational route defers
_LN_SEVERITY_BUDGET = 18.0

_diagnostics = {"negative_clamps": 0}


def clamp_diagnostics() -> dict:
    """Counts of density values clamped to 0 from negative round-off."""
    return dict(_diagnostics)


def _clamp(value: float) -> float:
    if value < 0.0:
        _diagnostics["negative_clamps"] += 1
        return 0.0
    return value


@dataclass(frozen=True)
class RationalAlpha:
    """Reduced fraction num/den representing alpha in (0, 1)."""

    num: int
    den: int

    def __post_init__(self):
        if not (0 < self.num < self.den):
            raise DomainError(f"need 0 < num < den, got {self.num}/{self.den}")
        if math.gcd(self.num, self.den) != 1:
            raise DomainError(f"{self.num}/{self.den} is not reduced")

    @property
    def value(self) -> float:
        return self.num / self.den

    @classmethod
    def from_float(cls, alpha: float, max_den: int = K_MAX_DEFAULT) -> "RationalAlpha | None":
        """Exact small-denominator representation of alpha, or None."""
        if not (0.0 < alpha < 1.0):
            return None
        frac = Fraction(alpha).limit_denominator(max_den)
        if 0 < frac.numerator < frac.denominator and abs(alpha - float(frac)) < 1e-12:
            return cls(frac.numerator, frac.denominator)
        return None


@dataclass(frozen=True)
class StieltjesMoment:
    """Fractional moment of the stable density: finite iff order < alpha."""

    value: float
    order: float
    alpha: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


def stieltjes_moment(alpha: float, order: float) -> StieltjesMoment:
    """Moment integral of u^order against the density: Gamma(1-order/alpha)
    / Gamma(1-order) for order < alpha, infinite otherwise."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if order >= alpha:
        return StieltjesMoment(math.inf, order, alpha)
    value = math.exp(math.lgamma(1.0 - order / alpha) - math.lgamma(1.0 - order))
    return StieltjesMoment(value, order, alpha)


def _hyp_argument(ra: RationalAlpha, u: float) -> float:
    sign = -1.0 if (ra.den - ra.num) % 2 else 1.0
    return sign * ra.num**ra.num / (ra.den**ra.den * u**ra.num)


def density_rational(
    ra: RationalAlpha,
    u: float,
    max_terms: int = 10_000,
    tol: float = 1e-14,
    severity_limit: float = 1e8,
) -> float:
    """Density at u for rational alpha = l/k via the k-1 hypergeometric terms.

    The route is exact for every u > 0 but cancels in double precision
    once the hypergeometric argument (which grows like u^-l) is large;
    a CancellationError is raised then and callers fall back to the
    angular integral.
    """
    if u <= 0.0:
        raise DomainError(f"density argument must be positive, got {u}")
    l, k = ra.num, ra.den
    w = _hyp_argument(ra, u)
    total = 0.0
    max_piece = 0.0
    for j in range(1, k):
        jl_k = j * l / k
        pref = (-1.0) ** j * u ** (-1.0 - jl_k) / (math.factorial(j) * gamma(-jl_k))
        args = HypArgs(
            upper=(1.0, *delta_sequence(l, 1.0 + jl_k)),
            lower=tuple(delta_sequence(k, 1.0 + j)),
            z=w,
        )
        part = hyp_pfq(args, max_terms=max_terms, tol=tol)
        term = pref * part.value
        total += term
        max_piece = max(max_piece, abs(term) * part.severity)
    severity = max_piece / max(abs(total), 1e-300)
    if severity > severity_limit:
        raise CancellationError(
            f"rational route cancels at u={u} (severity {severity:.3g})",
            severity=severity,
            best=total,
        )
    return _clamp(total)


def density_series(alpha: float, u: float, max_terms: int = PHI_MAX_TERMS) -> SeriesSum:
    """Large-argument alternating series for the density.

    Terms (-1)^(r+1) Gamma(1+alpha r) sin(pi alpha r) u^(-1-alpha r) / (pi r!).
    Converges for every u > 0 but is only numerically viable when u is not
    small; a ConvergenceError is raised when terms are still growing or the
    budget runs out (callers should use the rational or angular route there).
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if u <= 0.0:
        raise DomainError(f"density argument must be positive, got {u}")
    lnu = math.log(u)
    total = 0.0
    max_abs = 0.0
    small_streak = 0
    grow_streak = 0
    prev_abs = 0.0
    for r in range(1, max_terms + 1):
        s = math.sin(math.pi * alpha * r)
        if s == 0.0:
            continue
        ln_mag = math.lgamma(1.0 + alpha * r) - math.lgamma(r + 1.0) - (1.0 + alpha * r) * lnu
        if ln_mag > 700.0:
            raise ConvergenceError(
                f"series terms overflow at u={u} (small-argument regime)", best=total, terms=r
            )
        term = (-1.0) ** (r + 1) * s * math.exp(ln_mag) / math.pi
        total += term
        mag = abs(term)
        max_abs = max(max_abs, mag)
        if mag > prev_abs:
            grow_streak += 1
            if grow_streak >= 12 and max_abs > 1e12 * max(abs(total), 1e-300):
                raise ConvergenceError(
                    f"series cancels beyond recovery at u={u}", best=total, terms=r
                )
        else:
            grow_streak = 0
        prev_abs = mag
        if mag < 1e-16 * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ConvergenceError(f"series not converged after {max_terms} terms at u={u}",
                               best=total, terms=max_terms)
    severity = max_abs / max(abs(total), 1e-300)
    quality = "ok" if severity < 1e8 else "cancellation"
    return SeriesSum(value=_clamp(total), terms=r, quality=quality, severity=severity)


def _ln_angular_factor(alpha: float, theta: float) -> float:
    frac = alpha / (1.0 - alpha)
    return (
        math.log(math.sin((1.0 - alpha) * theta))
        + frac * math.log(math.sin(alpha * theta))
        - (1.0 + frac) * math.log(math.sin(theta))
    )


def density_angular(alpha: float, u: float, spec: QuadSpec | None = None) -> float:
    """Exact angular-integral form of the density.

    The integrand A(theta) * exp(-A(theta) * u^(-alpha/(1-alpha))) is
    positive and smooth, so this route has no cancellation anywhere in
    (0,1) x (0,inf); it is the fallback of last resort and the only
    practical route for alpha near 1 at sub-unit arguments.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if u <= 0.0:
        raise DomainError(f"density argument must be positive, got {u}")
    frac = alpha / (1.0 - alpha)
    try:
        v = u**-frac
    except OverflowError:
        return 0.0
    if not math.isfinite(v) or v <= 0.0:
        return 0.0
    # A(theta) increases from exp(ln_a0); the peak exponent A(0)*v is
    # factored out so the quadrature sees O(1)-scaled values even when
    # the density itself is deep in the left tail.
    ln_a0 = math.log(1.0 - alpha) + frac * math.log(alpha)
    peak = math.exp(min(ln_a0 + math.log(v), 710.0))
    if peak > _EXP_FLOOR * 3:
        return 0.0

    def scaled(theta: float) -> float:
        ln_a = _ln_angular_factor(alpha, theta)
        if ln_a > 690.0:
            return 0.0
        expo = ln_a - (math.exp(ln_a) * v - peak)
        return math.exp(expo) if expo > -_EXP_FLOOR else 0.0

    # integrate in m = -ln(pi - theta); the boundary layer that forms
    # near theta = pi for small v has O(1-alpha) width in m, so the
    # adaptive rule resolves it at any alpha
    def scaled_m(m: float) -> float:
        s = math.exp(-m)
        if s >= math.pi:
            s = math.nextafter(math.pi, 0.0)
        return scaled(math.pi - s) * s

    m_lo = -math.log(math.pi)
    m_hi = m_lo + 0.5
    while scaled_m(m_hi) > 0.0 and m_hi < 900.0:
        m_hi += 0.5

    magnitude = max(math.exp(ln_a0), min(1.0 / v, 1e280))
    spec = spec or QuadSpec(
        abs_tol=max(1e-16 * magnitude, 1e-300), rel_tol=1e-10, max_subdivisions=400
    )
    val, _err = integrate_finite(scaled_m, m_lo, m_hi, spec)
    if val <= 0.0:
        return 0.0
    ln_density = (
        math.log(frac) - math.log(u) / (1.0 - alpha) - math.log(math.pi) - peak + math.log(val)
    )
    return math.exp(ln_density) if ln_density > -_EXP_FLOOR else 0.0


def density(
    alpha: float,
    u: float,
    spec: QuadSpec | None = None,
    switch_u: float = SWITCH_U_DEFAULT,
    k_max: int = K_MAX_DEFAULT,
    max_terms: int = PHI_MAX_TERMS,
) -> float:
    """Density of the one-sided stable law, any alpha in (0,1), any u > 0.

    Dispatch: large-argument series for u >= switch_u, the rational
    hypergeometric machinery for exactly-rational alpha with denominator
    <= k_max while its argument stays in the well-conditioned window, and
    the angular integral otherwise.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if u <= 0.0:
        raise DomainError(f"density argument must be positive, got {u}")
    frac = alpha / (1.0 - alpha)
    big = (1.0 - alpha) * alpha**frac
    try:
        left_tail_exponent = big * u**-frac
    except OverflowError:
        return 0.0
    if left_tail_exponent > _EXP_FLOOR:
        return 0.0
    if u >= switch_u:
        try:
            return density_series(alpha, u, max_terms=max_terms).value
        except (ConvergenceError, CancellationError):
            return density_angular(alpha, u, spec)
    ra = RationalAlpha.from_float(alpha, k_max)
    if ra is not None:
        m = ra.den - ra.num
        w = abs(_hyp_argument(ra, u))
        if m * w ** (1.0 / m) <= _LN_SEVERITY_BUDGET:
            try:
                return density_rational(ra, u)
            except (ConvergenceError, CancellationError, RangeOverflowError):
                pass
    return density_angular(alpha, u, spec)


def subordination_kernel(
    alpha: float, y: float, scale: float, spec: QuadSpec | None = None
) -> float:
    """Kernel (scale / (alpha y^(1+1/alpha))) * density(scale / y^(1/alpha)).

    First argument is the integration variable, second the time-like
    scale: integrating exp(lam*y) against it over y in (0,inf) yields the
    one-parameter Mittag-Leffler value at lam * scale^alpha.  Normalized
    to unit mass in y.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if y <= 0.0 or scale <= 0.0:
        raise DomainError(f"kernel needs y > 0 and scale > 0, got y={y}, scale={scale}")
    w = y / scale**alpha
    if w <= 1.0:
        # small-y branch: the series in w = y / scale^alpha is regular at 0
        return _kernel_series(alpha, y, w)
    u = w ** (-1.0 / alpha)
    pref = scale / (alpha * y ** (1.0 + 1.0 / alpha))
    return pref * density(alpha, u, spec)


def _kernel_series(alpha: float, y: float, w: float, max_terms: int = PHI_MAX_TERMS) -> float:
    """Kernel via (1/(alpha*y)) sum_r (-1)^(r+1) Gamma(1+alpha r)
    sin(pi alpha r) w^r / (pi r!), finite term-by-term for w <= 1."""
    lnw = math.log(w) if w > 0.0 else -math.inf
    total = 0.0
    small_streak = 0
    for r in range(1, max_terms + 1):
        s = math.sin(math.pi * alpha * r)
        if s == 0.0:
            continue
        ln_mag = math.lgamma(1.0 + alpha * r) - math.lgamma(r + 1.0) + r * lnw
        term = (-1.0) ** (r + 1) * s * math.exp(ln_mag) / math.pi
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ConvergenceError(
            f"kernel series not converged after {max_terms} terms (w={w})", best=total
        )
    return _clamp(total / (alpha * y))


def sample_levy(alpha: float, n: int, seed: int) -> np.ndarray:
    """n i.i.d. draws from the one-sided stable law, deterministic per seed.

    Kanter construction: with U uniform on (0, pi) and W standard
    exponential, X = (A(U)/W)^((1-alpha)/alpha) where A is the standard
    one-sided angular factor.  Parallel callers must use distinct seeds.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"need alpha in (0,1), got {alpha}")
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, np.pi, size=n)
    w = rng.standard_exponential(size=n)
    ratio = alpha / (1.0 - alpha)
    a_theta = (
        np.sin((1.0 - alpha) * theta)
        * np.sin(alpha * theta) ** ratio
        / np.sin(theta) ** (1.0 + ratio)
    )
    return (a_theta / w) ** ((1.0 - alpha) / alpha)
