"""Scalar special functions: gamma machinery, the error function,
generalized hypergeometric series, deformed binomials and parameter
ladders.

Everything here is a pure function of its arguments; no shared state.
The gamma and error functions delegate to the C library (Lanczos-class
rational approximations at machine precision) behind the contracts the
rest of the package relies on: explicit pole and overflow errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError, RangeOverflowError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000

# |z| above this fraction of the p = q+1 convergence radius gets a
# 'boundary' quality flag instead of a silent slow partial sum.
_BOUNDARY_FRACTION = 0.9


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0.0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Gamma function on the real line.

    Raises PoleError at non-positive integers and RangeOverflowError when
    the value exceeds the double range (|x| beyond ~171.6).
    """
    if _is_nonpositive_int(x):
        raise PoleError(f"gamma pole at x={x!r}")
    try:
        return math.gamma(x)
    except ValueError as exc:  # non-finite arguments
        raise DomainError(f"gamma undefined at x={x!r}") from exc
    except OverflowError as exc:
        raise RangeOverflowError(f"gamma overflow at x={x!r}") from exc


def lgamma(x: float) -> float:
    """log|Gamma(x)|, same pole contract as :func:`gamma`."""
    if _is_nonpositive_int(x):
        raise PoleError(f"gamma pole at x={x!r}")
    return math.lgamma(x)


def gamma_reflection(z: float) -> float:
    """Gamma(z) * Gamma(1-z) evaluated as pi / sin(pi*z).

    Raises PoleError at integer z where the product has a pole.
    """
    if float(z).is_integer():
        raise PoleError(f"reflection pole at integer z={z!r}")
    return math.pi / math.sin(math.pi * z)


def erf(x: float) -> float:
    """Error function; odd, bounded by 1 in magnitude."""
    return math.erf(x)


def erfc(x: float) -> float:
    """Complementary error function 1 - erf(x)."""
    return math.erfc(x)


@dataclass(frozen=True)
class HypArgs:
    """Parameter rows and argument of a generalized hypergeometric series.

    upper: the numerator ("a") parameters, lower: the denominator ("b")
    parameters, z: the real argument.  Lower parameters must avoid
    non-positive integers (series poles).  p <= q+1 is required; the
    p = q+1 case converges only for |z| < 1 unless an upper parameter is
    a non-positive integer (the series then terminates).
    """

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    z: float

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        for b in self.lower:
            if _is_nonpositive_int(b):
                raise PoleError(f"lower parameter {b} is a non-positive integer")
        p, q = len(self.upper), len(self.lower)
        if p > q + 1:
            raise DomainError(f"p={p} upper parameters with q={q} lower: divergent series")
        if p == q + 1 and abs(self.z) >= 1.0 and self.terminating_at() is None:
            raise DomainError(
                f"p = q+1 series requires |z| < 1 (got z={self.z}) unless terminating"
            )

    def terminating_at(self) -> int | None:
        """Index of the last nonzero term when an upper parameter is a
        non-positive integer, else None."""
        stops = [int(-a) for a in self.upper if _is_nonpositive_int(a)]
        return min(stops) if stops else None


@dataclass
class SeriesSum:
    """Partial-sum result: value, number of terms consumed, a convergence
    quality tag and the cancellation severity max|term| / |value|."""

    value: float
    terms: int
    quality: str = "ok"
    severity: float = 1.0


def hyp_pfq(args: HypArgs, max_terms: int = DEFAULT_MAX_TERMS, tol: float = DEFAULT_TOL) -> SeriesSum:
    """Sum the series  sum_r  prod(a)_r / prod(b)_r * z^r / r!.

    Stops once two consecutive terms fall below tol * |partial sum|
    (single-term tests are defeated by the oscillating term patterns of
    negative arguments).  Terminating series are summed exactly to their
    last nonzero term.
    """
    z = args.z
    stop_at = args.terminating_at()
    quality = "ok"
    if stop_at is None and len(args.upper) == len(args.lower) + 1 and abs(z) > _BOUNDARY_FRACTION:
        quality = "boundary"

    total = 1.0
    comp = 0.0  # Kahan compensation
    term = 1.0
    max_abs_term = 1.0
    small_streak = 0
    r = 0
    limit = stop_at + 1 if stop_at is not None else max_terms
    while r < limit:
        num = 1.0
        for a in args.upper:
            num *= a + r
        den = 1.0
        for b in args.lower:
            den *= b + r
        term = term * num * z / (den * (r + 1))
        r += 1
        if not math.isfinite(term):
            raise RangeOverflowError(f"hypergeometric term overflow at r={r}")
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        max_abs_term = max(max_abs_term, abs(term))
        if stop_at is None:
            if abs(term) < tol * max(abs(total), 1e-300):
                small_streak += 1
                if small_streak >= 2:
                    break
            else:
                small_streak = 0
    else:
        if stop_at is None:
            raise ConvergenceError(
                f"hypergeometric series not converged after {max_terms} terms (z={z})",
                best=total,
                terms=r,
            )
    severity = max_abs_term / max(abs(total), 1e-300)
    return SeriesSum(value=total, terms=r, quality=quality, severity=severity)


def alpha_binomial(n: int, r: int, alpha: float) -> float:
    """Deformed binomial Gamma(1+alpha*n) / (Gamma(1+alpha*r) * Gamma(1+alpha*(n-r))).

    Reduces to the ordinary binomial coefficient at alpha = 1.  Exactly
    symmetric in r <-> n-r by construction.
    """
    if not (0 <= r <= n):
        raise DomainError(f"need 0 <= r <= n, got n={n}, r={r}")
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"need alpha in (0, 1], got {alpha}")
    # the two lower terms are summed first so r <-> n-r is bitwise symmetric
    lower = math.lgamma(1.0 + alpha * r) + math.lgamma(1.0 + alpha * (n - r))
    return math.exp(math.lgamma(1.0 + alpha * n) - lower)


def delta_sequence(n: int, a: float) -> list[float]:
    """Parameter ladder a/n, (a+1)/n, ..., (a+n-1)/n of length n."""
    if n < 1:
        raise DomainError(f"ladder length must be >= 1, got {n}")
    return [(a + i) / n for i in range(n)]
