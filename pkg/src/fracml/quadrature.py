"""Adaptive integration on finite and semi-infinite intervals.

The panel engine is QUADPACK's adaptive Gauss-Kronrod scheme (via
scipy), which is robust against the two integrand shapes that dominate
this package: an essential singularity at the left endpoint, where the
integrand vanishes faster than any power, and stretched-exponential or
heavy tails.  Semi-infinite domains are split at a configurable
finite/tail boundary and the tail is mapped onto (0, 1) by
u -> a' + s/(1-s).  Divergent integrals (infinite fractional moments)
are detected by a tail-cutoff doubling probe and reported as such
rather than returned as a drifting number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad as _quad

from .errors import (
    DivergenceError,
    DomainError,
    IntegrandError,
    QuadratureError,
    SubdivisionLimitError,
    TailError,
)

_HUGE = 1e300


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and budgets for one integration request."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    split_point: float = 1.0

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if self.split_point <= 0:
            raise DomainError("split_point must be positive")


DEFAULT_SPEC = QuadSpec()


class _Guarded:
    """Wraps an integrand: records NaN evaluations and counts calls."""

    def __init__(self, f):
        self.f = f
        self.nan_at = None
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        y = self.f(x)
        if y != y:  # NaN
            if self.nan_at is None:
                self.nan_at = x
            return 0.0
        return y


def integrate_finite(f, a: float, b: float, spec: QuadSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Integrate f over [a, b]; returns (value, error estimate).

    Integrable endpoint singularities are fine (the panel rule never
    samples the endpoints).  Raises SubdivisionLimitError with the best
    value attached when the panel budget is exhausted, IntegrandError on
    NaN from the integrand.
    """
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    g = _Guarded(f)
    out = _quad(
        g,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, err_est = out[0], out[1]
    if g.nan_at is not None:
        raise IntegrandError(f"integrand returned NaN at x={g.nan_at!r}", point=g.nan_at)
    if len(out) > 3:
        message = str(out[3])
        if "maximum number of subdivisions" in message:
            raise SubdivisionLimitError(
                f"subdivision limit {spec.max_subdivisions} reached (best={value!r}, err={err_est!r})",
                best=value,
                err_est=err_est,
            )
        # Roundoff-class warnings: accept if the estimate still meets a
        # relaxed tolerance, otherwise report with the best value.
        if err_est > 50.0 * max(spec.abs_tol, spec.rel_tol * abs(value)):
            raise QuadratureError(message.splitlines()[0], best=value, err_est=err_est)
    return value, err_est


def _tail_probe(f, start: float, spec: QuadSpec) -> None:
    """Doubling-cutoff divergence probe for the tail of f on [start, inf).

    If successive doublings keep moving the running total by more than
    10x rel_tol three times in a row, the integral is declared divergent.
    """
    loose = QuadSpec(
        abs_tol=max(spec.abs_tol, 1e-9),
        rel_tol=max(spec.rel_tol, 1e-6),
        max_subdivisions=spec.max_subdivisions,
        split_point=spec.split_point,
    )
    total = 0.0
    lo = start
    hi = start + 1.0
    streak = 0
    prev_piece = math.inf
    for _ in range(48):
        try:
            piece, _err = integrate_finite(f, lo, hi, loose)
        except QuadratureError:
            break
        total += piece
        moved = abs(piece) > 10.0 * loose.rel_tol * max(abs(total), 1.0)
        decaying = abs(piece) < 0.9 * prev_piece
        prev_piece = abs(piece)
        lo, hi = hi, 2.0 * hi
        if moved and not decaying:
            streak += 1
            if streak >= 3:
                raise DivergenceError(
                    f"tail keeps growing past cutoff {hi:g}: divergent integral",
                    best=total,
                )
        else:
            streak = 0
    # inconclusive: fall through; caller reports tail non-convergence


def integrate_semi_infinite(f, a: float, spec: QuadSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Integrate f over [a, inf); returns (value, error estimate).

    Splits at a + split_point; the finite head goes straight to
    integrate_finite, the tail is mapped by u = b0 + s/(1-s) onto (0, 1).
    Raises DivergenceError when the doubling probe shows the tail never
    settles, TailError when the mapped tail fails its tolerance for any
    other reason.
    """
    if a < 0 and not math.isfinite(a):
        raise DomainError("lower limit must be finite")
    b0 = a + spec.split_point
    head, head_err = integrate_finite(f, a, b0, spec)

    def mapped(s: float) -> float:
        onems = 1.0 - s
        if onems <= 1e-300:
            return 0.0
        u = b0 + s / onems
        if u > _HUGE:
            return 0.0
        return f(u) / (onems * onems)

    # a mapped integrand that keeps growing toward s = 1 signals a heavy
    # or divergent tail the panel rule could silently miss; settle it
    # with the doubling probe first
    probes = [abs(mapped(1.0 - 2.0**-k)) for k in (10, 16, 22, 28, 34)]
    growing = probes[-1] > 0.0 and all(b >= a for a, b in zip(probes, probes[1:]))
    if growing and probes[-1] > 4.0 * max(probes[0], 1e-300):
        _tail_probe(f, b0, spec)  # raises DivergenceError if divergent

    try:
        tail, tail_err = integrate_finite(mapped, 0.0, 1.0, spec)
    except (SubdivisionLimitError, QuadratureError) as exc:
        _tail_probe(f, b0, spec)  # raises DivergenceError if divergent
        raise TailError(
            f"tail integration failed past {b0:g}: {exc}", best=getattr(exc, "best", None)
        ) from exc
    return head + tail, head_err + tail_err
