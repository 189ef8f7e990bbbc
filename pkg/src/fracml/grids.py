"""Spatial grids adapted to each operator's spreading behavior.

Multiplicative dynamics (dilation, damping, squared dilation) spread
mass across decades, so their moment grids are log-symmetric; additive
dynamics get linear grids.  The outer radii follow the saddle of the
n-th-moment integrand so numeric moments capture the analytic laws.
"""

from __future__ import annotations

import math

import numpy as np

from .solver import (
    Advection,
    DiffusionDamping,
    Diffusion,
    Dilation,
    FPOperator,
    InitialCondition,
    SquaredDilation,
    Squeeze,
    _kernel_cutoff,
)
from .errors import DomainError


def logsym_grid(inner: float, outer: float, per_decade: int = 45) -> np.ndarray:
    """Symmetric log-spaced grid through zero: +-[inner, outer] plus 0."""
    if not 0.0 < inner < outer:
        raise DomainError(f"need 0 < inner < outer, got {inner}, {outer}")
    n = max(int(math.log10(outer / inner) * per_decade), 16)
    pos = np.logspace(math.log10(inner), math.log10(outer), n)
    return np.concatenate([-pos[::-1], [0.0], pos])


def moment_grid(
    op: FPOperator, alpha: float, ic: InitialCondition, t: float, n_max: int
) -> np.ndarray:
    """Grid wide and dense enough that trapezoid moments up to order
    n_max of the fractional slice converge to ~1e-4."""
    lo, hi = ic.effective_support()
    radius = max(abs(lo), abs(hi), 1.0)
    t_eff = max(t, 1e-3)
    cutoff = _kernel_cutoff(alpha, t_eff) if 0.0 < alpha < 1.0 else t_eff

    if isinstance(op, (Diffusion, Squeeze)):
        spread = math.sqrt(2.0 * t_eff**alpha / math.gamma(1.0 + alpha))
        half = radius + (6.0 + 2.0 * n_max) * max(spread, 0.3)
        return np.linspace(-half, half, 1601)

    if isinstance(op, Advection):
        return np.linspace(lo - 1.0, hi + 1.05 * cutoff + 1.0, 1601)

    if isinstance(op, Dilation):
        return logsym_grid(1e-9, 1.5 * radius, per_decade=60)

    if isinstance(op, DiffusionDamping):
        ln_outer = op.b * cutoff * 0.9 + math.log(radius + 6.0 * math.sqrt(op.a / op.b)) + 4.0
        return logsym_grid(1e-6, math.exp(min(ln_outer, 250.0)), per_decade=55)

    if isinstance(op, SquaredDilation):
        rate = n_max * n_max + 2.0 * n_max
        if 0.0 < alpha < 1.0 and rate > 0.0:
            c = (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha)) * t_eff ** (
                -alpha / (1.0 - alpha)
            )
            y_star = (rate * (1.0 - alpha) / c) ** ((1.0 - alpha) / alpha)
        else:
            y_star = rate * t_eff
        ln_outer = 2.0 * (n_max + 1.0) * y_star + 6.0 * math.sqrt(2.0 * y_star + 1.0) + math.log(
            radius
        ) + 3.0
        if ln_outer > 600.0:
            raise DomainError(
                f"moment of order {n_max} at t={t} spreads past double range "
                f"(needs |x| ~ e^{ln_outer:.0f})"
            )
        return logsym_grid(1e-10, math.exp(ln_outer), per_decade=45)

    # drift/reaction and anything else: additive fallback
    half = radius + 2.0 * (1.0 + cutoff)
    return np.linspace(-half, half, 1201)
