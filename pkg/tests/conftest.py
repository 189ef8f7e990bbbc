"""Shared closed-form oracles used across the test modules.

Each oracle is an independent route to a value the library computes some
other way: the alpha = 1/2 stable density and product-kernel closed
forms, the alpha = 1/2 Mittag-Leffler closed form, and a brute-force
midpoint integrator.
"""

import math

import numpy as np
import pytest


def phi_half_closed(u: float) -> float:
    """Stable density at alpha = 1/2: exp(-1/(4u)) / (2 sqrt(pi) u^(3/2))."""
    return math.exp(-1.0 / (4.0 * u)) / (2.0 * math.sqrt(math.pi) * u**1.5)


def ml_half_closed(z: float) -> float:
    """One-parameter ML at alpha = 1/2: e^(z^2) (erf(z) + 1)."""
    return math.exp(z * z) * (math.erf(z) + 1.0)


def product_kernel_half_closed(u: float, x: float, y: float) -> float:
    """Convolution of two alpha = 1/2 kernels with scales x, y (enters via
    ex = sqrt(x), ey = sqrt(y)): Gaussian prefactor times two erf terms."""
    ex, ey = math.sqrt(x), math.sqrt(y)
    s = ex * ex + ey * ey
    pref = math.exp(-u * u / (4.0 * s)) / math.sqrt(math.pi * s)
    root = math.sqrt(s)
    return pref * (
        math.erf(u * ey / (2.0 * ex * root)) + math.erf(u * ex / (2.0 * ey * root))
    )


def midpoint_integral(f, a: float, b: float, panels: int = 1_000_000) -> float:
    """Brute-force midpoint rule; vectorized integrand required."""
    x = np.linspace(a, b, panels + 1)
    mid = 0.5 * (x[:-1] + x[1:])
    return float(np.sum(f(mid)) * (b - a) / panels)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
