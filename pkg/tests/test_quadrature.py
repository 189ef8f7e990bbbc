import math

import numpy as np
import pytest

from conftest import midpoint_integral, phi_half_closed
from fracml.errors import (
    DivergenceError,
    DomainError,
    IntegrandError,
    SubdivisionLimitError,
)
from fracml.quadrature import QuadSpec, integrate_finite, integrate_semi_infinite
from fracml.stable import subordination_kernel


class TestFinite:
    def test_constant(self):
        value, err = integrate_finite(lambda x: 1.0, 0.0, 1.0)
        assert value == pytest.approx(1.0, abs=1e-13)

    def test_against_midpoint_oracle(self):
        cases = [
            (lambda x: np.exp(-x) * np.sin(3 * x), 0.0, 2.0),
            (lambda x: x**4 - 2 * x + 1, -1.0, 3.0),
            (lambda x: 1.0 / (1.0 + x * x), 0.0, 5.0),
        ]
        for f, a, b in cases:
            oracle = midpoint_integral(f, a, b)
            value, _ = integrate_finite(lambda x: float(f(np.asarray(x))), a, b)
            assert value == pytest.approx(oracle, rel=1e-8)

    def test_linearity(self):
        f = lambda x: math.exp(-x * x)
        base, err = integrate_finite(f, 0.0, 3.0)
        scaled, err2 = integrate_finite(lambda x: 7.5 * f(x), 0.0, 3.0)
        assert scaled == pytest.approx(7.5 * base, abs=err + err2)

    def test_additivity(self):
        f = lambda x: math.cos(x) * math.exp(-0.3 * x)
        whole, e1 = integrate_finite(f, 0.0, 4.0)
        left, e2 = integrate_finite(f, 0.0, 1.3)
        right, e3 = integrate_finite(f, 1.3, 4.0)
        assert whole == pytest.approx(left + right, abs=e1 + e2 + e3 + 1e-12)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: 1.0, 1.0, 1.0)

    def test_nan_integrand(self):
        with pytest.raises(IntegrandError):
            integrate_finite(lambda x: float("nan") if x > 0.5 else 1.0, 0.0, 1.0)

    def test_subdivision_limit_carries_best(self):
        spec = QuadSpec(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=2)
        with pytest.raises(SubdivisionLimitError) as info:
            integrate_finite(lambda x: abs(x - 0.318309) ** -0.5, 0.0, 1.0, spec)
        assert info.value.best is not None


class TestSemiInfinite:
    def test_exponential(self):
        value, _ = integrate_semi_infinite(lambda x: math.exp(-x), 0.0)
        assert value == pytest.approx(1.0, rel=1e-10)

    def test_stable_density_mass(self):
        # the density with the essential left-endpoint singularity has unit mass
        value, _ = integrate_semi_infinite(phi_half_closed, 0.0)
        assert value == pytest.approx(1.0, rel=1e-9)

    def test_laplace_of_ml(self):
        # integral of e^-x E(-a sqrt(x)) equals 1/(1+a) at a = 0.5
        from fracml.mlf import MLParams, ml_point

        p = MLParams(0.5)

        def f(x: float) -> float:
            if x <= 0.0:
                return 1.0
            return math.exp(-x) * ml_point(p, -0.5 * math.sqrt(x)).value

        value, _ = integrate_semi_infinite(f, 0.0)
        assert value == pytest.approx(1.0 / 1.5, rel=1e-8)

    def test_kernel_normalization(self):
        value, _ = integrate_semi_infinite(lambda y: subordination_kernel(0.5, y, 1.0), 1e-13)
        assert value == pytest.approx(1.0, rel=1e-9)

    def test_divergent_moment_detected(self):
        # first moment of the alpha = 1/2 density is infinite
        with pytest.raises(DivergenceError):
            integrate_semi_infinite(lambda u: u * phi_half_closed(u), 1e-12)
