import math

import numpy as np
import pytest

from conftest import phi_half_closed
from fracml.errors import DomainError
from fracml.quadrature import QuadSpec, integrate_finite, integrate_semi_infinite
from fracml.stable import (
    RationalAlpha,
    density,
    density_angular,
    density_rational,
    density_series,
    sample_levy,
    stieltjes_moment,
    subordination_kernel,
)

RATIONALS = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)]


class TestRationalAlpha:
    def test_validation(self):
        with pytest.raises(DomainError):
            RationalAlpha(2, 4)
        with pytest.raises(DomainError):
            RationalAlpha(3, 2)

    def test_from_float(self):
        assert RationalAlpha.from_float(0.5) == RationalAlpha(1, 2)
        assert RationalAlpha.from_float(2 / 3) == RationalAlpha(2, 3)
        assert RationalAlpha.from_float(0.4999) is None
        assert RationalAlpha.from_float(0.15) is None  # 3/20 needs den > 12


class TestDensityRational:
    def test_half_closed_form_sweep(self):
        ra = RationalAlpha(1, 2)
        for u in np.linspace(0.05, 20.0, 101):
            assert density_rational(ra, float(u)) == pytest.approx(
                phi_half_closed(float(u)), rel=1e-10
            )

    def test_half_at_one(self):
        assert density_rational(RationalAlpha(1, 2), 1.0) == pytest.approx(0.2196956, rel=1e-6)

    def test_unit_mass(self):
        for num, den in ((1, 3), (1, 2), (2, 3)):
            value, _ = integrate_semi_infinite(
                lambda u: density(num / den, u), 1e-13, QuadSpec(rel_tol=1e-9)
            )
            assert value == pytest.approx(1.0, rel=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            density_rational(RationalAlpha(1, 2), -1.0)


class TestDensitySeries:
    def test_half_vs_closed(self):
        assert density_series(0.5, 2.0).value == pytest.approx(phi_half_closed(2.0), rel=1e-8)

    def test_third_leading_order(self):
        # at large u the first term dominates
        u = 250.0
        lead = math.gamma(4.0 / 3.0) * math.sin(math.pi / 3.0) / (math.pi * u ** (4.0 / 3.0))
        assert density_series(1.0 / 3.0, u).value == pytest.approx(lead, rel=1e-3)

    def test_overlap_with_rational(self):
        for num, den in RATIONALS:
            ra = RationalAlpha(num, den)
            for u in np.linspace(1.0, 10.0, 19):
                series = density_series(num / den, float(u)).value
                rational = density_rational(ra, float(u))
                assert series == pytest.approx(rational, rel=1e-6)


class TestDensityMaster:
    def test_matches_angular_everywhere(self):
        for alpha in (0.25, 1 / 3, 0.5, 2 / 3, 0.75, 0.9, 0.99):
            for u in (0.05, 0.3, 0.9, 1.5, 4.0):
                reference = density_angular(alpha, u)
                if reference > 1e-100:
                    assert density(alpha, u) == pytest.approx(reference, rel=1e-8)

    def test_deep_left_tail_underflows_to_zero(self):
        assert density(0.9, 1e-6) == 0.0

    def test_self_similarity(self, rng):
        # two-argument form y^(-1/alpha) phi(x y^(-1/alpha)) scales with
        # jacobian s^(-1/alpha) under (x, y) -> (s^(1/alpha) x, s y)
        alpha = 0.5
        for _ in range(100):
            x = rng.uniform(0.3, 3.0)
            y = rng.uniform(0.3, 3.0)
            s = rng.uniform(0.5, 2.0)
            base = y ** (-1 / alpha) * density(alpha, x * y ** (-1 / alpha))
            moved = (s * y) ** (-1 / alpha) * density(
                alpha, s ** (1 / alpha) * x * (s * y) ** (-1 / alpha)
            )
            assert moved == pytest.approx(s ** (-1 / alpha) * base, rel=1e-9)


class TestStieltjesMoment:
    def test_zeroth(self):
        m = stieltjes_moment(0.37, 0.0)
        assert m.value == pytest.approx(1.0, rel=1e-14)

    def test_negative_order(self):
        assert stieltjes_moment(0.5, -1.0).value == pytest.approx(2.0, rel=1e-13)

    def test_infinite_marker(self):
        m = stieltjes_moment(0.5, 0.7)
        assert not m.finite
        assert m.value == math.inf

    def test_finiteness_boundary_grid(self):
        for alpha in np.arange(0.1, 0.95, 0.1):
            for sigma in np.arange(-2.0, 0.995, 0.07):
                m = stieltjes_moment(float(alpha), float(sigma))
                assert m.finite == (sigma < alpha)

    def test_quadrature_agreement(self):
        # moment integral against the density matches the gamma-ratio form
        for sigma in (-0.5, 0.25):
            value, _ = integrate_semi_infinite(
                lambda u: u**sigma * density(0.5, u), 1e-13, QuadSpec(rel_tol=1e-9)
            )
            assert value == pytest.approx(stieltjes_moment(0.5, sigma).value, rel=1e-6)


class TestSubordinationKernel:
    def test_half_closed_form(self):
        for y in (0.01, 0.3, 1.0, 3.0):
            for x in (0.5, 1.0, 2.0):
                closed = math.exp(-y * y / (4.0 * x)) / math.sqrt(math.pi * x)
                assert subordination_kernel(0.5, y, x) == pytest.approx(closed, rel=1e-10)

    def test_normalization(self):
        for num, den in RATIONALS:
            for x in (0.5, 1.0, 2.0):
                value, _ = integrate_semi_infinite(
                    lambda y: subordination_kernel(num / den, y, x),
                    1e-13,
                    QuadSpec(rel_tol=1e-9),
                )
                assert value == pytest.approx(1.0, rel=1e-6)

    def test_composition_law(self):
        # kernel of order alpha composed with the half-order Gaussian
        # kernel collapses to the kernel of order alpha/2
        spec = QuadSpec(rel_tol=1e-10)
        for alpha, xi, t in [(0.5, 1.0, 1.0), (2 / 3, 0.5, 2.0), (1 / 3, 2.0, 0.5)]:

            def integrand(y: float) -> float:
                return subordination_kernel(alpha, y, t) * subordination_kernel(0.5, xi, y)

            lhs, _ = integrate_semi_infinite(integrand, 1e-13, spec)
            rhs = subordination_kernel(alpha / 2.0, xi, t)
            assert lhs == pytest.approx(rhs, rel=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            subordination_kernel(0.5, -1.0, 1.0)
        with pytest.raises(DomainError):
            subordination_kernel(0.5, 1.0, 0.0)


class TestSampler:
    def test_positive_and_deterministic(self):
        a = sample_levy(0.7, 5000, seed=42)
        b = sample_levy(0.7, 5000, seed=42)
        assert np.all(a > 0.0)
        assert np.array_equal(a, b)
        c = sample_levy(0.7, 5000, seed=43)
        assert not np.array_equal(a, c)

    def test_fractional_moment(self):
        n = 200_000
        draws = sample_levy(0.5, n, seed=7)
        emp = float(np.mean(draws**-0.25))
        se = float(np.std(draws**-0.25) / math.sqrt(n))
        assert abs(emp - stieltjes_moment(0.5, -0.25).value) < 3.0 * se

    def test_laplace_transform(self):
        n = 200_000
        for alpha in (0.3, 0.6):
            draws = sample_levy(alpha, n, seed=11)
            emp = float(np.mean(np.exp(-draws)))
            se = float(np.std(np.exp(-draws)) / math.sqrt(n))
            assert abs(emp - math.exp(-1.0)) < 3.0 * se

    def test_histogram_matches_closed_form(self):
        n = 200_000
        draws = sample_levy(0.5, n, seed=3)
        draws = draws[draws < 8.0]
        counts, edges = np.histogram(draws, bins=50, range=(0.05, 8.0), density=True)
        mids = 0.5 * (edges[:-1] + edges[1:])
        dens = np.array([phi_half_closed(m) for m in mids])
        width = edges[1] - edges[0]
        tol = 4.0 / math.sqrt(n * width)
        assert float(np.max(np.abs(counts - dens))) < tol
