import math
from fractions import Fraction

import numpy as np
import pytest

from fracml.errors import ConvergenceError, DomainError, PoleError, RangeOverflowError
from fracml.specfun import (
    HypArgs,
    alpha_binomial,
    delta_sequence,
    erf,
    gamma,
    gamma_reflection,
    hyp_pfq,
)


class TestGamma:
    def test_classical_values(self):
        assert gamma(1.0) == 1.0
        assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_poles(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                gamma(x)

    def test_overflow(self):
        with pytest.raises(RangeOverflowError):
            gamma(172.0)

    def test_recurrence_sweep(self):
        # gamma(x+1) = x gamma(x) to 1e-12 relative on 1000 points
        for x in np.linspace(0.1, 50.0, 1000):
            assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


class TestReflection:
    def test_half(self):
        assert gamma_reflection(0.5) == pytest.approx(math.pi, rel=1e-15)

    def test_quarter_vs_product_oracle(self):
        assert gamma_reflection(0.25) == pytest.approx(gamma(0.25) * gamma(0.75), rel=1e-13)
        assert gamma_reflection(0.25) == pytest.approx(math.pi * math.sqrt(2.0), rel=1e-13)

    def test_negative_branch(self):
        assert gamma_reflection(1.5) == pytest.approx(-math.pi, rel=1e-13)
        assert gamma_reflection(1.5) == pytest.approx(gamma(1.5) * gamma(-0.5), rel=1e-13)

    def test_pole_at_integers(self):
        for z in (-2.0, 0.0, 3.0):
            with pytest.raises(PoleError):
                gamma_reflection(z)

    def test_identity_sweep(self):
        for z in np.linspace(-4.987, 4.987, 701):
            if abs(z - round(z)) < 1e-3:
                continue
            assert gamma_reflection(z) * math.sin(math.pi * z) == pytest.approx(
                math.pi, rel=1e-12
            )


def erf_maclaurin(x: float) -> float:
    # independent oracle: 2/sqrt(pi) sum (-1)^k x^(2k+1) / (k! (2k+1))
    total, term = 0.0, x
    k = 0
    while abs(term / (2 * k + 1)) > 1e-18:
        total += term / (2 * k + 1)
        k += 1
        term *= -x * x / k
    return 2.0 / math.sqrt(math.pi) * total


class TestErf:
    def test_zero_and_saturation(self):
        assert erf(0.0) == 0.0
        for x in (6.0, 8.0, 30.0):
            assert abs(erf(x) - 1.0) < 1e-15

    def test_against_series_oracle(self):
        for x in (0.25, 1.0, 1.7):
            assert erf(x) == pytest.approx(erf_maclaurin(x), rel=1e-14)

    def test_odd_exact(self):
        for x in np.linspace(0.0, 5.0, 101):
            assert erf(x) + erf(-x) == 0.0

    def test_bounded(self):
        for x in np.linspace(-10, 10, 201):
            assert abs(erf(x)) <= 1.0


def exact_terminating_sum(upper, lower, z: Fraction) -> Fraction:
    """Extended-precision oracle for a terminating series."""
    stop = min(int(-a) for a in upper if a <= 0 and float(a).is_integer())
    total = Fraction(0)
    term = Fraction(1)
    for r in range(stop + 1):
        total += term
        num = Fraction(1)
        for a in upper:
            num *= Fraction(a).limit_denominator(10**6) + r
        den = Fraction(1)
        for b in lower:
            den *= Fraction(b).limit_denominator(10**6) + r
        term = term * num * z / (den * (r + 1))
    return total


class TestHypPfq:
    def test_exponential(self):
        res = hyp_pfq(HypArgs(upper=(), lower=(), z=1.0))
        assert res.value == pytest.approx(math.e, rel=1e-14)

    def test_log_identity(self):
        # 2F1(1,1;2;z) = -ln(1-z)/z
        res = hyp_pfq(HypArgs(upper=(1.0, 1.0), lower=(2.0,), z=0.5))
        assert res.value == pytest.approx(-math.log(0.5) / 0.5, rel=1e-12)

    def test_z_zero(self):
        res = hyp_pfq(HypArgs(upper=(0.3, 1.7), lower=(0.9, 1.1), z=0.0))
        assert res.value == 1.0
        assert res.terms <= 2

    def test_terminating_vs_exact(self):
        z = Fraction(-7, 3)
        upper = (-4.0, 0.5)
        lower = (1.25,)
        oracle = exact_terminating_sum(upper, lower, z)
        res = hyp_pfq(HypArgs(upper=upper, lower=lower, z=float(z)))
        assert res.value == pytest.approx(float(oracle), rel=1e-13)

    def test_terminating_allows_large_argument(self):
        res = hyp_pfq(HypArgs(upper=(1.0, -3.0), lower=(1.5,), z=-9.0))
        oracle = exact_terminating_sum((1.0, -3.0), (1.5,), Fraction(-9))
        assert res.value == pytest.approx(float(oracle), rel=1e-13)

    def test_lower_pole(self):
        with pytest.raises(PoleError):
            HypArgs(upper=(1.0,), lower=(-2.0,), z=0.1)

    def test_p_too_large(self):
        with pytest.raises(DomainError):
            HypArgs(upper=(1.0, 1.0, 1.0), lower=(2.0,), z=0.1)

    def test_boundary_requires_small_argument(self):
        with pytest.raises(DomainError):
            HypArgs(upper=(1.0, 0.5), lower=(1.5,), z=1.2)

    def test_boundary_quality_flag(self):
        res = hyp_pfq(HypArgs(upper=(1.0, 0.5), lower=(1.5,), z=0.97))
        assert res.quality == "boundary"

    def test_nonconvergence_budget(self):
        with pytest.raises(ConvergenceError):
            hyp_pfq(HypArgs(upper=(), lower=(), z=80.0), max_terms=10)


class TestAlphaBinomial:
    def test_classical(self):
        assert alpha_binomial(4, 2, 1.0) == pytest.approx(6.0, rel=1e-13)

    def test_edge(self):
        for n in (0, 1, 5, 9):
            assert alpha_binomial(n, 0, 0.37) == pytest.approx(1.0, rel=1e-13)

    def test_half(self):
        assert alpha_binomial(2, 1, 0.5) == pytest.approx(4.0 / math.pi, rel=1e-13)

    def test_symmetry_exact(self):
        for n in range(9):
            for r in range(n + 1):
                for a in (0.2, 0.5, 0.8, 1.0):
                    assert alpha_binomial(n, r, a) == alpha_binomial(n, n - r, a)

    def test_domain(self):
        with pytest.raises(DomainError):
            alpha_binomial(2, 3, 0.5)
        with pytest.raises(DomainError):
            alpha_binomial(2, 1, 1.5)


class TestDeltaSequence:
    def test_examples(self):
        assert delta_sequence(2, 1.0) == [0.5, 1.0]
        assert delta_sequence(1, 0.77) == [0.77]
        assert delta_sequence(3, 2.0) == pytest.approx([2 / 3, 1.0, 4 / 3])

    def test_length_domain(self):
        with pytest.raises(DomainError):
            delta_sequence(0, 1.0)
