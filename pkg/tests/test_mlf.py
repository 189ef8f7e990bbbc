import math

import numpy as np
import pytest

from conftest import ml_half_closed
from fracml.errors import CancellationError, DomainError
from fracml.mlf import (
    MLParams,
    MLResult,
    fractional_ode_residual,
    laplace_identity_residual,
    ml_integral,
    ml_point,
    ml_series,
    ml_umbral,
    umbral_term,
)
from fracml.quadrature import QuadSpec
from fracml.stable import RationalAlpha

ALPHAS = (0.25, 1 / 3, 0.5, 2 / 3, 0.75)


class TestSeries:
    def test_exponential(self):
        for z in (-2.0, 0.3, 1.7):
            assert ml_series(MLParams(1.0), z).value == pytest.approx(math.exp(z), rel=1e-13)

    def test_half_closed(self):
        res = ml_series(MLParams(0.5), 1.0)
        assert res.value == pytest.approx(5.0089800, rel=1e-7)
        assert res.value == pytest.approx(ml_half_closed(1.0), rel=1e-12)

    def test_zero(self):
        for alpha in ALPHAS:
            assert ml_series(MLParams(alpha), 0.0).value == 1.0

    def test_cancellation_guard(self):
        with pytest.raises(CancellationError):
            ml_series(MLParams(0.5), -40.0)

    def test_prabhakar_reduces_to_one_parameter(self, rng):
        for _ in range(100):
            alpha = rng.uniform(0.1, 1.0)
            z = rng.uniform(-3.0, 2.0)
            three = ml_series(MLParams(alpha, 1.0, 1.0), z).value
            one = ml_series(MLParams(alpha), z).value
            assert three == pytest.approx(one, rel=1e-13)

    def test_prabhakar_at_zero(self):
        p = MLParams(0.5, beta=1.5, gamma=2.0)
        assert ml_series(p, 0.0).value == pytest.approx(1.0 / math.gamma(1.5), rel=1e-14)


class TestIntegral:
    def test_erfc_value(self):
        res = ml_integral(0.5, -1.0, 1.0)
        assert res.value == pytest.approx(math.e * math.erfc(1.0), rel=1e-9)

    def test_lambda_zero(self):
        for alpha in (0.3, 0.6, 0.9):
            assert ml_integral(alpha, 0.0, 1.0).value == pytest.approx(1.0, rel=1e-9)

    def test_vs_series_third(self):
        series = ml_series(MLParams(1 / 3), -4.0).value
        integral = ml_integral(1 / 3, -1.0, 4.0).value
        assert integral == pytest.approx(series, rel=1e-6)


class TestUmbral:
    def test_term_substitution_rule(self):
        # M(-3/2)/3! equals 1/Gamma(5/2)
        assert umbral_term(0.5, 3) * math.gamma(2.5) == pytest.approx(1.0, rel=1e-13)
        for alpha in ALPHAS:
            for n in (0, 1, 2, 5, 11, 23):
                assert umbral_term(alpha, n) * math.gamma(1.0 + alpha * n) == pytest.approx(
                    1.0, rel=1e-13
                )

    def test_zero(self):
        assert ml_umbral(0.5, 0.0).value == 1.0

    def test_matches_series(self):
        assert ml_umbral(0.75, -2.0).value == pytest.approx(
            ml_series(MLParams(0.75), -2.0).value, rel=1e-12
        )


class TestDispatch:
    def test_methods(self):
        p = MLParams(0.5)
        for method in ("series", "integral", "umbral", "auto"):
            res = ml_point(p, -1.0, method=method)
            assert isinstance(res, MLResult)
            assert res.value == pytest.approx(ml_half_closed(-1.0), rel=1e-8)

    def test_auto_switches_to_integral(self):
        res = ml_point(MLParams(0.5), -20.0)
        assert res.method == "integral"
        assert res.value == pytest.approx(ml_half_closed(-20.0), rel=1e-8)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            ml_point(MLParams(0.5), 1.0, method="magic")

    def test_three_parameter_umbral_rejected(self):
        with pytest.raises(DomainError):
            ml_point(MLParams(0.5, 1.5, 2.0), 1.0, method="umbral")


class TestInvariants:
    def test_representation_equivalence(self):
        worst = 0.0
        for alpha in ALPHAS:
            for z in np.linspace(-5.0, 2.0, 15):
                values = [ml_integral(alpha, float(z), 1.0).value]
                series = ml_series(MLParams(alpha), float(z), cancel_limit=1e30)
                if series.flag < 1e8:
                    values.append(series.value)
                try:
                    umbral = ml_umbral(alpha, float(z), cancel_limit=1e30)
                    if umbral.flag < 1e8:
                        values.append(umbral.value)
                except CancellationError:
                    pass
                center = sum(values) / len(values)
                for v in values:
                    worst = max(worst, abs(v / center - 1.0))
        assert worst < 1e-6

    def test_complete_monotone_first_differences(self):
        for alpha in (0.3, 0.5, 0.8):
            s = np.linspace(0.0, 30.0, 200)
            vals = [ml_point(MLParams(alpha), float(-x)).value for x in s]
            diffs = np.diff(vals)
            assert np.all(diffs < 0.0)
            assert np.all(np.asarray(vals) > 0.0)

    def test_unit_at_zero_every_route(self):
        assert ml_series(MLParams(0.5), 0.0).value == 1.0
        assert ml_umbral(0.5, 0.0).value == 1.0
        assert ml_integral(0.5, 0.0, 1.0).value == pytest.approx(1.0, abs=1e-9)


class TestLaplaceIdentity:
    def test_a_zero(self):
        assert laplace_identity_residual(RationalAlpha(1, 2), 0.0) < 1e-10

    def test_half(self):
        ra = RationalAlpha(1, 2)
        assert laplace_identity_residual(ra, 0.5) < 1e-6

    def test_third_high_a(self):
        ra = RationalAlpha(1, 3)
        assert laplace_identity_residual(ra, 0.9) < 1e-5

    def test_domain(self):
        with pytest.raises(DomainError):
            laplace_identity_residual(RationalAlpha(1, 2), 1.5)


class TestFractionalOde:
    def test_grid(self):
        for alpha in (0.25, 0.5, 0.75):
            for b in (-1.0, 0.5):
                for x in (0.5, 1.0, 2.0):
                    assert fractional_ode_residual(alpha, b, x) < 1e-4

    def test_b_zero(self):
        assert fractional_ode_residual(0.5, 0.0, 1.0) < 1e-12
