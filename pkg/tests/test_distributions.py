import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bisect, quad
from weibull_maxima.distributions import (
    GUMBEL_MEAN,
    GammaParams,
    GammaTail,
    GeneralizedWeibullParams,
    TailForm,
    auxiliary_A,
    chi2,
    gumbel_cdf,
    gumbel_pdf,
    gumbel_quantile,
    simple_case,
)
from weibull_maxima.exceptions import DomainError
from weibull_maxima.special_fn import Branch, lambert_w

# frozen from bisection on log(x) - x**2 = log(0.01)
GW_TAU2_Q99 = 2.335225620331035


def gw_params():
    """Valid generalized Weibull parameter sets with x0 at or past the mode."""

    def build(K, C, tau, alpha, pad):
        mode = (alpha / (C * tau)) ** (1.0 / tau)
        x0 = mode + pad
        # lift x0 until the tail starts at or below 1
        while math.log(K) + alpha * math.log(x0) - C * x0**tau > 0:
            x0 *= 1.5
        return GeneralizedWeibullParams(K=K, C=C, tau=tau, alpha=alpha, x0=x0)

    return st.builds(
        build,
        st.floats(min_value=0.1, max_value=20.0),
        st.floats(min_value=0.2, max_value=3.0),
        st.floats(min_value=1.0, max_value=3.0),
        st.floats(min_value=0.1, max_value=5.0),
        st.floats(min_value=0.0, max_value=2.0),
    )


class TestGeneralizedWeibull:
    def test_simple_case_cdf(self):
        d = simple_case()
        assert d.cdf(1.0) == pytest.approx(0.0, abs=1e-15)
        assert d.cdf(0.5) == 0.0
        assert d.cdf(200.0) == pytest.approx(1.0)
        assert d.cdf(7.6384) == pytest.approx(0.99, abs=1e-4)

    def test_simple_case_quantile(self):
        d = simple_case()
        assert d.ppf(0.99) == pytest.approx(7.6384, abs=1e-4)
        assert d.ppf(0.0) == 1.0
        for u in (0.1, 0.5, 0.9, 1 - 1e-9):
            assert d.ppf(u) == pytest.approx(-lambert_w((u - 1.0) / math.e, Branch.SECONDARY), rel=1e-12)

    def test_general_quantile(self):
        d = GeneralizedWeibullParams(K=1.0, C=1.0, tau=2.0, alpha=1.0, x0=1.0)
        v = d.ppf(0.99)
        assert v == pytest.approx(GW_TAU2_Q99, rel=1e-12)
        assert d.cdf(v) == pytest.approx(0.99, abs=1e-10)

    def test_deep_tail_quantile(self):
        d = simple_case()
        s = 1e-300
        x = d.isf(s)
        assert d.log_sf(x) == pytest.approx(math.log(s), rel=1e-13)

    def test_validation(self):
        with pytest.raises(DomainError):
            GeneralizedWeibullParams(K=-1, C=1, tau=1, alpha=1, x0=1)
        with pytest.raises(DomainError):
            GeneralizedWeibullParams(K=1, C=1, tau=0.5, alpha=1, x0=1)
        with pytest.raises(DomainError):
            GeneralizedWeibullParams(K=10, C=1, tau=1, alpha=1, x0=1)
        with pytest.raises(DomainError):
            # tail still increasing on [x0, mode)
            GeneralizedWeibullParams(K=0.1, C=1, tau=1, alpha=3, x0=1)

    def test_quantile_below_atom(self):
        d = GeneralizedWeibullParams(K=1.0, C=1.0, tau=1.0, alpha=1.0, x0=2.0)
        with pytest.raises(DomainError):
            d.ppf(0.1)

    def test_auxiliary(self):
        d = simple_case()
        assert auxiliary_A(d, 7.6384) == pytest.approx(1.1506, abs=1e-4)
        with pytest.raises(DomainError):
            d.auxiliary(1.0)

    def test_auxiliary_exponential_limit(self):
        d = GeneralizedWeibullParams(K=1.0, C=2.0, tau=1.0, alpha=1e-9, x0=1.0)
        assert d.auxiliary(5.0) == pytest.approx(0.5, rel=1e-8)

    @given(gw_params(), st.floats(min_value=1e-12, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_quantile_round_trip(self, d, frac):
        # survival levels strictly inside the tail mass at x0
        s = frac * d.sf(d.x0) * (1 - 1e-9)
        x = d.isf(s)
        assert x >= d.x0
        assert d.sf(x) == pytest.approx(s, rel=1e-9)

    @given(gw_params())
    @settings(max_examples=40, deadline=None)
    def test_density_integrates_to_tail_mass(self, d):
        mass = quad(lambda x: float(d.pdf(x)), d.x0, d.isf(1e-300))
        assert mass == pytest.approx(d.sf(d.x0), abs=1e-6)

    def test_cdf_nondecreasing(self):
        d = GeneralizedWeibullParams(K=3.0, C=0.7, tau=1.5, alpha=2.0, x0=3.0)
        f = d.cdf(np.linspace(0.0, 30.0, 1000))
        assert np.all(np.diff(f) >= 0)


class TestGamma:
    def test_table_value(self):
        assert chi2(10).cdf(15.9872) == pytest.approx(0.9, abs=1e-4)

    def test_zero(self):
        assert GammaParams(3.3, 1.7).cdf(0.0) == 0.0

    def test_near_exponential(self):
        g = GammaParams(1.0001, 2.0)
        for x in (0.1, 1.0, 5.0, 20.0):
            assert g.cdf(x) == pytest.approx(1.0 - math.exp(-x / 2.0), abs=1e-3)

    def test_chi2(self):
        g = chi2(10)
        assert (g.nu, g.theta) == (5.0, 2.0)

    @pytest.mark.parametrize("g", [GammaParams(1.5, 1.0), chi2(10), GammaParams(10.0, 0.5)])
    def test_quantile_round_trip(self, g):
        for u in np.linspace(0.0005, 0.9995, 1000):
            assert g.cdf(g.ppf(u)) == pytest.approx(u, abs=1e-9)

    def test_log_cdf(self):
        g = chi2(10)
        x = 150.0
        assert g.log_cdf(x) == pytest.approx(-g.sf(x), rel=1e-10)

    def test_validation(self):
        with pytest.raises(DomainError):
            GammaParams(1.0, 1.0)
        with pytest.raises(DomainError):
            GammaParams(2.0, 0.0)

    def test_auxiliary_is_first_form(self):
        g = GammaParams(5.0, 2.0)
        assert g.auxiliary(10.0) == pytest.approx(10.0)
        assert auxiliary_A(g, 30.0) == pytest.approx(30.0 / (15.0 - 4.0))
        with pytest.raises(DomainError):
            g.auxiliary(8.0)


class TestTailForms:
    def test_second_form_exact_for_shape_two(self):
        g = GammaParams(2.0, 1.5)
        f2 = GammaTail(g, TailForm.F2)
        x = 40 * g.theta
        assert g.sf(x) / f2.sf(x) == pytest.approx(1.0, abs=1e-3)

    def test_first_form_ratio(self):
        # ratio is 1 + (nu - 1) theta / x + O(1/x**2)
        g = GammaParams(5.0, 2.0)
        f1 = GammaTail(g, TailForm.F1)
        ks = (40, 100, 300)
        ratios = [g.sf(k * g.theta) / f1.sf(k * g.theta) for k in ks]
        for k, r in zip(ks, ratios):
            assert r - 1.0 == pytest.approx(4.0 / k, rel=0.1)
        assert np.all(np.diff(ratios) < 0)

    def test_first_form_matches_weibull_params(self):
        g = GammaParams(5.0, 2.0)
        p = g.tail_params()
        f1 = GammaTail(g, TailForm.F1)
        for x in (12.0, 30.0, 80.0):
            assert p.sf(x) == pytest.approx(f1.sf(x), rel=1e-13)

    @pytest.mark.parametrize("nu", [1.5, 5.0, 10.0])
    def test_equivalence_ratios(self, nu):
        g = GammaParams(nu, 2.0)
        f1, f2 = GammaTail(g, TailForm.F1), GammaTail(g, TailForm.F2)
        xs = g.theta * np.array([10.0, 20.0, 40.0, 80.0])
        r1 = np.array([g.sf(x) / f1.sf(x) for x in xs])
        r2 = np.array([g.sf(x) / f2.sf(x) for x in xs])
        assert np.all(np.abs(r2 - 1.0) < np.abs(r1 - 1.0))
        assert np.all(np.diff(np.abs(r1 - 1.0)) < 0)
        assert np.all(np.diff(np.abs(r2 - 1.0)) < 0)

    def test_second_form_has_heavier_tail(self):
        g = GammaParams(3.5, 1.0)
        f1, f2 = GammaTail(g, TailForm.F1), GammaTail(g, TailForm.F2)
        x = np.linspace(max(f1.x0, f2.x0), 25.0, 100)
        assert np.all(f2.sf(x) > f1.sf(x))
        assert np.all(f2.cdf(x) < f1.cdf(x))

    @pytest.mark.parametrize("form", [TailForm.F1, TailForm.F2])
    @pytest.mark.parametrize("nu", [1.2, 2.0, 5.0])
    def test_validity_threshold(self, form, nu):
        t = GammaTail(GammaParams(nu, 1.5), form)
        assert t.sf(t.x0) <= 1.0 + 1e-12
        xs = np.linspace(t.x0, t.x0 + 30.0, 300)
        assert np.all(np.diff(t.sf(xs)) <= 0)
        with pytest.raises(DomainError):
            t.sf(t.x0 * 0.5)

    def test_densities_are_derivatives(self):
        t = GammaTail(GammaParams(4.0, 1.5), TailForm.F2)
        x, h = 20.0, 1e-5
        fd = (t.cdf(x + h) - t.cdf(x - h)) / (2 * h)
        assert t.pdf(x) == pytest.approx(fd, rel=1e-7)
        assert t.auxiliary(x) == pytest.approx(t.sf(x) / t.pdf(x), rel=1e-12)


class TestGumbel:
    def test_values(self):
        assert gumbel_cdf(0.0) == pytest.approx(math.exp(-1.0))
        assert gumbel_quantile(math.exp(-1.0)) == pytest.approx(0.0, abs=1e-15)
        x = np.linspace(-3, 3, 601)
        p = gumbel_pdf(x)
        assert x[np.argmax(p)] == pytest.approx(0.0, abs=1e-12)
        assert p.max() == pytest.approx(math.exp(-1.0))

    def test_mean(self):
        assert quad(lambda x: x * gumbel_pdf(x), -20, 60) == pytest.approx(GUMBEL_MEAN, abs=1e-10)

    def test_quantile_domain(self):
        with pytest.raises(DomainError):
            gumbel_quantile(1.0)
