import math
import warnings

import numpy as np
import pytest

from weibull_maxima.asymptotic import u_gamma_expansion, w_secondary_expansion
from weibull_maxima.distributions import GammaParams, GeneralizedWeibullParams, chi2, simple_case
from weibull_maxima.exceptions import IllConditionedWarning, ValidityError
from weibull_maxima.norming import (
    Method,
    NormingConstants,
    constants_via_expansion,
    exact_constants,
    improved_constants,
    improved_constants_gamma,
    improved_constants_gw,
    norming_constants,
    standard_constants,
)
from weibull_maxima.reference_values import TABLE_N

DECADES = [10.0**k for k in range(1, 7)]


def _gw(K, C, tau, alpha, pad=0.5):
    mode = (alpha / (C * tau)) ** (1.0 / tau)
    x0 = mode + pad
    while math.log(K) + alpha * math.log(x0) - C * x0**tau > 0:
        x0 *= 1.5
    return GeneralizedWeibullParams(K=K, C=C, tau=tau, alpha=alpha, x0=x0)


def _slope(errs, ns):
    r = np.array([math.log(math.log(n)) / math.log(n) for n in ns])
    return np.polyfit(np.log(r), np.log(errs), 1)[0]


class TestExact:
    def test_simple_case_anchor(self):
        c = exact_constants(simple_case(), 100)
        assert (c.b, c.a) == (pytest.approx(7.6384, abs=1e-4), pytest.approx(1.1506, abs=1e-4))
        assert c.method is Method.EXACT

    @pytest.mark.parametrize("n,b,a", [(10, 15.9872, 4.0032), (1e6, 46.8630, 2.4117)])
    def test_chi2(self, n, b, a):
        c = exact_constants(chi2(10), n)
        assert c.b == pytest.approx(b, abs=1e-4)
        assert c.a == pytest.approx(a, abs=1e-4)

    def test_residual_random_parameters(self):
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(10):
            d = _gw(rng.uniform(0.2, 5.0), rng.uniform(0.3, 2.0), rng.uniform(1.0, 3.0), rng.uniform(0.1, 4.0))
            for n in DECADES:
                if 1.0 / n > d.sf(d.x0):
                    with pytest.raises(ValidityError):
                        exact_constants(d, n)
                    continue
                c = exact_constants(d, n)
                assert abs(d.cdf(c.b) - (1.0 - 1.0 / n)) <= 1e-10
                assert c.a > 0
                checked += 1
        assert checked >= 40

    def test_gamma_residual(self):
        for g in (chi2(10), GammaParams(1.5, 0.7), GammaParams(7.0, 3.0)):
            for n in DECADES:
                assert abs(g.cdf(exact_constants(g, n).b) - (1.0 - 1.0 / n)) <= 1e-10

    def test_gamma_scale_uses_first_form(self):
        c = exact_constants(chi2(10), 10)
        assert c.a == pytest.approx(c.b / (c.b / 2.0 - 4.0), rel=1e-14)

    def test_small_n(self):
        with pytest.raises(ValidityError):
            exact_constants(simple_case(), 1)


class TestStandard:
    def test_simple_case(self):
        c = standard_constants(simple_case(), 100)
        ln = math.log(100.0)
        assert c.b == pytest.approx(ln + math.log(ln) + 1.0, rel=1e-14)
        assert c.b == pytest.approx(7.1323, abs=1e-4)
        assert c.a == 1.0

    @pytest.mark.parametrize("n,b", [(10, 4.9213), (1e5, 36.2175)])
    def test_chi2(self, n, b):
        c = standard_constants(chi2(10), n)
        assert c.b == pytest.approx(b, abs=1e-4)
        assert c.a == 2.0

    def test_general_scale(self):
        d = _gw(2.0, 0.5, 2.0, 1.5)
        n = 1e4
        assert standard_constants(d, n).a == pytest.approx((math.log(n) / 0.5) ** -0.5 / (0.5 * 2.0), rel=1e-14)

    def test_needs_loglog(self):
        with pytest.raises(ValidityError):
            standard_constants(simple_case(), 2)


class TestImproved:
    @pytest.mark.parametrize("n,b", [(100, 7.6364), (10, 4.8590)])
    def test_simple_case(self, n, b):
        assert improved_constants_gw(simple_case(), n).b == pytest.approx(b, abs=1e-4)

    def test_simple_case_closed_form(self):
        for n in DECADES:
            c = improved_constants_gw(simple_case(), n)
            l1 = math.log(n) + 1.0
            assert c.b == pytest.approx(l1 + math.log(l1) + math.log(l1) / l1, rel=1e-14)
            assert c.a == pytest.approx(c.b / (c.b - 1.0), rel=1e-14)

    @pytest.mark.parametrize("n,b,a", [(10, 13.3518, 4.9896), (1e3, 29.0421, 2.7604)])
    def test_chi2(self, n, b, a):
        c = improved_constants_gamma(chi2(10), n)
        assert c.b == pytest.approx(b, abs=1e-4)
        assert c.a == pytest.approx(a, abs=1e-4)

    def test_gamma_scale_is_first_form_auxiliary(self):
        for g in (chi2(10), GammaParams(1.5, 2.0), GammaParams(3.3, 0.4)):
            for n in DECADES[1:]:
                c = improved_constants_gamma(g, n)
                assert c.a == pytest.approx(c.b / (c.b / g.theta - g.nu + 1.0), rel=1e-14)

    def test_gamma_branches_meet_at_shape_two(self):
        # both closed forms written out at nu = 2, theta = 1
        n = 1e4
        ln = math.log(n)
        big = ln
        low = big + math.log(big) + (math.log(big) + 1.0) / big
        high = ln + math.log(big) + (math.log(big) + 1.0) / big
        assert low == pytest.approx(high, abs=1e-10)
        assert improved_constants_gamma(GammaParams(2.0, 1.0), n).b == pytest.approx(low, abs=1e-10)
        # and the dispatch is continuous across nu = 2
        lo = improved_constants_gamma(GammaParams(2.0 - 1e-9, 1.0), n).b
        hi = improved_constants_gamma(GammaParams(2.0 + 1e-9, 1.0), n).b
        assert lo == pytest.approx(hi, abs=1e-7)

    @pytest.mark.parametrize("nu", [1.1, 1.5, 2.0])
    def test_gamma_low_shape_rearrangement(self, nu):
        # log n - log Gamma(nu) kept apart instead of merged into log(n / Gamma(nu))
        g = GammaParams(nu, 1.7)
        for n in DECADES[1:]:
            lg = math.lgamma(nu)
            big = math.log(n) - lg
            split = g.theta * (math.log(n) + (nu - 1) * math.log(big) - lg
                               + ((nu - 1) ** 2 * math.log(big) + nu - 1) / big)
            assert improved_constants_gamma(g, n).b == pytest.approx(split, rel=1e-13)

    def test_equal_exponents_routes_coincide(self):
        d = _gw(2.0, 0.7, 1.5, 1.5)
        for n in DECADES[1:]:
            comtet = improved_constants_gw(d, n).b
            arg = -(d.C * d.tau / d.alpha) * (d.K * n) ** (-d.tau / d.alpha)
            lambert = (-(d.alpha / (d.C * d.tau)) * w_secondary_expansion(arg, 1)) ** (1.0 / d.tau)
            assert comtet == pytest.approx(lambert, rel=1e-12)

    @pytest.mark.parametrize("tau,alpha", [(1.0, 4.0), (2.0, 8.0), (1.0, 0.5), (2.0, 1.0)])
    def test_branch_selection(self, tau, alpha):
        # the dispatched route is the closer of the two one-term routes
        d = _gw(1.0, 1.0, tau, alpha)
        for n in DECADES[1:]:
            b = exact_constants(d, n).b
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", IllConditionedWarning)
                arg = -(d.C * tau / alpha) * (d.K * n) ** (-tau / alpha)
                lam = (-(alpha / (d.C * tau)) * w_secondary_expansion(arg, 1)) ** (1.0 / tau)
                com = (u_gamma_expansion(-alpha / tau, d.K * n / d.C ** (alpha / tau), 1) / d.C) ** (1.0 / tau)
            chosen = improved_constants_gw(d, n).b
            if alpha > tau:
                assert abs(lam - b) < abs(com - b)
                assert chosen == pytest.approx(lam, rel=1e-12)
            else:
                assert abs(com - b) < abs(lam - b)
                assert chosen == pytest.approx(com, rel=1e-12)

    @pytest.mark.parametrize("dist", [simple_case(), chi2(10)], ids=["simple", "chi2"])
    def test_improvement_ordering(self, dist):
        for n in TABLE_N:
            b = exact_constants(dist, n).b
            assert abs(improved_constants(dist, n).b - b) < abs(standard_constants(dist, n).b - b)

    def test_validity_guard(self):
        d = GeneralizedWeibullParams(K=1.0, C=10.0, tau=2.0, alpha=1.0, x0=1.0)
        with pytest.raises(ValidityError):
            improved_constants_gw(d, 5)
        # M1 = log(1/3) - log(0.3)/3 > -1
        d = _gw(0.1, 1.0, 1.0, 3.0)
        with pytest.raises(ValidityError):
            improved_constants_gw(d, 3)
        with pytest.raises(ValidityError):
            improved_constants_gamma(GammaParams(10.0, 1.0), 3)


@pytest.mark.filterwarnings("ignore::weibull_maxima.exceptions.IllConditionedWarning")
class TestExpansionOrder:
    @pytest.mark.parametrize("dist", [simple_case(), chi2(10), GammaParams(1.5, 1.0), _gw(1.0, 1.0, 1.0, 4.0)],
                             ids=["simple", "chi2", "gamma15", "lambert"])
    def test_order_one_is_improved(self, dist):
        for n in DECADES[1:]:
            assert constants_via_expansion(dist, n, 1).b == pytest.approx(improved_constants(dist, n).b, rel=1e-12)

    def test_order_two_beats_order_one(self):
        g = chi2(10)
        b = exact_constants(g, 100).b
        assert abs(constants_via_expansion(g, 100, 2).b - b) < abs(constants_via_expansion(g, 100, 1).b - b)

    @pytest.mark.parametrize("dist,limit", [
        # log(log n + 1) - log log n
        (simple_case(), 1.0),
        # theta (nu-1) (log B - log log n) with B = log n + (nu-1) log(nu-1) - log Gamma(nu)
        (chi2(10), 8.0 * (4.0 * math.log(4.0) - math.log(24.0))),
    ], ids=["simple", "chi2"])
    def test_order_zero_near_standard(self, dist, limit):
        # the two leading-term arrangements differ by limit / log n + O(1/log(n)**2)
        scaled = []
        for n in (1e6, 1e12, 1e24):
            diff = abs(constants_via_expansion(dist, n, 0).b - standard_constants(dist, n).b)
            scaled.append(diff * math.log(n))
        assert np.all(np.abs(np.array(scaled) / limit - 1.0) < 0.3)
        assert abs(scaled[-1] - limit) < abs(scaled[0] - limit)

    def test_dispatch(self):
        d = simple_case()
        assert norming_constants(d, 100, "standard").b == standard_constants(d, 100).b
        assert norming_constants(d, 100, Method.IMPROVED).b == improved_constants(d, 100).b
        c = norming_constants(d, 100, "improved", order=3)
        assert c.order == 3
        assert c.b == constants_via_expansion(d, 100, 3).b
        with pytest.raises(ValueError):
            norming_constants(d, 100, "best")


class TestRates:
    def test_standard_error_slope(self):
        d = simple_case()
        ns = [10.0**k for k in range(2, 10)]
        errs = [abs(standard_constants(d, n).b - exact_constants(d, n).b) for n in ns]
        assert _slope(errs, ns) == pytest.approx(1.0, abs=0.3)

    def test_improved_error_slope_far_out(self):
        # the second-order rate is clean once log log n / log n is small
        d = simple_case()
        ns = [10.0**k for k in (20, 40, 80, 160, 300)]
        errs = [abs(improved_constants(d, n).b - exact_constants(d, n).b) for n in ns]
        assert _slope(errs, ns) == pytest.approx(2.0, abs=0.3)

    def test_scale_times_location_tends_to_one(self):
        d = simple_case()
        vals = [exact_constants(d, 10.0**k).b * (exact_constants(d, 10.0**k).a - 1.0) for k in (2, 4, 8, 16, 64)]
        assert np.all(np.diff(vals) < 0)
        assert vals[-1] == pytest.approx(1.0, abs=0.01)


def test_nonpositive_scale_rejected():
    with pytest.raises(ValidityError):
        NormingConstants(a=0.0, b=1.0, method=Method.EXACT, n=10)


def test_normalize():
    c = NormingConstants(a=2.0, b=1.0, method=Method.EXACT, n=10)
    assert np.allclose(c.normalize(np.array([1.0, 3.0])), [0.0, 1.0])
