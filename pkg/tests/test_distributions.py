import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from pstable import AccLMin, Accelerated, LeftTruncated, LogGev, MinDual, PStable, dual_min, from_dict, to_dict
from pstable.distributions import duality_transform, sample
from pstable.errors import DomainError, InvalidParameterError

from _support import mass

E = math.e

class TestPStableExamples:
    def test_h1_cdf_at_e(self):
        assert PStable("H1", 3.0).cdf(E) == pytest.approx(math.exp(-1), abs=1e-15)

    def test_h5_cdf_and_pdf_at_one(self):
        m = PStable("H5")
        assert m.cdf(1.0) == pytest.approx(math.exp(-1), abs=1e-15)
        assert m.pdf(1.0) == pytest.approx(math.exp(-1), abs=1e-15)

    def test_loggev_gumbel_cdf_at_one(self):
        assert LogGev(0, 1, 0).cdf(1.0) == pytest.approx(math.exp(-1), abs=1e-15)

    def test_accelerated_identical_components(self):
        m = Accelerated([PStable("H1", 2.0), PStable("H1", 2.0)])
        assert m.cdf(E) == pytest.approx(math.exp(-2), abs=1e-15)
        # analytic derivative of exp(-2 (log x)^-2) at e: 4 e^-3
        assert m.pdf(E) == pytest.approx(0.19914827347145577192, rel=1e-13)

    def test_quantile_examples(self):
        assert PStable("H1", 3.0).quantile(math.exp(-1)) == pytest.approx(E, rel=1e-12)
        m = Accelerated([PStable("H1", 2.0), PStable("H1", 2.0)])
        assert m.quantile(math.exp(-2)) == pytest.approx(E, rel=1e-10)
        assert LogGev(0, 1, 0).quantile(math.exp(-1)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kind", ["H1", "H2", "H3", "H4", "H5", "H6"])
    def test_support_and_limits(self, kind):
        m = PStable(kind, 2.0)
        lo, hi = m.support
        q = m.quantile(np.array([1e-6, 0.5, 1 - 1e-3]))
        assert np.all((q > lo) & (q < hi))
        assert m.cdf(lo - 1.0 if np.isfinite(lo) else -1e300) == 0.0
        assert m.cdf(hi + 1.0 if np.isfinite(hi) else np.inf) == 1.0

    @pytest.mark.parametrize("bad", [dict(alpha=0.0), dict(alpha=-1.0), dict(A=0.0), dict(B=-2.0)])
    def test_invalid_parameters(self, bad):
        with pytest.raises(InvalidParameterError):
            PStable("H1", **bad)

    def test_invalid_kind_and_sigma(self):
        with pytest.raises(InvalidParameterError):
            PStable("H7")
        with pytest.raises(InvalidParameterError):
            LogGev(0.0, 0.0, 0.1)


class TestNormalization:
    @pytest.mark.parametrize("kind", ["H1", "H2", "H3", "H4"])
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 5.0])
    def test_types_with_alpha(self, kind, alpha):
        assert mass(PStable(kind, alpha)) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("kind", ["H5", "H6"])
    def test_types_without_alpha(self, kind):
        assert mass(PStable(kind)) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("kind,A,B", [("H1", 2.0, 0.5), ("H2", 0.7, 3.0), ("H5", 5.0, 2.0), ("H6", 0.3, 0.4)])
    def test_transformed_types(self, kind, A, B):
        assert mass(PStable(kind, 1.5, A, B)) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("xi", [-0.8, -0.2, 0.0, 0.3, 0.8])
    def test_loggev(self, xi):
        m = LogGev(0.5, 1.3, xi)
        lo, hi = m._t_support()
        f = lambda t: float(m.pdf(math.exp(t))) * math.exp(t)
        a = max(lo, -60.0)
        b = min(hi, 700.0)
        val, _ = integrate.quad(f, a, b, limit=500, epsabs=1e-13, epsrel=1e-12)
        val += float(m.cdf(math.exp(a))) + float(m.sf(math.exp(b)))
        assert val == pytest.approx(1.0, abs=1e-6)


class TestDensityAndQuantile:
    def test_finite_difference_pdf(self):
        m = LogGev(2.0, 1.0, -0.2)
        xs = np.exp(np.linspace(0.5, 5.5, 10))
        h = 1e-6 * xs
        fd = (m.cdf(xs + h) - m.cdf(xs - h)) / (2 * h)
        np.testing.assert_allclose(m.pdf(xs), fd, rtol=1e-6)

    def test_accelerated_logpdf_tail_stable(self):
        m = Accelerated([LogGev(2.0, 1.0, 0.0), LogGev(0.0, 1.0, 0.0)])
        x = np.array([0.2, 1e30])
        assert np.all(np.isfinite(m.logpdf(x)))

    @pytest.mark.parametrize(
        "model",
        [
            PStable("H1", 2.0),
            PStable("H2", 3.0, 0.5, 2.0),
            PStable("H3", 1.5),
            PStable("H4", 0.7),
            PStable("H5", 1.0, 2.0, 3.0),
            PStable("H6"),
            LogGev(1.0, 0.5, -0.3),
            LogGev(0.0, 1.0, 1e-8),
            Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, 0.5)]),
            Accelerated([PStable("H1", 40.0, 1.0, 1.5), PStable("H1", 3.0)]),
        ],
        ids=repr,
    )
    def test_round_trip(self, model):
        p = np.linspace(0.01, 0.99, 41)
        x = model.quantile(p)
        assert np.max(np.abs(model.cdf(x) - p)) <= 1e-10
        back = model.quantile(model.cdf(x))
        assert np.all(np.abs(back - x) <= 1e-8 * (1 + np.abs(x)))

    def test_monotone_on_grid(self):
        m = Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, -1.0)])
        x = np.linspace(0.01, 40.0, 1000)
        assert np.all(np.diff(m.cdf(x)) >= 0)

    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_pmax_stability(self, n):
        alpha = 2.5
        h = PStable("H1", alpha)
        x = np.linspace(1.01, 50.0, 200)
        np.testing.assert_allclose(h.cdf(x) ** n, h.cdf(x ** (n ** (-1.0 / alpha))), rtol=0, atol=1e-12)

    def test_product_identity(self):
        comps = [LogGev(1.0, 0.5, 0.2), PStable("H1", 2.0), PStable("H5", 1.0, 3.0, 0.5)]
        m = Accelerated(comps)
        x = np.linspace(1.1, 20.0, 50)
        np.testing.assert_allclose(m.cdf(x), np.prod([c.cdf(x) for c in comps], axis=0), rtol=0, atol=1e-15)

    def test_small_xi_branch_continuous(self):
        x = np.exp(np.linspace(-1, 3, 25))
        a = LogGev(0.3, 0.8, 0.99e-12).logpdf(x)
        b = LogGev(0.3, 0.8, 1.01e-12).logpdf(x)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)


class TestSampling:
    def test_h5_ks(self):
        x = sample(PStable("H5"), 100_000, seed=11)
        assert stats.kstest(x, PStable("H5").cdf).statistic < 0.01

    def test_single_draw_in_support(self):
        m = PStable("H2", 2.0)
        x = sample(m, 1, seed=3)
        assert x.shape == (1,) and 0 < x[0] < 1

    def test_accelerated_sample_is_componentwise_max(self):
        comps = [LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, 0.3)]
        children = np.random.SeedSequence(5).spawn(2)
        expected = np.maximum(comps[0].sample(100, children[0]), comps[1].sample(100, children[1]))
        np.testing.assert_array_equal(Accelerated(comps).sample(100, 5), expected)

    def test_deterministic(self):
        m = Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, 0.3)])
        np.testing.assert_array_equal(m.sample(50, 9), m.sample(50, 9))


class TestDuality:
    def test_h5_dual_is_exponential(self):
        d = dual_min(PStable("H5"))
        x = np.linspace(0.05, 5.0, 30)
        np.testing.assert_allclose(d.cdf(x), 1 - np.exp(-x), atol=1e-14)

    def test_h5_dual_monte_carlo(self):
        draws = 1.0 / PStable("H5").sample(50_000, 4)
        assert stats.kstest(draws, dual_min(PStable("H5")).cdf).statistic < 0.01

    @pytest.mark.parametrize(
        "model",
        [PStable("H5"), PStable("H3", 2.0), LogGev(1.0, 0.5, 0.2), Accelerated([LogGev(1, 1, 0.1), LogGev(0, 2, -0.3)])],
        ids=repr,
    )
    def test_involution(self, model):
        back = dual_min(dual_min(model))
        x = np.linspace(0.2, 5.0, 7) if model.support[0] >= 0 else np.linspace(-0.9, -0.1, 7)
        np.testing.assert_allclose(back.cdf(x), model.cdf(x), atol=1e-15)

    @pytest.mark.parametrize("model", [PStable("H1", 2.0), PStable("H5"), PStable("H4", 1.5), LogGev(0.2, 1.0, 0.4)], ids=repr)
    def test_duality_identity(self, model):
        d = dual_min(model)
        tau = duality_transform(model)
        lo, hi = d.support
        x = np.asarray(d.quantile(np.linspace(0.05, 0.95, 19)))
        np.testing.assert_allclose(d.cdf(x) + model.cdf(tau(x)), 1.0, atol=1e-12)

    def test_median_duality(self):
        m = PStable("H1", 3.0)
        d = dual_min(m)
        med = d.quantile(0.5)
        assert m.cdf(duality_transform(m)(med)) == pytest.approx(0.5, abs=1e-10)

    def test_min_accelerated_matches_corollary(self):
        comps = [LogGev(1.0, 1.0, 0.1), LogGev(0.0, 0.5, -0.2)]
        m = Accelerated(comps, "min")
        x = np.linspace(0.1, 5, 11)
        # 1 - prod(1 - F_j) with F_j the reciprocal duals of LogGev(-mu)
        surv = np.prod([1 - MinDual(LogGev(-c.mu, c.sigma, c.xi), "reciprocal").cdf(x) for c in comps], axis=0)
        np.testing.assert_allclose(m.cdf(x), 1 - surv, atol=1e-14)


class TestLeftTruncated:
    def setup_method(self):
        self.base = PStable("H1", 4.0)
        self.m = LeftTruncated(self.base, E)

    def test_cdf_atom_convention(self):
        assert self.m.cdf(E - 1e-9) == 0.0
        assert self.m.cdf(E) == pytest.approx(math.exp(-1), abs=1e-15)
        assert self.m.atom_mass == pytest.approx(math.exp(-1), abs=1e-15)

    def test_pdf_domain(self):
        with pytest.raises(DomainError):
            self.m.pdf(E)
        assert self.m.pdf(3.0) == pytest.approx(self.base.pdf(3.0))

    def test_quantile_maps_to_atom(self):
        assert self.m.quantile(0.2) == E
        assert self.m.quantile(0.9) == pytest.approx(self.base.quantile(0.9))

    def test_sample_atom_fraction(self):
        x = self.m.sample(20_000, 1)
        assert np.mean(x == E) == pytest.approx(math.exp(-1), abs=0.015)
        assert np.all(x >= E)

    def test_jump_point_must_be_interior(self):
        with pytest.raises(InvalidParameterError):
            LeftTruncated(self.base, 0.5)


class TestAccLMin:
    def test_zero_below_threshold(self):
        m = AccLMin(1.0, 1.0, 3.0, 1.0, 6.0)
        assert m.pdf(0.5) == 0.0 and m.pdf(1.0) == 0.0

    def test_equal_sources_double_hazard(self):
        s, a = 1.3, 2.5
        m = AccLMin(0.0, s, a, s, a)
        # sf = exp(-2 (d/(s a))^a): Weibull with scale s a 2^(-1/a)
        ref = stats.weibull_min(a, scale=s * a * 2 ** (-1 / a))
        x = np.linspace(0.1, 5, 20)
        np.testing.assert_allclose(m.pdf(x), ref.pdf(x), rtol=1e-12)
        val, _ = integrate.quad(m.pdf, 0, np.inf, epsabs=1e-12)
        assert val == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("params", [(0, 1, 3, 1, 6), (2, 0.5, 1.5, 2, 4), (-1, 2, 1.2, 0.3, 1.2), (0, 1, 2.5, 1, 9)])
    def test_integrates_to_one(self, params):
        m = AccLMin(*params)
        hi = float(m.quantile(1 - 1e-14))
        val, _ = integrate.quad(m.pdf, m.theta, hi, limit=400, epsabs=1e-13)
        assert val == pytest.approx(1.0, abs=1e-6)

    def test_leading_constant(self):
        m = AccLMin(0.0, 1.0, 3.0, 1.0, 6.0)
        d = 1e-5
        ratio = d ** (1 - m.alpha1) * m.pdf(d)
        assert ratio == pytest.approx(m.alpha1 * m.c_phi(), rel=1e-6)
        assert m.g_limit() == pytest.approx(m.alpha1 * m.c_phi())

    def test_auto_swap(self):
        m = AccLMin(0.0, 2.0, 6.0, 1.0, 3.0)
        assert (m.alpha1, m.alpha2, m.sigma1, m.sigma2) == (3.0, 6.0, 1.0, 2.0)

    def test_quantile_round_trip(self):
        m = AccLMin(0.5, 1.0, 3.0, 1.0, 6.0)
        p = np.linspace(0.01, 0.99, 15)
        np.testing.assert_allclose(m.cdf(m.quantile(p)), p, atol=1e-10)


class TestJson:
    @pytest.mark.parametrize(
        "model",
        [
            Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, -1.0)]),
            Accelerated([LogGev(0.1, 2.0, 0.3)], "min"),
            Accelerated([PStable("H1", 40.0, 1.0, 1.5), PStable("H1", 3.0)]),
            LeftTruncated(Accelerated([PStable("H1", 4.0)]), E),
            AccLMin(0.0, 1.0, 3.0, 1.0, 6.0),
        ],
        ids=repr,
    )
    def test_round_trip(self, model):
        back = from_dict(to_dict(model))
        x = np.linspace(0.5, 8, 9) + (E if isinstance(model, LeftTruncated) else 0.0)
        np.testing.assert_array_equal(back.cdf(x), model.cdf(x))

    def test_field_names(self):
        d = to_dict(Accelerated([LogGev(1.0, 2.0, 0.5)]))
        assert d == {"orientation": "max", "components": [{"family": "loggev", "mu": 1.0, "sigma": 2.0, "xi": 0.5}]}

    def test_bad_family(self):
        with pytest.raises(InvalidParameterError):
            from_dict({"components": [{"family": "gauss"}]})


@settings(max_examples=60, deadline=None)
@given(
    mu=st.floats(-3, 3),
    sigma=st.floats(0.2, 3),
    xi=st.floats(-0.9, 2.0),
    p=st.floats(1e-6, 1 - 1e-6),
)
def test_loggev_quantile_cdf_property(mu, sigma, xi, p):
    m = LogGev(mu, sigma, xi)
    x = m.quantile(p)
    assume(0.0 < x < np.inf)
    assert abs(m.cdf(x) - p) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(
    alphas=st.lists(st.floats(0.5, 8.0), min_size=1, max_size=3),
    p=st.floats(1e-4, 1 - 1e-4),
)
def test_accelerated_quantile_property(alphas, p):
    m = Accelerated([PStable("H1", a) for a in alphas])
    x = m.quantile(p)
    assume(x < np.inf)
    assert abs(m.cdf(x) - p) <= 1e-10
