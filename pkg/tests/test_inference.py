import math

import numpy as np
import pytest
from scipy import integrate

from pstable import AccLMin, Accelerated, LeftTruncated, LogGev
from pstable.errors import DomainError, InvalidParameterError, NonConvergenceError
from pstable.inference import (
    FitResult,
    acc_lmin_pdf,
    check_theorem_conditions,
    expected_information,
    fit,
    loglik_acc_lmin,
    loglik_accelerated,
    loglik_left_truncated,
    loglik_single,
    num_gradient,
    pwm_gev,
)

E = math.e


class TestLikelihoods:
    def test_identical_gumbel_components_at_e(self):
        # log 2 - 2 - 2/e (mpmath)
        ll = loglik_accelerated([[0.0, 1.0, 0.0], [0.0, 1.0, 0.0]], [E])
        assert ll == pytest.approx(-2.0426117017829393338, abs=1e-13)

    def test_single_matches_logpdf(self):
        m = LogGev(0.4, 1.3, 0.2)
        x = m.sample(200, 1)
        assert loglik_single([0.4, 1.3, 0.2], x) == pytest.approx(float(np.sum(m.logpdf(x))), rel=1e-12)

    def test_accelerated_matches_logpdf(self):
        m = Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, 0.3)])
        x = m.sample(200, 2)
        assert loglik_accelerated(m, x) == pytest.approx(float(np.sum(m.logpdf(x))), rel=1e-12)

    def test_outside_support(self):
        # xi < 0: upper end exp(mu + sigma/|xi|)
        assert loglik_single([0.0, 1.0, -0.5], [1.0, math.exp(3.0)]) == -math.inf

    def test_left_truncated_mixed(self):
        rows = np.array([[0.0, 1.0, 0.1]])
        x0 = 1.5
        data = np.array([x0, x0, 2.0, 3.0])
        m = LogGev(0.0, 1.0, 0.1)
        expected = 2 * float(m.logcdf(x0)) + float(np.sum(m.logpdf([2.0, 3.0])))
        assert loglik_left_truncated(rows, data, x0) == pytest.approx(expected, rel=1e-12)

    def test_acc_lmin_matches_pdf(self):
        p = (0.0, 1.0, 3.0, 1.0, 6.0)
        x = AccLMin(*p).sample(100, 3)
        assert loglik_acc_lmin(p, x) == pytest.approx(float(np.sum(np.log(acc_lmin_pdf(p, x)))), rel=1e-12)

    def test_nonpositive_data(self):
        with pytest.raises(DomainError):
            loglik_single([0.0, 1.0, 0.0], [1.0, -2.0])


class TestNumerics:
    def test_gradient_against_analytic(self):
        f = lambda v: math.sin(v[0]) * math.exp(0.5 * v[1]) + v[2] ** 3
        x = np.array([0.3, -1.2, 2.0])
        g = num_gradient(f, x)
        exact = [math.cos(0.3) * math.exp(-0.6), 0.5 * math.sin(0.3) * math.exp(-0.6), 12.0]
        np.testing.assert_allclose(g, exact, rtol=1e-8)

    def test_pwm_recovers_gumbel(self):
        t = LogGev(1.0, 2.0, 0.0).sample(20_000, 4)
        mu, sigma, xi = pwm_gev(np.log(t))
        assert (mu, sigma, xi) == pytest.approx((1.0, 2.0, 0.0), abs=0.06)


@pytest.fixture(scope="module")
def small():
    data = LogGev(1.0, 0.5, 0.1).sample(50, 10)
    return data, fit("pmax", data, restarts=5, seed=1)


class TestFitPmax:
    def test_converged(self, small):
        _, res = small
        assert res.converged and res.k == 1
        assert res.gradient_norm <= 1e-4 * (1 + abs(res.loglik))

    def test_grid_oracle(self, small):
        # no point on a local grid beats the reported maximum
        data, res = small
        mu, sigma, xi = res.params
        best = -math.inf
        for dm in np.linspace(-0.05, 0.05, 11):
            for ds in np.linspace(-0.05, 0.05, 11):
                for dx in np.linspace(-0.05, 0.05, 11):
                    best = max(best, loglik_single([mu + dm, sigma + ds, xi + dx], data))
        assert res.loglik >= best - 1e-9
        assert res.loglik == pytest.approx(loglik_single(res.params, data), rel=1e-12)

    def test_scale_equivariance(self, small):
        data, res = small
        c = 3.7
        res2 = fit("pmax", data * c, restarts=5, seed=1)
        mu, sigma, xi = res.params
        np.testing.assert_allclose(res2.params, [mu + math.log(c), sigma, xi], atol=1e-5)
        assert res2.loglik == pytest.approx(res.loglik - data.size * math.log(c), abs=1e-6)

    def test_pmin_mirrors_pmax(self, small):
        data, res = small
        res_min = fit("pmin", 1.0 / data, restarts=5, seed=1)
        assert res_min.orientation == "min"
        np.testing.assert_allclose(res_min.params, [-res.params[0], res.params[1], res.params[2]], atol=1e-5)
        # jacobian of x -> 1/x
        assert res_min.loglik == pytest.approx(res.loglik + 2.0 * np.sum(np.log(data)), abs=1e-6)

    def test_serialization_round_trip(self, small):
        _, res = small
        back = FitResult.from_dict(res.to_dict())
        np.testing.assert_allclose(back.params, res.params, rtol=0, atol=0)
        assert back.loglik == res.loglik and back.converged == res.converged

    def test_constant_data(self):
        with pytest.raises(NonConvergenceError):
            fit("pmax", np.full(20, 2.0))

    @pytest.mark.parametrize("kw", [dict(kind="gev"), dict(kind="pmax", k=2), dict(kind="acc-lmin", k=3)])
    def test_bad_arguments(self, kw):
        kind = kw.pop("kind")
        with pytest.raises(InvalidParameterError):
            fit(kind, [1.0, 2.0, 3.0], **kw)


class TestFitAccelerated:
    def test_nests_single(self):
        data = Accelerated([LogGev(2.0, 1.0, -0.2), LogGev(0.0, 1.0, 0.1)]).sample(400, 5)
        single = fit("pmax", data, restarts=5, seed=2)
        acc = fit("acc-pmax", data, restarts=8, seed=2)
        assert acc.k == 2
        assert acc.loglik >= single.loglik - 1e-8

    def test_left_truncated_jump_detected(self):
        base = Accelerated([LogGev(0.0, 1.0, 0.2)])
        data = LeftTruncated(base, 1.2).sample(500, 7)
        res = fit("left-truncated", data, restarts=5, seed=3)
        assert res.model.x0 == pytest.approx(1.2)
        assert res.loglik > -math.inf

    def test_acc_lmin_recovers_parameters(self):
        truth = AccLMin(0.0, 1.0, 3.0, 1.0, 6.0)
        x = truth.sample(3000, 11)
        res = fit("acc-lmin", x, restarts=4, seed=1)
        # the fitted point is at least as likely as the truth
        assert res.loglik >= loglik_acc_lmin(truth.params(), x) - 1e-6
        assert res.params[0] == pytest.approx(0.0, abs=0.15)


class TestAccLMinTheory:
    def test_pdf_zero_below_threshold(self):
        assert acc_lmin_pdf((1.0, 1.0, 3.0, 1.0, 6.0), 0.9) == 0.0

    def test_pdf_requires_alpha_above_one(self):
        with pytest.raises(InvalidParameterError):
            acc_lmin_pdf((0.0, 1.0, 0.8, 1.0, 3.0), 1.0)

    @pytest.mark.parametrize("a1,a2,branches", [(3, 6, ["i", "ii"]), (1.5, 3, ["i"]), (2, 2, ["i"])])
    def test_condition_branches(self, a1, a2, branches):
        assert check_theorem_conditions(a1, a2) == branches

    def test_condition_rejection_names_inequalities(self):
        with pytest.raises(InvalidParameterError, match="alpha1 < alpha2 - 1"):
            check_theorem_conditions(2.0, 2.5)

    def test_expected_information_matches_score_variance(self):
        # information identity: -E[d2 log h] = E[(d log h)^2] for sigma2
        m = AccLMin(0.0, 1.0, 3.0, 1.0, 6.0)
        M = expected_information(m, include_theta=True)
        assert np.allclose(M, M.T)
        assert np.all(np.linalg.eigvalsh(M) > 0)
        h = 1e-6

        def score_sq(x):
            lp = lambda s2: math.log(float(AccLMin(0.0, 1.0, 3.0, s2, 6.0).pdf(x)))
            return ((lp(1.0 + h) - lp(1.0 - h)) / (2 * h)) ** 2 * float(m.pdf(x))

        hi = float(m.quantile(1 - 1e-12))
        val, _ = integrate.quad(score_sq, 0.0, hi, limit=200)
        assert M[3, 3] == pytest.approx(val, rel=1e-3)
