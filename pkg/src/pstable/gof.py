"""Goodness-of-fit statistics, likelihood-ratio test and P-P/Q-Q points.

Asymptotic p-values treat the model as fully specified. A parametric
bootstrap that refits on every resample is available through
:func:`bootstrap_pvalue`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy import special, stats

from . import _kernels
from .distributions import Distribution, _seed_seq
from .errors import DomainError, InvalidParameterError, NonConvergenceError, NumericError


@dataclass(frozen=True)
class TestResult:
    """Outcome of a test. ``p_method`` is ``"asymptotic"`` or ``"bootstrap(B)"``."""

    __test__ = False  # not a pytest class

    method: str
    statistic: float
    p_value: float
    p_method: str = "asymptotic"
    df: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["df"] is None:
            d.pop("df")
        return d


# ---------------------------------------------------------------------------
# asymptotic null distributions
# ---------------------------------------------------------------------------


def kolmogorov_sf(t: float, terms: int = 100) -> float:
    """``P(K > t)`` for the Kolmogorov distribution, series with ``terms`` terms."""
    if t <= 0:
        return 1.0
    if t < 0.2:
        # series is numerically flat here; the cdf is below 1e-40
        return 1.0
    k = np.arange(1, terms + 1)
    s = 2.0 * np.sum((-1.0) ** (k - 1) * np.exp(-2.0 * k**2 * t * t))
    return float(min(max(s, 0.0), 1.0))


def cvm_cdf(w: float, terms: int = 12) -> float:
    """Limiting cdf of the Cramer-von Mises statistic (parameters known).

    Uses the Bessel-function series of the limiting distribution.
    """
    if w <= 0:
        return 0.0
    if w > 10:
        return 1.0
    total = 0.0
    for j in range(terms):
        u = (4 * j + 1) ** 2 / (16.0 * w)
        log_coef = special.gammaln(j + 0.5) - special.gammaln(j + 1.0) - special.gammaln(0.5)
        term = math.exp(log_coef - 2.0 * u) * math.sqrt(4 * j + 1) * special.kve(0.25, u)
        total += term
    return float(min(max(total / (math.pi * math.sqrt(w)), 0.0), 1.0))


def ad_cdf(z: float) -> float:
    """Limiting cdf of the Anderson-Darling statistic (parameters known).

    Two-piece rational-exponential approximation with absolute error below
    about 2e-6.
    """
    if z <= 0:
        return 0.0
    if z < 2.0:
        poly = 2.00012 + (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z
        return float(math.exp(-1.2337141 / z) / math.sqrt(z) * poly)
    inner = 1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z
    return float(math.exp(-math.exp(inner)))


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def _pit(data, model: Distribution) -> tuple[np.ndarray, np.ndarray]:
    """Sorted ``u = F(x)`` and ``1 - u`` (from the model's ``sf`` when available)."""
    x = np.sort(np.asarray(data, dtype=float).ravel())
    if x.size == 0:
        raise InvalidParameterError("data must be nonempty")
    if np.any(~np.isfinite(x)):
        raise InvalidParameterError("data contain NaN or infinite values")
    u = np.asarray(model.cdf(x), dtype=float)
    s = np.asarray(model.sf(x), dtype=float) if hasattr(model, "sf") else 1.0 - u
    if np.any(~np.isfinite(u)) or np.any(~np.isfinite(s)):
        raise NumericError("model cdf is not finite at some data points")
    return np.ascontiguousarray(np.clip(u, 0.0, 1.0)), np.ascontiguousarray(np.clip(s, 0.0, 1.0))


def gof_statistics(data, model: Distribution) -> tuple[float, float, float]:
    """Return ``(D_n, W^2, A^2)``; ``A^2`` is ``nan`` when some ``u_i`` is 0 or 1."""
    return _kernels.gof_stats(*_pit(data, model))


def ks_statistic(data, model: Distribution) -> TestResult:
    """One-sample Kolmogorov-Smirnov test."""
    d, _, _ = gof_statistics(data, model)
    n = len(np.ravel(data))
    return TestResult("ks", d, kolmogorov_sf(math.sqrt(n) * d))


def cvm_statistic(data, model: Distribution) -> TestResult:
    """One-sample Cramer-von Mises test."""
    _, w2, _ = gof_statistics(data, model)
    return TestResult("cvm", w2, 1.0 - cvm_cdf(w2))


def ad_statistic(data, model: Distribution) -> TestResult:
    """One-sample Anderson-Darling test.

    Raises
    ------
    DomainError
        If some data point sits where the model cdf is exactly 0 or 1.
    """
    _, _, a2 = gof_statistics(data, model)
    if not np.isfinite(a2):
        raise DomainError("Anderson-Darling statistic undefined: model cdf equals 0 or 1 at some data point")
    return TestResult("ad", a2, 1.0 - ad_cdf(a2))


TESTS: dict[str, Callable[[np.ndarray, Distribution], TestResult]] = {
    "ks": ks_statistic,
    "cvm": cvm_statistic,
    "ad": ad_statistic,
}


def bootstrap_pvalue(
    data,
    model: Distribution,
    method: str,
    refit: Callable[[np.ndarray], Distribution] | None = None,
    n_boot: int = 999,
    seed=None,
) -> TestResult:
    """Parametric-bootstrap p-value.

    Resamples of the data size are drawn from ``model``; each is refitted
    with ``refit`` (when given) and its statistic computed against the
    refitted model. The p-value is ``(1 + #{T* >= T}) / (n_boot + 1)``.
    """
    if method not in TESTS:
        raise InvalidParameterError(f"unknown test {method!r}")
    data = np.asarray(data, dtype=float).ravel()
    observed = TESTS[method](data, model).statistic
    children = _seed_seq(seed).spawn(int(n_boot))
    count = 0
    for child in children:
        sim = np.asarray(model.sample(data.size, child), dtype=float)
        m = refit(sim) if refit is not None else model
        try:
            stat = TESTS[method](sim, m).statistic
        except DomainError:
            stat = math.inf
        count += stat >= observed
    return TestResult(method, observed, (1.0 + count) / (n_boot + 1.0), f"bootstrap({int(n_boot)})")


def lrt(fit_single, fit_acc, df: int = 3, slack: float = 1e-8) -> TestResult:
    """Likelihood-ratio test of a single model nested in an accelerated one.

    Parameters
    ----------
    fit_single, fit_acc : FitResult
        Converged fits with ``k = 1`` and ``k = 2`` components.
    df : int
        Extra parameters in the larger model.
    slack : float
        Negative statistics down to ``-slack`` are treated as 0.
    """
    for name, f in (("single", fit_single), ("accelerated", fit_acc)):
        if not getattr(f, "converged", False):
            raise NonConvergenceError(f"{name} fit did not converge; LRT not applicable")
    k1 = getattr(fit_single, "k", None)
    k2 = getattr(fit_acc, "k", None)
    if k1 is not None and k2 is not None and k1 > k2:
        raise InvalidParameterError(f"models are not nested (k={k1} vs k={k2})")
    o1 = getattr(fit_single, "orientation", None)
    o2 = getattr(fit_acc, "orientation", None)
    if o1 != o2:
        raise InvalidParameterError("models are not nested (orientations differ)")
    stat = 2.0 * (fit_acc.loglik - fit_single.loglik)
    if stat < -slack:
        raise NumericError(f"negative LRT statistic {stat:.3g}: accelerated fit is worse than the nested single fit")
    stat = max(stat, 0.0)
    return TestResult("lrt", stat, float(stats.chi2.sf(stat, df)), "asymptotic", df)


def pp_qq_points(data, model: Distribution) -> np.ndarray:
    """Rows ``(empirical_p, model_p, empirical_q, model_q)`` for P-P and Q-Q plots."""
    x = np.sort(np.asarray(data, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise InvalidParameterError("data must be nonempty")
    p = np.arange(1, n + 1) / (n + 1.0)
    return np.column_stack([p, np.asarray(model.cdf(x), dtype=float), x, np.asarray(model.quantile(p), dtype=float)])
