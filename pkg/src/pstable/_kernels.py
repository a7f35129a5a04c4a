"""Hot loops with a numba backend and a pure-numpy fallback.

The numba versions are used when numba imports cleanly and the environment
variable ``PSTABLE_DISABLE_NUMBA`` is unset (or ``0``).  Both variants are
always importable under explicit ``*_numba`` / ``*_numpy`` names so tests and
the benchmark can compare them.
"""

from __future__ import annotations

import math
import os

import numpy as np

XI_ZERO = 1e-12
XI_SERIES = 1e-6

_flag = os.environ.get("PSTABLE_DISABLE_NUMBA", "0").strip().lower()
_DISABLED = _flag not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy variants
# ---------------------------------------------------------------------------


def _gev_y_numpy(z, xi):
    """Return log(1 + xi z) / xi with the small-xi series where needed."""
    if abs(xi) < XI_ZERO:
        return z.copy()
    xz = xi * z
    with np.errstate(invalid="ignore", divide="ignore"):
        y = np.log1p(xz) / xi
    if abs(xi) < XI_SERIES:
        small = np.abs(xz) < 1e-3
        zs = z[small]
        y[small] = zs * (1.0 - xz[small] / 2.0 + xz[small] ** 2 / 3.0 - xz[small] ** 3 / 4.0)
    return y


def loggev_terms_numpy(t, mu, sigma, xi):
    """Log-density and log-cdf of the GEV law at points ``t``.

    Parameters
    ----------
    t : ndarray
        Evaluation points on the GEV scale (``log x`` for log-GEV data).
    mu, sigma, xi : float
        Location, scale and shape.

    Returns
    -------
    logpdf, logcdf : ndarray
        Outside the support ``logpdf`` is ``-inf`` and ``logcdf`` is ``-inf``
        below the lower end or ``0`` above the upper end.
    """
    t = np.asarray(t, dtype=float)
    z = (t - mu) / sigma
    logsig = math.log(sigma)
    if abs(xi) < XI_ZERO:
        ez = np.exp(-z)
        return -logsig - z - ez, -ez
    s = 1.0 + xi * z
    inside = s > 0.0
    y = _gev_y_numpy(np.where(inside, z, 0.0), xi)
    ty = np.exp(-y)
    logpdf = np.where(inside, -logsig - (1.0 + xi) * y - ty, -np.inf)
    outside_cdf = -np.inf if xi > 0 else 0.0
    logcdf = np.where(inside, -ty, outside_cdf)
    return logpdf, logcdf


def acc_pmax_loglik_numpy(t, params):
    """Sum over points of the log-density of a product of GEV cdfs.

    Parameters
    ----------
    t : ndarray, shape (n,)
        Points on the GEV scale.
    params : ndarray, shape (k, 3)
        Rows of ``(mu, sigma, xi)``.

    Returns
    -------
    float
        ``-inf`` when any point has zero density.
    """
    k = params.shape[0]
    lp = np.empty((k, t.shape[0]))
    lc = np.empty((k, t.shape[0]))
    for j in range(k):
        lp[j], lc[j] = loggev_terms_numpy(t, params[j, 0], params[j, 1], params[j, 2])
    total = lc.sum(axis=0)
    terms = np.empty_like(lp)
    for j in range(k):
        others = total - lc[j] if np.all(np.isfinite(lc[j])) else _sum_except(lc, j)
        terms[j] = lp[j] + others
    m = terms.max(axis=0)
    if not np.all(np.isfinite(m)):
        return -np.inf
    return float(np.sum(m + np.log(np.exp(terms - m).sum(axis=0))))


def _sum_except(a, j):
    idx = [i for i in range(a.shape[0]) if i != j]
    if not idx:
        return np.zeros(a.shape[1])
    return a[idx].sum(axis=0)


def acc_lmin_logpdf_numpy(x, theta, s1, a1, s2, a2):
    """Log-density of the two-component accelerated l-min law."""
    x = np.asarray(x, dtype=float)
    d = x - theta
    pos = d > 0.0
    dd = np.where(pos, d, 1.0)
    u1 = dd / (s1 * a1)
    u2 = dd / (s2 * a2)
    l1 = -math.log(s1) + (a1 - 1.0) * np.log(u1)
    l2 = -math.log(s2) + (a2 - 1.0) * np.log(u2)
    out = np.logaddexp(l1, l2) - u1**a1 - u2**a2
    return np.where(pos, out, -np.inf)


def acc_lmin_loglik_numpy(x, theta, s1, a1, s2, a2):
    """Sum of :func:`acc_lmin_logpdf_numpy`; ``-inf`` off support."""
    if np.min(x) <= theta:
        return -np.inf
    return float(np.sum(acc_lmin_logpdf_numpy(x, theta, s1, a1, s2, a2)))


def gof_stats_numpy(u, s):
    """KS, CVM and AD statistics from sorted probability-integral values.

    ``s`` holds ``1 - u`` computed without cancellation (the model survival
    function). Sums are exactly rounded because ``A2`` cancels about ``n``
    units down to O(1). ``A2`` is ``nan`` when some value equals 0 or 1.
    """
    n = u.shape[0]
    i = np.arange(1, n + 1, dtype=float)
    d = max(np.max(i / n - u), np.max(u - (i - 1.0) / n))
    w2 = math.fsum(((u - (2.0 * i - 1.0) / (2.0 * n)) ** 2).tolist()) + 1.0 / (12.0 * n)
    if np.any(u <= 0.0) or np.any(s <= 0.0):
        a2 = np.nan
    else:
        terms = (2.0 * i - 1.0) / n * (1.0 + np.log(u) + np.log(s[::-1]))
        a2 = -math.fsum(terms.tolist())
    return float(d), float(w2), float(a2)


# ---------------------------------------------------------------------------
# numba variants
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _loggev_point(t, mu, sigma, xi, logsig):
    z = (t - mu) / sigma
    if abs(xi) < XI_ZERO:
        ez = math.exp(-z)
        return -logsig - z - ez, -ez
    s = 1.0 + xi * z
    if s <= 0.0:
        if xi > 0.0:
            return -np.inf, -np.inf
        return -np.inf, 0.0
    xz = xi * z
    if abs(xi) < XI_SERIES and abs(xz) < 1e-3:
        y = z * (1.0 - xz / 2.0 + xz * xz / 3.0 - xz * xz * xz / 4.0)
    else:
        y = math.log1p(xz) / xi
    ty = math.exp(-y)
    return -logsig - (1.0 + xi) * y - ty, -ty


@njit(cache=True, nogil=True)
def loggev_terms_numba(t, mu, sigma, xi):
    n = t.shape[0]
    lp = np.empty(n)
    lc = np.empty(n)
    logsig = math.log(sigma)
    for i in range(n):
        a, b = _loggev_point(t[i], mu, sigma, xi, logsig)
        lp[i] = a
        lc[i] = b
    return lp, lc


@njit(cache=True, nogil=True)
def acc_pmax_loglik_numba(t, params):
    k = params.shape[0]
    n = t.shape[0]
    lp = np.empty(k)
    lc = np.empty(k)
    logsig = np.empty(k)
    for j in range(k):
        logsig[j] = math.log(params[j, 1])
    terms = np.empty(k)
    total = 0.0
    for i in range(n):
        for j in range(k):
            a, b = _loggev_point(t[i], params[j, 0], params[j, 1], params[j, 2], logsig[j])
            lp[j] = a
            lc[j] = b
        m = -np.inf
        for j in range(k):
            s = lp[j]
            for l in range(k):
                if l != j:
                    s += lc[l]
            terms[j] = s
            if s > m:
                m = s
        if m == -np.inf:
            return -np.inf
        acc = 0.0
        for j in range(k):
            acc += math.exp(terms[j] - m)
        total += m + math.log(acc)
    return total


@njit(cache=True, nogil=True)
def acc_lmin_logpdf_numba(x, theta, s1, a1, s2, a2):
    n = x.shape[0]
    out = np.empty(n)
    c1 = 1.0 / (s1 * a1)
    c2 = 1.0 / (s2 * a2)
    ls1 = math.log(s1)
    ls2 = math.log(s2)
    for i in range(n):
        d = x[i] - theta
        if d <= 0.0:
            out[i] = -np.inf
            continue
        lu1 = math.log(d * c1)
        lu2 = math.log(d * c2)
        l1 = -ls1 + (a1 - 1.0) * lu1
        l2 = -ls2 + (a2 - 1.0) * lu2
        if l1 > l2:
            lse = l1 + math.log1p(math.exp(l2 - l1))
        else:
            lse = l2 + math.log1p(math.exp(l1 - l2))
        out[i] = lse - math.exp(a1 * lu1) - math.exp(a2 * lu2)
    return out


@njit(cache=True, nogil=True)
def acc_lmin_loglik_numba(x, theta, s1, a1, s2, a2):
    n = x.shape[0]
    c1 = 1.0 / (s1 * a1)
    c2 = 1.0 / (s2 * a2)
    ls1 = math.log(s1)
    ls2 = math.log(s2)
    total = 0.0
    for i in range(n):
        d = x[i] - theta
        if d <= 0.0:
            return -np.inf
        lu1 = math.log(d * c1)
        lu2 = math.log(d * c2)
        l1 = -ls1 + (a1 - 1.0) * lu1
        l2 = -ls2 + (a2 - 1.0) * lu2
        if l1 > l2:
            lse = l1 + math.log1p(math.exp(l2 - l1))
        else:
            lse = l2 + math.log1p(math.exp(l1 - l2))
        total += lse - math.exp(a1 * lu1) - math.exp(a2 * lu2)
    return total


@njit(cache=True, nogil=True)
def gof_stats_numba(u, s):
    n = u.shape[0]
    d = 0.0
    # Neumaier-compensated sums
    w2, cw = 0.0, 0.0
    a2, ca = 0.0, 0.0
    bad = False
    for i in range(n):
        fi = i + 1.0
        d = max(d, fi / n - u[i], u[i] - (fi - 1.0) / n)
        r = u[i] - (2.0 * fi - 1.0) / (2.0 * n)
        v = r * r
        t = w2 + v
        if abs(w2) >= abs(v):
            cw += (w2 - t) + v
        else:
            cw += (v - t) + w2
        w2 = t
        ui = u[i]
        sj = s[n - 1 - i]
        if ui <= 0.0 or sj <= 0.0:
            bad = True
        else:
            v = (2.0 * fi - 1.0) / n * (1.0 + math.log(ui) + math.log(sj))
            t = a2 + v
            if abs(a2) >= abs(v):
                ca += (a2 - t) + v
            else:
                ca += (v - t) + a2
            a2 = t
    w2 = w2 + cw + 1.0 / (12.0 * n)
    if bad:
        return d, w2, np.nan
    return d, w2, -(a2 + ca)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    loggev_terms = loggev_terms_numba
    acc_pmax_loglik = acc_pmax_loglik_numba
    acc_lmin_logpdf = acc_lmin_logpdf_numba
    acc_lmin_loglik = acc_lmin_loglik_numba
    gof_stats = gof_stats_numba
else:  # pragma: no cover
    loggev_terms = loggev_terms_numpy
    acc_pmax_loglik = acc_pmax_loglik_numpy
    acc_lmin_logpdf = acc_lmin_logpdf_numpy
    acc_lmin_loglik = acc_lmin_loglik_numpy
    gof_stats = gof_stats_numpy
