"""Maximum-likelihood fitting of single and accelerated extreme value models.

Supported model kinds:

``pmax`` / ``acc-pmax``
    Product of ``k`` log-GEV cdfs for positive maxima.
``pmin`` / ``acc-pmin``
    Reciprocal duals for positive minima; fitted as maxima of ``1/z``.
``left-truncated``
    Log-GEV product with an atom at the jump point ``x0``.
``acc-lmin``
    Minimum of two shifted Weibull sources sharing a threshold ``theta``.

Search runs Nelder-Mead on an unconstrained reparameterization from several
starting points; standard errors come from a central-difference Hessian in
the natural parameters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special

from . import _kernels
from .distributions import AccLMin, Accelerated, Distribution, LeftTruncated, LogGev, from_dict, to_dict
from .errors import DomainError, InvalidParameterError, NonConvergenceError

XI_LO = -1.0 + 1e-6
XI_HI = 5.0
KINDS = ("pmax", "acc-pmax", "pmin", "acc-pmin", "left-truncated", "acc-lmin")


# ---------------------------------------------------------------------------
# likelihoods
# ---------------------------------------------------------------------------


def _positive_data(data) -> np.ndarray:
    z = np.asarray(data, dtype=float).ravel()
    if z.size == 0:
        raise InvalidParameterError("data must be nonempty")
    if np.any(np.isnan(z)):
        raise InvalidParameterError("data contain NaN")
    if np.any(z <= 0) or np.any(~np.isfinite(z)):
        raise DomainError("p-max/p-min models need finite positive data")
    return z


def _param_rows(model) -> np.ndarray:
    if isinstance(model, LogGev):
        return model.as_params()[None, :]
    if isinstance(model, Accelerated) and all(isinstance(c, LogGev) for c in model.components):
        return np.array([c.as_params() for c in model.components])
    arr = np.asarray(model, dtype=float)
    if arr.ndim == 1 and arr.size == 3:
        return arr[None, :]
    if arr.ndim == 2 and arr.shape[1] == 3:
        return arr
    raise InvalidParameterError("expected a LogGev, an Accelerated of LogGev components or (k, 3) parameters")


def loglik_single(params, data) -> float:
    """Log-likelihood of one log-GEV law ``(mu, sigma, xi)`` for positive data.

    Returns ``-inf`` when some point lies outside the support.
    """
    rows = _param_rows(params)
    if rows.shape[0] != 1:
        raise InvalidParameterError("loglik_single takes one component")
    return loglik_accelerated(rows, data)


def loglik_accelerated(model, data) -> float:
    """Log-likelihood of a product of log-GEV cdfs for positive data.

    Each point contributes ``log sum_j pdf_j prod_{l != j} cdf_l`` evaluated
    by log-sum-exp.
    """
    rows = _param_rows(model)
    if np.any(rows[:, 1] <= 0):
        raise InvalidParameterError("sigma must be positive")
    z = _positive_data(data)
    t = np.log(z)
    return float(_kernels.acc_pmax_loglik(t, np.ascontiguousarray(rows)) - t.sum())


def loglik_left_truncated(rows, data, x0: float) -> float:
    """Mixed likelihood: atoms at ``x0`` contribute ``log cdf(x0)``."""
    rows = _param_rows(rows)
    z = _positive_data(data)
    atom = z <= x0
    model = Accelerated([LogGev(*r) for r in rows])
    ll = float(np.sum(atom)) * float(model.logcdf(x0)) if atom.any() else 0.0
    rest = z[~atom]
    if rest.size:
        ll += loglik_accelerated(rows, rest)
    return ll


def acc_lmin_pdf(params, x):
    """Density of the accelerated l-min law; zero for ``x <= theta``.

    ``params`` is an :class:`AccLMin` or ``(theta, sigma1, alpha1, sigma2,
    alpha2)``; sources are reordered so that ``alpha1 <= alpha2``.
    """
    m = params if isinstance(params, AccLMin) else AccLMin(*params)
    if not (m.alpha1 > 1 and m.alpha2 > 1):
        raise InvalidParameterError("acc-lmin density needs alpha1, alpha2 > 1")
    return m.pdf(x)


def loglik_acc_lmin(params, data) -> float:
    x = np.ascontiguousarray(np.asarray(data, dtype=float).ravel())
    return float(_kernels.acc_lmin_loglik(x, *[float(v) for v in params]))


# ---------------------------------------------------------------------------
# fit results
# ---------------------------------------------------------------------------


@dataclass
class FitResult:
    """Outcome of :func:`fit`.

    ``std_errors`` are ``nan`` (serialized as ``null``) when the observed
    information is not positive-definite.
    """

    kind: str
    model: Distribution
    estimates: dict
    std_errors: dict
    loglik: float
    converged: bool
    n_restarts_used: int
    gradient_norm: float
    covariance: np.ndarray | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        if isinstance(self.model, AccLMin):
            return 2
        base = self.model.base if isinstance(self.model, LeftTruncated) else self.model
        return base.k

    @property
    def orientation(self) -> str:
        return self.model.orientation

    @property
    def params(self) -> np.ndarray:
        return np.array(list(self.estimates.values()))

    @property
    def se(self) -> np.ndarray:
        return np.array(list(self.std_errors.values()))

    def to_dict(self) -> dict:
        clean = lambda v: None if v is None or not np.isfinite(v) else float(v)
        return {
            "kind": self.kind,
            "model": to_dict(self.model),
            "estimates": {k: clean(v) for k, v in self.estimates.items()},
            "std_errors": {k: clean(v) for k, v in self.std_errors.items()},
            "loglik": clean(self.loglik),
            "converged": bool(self.converged),
            "n_restarts_used": int(self.n_restarts_used),
            "gradient_norm": clean(self.gradient_norm),
            "k": self.k,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FitResult":
        try:
            model = from_dict(d["model"])
            nanify = lambda m: {k: (math.nan if v is None else float(v)) for k, v in m.items()}
            return cls(
                kind=d.get("kind", "acc-pmax"),
                model=model,
                estimates=nanify(d.get("estimates", {})),
                std_errors=nanify(d.get("std_errors", {})),
                loglik=math.nan if d.get("loglik") is None else float(d["loglik"]),
                converged=bool(d.get("converged", False)),
                n_restarts_used=int(d.get("n_restarts_used", 0)),
                gradient_norm=math.nan if d.get("gradient_norm") is None else float(d["gradient_norm"]),
                notes=list(d.get("notes", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameterError(f"malformed fit JSON: {exc}") from None


# ---------------------------------------------------------------------------
# numerical derivatives
# ---------------------------------------------------------------------------


def _steps(x: np.ndarray, rel: float) -> np.ndarray:
    return rel * np.maximum(1.0, np.abs(x))


def num_gradient(f: Callable[[np.ndarray], float], x, rel: float = 1e-6) -> np.ndarray:
    """Central-difference gradient."""
    x = np.asarray(x, dtype=float)
    h = _steps(x, rel)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h[i]
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h[i])
    return g


def num_hessian(f: Callable[[np.ndarray], float], x, rel: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian (four-point off-diagonal rule).

    Entries touching an infeasible neighbour come out non-finite.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    h = _steps(x, rel)
    f0 = f(x)
    H = np.empty((n, n))
    with np.errstate(invalid="ignore", over="ignore"):
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = h[i]
            H[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / h[i] ** 2
            for j in range(i):
                ej = np.zeros(n)
                ej[j] = h[j]
                v = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)) / (4.0 * h[i] * h[j])
                H[i, j] = H[j, i] = v
    return H


def _covariance(H: np.ndarray) -> np.ndarray | None:
    info = -0.5 * (H + H.T)
    if not np.all(np.isfinite(info)):
        return None
    try:
        c = np.linalg.cholesky(info)
    except np.linalg.LinAlgError:
        return None
    inv = np.linalg.inv(c)
    return inv.T @ inv


# ---------------------------------------------------------------------------
# starting values
# ---------------------------------------------------------------------------


def pwm_gev(t: np.ndarray) -> tuple[float, float, float]:
    """Probability-weighted-moment GEV estimates ``(mu, sigma, xi)``."""
    x = np.sort(np.asarray(t, dtype=float))
    n = x.size
    if n < 3:
        s = float(np.std(x)) or 1.0
        return float(np.mean(x)), s, 0.0
    j = np.arange(n)
    b0 = x.mean()
    b1 = np.sum(j / (n - 1) * x) / n
    b2 = np.sum(j * (j - 1) / ((n - 1) * (n - 2)) * x) / n
    denom = 3.0 * b2 - b0
    if denom == 0 or (2.0 * b1 - b0) == 0:
        return float(b0), float(np.std(x)) or 1.0, 0.0
    c = (2.0 * b1 - b0) / denom - math.log(2.0) / math.log(3.0)
    kk = 7.8590 * c + 2.9554 * c * c
    kk = float(np.clip(kk, -0.9, 0.95))
    if abs(kk) < 1e-8:
        sigma = (2.0 * b1 - b0) / math.log(2.0)
        mu = b0 - 0.5772156649015329 * sigma
    else:
        g = math.gamma(1.0 + kk)
        sigma = (2.0 * b1 - b0) * kk / (g * (1.0 - 2.0 ** (-kk)))
        mu = b0 + sigma * (g - 1.0) / kk
    sigma = abs(sigma) if sigma != 0 else float(np.std(x)) or 1.0
    return float(mu), float(sigma), float(np.clip(-kk, XI_LO + 0.05, XI_HI - 0.05))


# ---------------------------------------------------------------------------
# reparameterized search for log-GEV products
# ---------------------------------------------------------------------------


def _xi_to_u(xi):
    p = (np.clip(xi, XI_LO + 1e-9, XI_HI - 1e-9) - XI_LO) / (XI_HI - XI_LO)
    return np.log(p) - np.log1p(-p)


def _u_to_xi(u):
    return XI_LO + (XI_HI - XI_LO) * special.expit(u)


def _pack(rows: np.ndarray) -> np.ndarray:
    rows = np.atleast_2d(rows)
    return np.column_stack([rows[:, 0], np.log(rows[:, 1]), _xi_to_u(rows[:, 2])]).ravel()


def _unpack(v: np.ndarray) -> np.ndarray:
    r = np.asarray(v, dtype=float).reshape(-1, 3)
    return np.column_stack([r[:, 0], np.exp(r[:, 1]), _u_to_xi(r[:, 2])])


_BIG = 1e300


def _nelder_mead(obj, x0, tol, maxfev):
    res = optimize.minimize(
        obj,
        x0,
        method="Nelder-Mead",
        options={"xatol": tol, "fatol": tol, "maxfev": maxfev, "adaptive": x0.size > 4},
    )
    return res.x, float(res.fun)


def _search(obj, starts: list[np.ndarray], tol: float, refine: int = 3):
    """Coarse search from every start, then refine the best few to tolerance."""
    coarse = []
    for i, s in enumerate(starts):
        f0 = obj(s)
        if not np.isfinite(f0) or f0 >= _BIG:
            continue
        x, f = _nelder_mead(obj, s, 1e-6, 400 * s.size)
        coarse.append((f, i, x))
    if not coarse:
        return None, math.inf, 0
    coarse.sort(key=lambda r: (r[0], r[1]))
    best_x, best_f = coarse[0][2], coarse[0][0]
    for f, i, x in coarse[:refine]:
        for _ in range(4):
            x_new, f_new = _nelder_mead(obj, x, tol, 4000 * x.size)
            done = f - f_new < tol
            x, f = x_new, f_new
            if done:
                break
        if f < best_f:
            best_x, best_f = x, f
    return best_x, best_f, len(coarse)


def _pmax_starts(t: np.ndarray, k: int, restarts: int, rng: np.random.Generator) -> list[np.ndarray]:
    mu, sig, xi = pwm_gev(t)
    sd = float(np.std(t)) or 1.0
    single = np.array([mu, sig, xi])
    starts = []
    if k == 1:
        starts.append(single[None, :])
    else:
        # single fit plus negligible Gumbel components far below the data
        low = [[float(t.min()) - (3.0 + j) * sd, 0.5 * sd, 0.0] for j in range(k - 1)]
        starts.append(np.vstack([single] + low))
        # split-sample: fit each quantile slice separately
        parts = np.array_split(np.sort(t), k)
        starts.append(np.array([pwm_gev(p) for p in parts[::-1]]))
        # upper slices with the lower part shifted down
        starts.append(np.array([[mu + 0.5 * sig * (k - 1 - j), sig, xi] for j in range(k)]))
    while len(starts) < max(restarts, 1):
        base = starts[len(starts) % min(len(starts), 3)]
        pert = base.copy()
        pert[:, 0] += rng.normal(0.0, 0.5 * sd, k)
        pert[:, 1] *= np.exp(rng.normal(0.0, 0.3, k))
        pert[:, 2] = np.clip(pert[:, 2] + rng.normal(0.0, 0.25, k), XI_LO + 0.02, 2.0)
        starts.append(pert)
    return [_pack(s) for s in starts[: max(restarts, 1)]]


def _feasible_start(packed: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Widen scales of a start until every point has positive density."""
    rows = _unpack(packed)
    for _ in range(60):
        if np.isfinite(_kernels.acc_pmax_loglik(t, rows)):
            break
        rows[:, 1] *= 1.5
        rows[:, 2] *= 0.7
    return _pack(rows)


def _fit_pmax_rows(t: np.ndarray, k: int, restarts: int, seed, tol: float, extra_ll=None):
    """Maximize the t-scale log-likelihood; returns rows, ll_t and starts used."""
    n = t.size

    def nll(v):
        rows = _unpack(v)
        ll = _kernels.acc_pmax_loglik(t, rows) if extra_ll is None else extra_ll(rows)
        if not np.isfinite(ll):
            return _BIG
        return -ll / n

    rng = np.random.default_rng(seed)
    starts = [_feasible_start(s, t) for s in _pmax_starts(t, k, restarts, rng)]
    x, f, used = _search(nll, starts, tol)
    if x is None:
        return None, -math.inf, used
    return _unpack(x), -f * n, used


def _names(k: int) -> list[str]:
    return [f"{p}{j}" for j in range(1, k + 1) for p in ("mu", "sigma", "xi")]


def _finish(kind, model, names, theta, ll, natural_ll, used, notes) -> FitResult:
    grad = num_gradient(natural_ll, theta)
    gnorm = float(np.linalg.norm(grad))
    cov = _covariance(num_hessian(natural_ll, theta))
    if cov is None:
        se = np.full(theta.size, np.nan)
        notes.append("observed information not positive-definite; standard errors withheld")
    else:
        se = np.sqrt(np.diag(cov))
    converged = bool(np.isfinite(ll) and cov is not None and gnorm <= 1e-4 * (1.0 + abs(ll)))
    if not converged and cov is not None:
        notes.append(f"gradient norm {gnorm:.3g} above tolerance")
    return FitResult(
        kind,
        model,
        dict(zip(names, map(float, theta))),
        dict(zip(names, map(float, se))),
        float(ll),
        converged,
        used,
        gnorm,
        cov,
        notes,
    )


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    return rows[np.argsort(-rows[:, 0], kind="stable")]


def _fit_pmax_family(kind, z, k, restarts, seed, tol, orientation):
    y = z if orientation == "max" else 1.0 / z
    t = np.log(y)
    if np.ptp(t) == 0:
        raise NonConvergenceError("all observations are equal; the likelihood has no maximum")
    rows, _, used = _fit_pmax_rows(t, k, restarts, seed, tol)
    if rows is None:
        raise NonConvergenceError("no starting point gave a finite likelihood")
    rows = _sorted_rows(rows)
    # z-scale log-likelihood; the reciprocal map adds the same jacobian for minima
    jac = -t.sum() if orientation == "max" else -t.sum() - 2.0 * np.log(z).sum()

    def natural_ll(theta):
        r = theta.reshape(-1, 3)
        if np.any(r[:, 1] <= 0):
            return -math.inf
        return float(_kernels.acc_pmax_loglik(t, np.ascontiguousarray(r))) + jac

    theta = rows.ravel()
    ll = natural_ll(theta)
    notes = []
    if np.any(rows[:, 2] < XI_LO + 1e-3):
        notes.append("xi at the lower search bound: the likelihood maximum may not exist for xi <= -1")
    if orientation == "max":
        model = Accelerated([LogGev(*r) for r in rows])
    else:
        model = Accelerated([LogGev(-r[0], r[1], r[2]) for r in rows], "min")
        theta = np.column_stack([-rows[:, 0], rows[:, 1:]]).ravel()
        flip = np.tile([-1.0, 1.0, 1.0], k)
        base_ll = natural_ll
        natural_ll = lambda th: base_ll(th * flip)
    return _finish(kind, model, _names(k), theta, ll, natural_ll, used, notes)


def _fit_left_truncated(z, k, restarts, seed, tol, x0):
    zmin = float(z.min())
    notes = []
    if x0 is None:
        if np.sum(z == zmin) >= 2:
            x0 = zmin
            notes.append(f"jump point estimated as the repeated sample minimum {zmin!r}")
        else:
            raise InvalidParameterError("no repeated minimum found; pass the jump point x0 explicitly")
    x0 = float(x0)
    if x0 <= 0:
        raise DomainError("jump point must be positive")
    atom = z <= x0
    n0 = int(atom.sum())
    t_all = np.log(z)
    t_rest = np.log(z[~atom])
    tx0 = math.log(x0)
    if t_rest.size == 0:
        raise NonConvergenceError("all observations sit at the jump point")

    def t_ll(rows):
        rows = np.ascontiguousarray(rows)
        ll = _kernels.acc_pmax_loglik(t_rest, rows)
        if n0:
            lc = sum(float(_kernels.loggev_terms(np.array([tx0]), *r)[1][0]) for r in rows)
            ll += n0 * lc
        return ll

    rows, _, used = _fit_pmax_rows(t_all if t_rest.size < 3 else t_rest, k, restarts, seed, tol, extra_ll=t_ll)
    if rows is None:
        raise NonConvergenceError("no starting point gave a finite likelihood")
    rows = _sorted_rows(rows)
    jac = -t_rest.sum()

    def natural_ll(theta):
        r = theta.reshape(-1, 3)
        if np.any(r[:, 1] <= 0):
            return -math.inf
        return float(t_ll(r)) + jac

    theta = rows.ravel()
    model = LeftTruncated(Accelerated([LogGev(*r) for r in rows]), x0)
    res = _finish("left-truncated", model, _names(k), theta, natural_ll(theta), natural_ll, used, notes)
    res.estimates["x0"] = x0
    res.std_errors["x0"] = math.nan
    return res


# ---------------------------------------------------------------------------
# accelerated l-min
# ---------------------------------------------------------------------------

_LMIN_NAMES = ["theta", "sigma1", "alpha1", "sigma2", "alpha2"]


def _lmin_unpack(v, xmin):
    return np.array([xmin - math.exp(v[0]), math.exp(v[1]), 1.0 + math.exp(v[2]), math.exp(v[3]), 1.0 + math.exp(v[4])])


def _lmin_pack(p, xmin):
    th, s1, a1, s2, a2 = p
    return np.array([math.log(xmin - th), math.log(s1), math.log(a1 - 1.0), math.log(s2), math.log(a2 - 1.0)])


def _weibull_start(d: np.ndarray) -> tuple[float, float]:
    """Shape and scale of a Weibull fit by the log-log quantile regression."""
    d = np.sort(d)
    n = d.size
    p = (np.arange(1, n + 1) - 0.3) / (n + 0.4)
    y = np.log(-np.log1p(-p))
    x = np.log(d)
    a, b = np.polyfit(x, y, 1)
    a = max(float(a), 1.05)
    scale = math.exp(-b / a)
    return a, scale


def _lmin_starts(x: np.ndarray, restarts: int, rng) -> list[np.ndarray]:
    xmin = float(x.min())
    span = float(np.ptp(x)) or 1.0
    starts = []
    for gap in (0.05, 0.2, 0.5):
        th = xmin - gap * span / math.sqrt(x.size) - 1e-9 * span
        a, sc = _weibull_start(x - th)
        lo, hi = max(a * 0.7, 1.05), a * 1.6
        starts.append(np.array([th, sc / lo, lo, 1.3 * sc / hi, hi]))
        # single-source fit plus a weak steeper source
        starts.append(np.array([th, sc / a, a, 2.0 * sc / (2.0 * a), 2.0 * a]))
    while len(starts) < max(restarts, 1):
        base = starts[len(starts) % 6].copy()
        base[1] *= math.exp(rng.normal(0, 0.3))
        base[3] *= math.exp(rng.normal(0, 0.3))
        base[2] = 1.0 + (base[2] - 1.0) * math.exp(rng.normal(0, 0.3))
        base[4] = 1.0 + (base[4] - 1.0) * math.exp(rng.normal(0, 0.3))
        starts.append(base)
    return [_lmin_pack(s, xmin) for s in starts[: max(restarts, 1)]]


def _sort_lmin(p: np.ndarray) -> np.ndarray:
    th, s1, a1, s2, a2 = p
    if a1 > a2:
        s1, a1, s2, a2 = s2, a2, s1, a1
    return np.array([th, s1, a1, s2, a2])


def _fit_acc_lmin(x, restarts, seed, tol):
    x = np.ascontiguousarray(np.asarray(x, dtype=float).ravel())
    if x.size < 5:
        raise InvalidParameterError("acc-lmin fitting needs at least 5 observations")
    if np.ptp(x) == 0:
        raise NonConvergenceError("all observations are equal; the likelihood has no maximum")
    xmin = float(x.min())
    n = x.size

    def nll(v):
        if np.any(np.abs(v) > 50):
            return _BIG
        p = _lmin_unpack(v, xmin)
        ll = _kernels.acc_lmin_loglik(x, *p)
        return -ll / n if np.isfinite(ll) else _BIG

    rng = np.random.default_rng(seed)
    v, f, used = _search(nll, _lmin_starts(x, restarts, rng), tol)
    if v is None:
        raise NonConvergenceError("no starting point gave a finite likelihood")
    theta = _sort_lmin(_lmin_unpack(v, xmin))

    def natural_ll(p):
        if p[1] <= 0 or p[3] <= 0 or p[2] <= 0 or p[4] <= 0:
            return -math.inf
        return float(_kernels.acc_lmin_loglik(x, *p))

    notes = []
    if theta[2] <= 2.0:
        notes.append("alpha1 <= 2: the threshold is a non-regular parameter; its standard error is unreliable")
    return _finish("acc-lmin", AccLMin(*theta), list(_LMIN_NAMES), theta, -f * n, natural_ll, used, notes)


# ---------------------------------------------------------------------------
# public entry point
# ---------------------------------------------------------------------------


def fit(
    kind: str,
    data,
    k: int | None = None,
    restarts: int = 20,
    seed=42,
    tol: float = 1e-10,
    x0: float | None = None,
) -> FitResult:
    """Fit a model by maximum likelihood.

    Parameters
    ----------
    kind : {"pmax", "acc-pmax", "pmin", "acc-pmin", "left-truncated", "acc-lmin"}
    data : array_like
        Observations; positive for the p-max/p-min kinds.
    k : int, optional
        Number of components: 1 for ``pmax``/``pmin``, default 2 for the
        accelerated kinds and 1 for ``left-truncated``.
    restarts : int
        Number of starting points.
    seed : int
        Seed for randomized starting points.
    tol : float
        Simplex tolerance of the final refinement.
    x0 : float, optional
        Jump point of a left-truncated model; estimated from a repeated
        sample minimum when omitted.

    Returns
    -------
    FitResult
        ``converged`` is false when the gradient or curvature checks fail;
        the best point found is still reported.

    Raises
    ------
    NonConvergenceError
        Degenerate data or no feasible starting point.
    """
    kind = str(kind).lower()
    if kind not in KINDS:
        raise InvalidParameterError(f"unknown model kind {kind!r}; expected one of {KINDS}")
    if kind == "acc-lmin":
        if k not in (None, 2):
            raise InvalidParameterError("acc-lmin has exactly two sources")
        return _fit_acc_lmin(data, restarts, seed, tol)
    if kind in ("pmax", "pmin"):
        if k not in (None, 1):
            raise InvalidParameterError(f"{kind} has one component; use acc-{kind} for k > 1")
        k = 1
    elif k is None:
        k = 1 if kind == "left-truncated" else 2
    if int(k) < 1:
        raise InvalidParameterError("k must be at least 1")
    z = _positive_data(data)
    if kind == "left-truncated":
        return _fit_left_truncated(z, int(k), restarts, seed, tol, x0)
    orientation = "min" if kind.endswith("pmin") else "max"
    return _fit_pmax_family(kind, z, int(k), restarts, seed, tol, orientation)


# ---------------------------------------------------------------------------
# theory checks for the accelerated l-min estimator
# ---------------------------------------------------------------------------


def expected_information(params, include_theta: bool | None = None, nodes: int = 400) -> np.ndarray:
    """Per-observation expected information of the acc-lmin law.

    Entries ``-E[d^2 log h / d p_i d p_j]`` over ``(theta, sigma1, alpha1,
    sigma2, alpha2)``, or over the last four when ``include_theta`` is
    false (the default when ``alpha1 <= 2``, where the threshold entry is
    infinite). The expectation is a Gauss-Legendre sum on the probability
    scale.
    """
    m = params if isinstance(params, AccLMin) else AccLMin(*params)
    p0 = np.array(m.params())
    if include_theta is None:
        include_theta = m.alpha1 > 2.0
    u, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (u + 1.0)
    w = 0.5 * w
    xq = np.asarray(m.quantile(u), dtype=float)
    idx = list(range(5)) if include_theta else list(range(1, 5))

    def logh(p):
        return np.asarray(_kernels.acc_lmin_logpdf(np.ascontiguousarray(xq), *p), dtype=float)

    h = _steps(p0, 1e-4)
    k = len(idx)
    M = np.empty((k, k))
    f0 = logh(p0)
    for a, i in enumerate(idx):
        ei = np.zeros(5)
        ei[i] = h[i]
        d2 = (logh(p0 + ei) - 2.0 * f0 + logh(p0 - ei)) / h[i] ** 2
        M[a, a] = -np.sum(w * d2)
        for b in range(a):
            j = idx[b]
            ej = np.zeros(5)
            ej[j] = h[j]
            d2 = (logh(p0 + ei + ej) - logh(p0 + ei - ej) - logh(p0 - ei + ej) + logh(p0 - ei - ej)) / (4.0 * h[i] * h[j])
            M[a, b] = M[b, a] = -np.sum(w * d2)
    return M


def check_theorem_conditions(alpha1: float, alpha2: float) -> list[str]:
    """Return the satisfied condition branches ("i", "ii").

    Raises
    ------
    InvalidParameterError
        Naming the violated inequalities when neither branch holds.
    """
    a1, a2 = sorted((float(alpha1), float(alpha2)))
    branches = []
    if a1 > 1 and (a1 == a2 or a1 < a2 - 1):
        branches.append("i")
    if a1 > 2 and a1 < a2 - 2:
        branches.append("ii")
    if not branches:
        failed = []
        if not a1 > 1:
            failed.append(f"alpha1 > 1 fails ({a1:g})")
        if a1 != a2:
            failed.append(f"alpha1 = alpha2 fails ({a1:g} != {a2:g})")
        if not a1 < a2 - 1:
            failed.append(f"alpha1 < alpha2 - 1 fails ({a1:g} >= {a2 - 1:g})")
        if not a1 > 2:
            failed.append(f"alpha1 > 2 fails ({a1:g})")
        elif not a1 < a2 - 2:
            failed.append(f"alpha1 < alpha2 - 2 fails ({a1:g} >= {a2 - 2:g})")
        raise InvalidParameterError("parameters violate both condition branches: " + "; ".join(failed))
    return branches


@dataclass
class ValidationReport:
    sample_sizes: list[int]
    rmse: dict
    coverage: dict | None
    rmse_decreasing: dict
    branches: list[str]
    n_failed: dict

    def to_dict(self) -> dict:
        return {
            "sample_sizes": self.sample_sizes,
            "rmse": self.rmse,
            "coverage": self.coverage,
            "rmse_decreasing": self.rmse_decreasing,
            "branches": self.branches,
            "n_failed": self.n_failed,
        }


def validate_theorems_2_3(
    alpha1: float,
    alpha2: float,
    sigma1: float = 1.0,
    sigma2: float = 1.0,
    theta: float = 0.0,
    sample_sizes: Sequence[int] = (500, 2000, 8000),
    reps: int = 200,
    seed: int = 0,
    restarts: int = 3,
    level: float = 0.95,
) -> ValidationReport:
    """Monte Carlo check of consistency and asymptotic normality.

    For each sample size, simulates ``reps`` datasets, fits ``acc-lmin`` and
    records per-parameter RMSE. When the stricter branch holds, also
    records coverage of Wald intervals built from the expected information
    at the estimate.
    """
    branches = check_theorem_conditions(alpha1, alpha2)
    truth_model = AccLMin(theta, sigma1, alpha1, sigma2, alpha2)
    truth = np.array(truth_model.params())
    zq = float(special.ndtri(0.5 + level / 2.0))
    do_cov = "ii" in branches
    rmse, cover, failed = {}, {}, {}
    for si, n in enumerate(sample_sizes):
        err = []
        hits = []
        nfail = 0
        for r in range(reps):
            ss = np.random.SeedSequence([int(seed), si, r])
            x = truth_model.sample(int(n), ss)
            try:
                res = fit("acc-lmin", x, restarts=restarts, seed=ss.generate_state(1)[0])
            except NonConvergenceError:
                nfail += 1
                continue
            est = res.params
            err.append(est - truth)
            if do_cov:
                try:
                    # extreme estimates can give a non-PD information; nan SEs count as misses
                    with np.errstate(all="ignore"):
                        M = expected_information(est, include_theta=True)
                        se = np.sqrt(np.diag(np.linalg.inv(M)) / n)
                    hits.append(np.abs(est - truth) <= zq * se)
                except (np.linalg.LinAlgError, InvalidParameterError):
                    hits.append(np.zeros(5, dtype=bool))
        err = np.array(err)
        rmse[int(n)] = dict(zip(_LMIN_NAMES, map(float, np.sqrt(np.mean(err**2, axis=0)))))
        if do_cov:
            cover[int(n)] = dict(zip(_LMIN_NAMES, map(float, np.mean(hits, axis=0))))
        failed[int(n)] = nfail
    sizes = [int(n) for n in sample_sizes]
    decreasing = {
        name: all(rmse[a][name] > rmse[b][name] for a, b in zip(sizes, sizes[1:])) for name in _LMIN_NAMES
    }
    return ValidationReport(sizes, rmse, cover if do_cov else None, decreasing, branches, failed)
