"""Power-normalized extreme value laws.

Provides the six p-max stable types under a power-type transform, the log-GEV
parameterization, products of component laws (max or min orientation), the
left-truncated limit with an atom at the jump point, the two-component
accelerated l-min law, and JSON round-tripping of model objects.

All ``cdf``/``pdf``/``quantile`` methods accept scalars or arrays and return
the same shape.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidParameterError, NumericError

KINDS = ("H1", "H2", "H3", "H4", "H5", "H6")
_POSITIVE_KINDS = ("H1", "H2", "H5")


def _rng(seed):
    return np.random.default_rng(seed)


def _seed_seq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, np.random.Generator):
        return np.random.SeedSequence(int(seed.integers(2**63)))
    return np.random.SeedSequence(seed)


def _arr(x):
    a = np.asarray(x, dtype=float)
    return np.atleast_1d(a), a.ndim == 0


def _out(a, scalar):
    return float(a[0]) if scalar else a


def _check_positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise InvalidParameterError(f"{name} must be a positive finite real, got {value!r}")


def _check_prob(p):
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0) | ~(p < 1)):
        raise InvalidParameterError("probabilities must lie strictly inside (0, 1)")


class Distribution(ABC):
    """Common interface of every law in the package."""

    orientation = "max"

    @abstractmethod
    def logcdf(self, x): ...

    @abstractmethod
    def logpdf(self, x): ...

    @abstractmethod
    def quantile(self, p): ...

    @abstractmethod
    def sample(self, n: int, seed=None) -> np.ndarray: ...

    @property
    @abstractmethod
    def support(self) -> tuple[float, float]: ...

    def cdf(self, x):
        a, s = _arr(x)
        return _out(np.exp(np.asarray(self.logcdf(a), dtype=float)), s)

    def pdf(self, x):
        a, s = _arr(x)
        return _out(np.exp(np.asarray(self.logpdf(a), dtype=float)), s)

    def log_pdf(self, x):
        return self.logpdf(x)

    def sf(self, x):
        a, s = _arr(x)
        return _out(-np.expm1(np.asarray(self.logcdf(a), dtype=float)), s)


# ---------------------------------------------------------------------------
# six p-max stable types
# ---------------------------------------------------------------------------


class PStable(Distribution):
    """One of the six p-max stable types under ``x -> A |x|^B sign(x)``.

    Parameters
    ----------
    kind : {"H1", "H2", "H3", "H4", "H5", "H6"}
        Type label.
    alpha : float, default 1
        Tail parameter. Ignored (fixed at 1) for H5 and H6.
    A, B : float, default 1
        Scale and power of the p-type transform.
    """

    def __init__(self, kind: str, alpha: float = 1.0, A: float = 1.0, B: float = 1.0):
        kind = str(kind).upper()
        if kind not in KINDS:
            raise InvalidParameterError(f"unknown p-max type {kind!r}; expected one of {KINDS}")
        if kind in ("H5", "H6"):
            alpha = 1.0
        _check_positive("alpha", alpha)
        _check_positive("A", A)
        _check_positive("B", B)
        self.kind, self.alpha, self.A, self.B = kind, float(alpha), float(A), float(B)

    def __repr__(self):
        return f"PStable({self.kind!r}, alpha={self.alpha}, A={self.A}, B={self.B})"

    def __eq__(self, other):
        return isinstance(other, PStable) and (self.kind, self.alpha, self.A, self.B) == (
            other.kind,
            other.alpha,
            other.A,
            other.B,
        )

    @property
    def positive(self) -> bool:
        return self.kind in _POSITIVE_KINDS

    def _y_support(self):
        return {
            "H1": (1.0, math.inf),
            "H2": (0.0, 1.0),
            "H3": (-1.0, 0.0),
            "H4": (-math.inf, -1.0),
            "H5": (0.0, math.inf),
            "H6": (-math.inf, 0.0),
        }[self.kind]

    def transform(self, x):
        """Apply ``A |x|^B sign(x)``."""
        x = np.asarray(x, dtype=float)
        return np.sign(x) * self.A * np.abs(x) ** self.B

    def inverse_transform(self, y):
        y = np.asarray(y, dtype=float)
        return np.sign(y) * (np.abs(y) / self.A) ** (1.0 / self.B)

    @property
    def support(self):
        lo, hi = self._y_support()
        return float(self.inverse_transform(lo)), float(self.inverse_transform(hi))

    def _base_logcdf(self, y):
        a = self.alpha
        out = np.empty_like(y)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.kind == "H1":
                m = y > 1.0
                out[:] = -np.inf
                out[m] = -np.log(y[m]) ** (-a)
            elif self.kind == "H2":
                out[:] = 0.0
                out[y <= 0.0] = -np.inf
                m = (y > 0.0) & (y < 1.0)
                out[m] = -(-np.log(y[m])) ** a
            elif self.kind == "H3":
                out[:] = 0.0
                out[y <= -1.0] = -np.inf
                m = (y > -1.0) & (y < 0.0)
                out[m] = -(-np.log(-y[m])) ** (-a)
            elif self.kind == "H4":
                out[:] = 0.0
                m = y < -1.0
                out[m] = -np.log(-y[m]) ** a
            elif self.kind == "H5":
                out[:] = -np.inf
                m = y > 0.0
                out[m] = -1.0 / y[m]
            else:
                out[:] = 0.0
                m = y <= 0.0
                out[m] = y[m]
        return out

    def _base_logpdf(self, y):
        a = self.alpha
        out = np.full_like(y, -np.inf)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.kind == "H1":
                m = y > 1.0
                w = np.log(y[m])
                out[m] = -(w ** (-a)) + math.log(a) - (a + 1.0) * np.log(w) - w
            elif self.kind == "H2":
                m = (y > 0.0) & (y < 1.0)
                w = -np.log(y[m])
                out[m] = -(w**a) + math.log(a) + (a - 1.0) * np.log(w) + w
            elif self.kind == "H3":
                m = (y > -1.0) & (y < 0.0)
                w = -np.log(-y[m])
                out[m] = -(w ** (-a)) + math.log(a) - (a + 1.0) * np.log(w) - np.log(-y[m])
            elif self.kind == "H4":
                m = y < -1.0
                w = np.log(-y[m])
                out[m] = -(w**a) + math.log(a) + (a - 1.0) * np.log(w) - w
            elif self.kind == "H5":
                m = y > 0.0
                out[m] = -1.0 / y[m] - 2.0 * np.log(y[m])
            else:
                m = y < 0.0
                out[m] = y[m]
        return out

    def _base_quantile(self, p):
        a = self.alpha
        lp = -np.log(p)
        if self.kind == "H1":
            return np.exp(lp ** (-1.0 / a))
        if self.kind == "H2":
            return np.exp(-(lp ** (1.0 / a)))
        if self.kind == "H3":
            return -np.exp(-(lp ** (-1.0 / a)))
        if self.kind == "H4":
            return -np.exp(lp ** (1.0 / a))
        if self.kind == "H5":
            return 1.0 / lp
        return np.log(p)

    def logcdf(self, x):
        a, s = _arr(x)
        return _out(self._base_logcdf(self.transform(a)), s)

    def logpdf(self, x):
        a, s = _arr(x)
        y = self.transform(a)
        with np.errstate(divide="ignore"):
            jac = math.log(self.A * self.B) + (self.B - 1.0) * np.log(np.abs(a))
        out = self._base_logpdf(y) + jac
        out[~np.isfinite(out)] = -np.inf
        return _out(out, s)

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        return _out(self.inverse_transform(self._base_quantile(a)), s)

    def sample(self, n, seed=None):
        u = 1.0 - _rng(seed).random(int(n))
        u = np.clip(u, np.finfo(float).tiny, 1.0 - 2.0**-53)
        return np.asarray(self.quantile(u))


# ---------------------------------------------------------------------------
# GEV family, linear and log scale
# ---------------------------------------------------------------------------


def _gev_quantile_z(p, xi):
    llp = np.log(-np.log(p))
    if abs(xi) < _kernels.XI_ZERO:
        return -llp
    return np.expm1(-xi * llp) / xi


class Gev(Distribution):
    """Generalized extreme value law on the real line.

    Parameters
    ----------
    mu : float
        Location.
    sigma : float
        Scale, positive.
    xi : float
        Shape; ``|xi| < 1e-12`` selects the Gumbel branch.
    """

    def __init__(self, mu: float, sigma: float, xi: float):
        _check_positive("sigma", sigma)
        if not (np.isfinite(mu) and np.isfinite(xi)):
            raise InvalidParameterError("mu and xi must be finite")
        self.mu, self.sigma, self.xi = float(mu), float(sigma), float(xi)

    def __repr__(self):
        return f"{type(self).__name__}(mu={self.mu}, sigma={self.sigma}, xi={self.xi})"

    def __eq__(self, other):
        return type(other) is type(self) and (self.mu, self.sigma, self.xi) == (
            other.mu,
            other.sigma,
            other.xi,
        )

    def _t_support(self):
        if abs(self.xi) < _kernels.XI_ZERO:
            return -math.inf, math.inf
        edge = self.mu - self.sigma / self.xi
        return (edge, math.inf) if self.xi > 0 else (-math.inf, edge)

    @property
    def support(self):
        return self._t_support()

    def _terms(self, t):
        return _kernels.loggev_terms(np.ascontiguousarray(t, dtype=float), self.mu, self.sigma, self.xi)

    def logcdf(self, x):
        a, s = _arr(x)
        return _out(self._terms(a)[1], s)

    def logpdf(self, x):
        a, s = _arr(x)
        return _out(self._terms(a)[0], s)

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        return _out(self.mu + self.sigma * _gev_quantile_z(a, self.xi), s)

    def sample(self, n, seed=None):
        u = 1.0 - _rng(seed).random(int(n))
        u = np.clip(u, np.finfo(float).tiny, 1.0 - 2.0**-53)
        return np.asarray(self.quantile(u))


def frechet(alpha: float) -> Gev:
    """Frechet law ``exp(-x^-alpha)`` as a GEV."""
    _check_positive("alpha", alpha)
    return Gev(1.0, 1.0 / alpha, 1.0 / alpha)


def weibull_max(alpha: float) -> Gev:
    """Reversed Weibull law ``exp(-(-x)^alpha)`` for ``x < 0`` as a GEV."""
    _check_positive("alpha", alpha)
    return Gev(-1.0, 1.0 / alpha, -1.0 / alpha)


def gumbel() -> Gev:
    return Gev(0.0, 1.0, 0.0)


class LogGev(Gev):
    """Log-GEV law: ``cdf(x) = G_xi(log x; mu, sigma)`` for ``x > 0``.

    Covers the positive-support p-max stable types in one parameterization.
    """

    @property
    def support(self):
        lo, hi = self._t_support()
        return math.exp(lo) if lo > -math.inf else 0.0, math.exp(hi) if hi < math.inf else math.inf

    def _log_of(self, a):
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.log(np.where(a > 0, a, np.nan))
        return t

    def logcdf(self, x):
        a, s = _arr(x)
        t = self._log_of(a)
        ok = a > 0
        out = np.full(a.shape, -np.inf)
        if np.any(ok):
            out[ok] = self._terms(t[ok])[1]
        return _out(out, s)

    def logpdf(self, x):
        a, s = _arr(x)
        t = self._log_of(a)
        ok = a > 0
        out = np.full(a.shape, -np.inf)
        if np.any(ok):
            out[ok] = self._terms(t[ok])[0] - t[ok]
        return _out(out, s)

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        return _out(np.exp(self.mu + self.sigma * _gev_quantile_z(a, self.xi)), s)

    def as_params(self) -> np.ndarray:
        return np.array([self.mu, self.sigma, self.xi])


# ---------------------------------------------------------------------------
# duality wrapper
# ---------------------------------------------------------------------------


def _natural_transform(dist: Distribution) -> str:
    lo, hi = dist.support
    if lo >= 0:
        return "reciprocal"
    if hi <= 0:
        return "negation"
    raise InvalidParameterError("min duality needs a one-signed support")


def _tau(x, how):
    with np.errstate(divide="ignore"):
        return 1.0 / x if how == "reciprocal" else -x


class MinDual(Distribution):
    """p-min dual of a max-oriented law.

    ``cdf(x) = 1 - base.cdf(tau(x))`` with ``tau(x) = 1/x`` for positive
    supports and ``tau(x) = -x`` otherwise. ``X ~ MinDual(base)`` is
    distributed as ``tau(Y)`` with ``Y ~ base``.
    """

    orientation = "min"

    def __init__(self, base: Distribution, transform: str | None = None):
        self.base = base
        self.how = transform or _natural_transform(base)
        if self.how not in ("reciprocal", "negation"):
            raise InvalidParameterError(f"unknown duality transform {self.how!r}")

    def __repr__(self):
        return f"MinDual({self.base!r}, {self.how!r})"

    def __eq__(self, other):
        return isinstance(other, MinDual) and other.base == self.base and other.how == self.how

    @property
    def support(self):
        lo, hi = self.base.support
        if self.how == "negation":
            return -hi, -lo
        return (1.0 / hi if hi > 0 else math.inf), (1.0 / lo if lo > 0 else math.inf)

    def _mapped(self, a):
        if self.how == "reciprocal":
            return np.where(a > 0, _tau(np.where(a > 0, a, 1.0), "reciprocal"), np.inf)
        return -a

    def logcdf(self, x):
        a, s = _arr(x)
        sf = -np.expm1(np.asarray(self.base.logcdf(self._mapped(a)), dtype=float))
        if self.how == "reciprocal":
            sf = np.where(a > 0, sf, 0.0)
        with np.errstate(divide="ignore"):
            return _out(np.log(sf), s)

    def logpdf(self, x):
        a, s = _arr(x)
        lp = np.asarray(self.base.logpdf(self._mapped(a)), dtype=float)
        if self.how == "reciprocal":
            with np.errstate(divide="ignore", invalid="ignore"):
                lp = np.where(a > 0, lp - 2.0 * np.log(np.abs(a)), -np.inf)
        return _out(lp, s)

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        q = np.asarray(self.base.quantile(1.0 - a), dtype=float)
        return _out(_tau(q, self.how), s)

    def sample(self, n, seed=None):
        return _tau(np.asarray(self.base.sample(n, seed), dtype=float), self.how)


# ---------------------------------------------------------------------------
# products of components
# ---------------------------------------------------------------------------


def _bisect(cdf, p, lo, hi, iters=400):
    """Vectorized bisection for ``cdf(x) = p`` on the bracket ``[lo, hi]``.

    Midpoints are taken in ``asinh`` coordinates so brackets spanning many
    orders of magnitude (heavy tails) shrink geometrically.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(iters):
        mid = np.sinh(0.5 * (np.arcsinh(lo) + np.arcsinh(hi)))
        mid = np.clip(mid, lo, hi)
        done = (hi - lo) <= 1e-12 * (1.0 + np.abs(mid))
        if np.all(done):
            break
        below = np.asarray(cdf(mid)) < p
        lo = np.where(below & ~done, mid, lo)
        hi = np.where(~below & ~done, mid, hi)
    return 0.5 * (lo + hi)


def _expand_bracket(cdf, p, lo, hi, support):
    """Grow ``[lo, hi]`` geometrically until it brackets every ``p``."""
    slo, shi = support
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(200):
        bad_lo = np.asarray(cdf(lo)) > p
        bad_hi = np.asarray(cdf(hi)) < p
        if not (bad_lo.any() or bad_hi.any()):
            return lo, hi
        width = np.maximum(hi - lo, 1e-8 * (1.0 + np.abs(lo)))
        lo = np.where(bad_lo, np.maximum(lo - 2.0 * width, slo) if np.isfinite(slo) else lo - 2.0 * width, lo)
        hi = np.where(bad_hi, np.minimum(hi + 2.0 * width, shi) if np.isfinite(shi) else hi + 2.0 * width, hi)
    raise NumericError(f"quantile bracket failed to converge: lo={lo.min()}, hi={hi.max()}")


def _generator(component: Distribution) -> Distribution:
    """Max-oriented law whose dual is the given min-oriented component."""
    if isinstance(component, LogGev):
        return LogGev(-component.mu, component.sigma, component.xi)
    return component


class Accelerated(Distribution):
    """Product model of ``k >= 1`` independent components.

    With ``orientation="max"`` the cdf is the product of component cdfs.
    With ``orientation="min"`` each component ``c`` describes the law of a
    source minimum: a :class:`LogGev` ``(mu, sigma, xi)`` then means
    ``1 - exp(-[1 - xi (log x - mu)/sigma]^(-1/xi))`` and a
    :class:`PStable` spec means its own p-min dual. The model cdf is
    ``1 - prod_j (1 - F_j(x))``.

    Parameters
    ----------
    components : sequence of Distribution
        Component laws (``LogGev`` or ``PStable`` for serializable models).
    orientation : {"max", "min"}
    """

    def __init__(self, components: Sequence[Distribution], orientation: str = "max"):
        comps = list(components)
        if not comps:
            raise InvalidParameterError("an accelerated model needs at least one component")
        if orientation not in ("max", "min"):
            raise InvalidParameterError(f"orientation must be 'max' or 'min', got {orientation!r}")
        self.components = comps
        self.orientation = orientation
        if orientation == "min":
            gens = [_generator(c) for c in comps]
            how = {_natural_transform(g) for g in gens}
            if len(how) != 1:
                raise InvalidParameterError("min components must share one support side")
            self._dual = MinDual(Accelerated(gens, "max"), how.pop())

    @property
    def k(self) -> int:
        return len(self.components)

    def __repr__(self):
        return f"Accelerated({self.components!r}, orientation={self.orientation!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Accelerated)
            and other.orientation == self.orientation
            and other.components == self.components
        )

    @property
    def support(self):
        if self.orientation == "min":
            return self._dual.support
        sups = [c.support for c in self.components]
        return max(s[0] for s in sups), max(s[1] for s in sups)

    def _all_loggev(self):
        return all(type(c) is LogGev for c in self.components)

    def logcdf(self, x):
        if self.orientation == "min":
            return self._dual.logcdf(x)
        a, s = _arr(x)
        total = np.zeros(a.shape)
        for c in self.components:
            total = total + np.asarray(c.logcdf(a), dtype=float)
        return _out(total, s)

    def logpdf(self, x):
        if self.orientation == "min":
            return self._dual.logpdf(x)
        a, s = _arr(x)
        if self.k == 1:
            return _out(np.asarray(self.components[0].logpdf(a), dtype=float), s)
        lc = np.array([np.asarray(c.logcdf(a), dtype=float) for c in self.components])
        lp = np.array([np.asarray(c.logpdf(a), dtype=float) for c in self.components])
        terms = np.empty_like(lp)
        for j in range(self.k):
            others = np.delete(lc, j, axis=0).sum(axis=0)
            terms[j] = lp[j] + others
        m = terms.max(axis=0)
        with np.errstate(invalid="ignore"):
            out = m + np.log(np.exp(terms - np.where(np.isfinite(m), m, 0.0)).sum(axis=0))
        out[~np.isfinite(m)] = -np.inf
        return _out(out, s)

    def quantile(self, p):
        if self.orientation == "min":
            return self._dual.quantile(p)
        _check_prob(p)
        a, s = _arr(p)
        if self.k == 1:
            return _out(np.asarray(self.components[0].quantile(a), dtype=float), s)
        lo = np.max([np.asarray(c.quantile(a), dtype=float) for c in self.components], axis=0)
        hi = np.max([np.asarray(c.quantile(a ** (1.0 / self.k)), dtype=float) for c in self.components], axis=0)
        lo, hi = _expand_bracket(self.cdf, a, lo, hi, self.support)
        return _out(_bisect(self.cdf, a, lo, hi), s)

    def sample(self, n, seed=None):
        if self.orientation == "min":
            return self._dual.sample(n, seed)
        children = _seed_seq(seed).spawn(self.k)
        draws = [np.asarray(c.sample(n, child), dtype=float) for c, child in zip(self.components, children)]
        return np.max(draws, axis=0)


class LeftTruncated(Distribution):
    """Limit law ``base(x) * 1{x >= x0}`` with an atom of mass ``base.cdf(x0)``.

    ``pdf`` is defined only for ``x > x0``; :attr:`atom_mass` carries the
    point mass.
    """

    def __init__(self, base: Distribution, x0: float):
        lo, hi = base.support
        if not (lo < x0 < hi):
            raise InvalidParameterError(f"jump point {x0} must lie inside the support ({lo}, {hi})")
        self.base = base
        self.x0 = float(x0)
        self.atom_mass = float(base.cdf(self.x0))
        if not self.atom_mass > 0:
            raise InvalidParameterError("jump point carries no mass")

    def __repr__(self):
        return f"LeftTruncated({self.base!r}, x0={self.x0})"

    def __eq__(self, other):
        return isinstance(other, LeftTruncated) and other.base == self.base and other.x0 == self.x0

    @property
    def support(self):
        return self.x0, self.base.support[1]

    def logcdf(self, x):
        a, s = _arr(x)
        out = np.asarray(self.base.logcdf(a), dtype=float).copy()
        out[a < self.x0] = -np.inf
        return _out(out, s)

    def logpdf(self, x):
        a, s = _arr(x)
        if np.any(a <= self.x0):
            raise DomainError(f"density of a left-truncated law is defined only for x > {self.x0}")
        return _out(np.asarray(self.base.logpdf(a), dtype=float), s)

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        out = np.full(a.shape, self.x0)
        m = a > self.atom_mass
        if np.any(m):
            out[m] = np.maximum(np.asarray(self.base.quantile(a[m]), dtype=float), self.x0)
        return _out(out, s)

    def sample(self, n, seed=None):
        u = 1.0 - _rng(seed).random(int(n))
        u = np.clip(u, np.finfo(float).tiny, 1.0 - 2.0**-53)
        return np.asarray(self.quantile(u))


# ---------------------------------------------------------------------------
# accelerated l-min law
# ---------------------------------------------------------------------------


class AccLMin(Distribution):
    """Minimum of two independent shifted Weibull sources.

    ``sf(x) = exp(-((x-theta)/(s1 a1))^a1 - ((x-theta)/(s2 a2))^a2)`` for
    ``x > theta``. The two sources are exchangeable and are stored with
    ``alpha1 <= alpha2``.
    """

    orientation = "min"

    def __init__(self, theta: float, sigma1: float, alpha1: float, sigma2: float, alpha2: float):
        for name, v in (("sigma1", sigma1), ("alpha1", alpha1), ("sigma2", sigma2), ("alpha2", alpha2)):
            _check_positive(name, v)
        if not np.isfinite(theta):
            raise InvalidParameterError("theta must be finite")
        if alpha1 > alpha2:
            sigma1, alpha1, sigma2, alpha2 = sigma2, alpha2, sigma1, alpha1
        self.theta = float(theta)
        self.sigma1, self.alpha1 = float(sigma1), float(alpha1)
        self.sigma2, self.alpha2 = float(sigma2), float(alpha2)

    def __repr__(self):
        return (
            f"AccLMin(theta={self.theta}, sigma1={self.sigma1}, alpha1={self.alpha1}, "
            f"sigma2={self.sigma2}, alpha2={self.alpha2})"
        )

    def __eq__(self, other):
        return isinstance(other, AccLMin) and self.params() == other.params()

    def params(self) -> tuple[float, float, float, float, float]:
        return (self.theta, self.sigma1, self.alpha1, self.sigma2, self.alpha2)

    @property
    def support(self):
        return self.theta, math.inf

    def _cumhaz(self, d):
        d = np.maximum(d, 0.0)
        return (d / (self.sigma1 * self.alpha1)) ** self.alpha1 + (d / (self.sigma2 * self.alpha2)) ** self.alpha2

    def logcdf(self, x):
        a, s = _arr(x)
        with np.errstate(divide="ignore"):
            out = np.log(-np.expm1(-self._cumhaz(a - self.theta)))
        return _out(out, s)

    def logpdf(self, x):
        a, s = _arr(x)
        return _out(_kernels.acc_lmin_logpdf(np.ascontiguousarray(a), *self.params()), s)

    def g(self, d):
        """Density with the ``d^(alpha1-1)`` factor removed, ``d = x - theta > 0``."""
        d = np.asarray(d, dtype=float)
        s1, a1, s2, a2 = self.sigma1, self.alpha1, self.sigma2, self.alpha2
        lead = (1.0 / s1) * (1.0 / (s1 * a1)) ** (a1 - 1.0)
        second = (1.0 / s2) * (1.0 / (s2 * a2)) ** (a2 - 1.0) * d ** (a2 - a1)
        return (lead + second) * np.exp(-self._cumhaz(d))

    def c_phi(self) -> float:
        """Leading constant ``(1/(sigma1 alpha1))^alpha1``."""
        return (1.0 / (self.sigma1 * self.alpha1)) ** self.alpha1

    def g_limit(self) -> float:
        """``lim g(d)`` as ``d -> 0``; both sources contribute when ``alpha1 == alpha2``."""
        lim = self.alpha1 * self.c_phi()
        if self.alpha1 == self.alpha2:
            lim += self.alpha2 * (1.0 / (self.sigma2 * self.alpha2)) ** self.alpha2
        return lim

    def quantile(self, p):
        _check_prob(p)
        a, s = _arr(p)
        target = -np.log1p(-a)
        # cumulative hazard is increasing; bracket from the dominant single-source inverse
        hi = np.maximum(
            self.sigma1 * self.alpha1 * target ** (1.0 / self.alpha1),
            self.sigma2 * self.alpha2 * target ** (1.0 / self.alpha2),
        )
        lo = np.zeros_like(hi)
        d = _bisect(lambda v: self._cumhaz(v), target, lo, hi)
        return _out(self.theta + d, s)

    def sample(self, n, seed=None):
        rng = _rng(seed)
        w1 = self.sigma1 * self.alpha1 * rng.weibull(self.alpha1, int(n))
        w2 = self.sigma2 * self.alpha2 * rng.weibull(self.alpha2, int(n))
        return self.theta + np.minimum(w1, w2)


# ---------------------------------------------------------------------------
# functional interface
# ---------------------------------------------------------------------------


def cdf(model: Distribution, x):
    return model.cdf(x)


def pdf(model: Distribution, x):
    return model.pdf(x)


def log_pdf(model: Distribution, x):
    return model.logpdf(x)


def quantile(model: Distribution, p):
    return model.quantile(p)


def sample(model: Distribution, n: int, seed=None) -> np.ndarray:
    if int(n) < 1:
        raise InvalidParameterError("sample size must be at least 1")
    return model.sample(int(n), seed)


def dual_min(model: Distribution) -> Distribution:
    """Return the p-min dual of a max-oriented model (and back).

    Applying the map twice returns an equal model.
    """
    if isinstance(model, MinDual):
        return model.base
    if isinstance(model, Accelerated):
        flip = "min" if model.orientation == "max" else "max"
        comps = [
            LogGev(-c.mu, c.sigma, c.xi) if isinstance(c, LogGev) else c for c in model.components
        ]
        return Accelerated(comps, flip)
    if isinstance(model, LogGev):
        return Accelerated([LogGev(-model.mu, model.sigma, model.xi)], "min")
    return MinDual(model)


def duality_transform(model: Distribution):
    """Point map ``tau`` with ``dual.cdf(x) + model.cdf(tau(x)) = 1``."""
    if isinstance(model, MinDual):
        how = model.how
    elif isinstance(model, Accelerated) and model.orientation == "min":
        how = model._dual.how
    else:
        how = _natural_transform(model)
    return lambda x: _tau(np.asarray(x, dtype=float), how)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _component_dict(c: Distribution) -> dict:
    if isinstance(c, LogGev):
        return {"family": "loggev", "mu": c.mu, "sigma": c.sigma, "xi": c.xi}
    if isinstance(c, PStable):
        return {"family": c.kind.lower(), "alpha": c.alpha, "A": c.A, "B": c.B}
    raise InvalidParameterError(f"cannot serialize component {c!r}")


def to_dict(model: Distribution) -> dict:
    """Serialize a model to the JSON object layout."""
    if isinstance(model, LeftTruncated):
        d = to_dict(model.base)
        if "truncation_x0" in d:
            raise InvalidParameterError("nested truncation is not serializable")
        d["truncation_x0"] = model.x0
        return d
    if isinstance(model, Accelerated):
        return {"orientation": model.orientation, "components": [_component_dict(c) for c in model.components]}
    if isinstance(model, AccLMin):
        keys = ("theta", "sigma1", "alpha1", "sigma2", "alpha2")
        return {"orientation": "min", "family": "acc-lmin", **dict(zip(keys, model.params()))}
    if isinstance(model, MinDual):
        return {"orientation": "min", "dual_of": to_dict(model.base), "transform": model.how}
    if isinstance(model, (LogGev, PStable)):
        return {"orientation": "max", "components": [_component_dict(model)]}
    if isinstance(model, Gev):
        return {"orientation": "max", "family": "gev", "mu": model.mu, "sigma": model.sigma, "xi": model.xi}
    raise InvalidParameterError(f"cannot serialize {model!r}")


def _component_from(d: dict) -> Distribution:
    fam = str(d.get("family", "")).lower()
    try:
        if fam == "loggev":
            return LogGev(float(d["mu"]), float(d["sigma"]), float(d["xi"]))
        if fam.upper() in KINDS:
            return PStable(fam.upper(), float(d.get("alpha", 1.0)), float(d.get("A", 1.0)), float(d.get("B", 1.0)))
    except KeyError as exc:
        raise InvalidParameterError(f"component missing field {exc}") from None
    raise InvalidParameterError(f"unknown component family {fam!r}; expected loggev or h1..h6")


def from_dict(d: dict) -> Distribution:
    """Inverse of :func:`to_dict`. A single component is returned as a
    ``k = 1`` :class:`Accelerated` model, which evaluates identically."""
    if not isinstance(d, dict):
        raise InvalidParameterError("model JSON must be an object")
    if "dual_of" in d:
        return MinDual(from_dict(d["dual_of"]), d.get("transform"))
    fam = d.get("family")
    if fam == "acc-lmin":
        return AccLMin(*(float(d[k]) for k in ("theta", "sigma1", "alpha1", "sigma2", "alpha2")))
    if fam == "gev":
        return Gev(float(d["mu"]), float(d["sigma"]), float(d["xi"]))
    comps = d.get("components")
    if not comps:
        raise InvalidParameterError("model JSON needs a non-empty 'components' list")
    model: Distribution = Accelerated([_component_from(c) for c in comps], d.get("orientation", "max"))
    if d.get("truncation_x0") is not None:
        if model.orientation != "max":
            raise InvalidParameterError("truncation_x0 applies to max-oriented models")
        model = LeftTruncated(model, float(d["truncation_x0"]))
    return model
