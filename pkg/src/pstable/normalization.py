"""Normalizing constants for common parents and limit-regime classification.

For each supported parent family this module provides the power constants
``(alpha_n, beta_n)`` with ``alpha_n |M_n|^beta_n sign(M_n) -> H`` and the
linear constants ``(a_n, b_n)`` with ``a_n (M_n - b_n) -> G``.  For a pair of
competing sources whose block sizes are tied by a :class:`SizeCoupling`,
:func:`classify_regime` decides whether the maximum of the two block maxima
converges to an accelerated law, to a single source's law, or to a
left-truncated law, by evaluating the limits of the combined constants
symbolically in ``n``, ``log n`` and ``log log n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy import integrate, special

from ._asymptotics import Expansion, Inconclusive, exp_limit
from .distributions import Accelerated, Gev, LeftTruncated, PStable, frechet, gumbel, to_dict, weibull_max
from .errors import CapabilityError, InvalidParameterError, NotInLMDAError

# canonical name -> required parameters (with defaults where optional)
FAMILIES: dict[str, dict[str, float | None]] = {
    "log-frechet": {"alpha": None},
    "log-polynomial": {"alpha": None, "gamma": 0.0},
    "uniform": {"l": None, "u": None},
    "std-normal": {},
    "general-error": {"nu": None},
    "frechet": {"alpha": None},
    "pareto": {"alpha": None},
    "skew-normal": {"lam": None},
    "polynomial": {"alpha": None, "gamma": None},
}

_ALIASES = {
    "logfrechet": "log-frechet",
    "log-poly": "log-polynomial",
    "logpoly": "log-polynomial",
    "log-polynomial": "log-polynomial",
    "normal": "std-normal",
    "gaussian": "std-normal",
    "ged": "general-error",
    "general-error": "general-error",
    "skewnormal": "skew-normal",
    "poly": "polynomial",
    "polynomial-growth": "polynomial",
}


def supported_families() -> list[str]:
    return list(FAMILIES)


def canonical_family(name: str) -> str:
    """Resolve aliases; raise :class:`CapabilityError` for unknown names."""
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    if key not in FAMILIES:
        raise CapabilityError(f"unsupported family {name!r}; supported: {', '.join(FAMILIES)}")
    return key


# ---------------------------------------------------------------------------
# parent families
# ---------------------------------------------------------------------------


def _ged_lambda(nu: float) -> float:
    """Scale making the general error law unit-variance."""
    return math.sqrt(2.0 ** (-2.0 / nu) * math.exp(special.gammaln(1.0 / nu) - special.gammaln(3.0 / nu)))


def skewnorm_sf_quad(x: float, lam: float) -> float:
    """Survival function of the skew-normal law by adaptive quadrature."""
    f = lambda t: 2.0 * math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi) * special.ndtr(lam * t)
    val, _ = integrate.quad(f, x, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def skewnorm_isf_quad(q: float, lam: float, tol: float = 1e-10) -> float:
    """Upper quantile of the skew-normal law by bisection on the quadrature sf."""
    lo, hi = -40.0, 40.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if skewnorm_sf_quad(mid, lam) > q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _skewnorm_sf(x, lam):
    return special.ndtr(-x) + 2.0 * special.owens_t(x, lam)


def _skewnorm_isf(v, lam):
    v = np.asarray(v, dtype=float)
    lo = np.full(v.shape, -40.0)
    hi = np.full(v.shape, 40.0)
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        above = _skewnorm_sf(mid, lam) > v
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ParentFamily:
    """A parent distribution from the supported catalogue.

    Parameters
    ----------
    family : str
        Family name; see :func:`supported_families`. Common aliases such as
        ``"normal"`` or ``"ged"`` are accepted.
    params : mapping
        Family parameters: ``alpha`` (tail index), ``gamma`` (right end
        point), ``l``/``u`` (uniform end points), ``nu`` (general error
        shape), ``lam`` (skewness).
    """

    family: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        name = canonical_family(self.family)
        spec = FAMILIES[name]
        given = {k: float(v) for k, v in dict(self.params).items()}
        unknown = set(given) - set(spec)
        if unknown:
            raise InvalidParameterError(f"{name}: unknown parameters {sorted(unknown)}; expected {sorted(spec)}")
        full = {}
        for k, default in spec.items():
            if k in given:
                full[k] = given[k]
            elif default is not None:
                full[k] = default
            else:
                raise InvalidParameterError(f"{name}: missing parameter {k!r}")
        for k in ("alpha", "nu"):
            if k in full and not full[k] > 0:
                raise InvalidParameterError(f"{name}: {k} must be positive")
        if name == "uniform" and not full["u"] > full["l"]:
            raise InvalidParameterError("uniform: need u > l")
        object.__setattr__(self, "family", name)
        object.__setattr__(self, "params", dict(sorted(full.items())))

    def __getitem__(self, key):
        return self.params[key]

    def __hash__(self):
        return hash((self.family, tuple(self.params.items())))

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({inner})"

    # distribution functions --------------------------------------------
    def cdf(self, x):
        """Parent cdf (used for oracles and diagnostics)."""
        x = np.asarray(x, dtype=float)
        f, p = self.family, self.params
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if f == "log-frechet":
                return np.where(x > 1, np.exp(-np.log(np.where(x > 1, x, 2.0)) ** -p["alpha"]), 0.0)
            if f == "log-polynomial":
                t = np.log(np.where(x > 0, x, 1.0))
                val = 1.0 - np.clip(p["gamma"] - t, 0.0, 1.0) ** p["alpha"]
                return np.where(x > 0, val, 0.0)
            if f == "polynomial":
                return 1.0 - np.clip(p["gamma"] - x, 0.0, 1.0) ** p["alpha"]
            if f == "uniform":
                return np.clip((x - p["l"]) / (p["u"] - p["l"]), 0.0, 1.0)
            if f == "std-normal":
                return special.ndtr(x)
            if f == "general-error":
                lam, nu = _ged_lambda(p["nu"]), p["nu"]
                tail = 0.5 * special.gammaincc(1.0 / nu, 0.5 * np.abs(x / lam) ** nu)
                return np.where(x >= 0, 1.0 - tail, tail)
            if f == "pareto":
                return np.where(x > 1, 1.0 - np.where(x > 1, x, 1.0) ** -p["alpha"], 0.0)
            if f == "frechet":
                return np.where(x > 0, np.exp(-np.where(x > 0, x, 1.0) ** -p["alpha"]), 0.0)
            if f == "skew-normal":
                return 1.0 - _skewnorm_sf(x, p["lam"])
        raise CapabilityError(f"no cdf for {f}")

    def isf(self, v):
        """Upper quantile: the ``x`` with ``P(X > x) = v`` for ``v`` in ``(0, 1]``."""
        v = np.asarray(v, dtype=float)
        f, p = self.family, self.params
        with np.errstate(divide="ignore", over="ignore"):
            if f == "pareto":
                return v ** (-1.0 / p["alpha"])
            if f == "frechet":
                return (-np.log1p(-v)) ** (-1.0 / p["alpha"])
            if f == "uniform":
                return p["u"] - (p["u"] - p["l"]) * v
            if f == "polynomial":
                return p["gamma"] - v ** (1.0 / p["alpha"])
            if f == "log-polynomial":
                return np.exp(p["gamma"] - v ** (1.0 / p["alpha"]))
            if f == "log-frechet":
                return np.exp((-np.log1p(-v)) ** (-1.0 / p["alpha"]))
            if f == "std-normal":
                return -special.ndtri(v)
            if f == "general-error":
                nu, lam = p["nu"], _ged_lambda(p["nu"])
                upper = v <= 0.5
                w = np.where(upper, 2.0 * v, 2.0 * (1.0 - v))
                mag = lam * (2.0 * special.gammainccinv(1.0 / nu, np.clip(w, 0.0, 1.0))) ** (1.0 / nu)
                return np.where(upper, mag, -mag)
            if f == "skew-normal":
                return _skewnorm_isf(v, p["lam"])
        raise CapabilityError(f"no sampler for {f}")

    # limits ------------------------------------------------------------
    def power_limit(self) -> PStable:
        f, p = self.family, self.params
        if f == "log-frechet":
            return PStable("H1", p["alpha"])
        if f == "log-polynomial":
            return PStable("H2", p["alpha"])
        if f == "uniform":
            if p["u"] <= 0:
                raise CapabilityError("power constants for uniform need u > 0")
            return PStable("H2", 1.0)
        if f in ("std-normal", "general-error", "frechet", "pareto", "skew-normal"):
            return PStable("H5")
        if f == "polynomial":
            g = p["gamma"]
            if g > 0:
                return PStable("H2", p["alpha"])
            if g == 0:
                return PStable("H6")
            return PStable("H4", p["alpha"])
        raise CapabilityError(f"no power limit for {f}")


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def _power_map(m: np.ndarray, log_alpha: float, beta: float) -> np.ndarray:
    # direct product is accurate to a few ulp; the log-space form loses
    # |log alpha| ulp, so it is only the fallback for under/overflow
    with np.errstate(divide="ignore", over="ignore", under="ignore", invalid="ignore"):
        am = np.abs(m)
        alpha = math.exp(log_alpha) if -700.0 < log_alpha < 700.0 else 0.0
        direct = alpha * am**beta
        ok = (alpha > 0.0) & np.isfinite(direct) & ((direct > 1e-300) | (am == 0.0))
        if not np.all(ok):
            logs = np.exp(log_alpha + beta * np.log(am))
            direct = np.where(ok, direct, logs)
        return np.sign(m) * direct


@dataclass(frozen=True)
class PowerConstants:
    """Power normalization constants; ``log_alpha`` avoids under/overflow."""

    alpha: float
    beta: float
    limit: PStable
    log_alpha: float

    def __iter__(self):
        return iter((self.alpha, self.beta, self.limit))

    def apply(self, m, *, reciprocal: bool = False):
        """Return ``alpha |m|^beta sign(m)``.

        With ``reciprocal=True`` returns ``(1/alpha) |m|^(-beta) sign(m)``,
        the dual transform used for minima of reciprocals.
        """
        sgn = -1.0 if reciprocal else 1.0
        return _power_map(np.asarray(m, dtype=float), sgn * self.log_alpha, sgn * self.beta)


@dataclass(frozen=True)
class LinearConstants:
    """Linear normalization constants and the limit law."""

    a: float
    b: float
    limit: Gev
    tag: str

    def __iter__(self):
        return iter((self.a, self.b, self.tag))

    def apply(self, m):
        return self.a * (np.asarray(m, dtype=float) - self.b)


def _normal_ab(logn: float) -> tuple[float, float]:
    a = math.sqrt(2.0 * logn)
    return a, a - math.log(4.0 * math.pi * logn) / (2.0 * a)


def _ged_ab(nu: float, logn: float) -> tuple[float, float]:
    lam = _ged_lambda(nu)
    a = 2.0 ** (-1.0 / nu) * (nu / lam) * logn ** (1.0 - 1.0 / nu)
    b = (nu * logn - (nu - 1.0) / nu * math.log(2.0 * math.gamma(1.0 / nu) * logn)) / a
    return a, b


def _check_n(n):
    if not n >= 2:
        raise InvalidParameterError(f"block size must be at least 2, got {n}")


def power_constants(parent: ParentFamily, n: float) -> PowerConstants:
    """Power normalization constants and p-max limit for ``n`` draws.

    Parameters
    ----------
    parent : ParentFamily
    n : float
        Block size, at least 2.

    Returns
    -------
    PowerConstants
        Iterates as ``(alpha_n, beta_n, limit)``.
    """
    _check_n(n)
    f, p = parent.family, parent.params
    limit = parent.power_limit()
    logn = math.log(n)
    if f == "log-frechet":
        beta, la = n ** (-1.0 / p["alpha"]), 0.0
    elif f == "log-polynomial":
        beta = n ** (1.0 / p["alpha"])
        la = -beta * p["gamma"]
    elif f == "uniform":
        beta = p["u"] * n / (p["u"] - p["l"])
        la = -beta * math.log(p["u"])
    elif f in ("std-normal", "general-error"):
        a, b = _normal_ab(logn) if f == "std-normal" else _ged_ab(p["nu"], logn)
        beta, la = a * b, -a * b * math.log(b)
    elif f in ("frechet", "pareto"):
        beta, la = p["alpha"], -logn
    elif f == "skew-normal":
        b = skewnorm_isf_quad(1.0 / n, p["lam"])
        a = b if p["lam"] >= 0 else (1.0 + p["lam"] ** 2) * b
        beta, la = a * b, -a * b * math.log(b)
    elif f == "polynomial":
        g, al = p["gamma"], p["alpha"]
        if g > 0:
            beta = g * n ** (1.0 / al)
            la = -beta * math.log(g)
        elif g == 0:
            beta, la = al, logn
        else:
            beta = -g * n ** (1.0 / al)
            la = -beta * math.log(-g)
    else:  # pragma: no cover - guarded by ParentFamily
        raise CapabilityError(f"no power constants for {f}")
    with np.errstate(over="ignore", under="ignore"):
        alpha = float(np.exp(la))
    return PowerConstants(alpha, float(beta), limit, float(la))


def linear_constants(parent: ParentFamily, n: float) -> LinearConstants:
    """Linear normalization constants and l-max limit for ``n`` draws."""
    _check_n(n)
    f, p = parent.family, parent.params
    if f == "log-frechet":
        raise NotInLMDAError("log-frechet has no linear max-domain of attraction (no linear constants exist)")
    if f == "log-polynomial":
        al = p["alpha"]
        return LinearConstants(n ** (1.0 / al) / math.exp(p["gamma"]), math.exp(p["gamma"]), weibull_max(al), f"Weibull({al:g})")
    if f == "uniform":
        return LinearConstants(n / (p["u"] - p["l"]), p["u"], weibull_max(1.0), "Weibull(1)")
    if f == "std-normal":
        a, b = _normal_ab(math.log(n))
        return LinearConstants(a, b, gumbel(), "Gumbel")
    if f == "general-error":
        a, b = _ged_ab(p["nu"], math.log(n))
        return LinearConstants(a, b, gumbel(), "Gumbel")
    if f in ("frechet", "pareto"):
        al = p["alpha"]
        return LinearConstants(n ** (-1.0 / al), 0.0, frechet(al), f"Frechet({al:g})")
    if f == "skew-normal":
        b = skewnorm_isf_quad(1.0 / n, p["lam"])
        a = b if p["lam"] >= 0 else (1.0 + p["lam"] ** 2) * b
        return LinearConstants(a, b, gumbel(), "Gumbel")
    if f == "polynomial":
        al = p["alpha"]
        return LinearConstants(n ** (1.0 / al), p["gamma"], weibull_max(al), f"Weibull({al:g})")
    raise CapabilityError(f"no linear constants for {f}")  # pragma: no cover


def combine(alpha1n: float, beta1n: float, alpha2n: float, beta2n: float, *, log_alphas: bool = False):
    """Combine two blocks' power constants into those of block 1 seen on
    block 2's scale.

    Returns ``(alpha_n, beta_n)`` with ``alpha_n = alpha1 (1/alpha2)^(beta1/beta2)``
    and ``beta_n = beta1/beta2``, evaluated in log space. With
    ``log_alphas=True`` the alpha arguments are logarithms and the returned
    alpha is ``log alpha_n``.
    """
    vals = (alpha1n, beta1n, alpha2n, beta2n)
    if any(not np.isfinite(v) for v in vals):
        raise InvalidParameterError("combine: inputs must be finite (NaN rejected)")
    if beta1n <= 0 or beta2n <= 0 or (not log_alphas and (alpha1n <= 0 or alpha2n <= 0)):
        raise InvalidParameterError("combine: constants must be positive")
    la1 = alpha1n if log_alphas else math.log(alpha1n)
    la2 = alpha2n if log_alphas else math.log(alpha2n)
    beta = beta1n / beta2n
    la = la1 - beta * la2
    if log_alphas:
        return la, beta
    return math.exp(la), beta


# ---------------------------------------------------------------------------
# couplings and symbolic limits
# ---------------------------------------------------------------------------

_RULES = ("proportional", "power", "log-power", "loglog-power")


@dataclass(frozen=True)
class SizeCoupling:
    """Rule tying ``n2`` to ``n1``.

    ``proportional``: ``n2 = c n1``; ``power``: ``n2 = a n1^c``;
    ``log-power``: ``n2 = a (log n1)^c``; ``loglog-power``:
    ``n2 = a (log log n1)^c``. The coefficient ``a`` defaults to 1.
    """

    rule: str
    c: float
    a: float = 1.0

    def __post_init__(self):
        if self.rule not in _RULES:
            raise InvalidParameterError(f"unknown coupling rule {self.rule!r}; expected one of {_RULES}")
        if not (self.c > 0 and self.a > 0):
            raise InvalidParameterError("coupling constants must be positive")

    @classmethod
    def parse(cls, text: str) -> "SizeCoupling":
        """Parse ``prop:c``, ``pow:a:c``, ``logpow:c`` (or ``logpow:a:c``),
        ``loglogpow:c`` (or ``loglogpow:a:c``)."""
        parts = str(text).strip().split(":")
        names = {"prop": "proportional", "pow": "power", "logpow": "log-power", "loglogpow": "loglog-power"}
        if parts[0] not in names:
            raise InvalidParameterError(f"bad coupling {text!r}; use prop:c, pow:a:c, logpow:c or loglogpow:c")
        try:
            nums = [float(x) for x in parts[1:]]
        except ValueError:
            raise InvalidParameterError(f"bad coupling numbers in {text!r}") from None
        rule = names[parts[0]]
        if rule == "proportional" and len(nums) == 1:
            return cls(rule, nums[0])
        if rule == "power" and len(nums) == 2:
            return cls(rule, nums[1], nums[0])
        if rule in ("log-power", "loglog-power") and len(nums) in (1, 2):
            return cls(rule, nums[-1], nums[0] if len(nums) == 2 else 1.0)
        raise InvalidParameterError(f"wrong number of values in coupling {text!r}")

    def n2(self, n1: float) -> float:
        if self.rule == "proportional":
            return self.c * n1
        if self.rule == "power":
            return self.a * n1**self.c
        if self.rule == "log-power":
            return self.a * math.log(n1) ** self.c
        return self.a * math.log(math.log(n1)) ** self.c

    def describe(self) -> str:
        if self.rule == "proportional":
            return f"n2 = {self.c:g} n1"
        lead = "" if self.a == 1.0 else f"{self.a:g} "
        base = {"power": "n1", "log-power": "(log n1)", "loglog-power": "(log log n1)"}[self.rule]
        return f"n2 = {lead}{base}^{self.c:g}"

    def to_dict(self):
        return {"rule": self.rule, "a": self.a, "c": self.c}


class _Sizes:
    """Lazy expansions of ``n``, ``log n``, ``log log n`` for one block."""

    def __init__(self, n: Expansion):
        self.n = n
        self._log = None
        self._loglog = None

    @property
    def log(self) -> Expansion:
        if self._log is None:
            self._log = self.n.log()
        return self._log

    @property
    def loglog(self) -> Expansion:
        if self._loglog is None:
            self._loglog = self.log.log()
        return self._loglog


def _block_sizes(coupling: SizeCoupling | None) -> _Sizes:
    if coupling is None:
        return _Sizes(Expansion.level(0))
    level = {"proportional": 0, "power": 0, "log-power": 1, "loglog-power": 2}[coupling.rule]
    if coupling.rule == "proportional":
        return _Sizes(Expansion.level(0, 1.0, coupling.c))
    return _Sizes(Expansion.level(level, coupling.c, coupling.a))


def _power_asymptotics(parent: ParentFamily, s: _Sizes) -> tuple[Expansion, Expansion]:
    """Expansions of ``beta_n`` and ``r_n = (log alpha_n)/beta_n``."""
    f, p = parent.family, parent.params
    if f == "log-frechet":
        return s.n ** (-1.0 / p["alpha"]), Expansion.const(0.0)
    if f == "log-polynomial":
        return s.n ** (1.0 / p["alpha"]), Expansion.const(-p["gamma"])
    if f == "uniform":
        return (p["u"] / (p["u"] - p["l"])) * s.n, Expansion.const(-math.log(p["u"]))
    if f in ("frechet", "pareto"):
        return Expansion.const(p["alpha"]), s.log * (-1.0 / p["alpha"])
    if f == "std-normal":
        a = (2.0 * s.log) ** 0.5
        b = a - (math.log(4.0 * math.pi) + s.loglog) / (2.0 * a)
        return a * b, -b.log()
    if f == "general-error":
        nu = p["nu"]
        lam = _ged_lambda(nu)
        a = (2.0 ** (-1.0 / nu) * nu / lam) * s.log ** (1.0 - 1.0 / nu)
        num = nu * s.log - ((nu - 1.0) / nu) * (math.log(2.0 * math.gamma(1.0 / nu)) + s.loglog)
        b = num / a
        return a * b, -b.log()
    if f == "skew-normal":
        lam = p["lam"]
        k = 1.0 if lam >= 0 else 1.0 + lam**2
        b = ((2.0 / k) * s.log) ** 0.5
        b = b.with_relative_error(s.loglog / s.log)
        a = b if lam >= 0 else (1.0 + lam**2) * b
        return a * b, -b.log()
    if f == "polynomial":
        g, al = p["gamma"], p["alpha"]
        if g > 0:
            return g * s.n ** (1.0 / al), Expansion.const(-math.log(g))
        if g == 0:
            return Expansion.const(al), s.log * (1.0 / al)
        return -g * s.n ** (1.0 / al), Expansion.const(-math.log(-g))
    raise CapabilityError(f"no asymptotics for {f}")  # pragma: no cover


# ---------------------------------------------------------------------------
# regime classification
# ---------------------------------------------------------------------------


@dataclass
class RegimeReport:
    """Outcome of :func:`classify_regime`.

    ``case`` is one of ``"accelerated"``, ``"single-dominant"``,
    ``"left-truncated"`` or ``"inconclusive"``; ``which`` names the winning
    block for single dominance and is the block whose constants normalize
    the maximum.
    """

    case: str
    A: float | None = None
    B: float | None = None
    x0: float | None = None
    which: int | None = None
    limit_model: object = None
    notes: list[str] = field(default_factory=list)

    @property
    def normalize_by(self) -> int:
        return self.which if self.case == "single-dominant" and self.which else 2

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "A": self.A,
            "B": self.B,
            "x0": self.x0,
            "which": self.which,
            "limit_model": to_dict(self.limit_model) if self.limit_model is not None else None,
            "notes": list(self.notes),
        }


def _safe_limit(fn):
    try:
        return fn()
    except (Inconclusive, ZeroDivisionError, OverflowError):
        return None


def _is_pos(h: PStable) -> bool:
    return h.kind in ("H1", "H2", "H5")


def _pos_support(h: PStable) -> tuple[float, float]:
    return {"H1": (1.0, math.inf), "H2": (0.0, 1.0), "H5": (0.0, math.inf)}[h.kind]


def _pos_pos(H1, H2, B, logA, Cl):
    """Remark-style analysis of ``x_n = alpha_n x^beta_n`` for positive types.

    Returns ``(verdict, x0, clause)`` with verdict in
    {"dom2", "dom1", "trunc", "acc", None}.
    """
    lo1, hi1 = _pos_support(H1)
    lo2, hi2 = _pos_support(H2)
    if B is None:
        return None, None, "limit of beta_n undecided"
    if B == math.inf:
        if Cl is None:
            return None, None, "limit of (log alpha_n)/beta_n undecided"
        x0 = 0.0 if Cl == math.inf else (math.inf if Cl == -math.inf else math.exp(-Cl))
        if x0 <= lo2:
            return "dom2", None, "x_n -> infinity on the support of H2"
        if x0 >= hi2:
            return "dom1", None, "x_n -> 0 on the support of H2"
        return "trunc", x0, "x_n jumps from 0 to infinity at x0"
    if logA is None:
        return None, None, "limit of alpha_n undecided"
    if logA == math.inf:
        return "dom2", None, "A = infinity with finite B"
    if logA == -math.inf:
        return "dom1", None, "A = 0 with finite B"
    if B > 0:
        return "acc", None, "A and B finite and positive"
    A = math.exp(logA)
    if A >= hi1:
        return "dom2", None, "B = 0 and A at or above the right end of H1"
    if A <= lo1:
        return "dom1", None, "B = 0 and A at or below the left end of H1"
    return None, None, "B = 0 with A inside the support of H1: defective limit"


def _neg_neg(H1, H2, B, logA, Cl):
    """Analysis of ``x_n = -alpha_n |x|^beta_n`` for negative types."""
    lo1, hi1 = H1.support
    lo2, hi2 = H2.support
    if B is None:
        return None, None, "limit of beta_n undecided"
    if B == math.inf:
        if Cl is None:
            return None, None, "limit of (log alpha_n)/beta_n undecided"
        x0 = -math.exp(-Cl) if Cl > -math.inf else -math.inf
        if x0 <= lo2:
            return "dom2", None, "x_n -> 0 from below on the support of H2"
        if x0 >= hi2:
            return "dom1", None, "x_n -> -infinity on the support of H2"
        return "trunc", x0, "negative types with lim (log alpha_n)/beta_n = -C: jump at x0 = -e^C"
    if logA is None:
        return None, None, "limit of alpha_n undecided"
    if logA == -math.inf:
        return "dom2", None, "A = 0 with finite B"
    if logA == math.inf:
        return "dom1", None, "A = infinity with finite B"
    if B > 0:
        return "acc", None, "A and B finite and positive"
    A = math.exp(logA)
    if -A >= hi1:
        return "dom2", None, "B = 0 and -A at or above the right end of H1"
    if -A <= lo1:
        return "dom1", None, "B = 0 and -A at or below the left end of H1"
    return None, None, "B = 0 with -A inside the support of H1: defective limit"


def _limits(p1, p2, s1, s2):
    b1, r1 = _power_asymptotics(p1, s1)
    b2, r2 = _power_asymptotics(p2, s2)
    D = r1 - r2
    B = _safe_limit(lambda: (b1 / b2).limit())
    logA = _safe_limit(lambda: (b1 * D).limit())
    Cl = _safe_limit(lambda: (b2 * D).limit())
    return B, logA, Cl


def classify_regime(parent1: ParentFamily, parent2: ParentFamily, coupling: SizeCoupling) -> RegimeReport:
    """Classify the limit of the maximum of two competing block maxima.

    Parameters
    ----------
    parent1, parent2 : ParentFamily
        Source distributions of blocks 1 and 2.
    coupling : SizeCoupling
        How ``n2`` grows with ``n1``.

    Returns
    -------
    RegimeReport
        ``A`` and ``B`` are the limits of the combined constants. Limits
        that cannot be decided from the retained asymptotic terms give an
        ``"inconclusive"`` report rather than a guess.
    """
    H1, H2 = parent1.power_limit(), parent2.power_limit()
    s1, s2 = _block_sizes(None), _block_sizes(coupling)
    notes = [f"block 1: {parent1.describe()} -> {H1.kind}; block 2: {parent2.describe()} -> {H2.kind}; {coupling.describe()}"]
    B, logA, Cl = _limits(parent1, parent2, s1, s2)
    A = None if logA is None else exp_limit(Expansion.const(logA)) if math.isfinite(logA) else (math.inf if logA > 0 else 0.0)
    report = RegimeReport("inconclusive", A=A, B=B, notes=notes)

    if _is_pos(H2) != _is_pos(H1):
        winner = 2 if _is_pos(H2) else 1
        report.case, report.which = "single-dominant", winner
        report.limit_model = H2 if winner == 2 else H1
        notes.append("positive-type source dominates a negative-type source (mixed sides)")
        return report

    _pareto_note(parent1, parent2, coupling, report)

    if B is not None and logA is not None and 0 < B < math.inf and math.isfinite(logA):
        report.case = "accelerated"
        report.limit_model = Accelerated([PStable(H1.kind, H1.alpha, A, B), H2])
        notes.append("A and B finite and positive: product limit")
        return report

    if _is_pos(H2):
        verdict, x0, clause = _pos_pos(H1, H2, B, logA, Cl)
        if verdict == "dom1":
            # confirm by the mirrored analysis on block 1's scale
            Bs, logAs, Cls = _limits(parent2, parent1, s2, s1)
            v2, _, _ = _pos_pos(H2, H1, Bs, logAs, Cls)
            if v2 != "dom2":
                notes.append(f"{clause}; mirrored analysis did not confirm block 1 dominance")
                return report
        if verdict is None:
            notes.append(clause)
            return report
        notes.append(clause)
        if verdict == "dom2":
            report.case, report.which, report.limit_model = "single-dominant", 2, H2
            if B is not None and logA == math.inf and B < math.inf and H1.kind in ("H1", "H5"):
                notes.append("A = infinity, 0 <= B < infinity with heavy-tailed H1")
            elif H1.kind == "H2" and B == 0:
                notes.append("H1 of bounded type with B = 0")
        elif verdict == "dom1":
            report.case, report.which, report.limit_model = "single-dominant", 1, H1
        else:
            report.case, report.x0 = "left-truncated", x0
            report.limit_model = LeftTruncated(H2, x0)
            if not x0 > 1.0:
                notes.append("jump point x0 <= 1 (C <= 0): outside the literal C > 0 hypothesis")
        return report

    verdict, x0, clause = _neg_neg(H1, H2, B, logA, Cl)
    if verdict == "dom1":
        Bs, logAs, Cls = _limits(parent2, parent1, s2, s1)
        v2, _, _ = _neg_neg(H2, H1, Bs, logAs, Cls)
        if v2 != "dom2":
            notes.append(f"{clause}; mirrored analysis did not confirm block 1 dominance")
            return report
    notes.append(clause)
    if verdict in ("dom1", "dom2"):
        w = 1 if verdict == "dom1" else 2
        report.case, report.which, report.limit_model = "single-dominant", w, H1 if w == 1 else H2
    elif verdict == "trunc":
        report.case, report.x0 = "left-truncated", x0
        report.limit_model = LeftTruncated(H2, x0)
    return report


def _pareto_note(p1, p2, coupling, report):
    heavy = ("pareto", "frechet")
    if p1.family in heavy and p2.family in heavy and coupling.rule == "power":
        a1, a2 = p1["alpha"], p2["alpha"]
        if abs(coupling.c - a2 / a1) < 1e-12:
            report.notes.append(
                f"n2 = a n1^(alpha2/alpha1) gives A = a^(alpha1/alpha2) = {coupling.a ** (a1 / a2):.17g} "
                "from the combination rule; the shortcut A = a does not follow from it"
            )
