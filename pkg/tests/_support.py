"""Shared oracles for the test suites: density mass by quadrature and the
golden regime table."""

import math
import warnings

import numpy as np
from scipy import integrate, special

from pstable.normalization import ParentFamily, SizeCoupling

E = math.e


def mass(model) -> float:
    """Quadrature of the pdf over the support plus the cdf mass left outside.

    The support is mapped onto R (logistic for bounded, exponential for
    half-lines) so heavy tails stay within float range.
    """
    lo, hi = model.support
    # ranges: logistic resolves 1 - x to ~1e-16 at |w| = 36; exp(w) is finite below 690
    if np.isfinite(lo) and np.isfinite(hi) and 0.0 in (lo, hi):
        # x = c exp(-exp(w)) is exact at both ends of (0, c) or (c, 0)
        c = lo if hi == 0.0 else hi
        g = lambda w: c * np.exp(-np.exp(w))
        jac = lambda w: abs(c) * np.exp(w - np.exp(w))
        w_lo, w_hi = -36.0, 6.5
    elif np.isfinite(lo) and np.isfinite(hi):
        g = lambda w: lo + (hi - lo) * special.expit(w)
        jac = lambda w: (hi - lo) * special.expit(w) * special.expit(-w)
        w_lo, w_hi = -36.0, 36.0
    elif np.isfinite(lo):
        g, jac = (lambda w: lo + np.exp(w)), np.exp
        w_lo, w_hi = -36.0, 690.0
    elif np.isfinite(hi):
        g, jac = (lambda w: hi - np.exp(w)), np.exp
        w_lo, w_hi = -36.0, 690.0
    else:
        g, jac = np.sinh, np.cosh
        w_lo, w_hi = -7.0, 7.0
    with np.errstate(all="ignore"), warnings.catch_warnings():
        # roundoff warnings near the float limits; the 1e-6 check is far coarser
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        f = lambda w: float(model.pdf(g(w)) * jac(w))
        pts = np.linspace(w_lo, w_hi, 40)
        val = sum(integrate.quad(f, a, b, limit=200, epsabs=1e-13, epsrel=1e-12)[0] for a, b in zip(pts[:-1], pts[1:]))
    a, b = sorted((float(g(w_lo)), float(g(w_hi))))
    return val + float(model.cdf(a)) + float(model.sf(b))


def P(family, **params):
    return ParentFamily(family, params)


LF = lambda a: P("log-frechet", alpha=a)
LP = lambda a, g=0.0: P("log-polynomial", alpha=a, gamma=g)
PAR = lambda a: P("pareto", alpha=a)
GED = lambda nu: P("general-error", nu=nu)
POLY = lambda a, g: P("polynomial", alpha=a, gamma=g)
C = SizeCoupling.parse

GOLDEN = [
    # (parent1, parent2, coupling, case, which, A, B, x0)
    (LF(40), LF(3), C("pow:3.375:0.075"), "accelerated", None, 1.0, 1.5, None),
    (LF(4), LF(2), C("pow:1:0.5"), "accelerated", None, 1.0, 1.0, None),
    (LF(4), LF(2), C("prop:1"), "single-dominant", 2, None, None, None),
    (LF(4), LF(2), C("pow:1:0.7"), "single-dominant", 2, None, None, None),
    (LF(4), LF(2), C("pow:1:0.3"), "single-dominant", 1, None, None, None),
    (LP(20), LP(1.7), SizeCoupling("power", 0.085, 0.6 ** -1.7), "accelerated", None, 1.0, 0.6, None),
    (LP(20), LP(1.7), C("prop:1"), "single-dominant", 2, None, None, None),
    (LP(20), LP(1.7), C("pow:1:0.05"), "single-dominant", 1, None, None, None),
    (PAR(2), LF(4), C("prop:1"), "single-dominant", 2, None, None, None),
    (PAR(2), LF(4), C("pow:1:0.5"), "single-dominant", 2, None, None, None),
    (PAR(2), LF(4), C("logpow:0.0625:4"), "left-truncated", None, None, None, E),
    (PAR(2), LF(4), C("logpow:5"), "single-dominant", 2, None, None, None),
    (PAR(2), LF(4), C("logpow:3"), "single-dominant", 1, None, None, None),
    (P("uniform", l=2, u=4), P("uniform", l=1, u=5), C("prop:1"), "single-dominant", 2, None, None, None),
    (GED(1), LF(6), C("loglogpow:6"), "left-truncated", None, None, None, E),
    (GED(1), LF(6), C("loglogpow:7"), "single-dominant", 2, None, None, None),
    (GED(1), LF(6), C("loglogpow:5"), "single-dominant", 1, None, None, None),
    (GED(1), LF(6), C("logpow:1"), "single-dominant", 2, None, None, None),
    (GED(1.5), LF(3), C("loglogpow:3"), "left-truncated", None, None, None, math.exp(1 / 1.5)),
    (PAR(3), PAR(3), C("prop:2"), "accelerated", None, 2.0, 1.0, None),
    (PAR(4), PAR(2), C("pow:3:0.5"), "accelerated", None, 9.0, 2.0, None),
    (PAR(4), PAR(2), C("prop:1"), "single-dominant", 2, None, None, None),
    (PAR(4), PAR(2), C("pow:1:0.3"), "single-dominant", 1, None, None, None),
    (P("std-normal"), P("frechet", alpha=4), C("logpow:2"), "left-truncated", None, None, None, 4.0),
    (P("std-normal"), P("frechet", alpha=4), C("logpow:3"), "single-dominant", 2, None, None, None),
    (P("std-normal"), P("frechet", alpha=4), C("logpow:1"), "single-dominant", 1, None, None, None),
    (P("skew-normal", lam=1.0), LF(3), C("loglogpow:3"), "left-truncated", None, None, None, math.sqrt(E)),
    (P("std-normal"), LF(3), C("loglogpow:3"), "left-truncated", None, None, None, math.sqrt(E)),
    (POLY(1, 1), P("frechet", alpha=2), C("prop:1"), "single-dominant", 2, None, None, None),
    (POLY(1, -1), P("frechet", alpha=2), C("prop:1"), "single-dominant", 2, None, None, None),
    (POLY(2, -1), POLY(1, -2), C("prop:1"), "single-dominant", 1, None, None, None),
    (POLY(1, -1), POLY(1, -1), C("prop:2"), "accelerated", None, 1.0, 0.5, None),
    (POLY(1, 0), POLY(1, 0), C("prop:2"), "accelerated", None, 0.5, 1.0, None),
]
