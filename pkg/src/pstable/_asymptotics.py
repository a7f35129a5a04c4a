"""Asymptotic expansions in ``n``, ``log n``, ``log log n``, ...

An :class:`Expansion` is a finite sum of terms ``c * prod_k L_k^e_k`` with
``L_0 = n`` and ``L_{k+1} = log L_k``, plus an optional remainder known only
up to order ``O(prod_k L_k^r_k)``. Exponent vectors compare lexicographically,
which is the growth order as ``n -> infinity``.

Only the operations needed to take limits of normalization constants are
provided; anything whose limit depends on the unknown remainder raises
:class:`Inconclusive`.
"""

from __future__ import annotations

import math
from typing import Iterable

DEPTH = 5
ZERO = (0.0,) * DEPTH
_DIGITS = 12


class Inconclusive(ArithmeticError):
    """The limit cannot be decided from the retained terms."""


def _key(e: Iterable[float]) -> tuple:
    return tuple(round(float(v), _DIGITS) + 0.0 for v in e)


def _add_e(a, b):
    return _key(x + y for x, y in zip(a, b))


def _sub_e(a, b):
    return _key(x - y for x, y in zip(a, b))


def _scale_e(a, p):
    return _key(x * p for x in a)


def unit(level: int, power: float = 1.0) -> tuple:
    e = [0.0] * DEPTH
    e[level] = power
    return _key(e)


class Expansion:
    """Asymptotic expansion with a tracked remainder order."""

    __slots__ = ("terms", "err")

    def __init__(self, terms: dict | None = None, err: tuple | None = None):
        self.err = None if err is None else _key(err)
        clean = {}
        for e, c in (terms or {}).items():
            e = _key(e)
            if c == 0.0 or (self.err is not None and e <= self.err):
                continue
            clean[e] = clean.get(e, 0.0) + float(c)
        scale = max((abs(c) for c in clean.values()), default=0.0)
        self.terms = {e: c for e, c in clean.items() if abs(c) > 1e-13 * scale}

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: float) -> "Expansion":
        return cls({ZERO: c})

    @classmethod
    def level(cls, k: int, power: float = 1.0, coef: float = 1.0) -> "Expansion":
        return cls({unit(k, power): coef})

    # inspection ---------------------------------------------------------
    def ordered(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    @property
    def lead(self):
        items = self.ordered()
        return items[0] if items else (None, 0.0)

    def __repr__(self):
        body = " + ".join(f"{c:.6g}*L^{e}" for e, c in self.ordered()) or "0"
        return f"Expansion({body}" + (f" + O(L^{self.err}))" if self.err is not None else ")")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return Expansion(terms, _max_err(self.err, other.err))

    __radd__ = __add__

    def __neg__(self):
        return Expansion({e: -c for e, c in self.terms.items()}, self.err)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_e(e1, e2)
                terms[e] = terms.get(e, 0.0) + c1 * c2
        errs = []
        if other.err is not None and self.terms:
            errs.append(_add_e(self.lead[0], other.err))
        if self.err is not None and other.terms:
            errs.append(_add_e(other.lead[0], self.err))
        if self.err is not None and other.err is not None:
            errs.append(_add_e(self.err, other.err))
        return Expansion(terms, max(errs) if errs else None)

    __rmul__ = __mul__

    def _relative(self):
        """Split as ``c * L^e * (1 + delta)``; return ``(e, c, delta_terms, delta_err)``."""
        e0, c0 = self.lead
        if e0 is None:
            raise Inconclusive("expansion has no known leading term")
        if self.err is not None and self.err >= e0:
            raise Inconclusive("remainder may dominate the leading term")
        rest = [(_sub_e(e, e0), c / c0) for e, c in self.ordered()[1:]]
        derr = _sub_e(self.err, e0) if self.err is not None else None
        return e0, c0, rest, derr

    def __pow__(self, p: float):
        e0, c0, rest, derr = self._relative()
        if c0 < 0 and not float(p).is_integer():
            raise Inconclusive("fractional power of a negative leading term")
        base = {_scale_e(e0, p): c0**p}
        if not rest and derr is None:
            return Expansion(base)
        cand = []
        if rest:
            d1, r1 = rest[0]
            base[_add_e(_scale_e(e0, p), d1)] = p * c0**p * r1
            cand.append(_scale_e(d1, 2.0))
            if len(rest) > 1:
                cand.append(rest[1][0])
        if derr is not None:
            cand.append(derr)
        return Expansion(base, _add_e(_scale_e(e0, p), max(cand)))

    def __truediv__(self, other):
        return self * (_coerce(other) ** -1.0)

    def __rtruediv__(self, other):
        return _coerce(other) * (self**-1.0)

    def log(self) -> "Expansion":
        e0, c0, rest, derr = self._relative()
        if c0 <= 0:
            raise Inconclusive("log of a non-positive leading term")
        if e0[-1] != 0.0:
            raise Inconclusive("expansion depth exceeded")
        terms = {ZERO: math.log(c0)}
        for k in range(DEPTH - 1):
            if e0[k] != 0.0:
                terms[unit(k + 1)] = terms.get(unit(k + 1), 0.0) + e0[k]
        cand = []
        if rest:
            d1, r1 = rest[0]
            terms[d1] = terms.get(d1, 0.0) + r1
            cand.append(_scale_e(d1, 2.0))
            if len(rest) > 1:
                cand.append(rest[1][0])
        if derr is not None:
            cand.append(derr)
        return Expansion(terms, max(cand) if cand else None)

    def with_relative_error(self, rel: "Expansion") -> "Expansion":
        """Multiply by ``1 + O(rel)`` where only the order of ``rel`` matters."""
        e_rel = rel.lead[0] if rel.terms else rel.err
        if e_rel is None:
            return self
        e0 = self.lead[0]
        err = _add_e(e0, e_rel)
        return Expansion(self.terms, _max_err(self.err, err))

    # limits -------------------------------------------------------------
    def limit(self) -> float:
        """Limit as ``n -> infinity``: a real, ``inf`` or ``-inf``."""
        e0, c0 = self.lead
        if self.err is not None and (e0 is None or self.err >= e0):
            if self.err < ZERO:
                return 0.0
            raise Inconclusive("remainder may dominate")
        if e0 is None:
            return 0.0
        if e0 > ZERO:
            return math.copysign(math.inf, c0)
        if e0 == ZERO:
            if self.err is not None and self.err >= ZERO:
                raise Inconclusive("constant term not separated from remainder")
            return c0
        return 0.0


def _coerce(x) -> Expansion:
    return x if isinstance(x, Expansion) else Expansion.const(float(x))


def _max_err(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def exp_limit(x: Expansion) -> float:
    """Limit of ``exp(x)``."""
    lim = x.limit()
    if lim == math.inf:
        return math.inf
    if lim == -math.inf:
        return 0.0
    return math.exp(lim)
