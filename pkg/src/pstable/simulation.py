"""Monte Carlo study of competing block maxima.

Each replication draws ``n1`` values from parent 1 and ``n2`` values from
parent 2, takes the overall maximum (or minimum) and normalizes it with the
power or linear constants of one block. Replication ``r`` uses the stream
``default_rng([seed, r])``, so output does not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .distributions import Distribution, LeftTruncated, MinDual, _arr, _out
from .errors import CapabilityError, InvalidParameterError
from .normalization import (
    ParentFamily,
    RegimeReport,
    SizeCoupling,
    classify_regime,
    linear_constants,
    power_constants,
)


def _stream(seed: int, r: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(r)])


def draw_parent(parent: ParentFamily, n: int, seed=None) -> np.ndarray:
    """Draw ``n`` i.i.d. values from a parent family by inverse transform.

    Parameters
    ----------
    parent : ParentFamily
    n : int
        Number of draws, at least 1.
    seed : int, Generator or None

    Returns
    -------
    ndarray of shape (n,)
    """
    if int(n) < 1:
        raise InvalidParameterError("n must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    v = 1.0 - rng.random(int(n))
    return np.asarray(parent.isf(v), dtype=float)


def _block_survival_min(rng: np.random.Generator, n: int, chunk: int = 1 << 16) -> float:
    # smallest survival probability among n uniform draws
    best = 1.0
    left = int(n)
    while left > 0:
        k = min(left, chunk)
        best = min(best, 1.0 - float(rng.random(k).max()))
        left -= k
    return best


@dataclass
class CompetingExperiment:
    """Configuration of a competing-maxima replication study.

    ``normalize_by=None`` picks the block the regime analysis designates:
    block 1 when it dominates, block 2 otherwise. ``coupling`` states how
    ``n2`` grows with ``n1`` for the regime analysis; by default it is the
    proportional rule ``n2 = (n2/n1) n1``.

    In ``"min"`` orientation the parents describe the reciprocals of the
    data, so the study forms ``min_i 1/X_i`` and normalizes it by the dual
    power transform. Only power normalization is offered for minima.
    """

    parent1: ParentFamily
    parent2: ParentFamily
    n1: int
    n2: int
    reps: int = 10_000
    norm: str = "power"
    normalize_by: int | None = None
    orientation: str = "max"
    seed: int = 42
    coupling: SizeCoupling | None = None

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise InvalidParameterError("block sizes must be at least 1")
        if self.reps < 1:
            raise InvalidParameterError("reps must be at least 1")
        if self.norm not in ("power", "linear"):
            raise InvalidParameterError("norm must be 'power' or 'linear'")
        if self.normalize_by not in (None, 1, 2):
            raise InvalidParameterError("normalize_by must be 1 or 2")
        if self.orientation not in ("max", "min"):
            raise InvalidParameterError("orientation must be 'max' or 'min'")
        if self.orientation == "min" and self.norm == "linear":
            raise CapabilityError("linear normalization is not offered for minima of reciprocal parents")

    def regime_coupling(self) -> SizeCoupling:
        return self.coupling if self.coupling is not None else SizeCoupling("proportional", self.n2 / self.n1)

    def to_dict(self) -> dict:
        return {
            "family1": self.parent1.family,
            "params1": dict(self.parent1.params),
            "family2": self.parent2.family,
            "params2": dict(self.parent2.params),
            "n1": self.n1,
            "n2": self.n2,
            "reps": self.reps,
            "norm": self.norm,
            "normalize_by": self.normalize_by,
            "orientation": self.orientation,
            "seed": self.seed,
            "coupling": None if self.coupling is None else self.coupling.to_dict(),
        }


@dataclass
class ReplicationResult:
    """Normalized values of a study with its regime analysis."""

    normalized_values: np.ndarray
    regime: RegimeReport
    empirical_jump_mass: float | None
    normalize_by: int
    experiment: CompetingExperiment

    def limit_model(self) -> Distribution | None:
        """Limit law matching the values' normalization, when available."""
        return _limit_for(self.experiment, self.regime, self.normalize_by)

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.to_dict(),
            "empirical_jump_mass": self.empirical_jump_mass,
            "normalize_by": self.normalize_by,
            "experiment": self.experiment.to_dict(),
        }


def block_maxima(exp: CompetingExperiment) -> np.ndarray:
    """Raw overall block maxima (before normalization), one per replication.

    In min orientation these are the maxima of the parent draws, whose
    reciprocals are the data minima.
    """
    out = np.empty(exp.reps)
    for r in range(exp.reps):
        rng = _stream(exp.seed, r)
        v1 = _block_survival_min(rng, exp.n1)
        v2 = _block_survival_min(rng, exp.n2)
        m1 = float(exp.parent1.isf(v1))
        m2 = float(exp.parent2.isf(v2))
        out[r] = max(m1, m2)
    return out


def _normalize(exp: CompetingExperiment, m: np.ndarray, which: int) -> np.ndarray:
    parent, n = (exp.parent1, exp.n1) if which == 1 else (exp.parent2, exp.n2)
    if exp.norm == "linear":
        try:
            lc = linear_constants(parent, n)
        except CapabilityError as exc:
            raise type(exc)(f"linear normalization unavailable for block {which}: {exc}") from None
        return lc.apply(m)
    pc = power_constants(parent, n)
    # for minima the data minimum is 1/m and the dual transform is (1/alpha) m^(-beta)
    return pc.apply(m, reciprocal=exp.orientation == "min")


def run_experiment(exp: CompetingExperiment) -> ReplicationResult:
    """Run the replication study.

    Returns
    -------
    ReplicationResult
        ``empirical_jump_mass`` is the fraction of values at or below the
        jump point (at or above its reciprocal for minima) when the regime
        is left-truncated, and ``None`` otherwise.
    """
    regime = classify_regime(exp.parent1, exp.parent2, exp.regime_coupling())
    which = exp.normalize_by or regime.normalize_by
    values = _normalize(exp, block_maxima(exp), which)
    mass = None
    if regime.case == "left-truncated":
        if exp.orientation == "max":
            mass = float(np.mean(values <= regime.x0))
        else:
            mass = float(np.mean(values >= 1.0 / regime.x0))
    return ReplicationResult(values, regime, mass, which, exp)


class PowerPullback(Distribution):
    """Law of ``Y`` when ``sign(Y)|Y|^beta`` follows ``base``.

    Relates the limit of power-normalized maxima to that of linearly
    normalized ones for scale-only constants.
    """

    def __init__(self, base: Distribution, beta: float):
        self.base, self.beta = base, float(beta)

    def _fwd(self, x):
        return np.sign(x) * np.abs(x) ** self.beta

    @property
    def support(self):
        lo, hi = self.base.support
        inv = lambda y: float(np.sign(y) * abs(y) ** (1.0 / self.beta))
        return inv(lo), inv(hi)

    def logcdf(self, x):
        a, s = _arr(x)
        return _out(np.asarray(self.base.logcdf(self._fwd(a)), dtype=float), s)

    def logpdf(self, x):
        a, s = _arr(x)
        with np.errstate(divide="ignore"):
            jac = np.log(self.beta) + (self.beta - 1.0) * np.log(np.abs(a))
        return _out(np.asarray(self.base.logpdf(self._fwd(a)), dtype=float) + jac, s)

    def quantile(self, p):
        y = np.asarray(self.base.quantile(p), dtype=float)
        return np.sign(y) * np.abs(y) ** (1.0 / self.beta)

    def sample(self, n, seed=None):
        y = np.asarray(self.base.sample(n, seed), dtype=float)
        return np.sign(y) * np.abs(y) ** (1.0 / self.beta)


def _limit_for(exp: CompetingExperiment, regime: RegimeReport, which: int) -> Distribution | None:
    model = regime.limit_model
    if model is None:
        return None
    if exp.norm == "power":
        if which != regime.normalize_by:
            return None
        return MinDual(model, "reciprocal") if exp.orientation == "min" else model
    parent, n = (exp.parent1, exp.n1) if which == 1 else (exp.parent2, exp.n2)
    if regime.case == "single-dominant" and which == regime.which:
        return linear_constants(parent, n).limit
    if parent.family in ("pareto", "frechet") and which == regime.normalize_by:
        # power value = (linear value)^alpha for these parents
        return PowerPullback(model, parent["alpha"])
    return None


def convergence_table(
    experiments: Sequence[CompetingExperiment] | Iterable[CompetingExperiment],
    tests: Sequence[str] = ("ks", "cvm", "ad"),
    labels: Sequence[str] | None = None,
) -> list[dict]:
    """Goodness of fit of normalized values against their limit law.

    Returns one row per experiment with ``statistic`` and ``p_value`` for
    each requested test, keyed as ``"ks"``, ``"ks_p"`` and so on.
    """
    from . import gof

    exps = list(experiments)
    rows = []
    for i, exp in enumerate(exps):
        res = run_experiment(exp)
        model = res.limit_model()
        if model is None:
            raise CapabilityError(f"no limit law available for experiment {i} ({res.regime.case}, norm={exp.norm})")
        row = {"label": labels[i] if labels else f"exp{i}", "norm": exp.norm, "n1": exp.n1, "n2": exp.n2, "regime": res.regime.case}
        for t in tests:
            tr = gof.TESTS[t](res.normalized_values, model)
            row[t] = tr.statistic
            row[f"{t}_p"] = tr.p_value
        rows.append(row)
    return rows
