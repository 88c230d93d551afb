"""Finite discrete random variables and exact distances between them.

A distribution is stored as a sorted support with strictly positive masses.
Everything here is immutable and pure: operations return new objects and
never mutate their inputs, so values can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadMassError, EmptyDistributionError, NonFiniteValueError

# Total mass must sit within this of 1 for every stored distribution.
MASS_TOL = 1e-9

# Slack used when checking one-sided CDF domination.
DOMINANCE_SLACK = 1e-12


def _compensated_cumsum(probs: np.ndarray, block: int = 4096) -> np.ndarray:
    """Prefix sums with error tracking.

    Plain ``np.cumsum`` drifts by O(n*eps), too loose for supports around
    1e6 points.  Summing per-block totals with ``math.fsum`` keeps every
    prefix within a few ULP of the correctly rounded value.
    """
    out = np.empty_like(probs)
    block_totals: list[float] = []
    offset = 0.0
    for start in range(0, probs.size, block):
        seg = probs[start:start + block]
        np.cumsum(seg, out=out[start:start + seg.size])
        if offset:
            out[start:start + seg.size] += offset
        block_totals.append(math.fsum(seg))
        offset = math.fsum(block_totals)
    return out


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """A finite random variable: sorted support values with positive masses.

    Invariants enforced on construction: values strictly increasing and
    finite, every probability strictly positive, total mass within
    ``MASS_TOL`` of one.
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        if values.ndim != 1 or probs.ndim != 1 or values.shape != probs.shape:
            raise ValueError("values and probs must be 1-D arrays of equal length")
        if values.size == 0:
            raise EmptyDistributionError("a distribution needs at least one support point")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValueError("support values must be finite")
        if values.size > 1 and not np.all(np.diff(values) > 0):
            raise ValueError("support values must be strictly increasing")
        if not np.all(probs > 0):
            raise BadMassError("every stored probability must be strictly positive")
        total = math.fsum(probs.tolist())
        if abs(total - 1.0) > MASS_TOL:
            raise BadMassError(f"total mass {total!r} is outside 1 +/- {MASS_TOL}")
        values.flags.writeable = False
        probs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        """Support size."""
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(
            self.probs, other.probs
        )

    def __repr__(self) -> str:
        if self.n <= 8:
            pairs = ", ".join(f"{v:g}: {p:g}" for v, p in zip(self.values, self.probs))
            return f"DiscreteDistribution({{{pairs}}})"
        return f"DiscreteDistribution(n={self.n})"


class CumulativeView:
    """Prefix-sum CDF over a distribution, for O(1) interval-mass queries.

    ``cum[i]`` is F(values[i]); ``cum_left[i]`` is the left limit
    F(values[i]^-).  ``total`` is the realized overall mass, used as the
    value of F just below +inf so that complementary masses cancel exactly.
    """

    __slots__ = ("values", "probs", "cum", "cum_left", "total")

    def __init__(self, dist: DiscreteDistribution) -> None:
        self.values = dist.values
        self.probs = dist.probs
        cum = _compensated_cumsum(dist.probs)
        cum_left = np.empty_like(cum)
        cum_left[0] = 0.0
        cum_left[1:] = cum[:-1]
        cum.flags.writeable = False
        cum_left.flags.writeable = False
        self.cum = cum
        self.cum_left = cum_left
        self.total = float(cum[-1])

    def at(self, t) -> np.ndarray:
        """CDF evaluated (right-continuously) at the points of ``t``."""
        t = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.values, t, side="right")
        return np.where(idx > 0, self.cum[np.maximum(idx - 1, 0)], 0.0)


def make_distribution(
    pairs: Iterable[tuple[float, float]] | Sequence[Sequence[float]],
    *,
    renormalize: bool = False,
) -> DiscreteDistribution:
    """Build a distribution from (value, probability) pairs.

    Duplicate values are merged by summing their masses, zero-mass entries
    are dropped, and the support is sorted.  With ``renormalize`` the masses
    are divided by their actual sum; otherwise the sum must already be
    within ``MASS_TOL`` of one.
    """
    table = np.asarray(list(pairs), dtype=np.float64)
    if table.size == 0:
        raise EmptyDistributionError("no (value, probability) pairs given")
    if table.ndim != 2 or table.shape[1] != 2:
        raise ValueError("expected a sequence of (value, probability) pairs")
    values, probs = table[:, 0], table[:, 1]
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError("support values must be finite")
    if np.any(np.isnan(probs)) or np.any(probs < 0) or not np.all(np.isfinite(probs)):
        raise BadMassError("probabilities must be finite and non-negative")

    keep = probs > 0
    values, probs = values[keep], probs[keep]
    if values.size == 0:
        raise EmptyDistributionError("no support point carries positive mass")
    uniq, inverse = np.unique(values, return_inverse=True)
    merged = np.bincount(inverse, weights=probs, minlength=uniq.size)

    total = math.fsum(merged.tolist())
    if renormalize:
        merged = merged / total
    elif abs(total - 1.0) > MASS_TOL:
        raise BadMassError(
            f"total mass {total!r} is outside 1 +/- {MASS_TOL}; pass renormalize=True to rescale"
        )
    return DiscreteDistribution(uniq, merged)


def kolmogorov_distance(a: DiscreteDistribution, b: DiscreteDistribution) -> float:
    """sup over t of |F_a(t) - F_b(t)|.

    Both CDFs are step functions, so the supremum is attained at a jump of
    one of them; between consecutive merged jumps the difference is the one
    already seen at the previous jump (and zero below the first).
    """
    ts = np.union1d(a.values, b.values)
    fa = CumulativeView(a).at(ts)
    fb = CumulativeView(b).at(ts)
    return float(np.max(np.abs(fa - fb)))


def one_sided_distance(
    x: DiscreteDistribution, approx: DiscreteDistribution
) -> tuple[float, bool]:
    """One-sided gap sup_t (F_approx(t) - F_x(t)).

    Returns the gap together with a flag telling whether the approximation's
    CDF dominates the source CDF everywhere (within ``DOMINANCE_SLACK``).
    The supremum includes t below both supports, hence it is never negative.
    """
    ts = np.union1d(x.values, approx.values)
    gaps = CumulativeView(approx).at(ts) - CumulativeView(x).at(ts)
    return max(0.0, float(np.max(gaps))), bool(np.min(gaps) >= -DOMINANCE_SLACK)


def project_to_support(
    xpp: DiscreteDistribution, target: DiscreteDistribution
) -> DiscreteDistribution:
    """Snap ``xpp`` onto the support of ``target`` without increasing the
    Kolmogorov distance to ``target``.

    Mass in (t_{i-1}, t_i] moves to t_i, and everything above the
    second-largest target point moves to the largest one.  The result
    matches ``xpp``'s CDF at every target point except possibly the last,
    which pins the distance at or below the original one.
    """
    tv = target.values
    view = CumulativeView(xpp)
    bounds = np.empty(tv.size + 1)
    bounds[0] = 0.0
    bounds[1:-1] = view.at(tv[:-1])
    bounds[-1] = view.total
    probs = np.diff(bounds)
    keep = probs > 0
    return DiscreteDistribution(tv[keep], probs[keep])


def convolve(a: DiscreteDistribution, b: DiscreteDistribution) -> DiscreteDistribution:
    """Distribution of the sum of two independent variables.

    Support points that collide (exact float equality) are merged.
    """
    sums = np.add.outer(a.values, b.values).ravel()
    masses = np.multiply.outer(a.probs, b.probs).ravel()
    uniq, inverse = np.unique(sums, return_inverse=True)
    return DiscreteDistribution(uniq, np.bincount(inverse, weights=masses, minlength=uniq.size))


def _combine_cdf(
    a: DiscreteDistribution, b: DiscreteDistribution, minimum: bool
) -> DiscreteDistribution:
    ts = np.union1d(a.values, b.values)
    fa = CumulativeView(a).at(ts)
    fb = CumulativeView(b).at(ts)
    if minimum:
        f = 1.0 - (1.0 - fa) * (1.0 - fb)
    else:
        f = fa * fb
    pmf = np.diff(np.concatenate(([0.0], f)))
    keep = pmf > 0
    return DiscreteDistribution(ts[keep], pmf[keep])


def max_of(a: DiscreteDistribution, b: DiscreteDistribution) -> DiscreteDistribution:
    """Distribution of max(A, B) for independent A, B: F = F_a * F_b."""
    return _combine_cdf(a, b, minimum=False)


def min_of(a: DiscreteDistribution, b: DiscreteDistribution) -> DiscreteDistribution:
    """Distribution of min(A, B) for independent A, B: 1-F = (1-F_a)(1-F_b)."""
    return _combine_cdf(a, b, minimum=True)


def sample_empirical(
    x: DiscreteDistribution, s: int, seed: int
) -> DiscreteDistribution:
    """Empirical distribution of ``s`` i.i.d. draws from ``x``.

    Draws invert uniform variates through the CDF using numpy's PCG64
    generator, so identical (x, s, seed) triples give identical output on
    every platform.
    """
    if s < 1:
        raise ValueError("sample size must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(int(s))
    view = CumulativeView(x)
    idx = np.searchsorted(view.cum, u, side="right")
    idx = np.minimum(idx, x.n - 1)
    uniq, counts = np.unique(idx, return_counts=True)
    return DiscreteDistribution(x.values[uniq], counts / float(s))
