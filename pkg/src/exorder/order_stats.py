"""Exact laws for order statistics of heterogeneous exponential samples.

Let X_1, ..., X_n be independent exponentials with rates lam_1, ..., lam_n
and X_{1:n} <= ... <= X_{n:n} their order statistics.  The generalized
spacing X_{j:n} - X_{i:n} is distributed as a finite mixture of
hypoexponential laws, one component per chain of "surviving" index sets
T_i ⊃ T_{i+1} ⊃ ... ⊃ T_{j-1} (T_k = indices still alive after the k-th
failure):

* the probability that the survivor set after i failures equals T satisfies
  the downward recursion p(T) = sum_{x ∉ T} p(T ∪ {x}) * lam_x / Lam(T ∪ {x})
  with p(full set) = 1, where Lam(S) = sum of rates over S;
* conditionally on the chain, the memoryless property makes the spacing a
  sum of independent exponential stages with rates Lam(T_i), ..., Lam(T_{j-1});
* the chain weight is p(T_i) times the product of the race probabilities
  lam_x / Lam(T_k) along the chain.

Identical stage tuples arising from different chains are merged (exact
float equality), and components are stored in sorted stage order so the
construction is deterministic.

For the minimum itself, X_{1:n} is exponential with rate Lam(full), and
(X_{i:n} - X_{1:n}) is independent of X_{1:n}; the conditional law of
X_{i:n} given X_{1:n} = x is therefore the x-shift of one fixed spacing law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np
from scipy.integrate import quad

from .distributions import (
    ContinuousDist,
    Exponential,
    FiniteMixture,
    Hypoexponential,
    ShiftedDist,
)
from .streams import SampleStream

__all__ = [
    "RateVector",
    "SpacingMixture",
    "ConditionalFamily",
    "min_law",
    "order_stat_cdf",
    "order_stat_cdf_by_convolution",
    "spacing_law",
    "spacing_law_by_permutations",
    "conditional_family",
    "exact_min_corr",
    "sample_order_stats",
    "sample_min_pair",
    "sample_spacing",
]

_EXACT_N_CAP = 16
_EXACT_CHAIN_CAP = 50_000
_WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class RateVector:
    """Rates of n >= 2 independent exponential lifetimes."""

    rates: tuple[float, ...]

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates)
        if len(rates) < 2:
            raise ValueError("a rate vector needs at least two entries")
        if any(not math.isfinite(r) or r <= 0.0 for r in rates):
            raise ValueError(f"rates must be positive reals, got {rates!r}")
        object.__setattr__(self, "rates", rates)

    @property
    def n(self) -> int:
        return len(self.rates)

    def total_rate(self) -> float:
        return math.fsum(self.rates)

    def mean_rate(self) -> float:
        return self.total_rate() / self.n

    def homogenize(self) -> "RateVector":
        """The homogeneous vector with the same mean rate."""
        return RateVector((self.mean_rate(),) * self.n)

    def is_homogeneous(self) -> bool:
        return max(self.rates) == min(self.rates)


@dataclass(frozen=True)
class SpacingMixture(ContinuousDist):
    """Exact law of the spacing X_{j:n} - X_{i:n} as a hypoexponential mixture.

    ``chains`` holds ``(weight, stage_rates)`` pairs in sorted stage order;
    weights must sum to 1 within 1e-12.
    """

    i: int
    j: int
    chains: tuple[tuple[float, tuple[float, ...]], ...]
    kind = "spacing_mixture"

    def __post_init__(self):
        if not self.chains:
            raise ValueError("a spacing mixture needs at least one chain component")
        total = math.fsum(w for w, _ in self.chains)
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"chain weights must sum to 1, got {total!r}")

    @cached_property
    def mixture(self) -> FiniteMixture:
        return FiniteMixture(tuple((w, Hypoexponential(st)) for w, st in self.chains))

    def _cdf(self, x):
        return self.mixture._cdf(x)

    def survival(self, x):
        return self.mixture.survival(x)

    def _sample(self, stream, m):
        return self.mixture._sample(stream, m)

    def mean(self):
        return self.mixture.mean()

    def variance(self):
        return self.mixture.variance()

    def label(self):
        return f"spacing(i={self.i},j={self.j},{self.mixture.label()})"


@dataclass(frozen=True)
class ConditionalFamily:
    """Conditional laws { X_{i:n} | X_{1:n} = x : x >= 0 } as shifts of one base.

    Because the spacing X_{i:n} - X_{1:n} is independent of the minimum,
    the conditional law at x is the base spacing law translated by x.
    """

    base: ContinuousDist

    def at(self, x: float) -> ShiftedDist:
        """The conditional law given a minimum equal to ``x``."""
        x = float(x)
        if x < 0.0:
            raise ValueError("the conditioning value must be nonnegative")
        return ShiftedDist(self.base, x)

    def cond_cdf(self, x: float, y):
        """H_x(y) = P(X_{i:n} <= y | X_{1:n} = x)."""
        y = np.asarray(y, dtype=float)
        return self.base.cdf(y - float(x))

    def cond_quantile(self, x: float, u):
        """Inverse of ``cond_cdf`` in its second argument."""
        return float(x) + self.base.quantile(u)


def _validate_index(rv: RateVector, i: int, name: str = "i") -> int:
    if not isinstance(i, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {i!r}")
    if not 1 <= int(i) <= rv.n:
        raise ValueError(f"{name} must lie in 1..{rv.n}, got {i}")
    return int(i)


def min_law(rv: RateVector) -> Exponential:
    """Exact law of the sample minimum: exponential with the total rate."""
    return Exponential(rv.total_rate())


def order_stat_cdf(rv: RateVector, i: int, t):
    """P(X_{i:n} <= t) via the count-of-failures recursion.

    The event {X_{i:n} <= t} is {at least i of the X_m fall below t}; the
    distribution of the count is built by the standard O(n^2) recursion over
    the per-coordinate probabilities 1 - exp(-lam_m t).
    """
    i = _validate_index(rv, i)
    t = np.asarray(t, dtype=float)
    t1 = np.atleast_1d(t)
    p = -np.expm1(-np.outer(np.maximum(t1, 0.0), np.asarray(rv.rates)))
    dp = np.zeros((t1.size, rv.n + 1))
    dp[:, 0] = 1.0
    for m in range(rv.n):
        pm = p[:, m][:, None]
        upper = dp[:, 1 : m + 2] * (1.0 - pm) + dp[:, 0 : m + 1] * pm
        dp[:, 0] = dp[:, 0] * (1.0 - pm[:, 0])
        dp[:, 1 : m + 2] = upper
    res = dp[:, i:].sum(axis=1)
    res = np.where(t1 > 0.0, np.clip(res, 0.0, 1.0), 0.0)
    return float(res[0]) if t.ndim == 0 else res


def order_stat_cdf_by_convolution(rv: RateVector, i: int, t, *, abs_tol: float = 1e-10):
    """Cross-check route for :func:`order_stat_cdf` via the minimum.

    Integrates P(spacing <= t - x) against the density of X_{1:n} with an
    adaptive quadrature.  Slower than the direct recursion by construction;
    intended for consistency tests, not production evaluation.
    """
    i = _validate_index(rv, i)
    lam = rv.total_rate()
    if i == 1:
        return order_stat_cdf(rv, 1, t)
    sp = spacing_law(rv, 1, i)
    t = np.asarray(t, dtype=float)
    t1 = np.atleast_1d(t)
    out = np.zeros_like(t1)
    for k, tv in enumerate(t1):
        if tv <= 0.0:
            continue
        val, _ = quad(
            lambda x: sp.cdf(tv - x) * lam * math.exp(-lam * x),
            0.0,
            tv,
            epsabs=abs_tol,
            epsrel=1e-12,
            limit=200,
        )
        out[k] = val
    return float(out[0]) if t.ndim == 0 else out


def _survivor_set_probs(rates: tuple[float, ...], failures: int) -> dict[int, float]:
    """Distribution of the surviving index set after ``failures`` failures.

    Sets are bitmasks over 0..n-1; the recursion pushes probability from the
    full set downward one failure at a time.
    """
    n = len(rates)
    cur = {(1 << n) - 1: 1.0}
    for _ in range(failures):
        nxt: dict[int, float] = {}
        for mask, pm in cur.items():
            lam_mask = math.fsum(rates[b] for b in range(n) if mask >> b & 1)
            for b in range(n):
                if mask >> b & 1:
                    nxt[mask ^ (1 << b)] = nxt.get(mask ^ (1 << b), 0.0) + pm * rates[b] / lam_mask
        cur = nxt
    return cur


def _chain_count(n: int, i: int, j: int) -> int:
    count = 1
    for k in range(i, j):
        count *= n - k
    return count


def spacing_law(rv: RateVector, i: int, j: int) -> SpacingMixture:
    """Exact law of X_{j:n} - X_{i:n} as a finite hypoexponential mixture.

    Raises
    ------
    ValueError
        If the indices are not ``1 <= i < j <= n``, or if the instance is too
        large for exact enumeration (n above 16, or more chain components
        than the exact-mode cap); use :func:`sample_spacing` beyond that.
    """
    i = _validate_index(rv, i, "i")
    j = _validate_index(rv, j, "j")
    if not i < j:
        raise ValueError(f"spacing indices must satisfy i < j, got i={i}, j={j}")
    n = rv.n
    if n > _EXACT_N_CAP:
        raise ValueError(
            f"exact spacing laws are capped at n <= {_EXACT_N_CAP} (got n={n}); "
            "use sample_spacing for a Monte Carlo law"
        )
    rates = rv.rates
    if rv.is_homogeneous():
        lam = rates[0]
        stages = tuple((n - k) * lam for k in range(i, j))
        return SpacingMixture(i, j, ((1.0, stages),))
    n_chains = _chain_count(n, i, j)
    if n_chains > _EXACT_CHAIN_CAP:
        raise ValueError(
            f"exact spacing law would have {n_chains} chain components "
            f"(cap {_EXACT_CHAIN_CAP}); use sample_spacing instead"
        )

    start = _survivor_set_probs(rates, i)
    # Extend each surviving set T_i down to T_{j-1}, accumulating the
    # stage-rate tuple and the race-probability weight along the chain.
    lam_of = {}

    def lam_mask(mask: int) -> float:
        val = lam_of.get(mask)
        if val is None:
            val = math.fsum(rates[b] for b in range(n) if mask >> b & 1)
            lam_of[mask] = val
        return val

    components: dict[tuple[float, ...], float] = {}

    def extend(mask: int, level: int, weight: float, stages: tuple[float, ...]) -> None:
        stages = stages + (lam_mask(mask),)
        if level == j - 1:
            components[stages] = components.get(stages, 0.0) + weight
            return
        lam_here = lam_mask(mask)
        for b in range(n):
            if mask >> b & 1:
                extend(mask ^ (1 << b), level + 1, weight * rates[b] / lam_here, stages)

    for mask, p_start in start.items():
        extend(mask, i, p_start, ())

    chains = tuple((w, st) for st, w in sorted(components.items()))
    return SpacingMixture(i, j, chains)


def spacing_law_by_permutations(rv: RateVector, i: int, j: int) -> SpacingMixture:
    """Independent construction of :func:`spacing_law` by brute enumeration.

    Sums over all n! failure orders, with the weight of an order being the
    product of its successive race probabilities.  Exponential cost; capped
    at n <= 9.  Kept as an oracle for consistency testing.
    """
    i = _validate_index(rv, i, "i")
    j = _validate_index(rv, j, "j")
    if not i < j:
        raise ValueError(f"spacing indices must satisfy i < j, got i={i}, j={j}")
    n = rv.n
    if n > 9:
        raise ValueError("the permutation oracle is capped at n <= 9")
    rates = rv.rates
    components: dict[tuple[float, ...], float] = {}
    for order in permutations(range(n)):
        weight = 1.0
        alive_after = []
        alive = math.fsum(rates)
        for idx in order:
            weight *= rates[idx] / alive
            alive -= rates[idx]
            alive_after.append(alive)
        # The gap between the k-th and (k+1)-th failures is exponential with
        # the total rate surviving after the k-th failure.
        stages = tuple(alive_after[k - 1] for k in range(i, j))
        components[stages] = components.get(stages, 0.0) + weight
    chains = tuple((w, st) for st, w in sorted(components.items()))
    return SpacingMixture(i, j, chains)


def conditional_family(rv: RateVector, i: int) -> ConditionalFamily:
    """Conditional laws of X_{i:n} given the minimum, as a shift family."""
    i = _validate_index(rv, i)
    if i == 1:
        raise ValueError("conditioning X_{1:n} on itself is degenerate; need i >= 2")
    return ConditionalFamily(spacing_law(rv, 1, i))


def exact_min_corr(rv: RateVector, i: int) -> float:
    """Pearson correlation of (X_{1:n}, X_{i:n}) from exact moments.

    With the spacing independent of the minimum,
    corr = sd(min) / sqrt(var(min) + var(spacing)).
    """
    i = _validate_index(rv, i)
    if i < 2:
        raise ValueError("the correlation pair needs i >= 2")
    var_min = 1.0 / rv.total_rate() ** 2
    var_sp = spacing_law(rv, 1, i).variance()
    return math.sqrt(var_min / (var_min + var_sp))


def sample_order_stats(rv: RateVector, stream: SampleStream, m: int) -> np.ndarray:
    """Matrix of m sorted samples: row k holds X_{1:n} <= ... <= X_{n:n}."""
    if m < 1:
        raise ValueError("sample size must be positive")
    u = stream.uniforms((int(m), rv.n))
    x = -np.log1p(-u) / np.asarray(rv.rates)[None, :]
    x.sort(axis=1)
    return x


def sample_min_pair(rv: RateVector, i: int, stream: SampleStream, m: int) -> np.ndarray:
    """(m, 2) matrix of joint draws of (X_{1:n}, X_{i:n})."""
    i = _validate_index(rv, i)
    mat = sample_order_stats(rv, stream, m)
    return np.column_stack((mat[:, 0], mat[:, i - 1]))


def sample_spacing(rv: RateVector, i: int, j: int, stream: SampleStream, m: int) -> np.ndarray:
    """Monte Carlo draws of X_{j:n} - X_{i:n} (works for any n)."""
    i = _validate_index(rv, i, "i")
    j = _validate_index(rv, j, "j")
    if not i < j:
        raise ValueError(f"spacing indices must satisfy i < j, got i={i}, j={j}")
    mat = sample_order_stats(rv, stream, m)
    return mat[:, j - 1] - mat[:, i - 1]
