"""Continuous distribution primitives.

Exponential, hypoexponential (sum of independent exponential stages), finite
mixtures, empirical laws, plus the uniform and Weibull families used as
baselines.  All distributions are immutable value objects; sampling draws
exclusively from an explicitly supplied :class:`~exorder.streams.SampleStream`,
so every Monte Carlo result is reproducible from its seed.

Numerical policy for the hypoexponential cdf: when all stage rates are well
separated the classical partial-fraction expansion is used; when any pair of
rates is close (relative gap below ``1e-6``) the expansion is ill-conditioned
and the cdf is evaluated instead by uniformization of the bidiagonal
phase-type generator with truncation error below ``1e-13``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.stats import poisson

from .streams import SampleStream

__all__ = [
    "ContinuousDist",
    "Exponential",
    "Hypoexponential",
    "FiniteMixture",
    "Empirical",
    "Uniform",
    "Weibull",
    "ShiftedDist",
    "ecdf",
    "ks_distance",
    "ks_critical_value",
]

_QUANTILE_ABS_TOL = 1e-12
_QUANTILE_MAX_ITER = 200
_PF_RELATIVE_GAP = 1e-6
_UNIFORMIZATION_TOL = 1e-13
# Smallest level accepted by the generic inversion sampler; draws below it are
# clamped to the lower support endpoint.
_MIN_LEVEL = 1e-300


def _bracket_bisect(cdf, u: np.ndarray, lower: float, scale: float) -> np.ndarray:
    """Solve ``cdf(x) = u`` elementwise for the generalized inverse.

    Brackets each root by geometric expansion from ``lower`` and then bisects
    to an absolute tolerance of ``max(1e-12, 1e-12 * |x|)``.  Returns the
    upper bracket end, so ``cdf(result) >= u`` holds exactly.
    """
    hi = np.full(u.shape, lower + scale, dtype=float)
    for _ in range(_QUANTILE_MAX_ITER):
        short = cdf(hi) < u
        if not short.any():
            break
        hi = np.where(short, lower + 2.0 * (hi - lower), hi)
    else:
        raise RuntimeError("failed to bracket quantile; cdf does not reach the requested level")
    lo = np.full(u.shape, lower, dtype=float)
    for _ in range(_QUANTILE_MAX_ITER):
        tol = np.maximum(_QUANTILE_ABS_TOL, _QUANTILE_ABS_TOL * np.abs(hi))
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        below = cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return hi


class ContinuousDist:
    """Common contract for the distribution objects in this package.

    Subclasses implement ``_cdf`` on 1-d arrays (and may override
    ``survival``, ``_quantile_closed``, ``_sample``); the public methods
    accept scalars or arrays and return matching shapes.
    """

    kind: str = "abstract"
    support_lower: float = 0.0

    # -- hooks ---------------------------------------------------------
    def _cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _quantile_closed(self, u: np.ndarray):
        """Closed-form inverse cdf, or ``None`` to fall back to bisection."""
        return None

    def _sample(self, stream: SampleStream, m: int) -> np.ndarray:
        u = np.maximum(stream.uniforms(m), _MIN_LEVEL)
        return self._quantile(u)

    def mean(self) -> float:
        raise NotImplementedError

    def variance(self) -> float:
        raise NotImplementedError

    def label(self) -> str:
        """Stable textual fingerprint, used to derive sampling streams."""
        raise NotImplementedError

    # -- public surface --------------------------------------------------
    def cdf(self, x):
        """P(X <= x), vectorized over ``x``."""
        x = np.asarray(x, dtype=float)
        res = self._cdf(np.atleast_1d(x))
        return float(res[0]) if x.ndim == 0 else res

    def survival(self, x):
        """P(X > x).  Overridden where a direct tail formula is stabler."""
        x = np.asarray(x, dtype=float)
        res = 1.0 - self._cdf(np.atleast_1d(x))
        return float(res[0]) if x.ndim == 0 else res

    def quantile(self, u):
        """Generalized inverse cdf at levels ``u`` in the open interval (0, 1)."""
        u = np.asarray(u, dtype=float)
        res = self._quantile(np.atleast_1d(u))
        return float(res[0]) if u.ndim == 0 else res

    def survival_inverse(self, s):
        """Smallest x with ``survival(x) <= s``, for ``s`` in (0, 1].

        The generic implementation inverts the cdf at ``1 - s``; subclasses
        with exact tail inverses override this to avoid cancellation near 1.
        """
        s = np.asarray(s, dtype=float)
        s1 = np.atleast_1d(s)
        if np.any((s1 <= 0.0) | (s1 > 1.0)):
            raise ValueError("survival levels must lie in (0, 1]")
        u = np.clip(1.0 - s1, _MIN_LEVEL, 1.0 - 1e-16)
        res = np.where(s1 >= 1.0, self.support_lower, self._quantile(u))
        return float(res[0]) if s.ndim == 0 else res

    def sample(self, stream: SampleStream, m: int) -> np.ndarray:
        """Draw ``m`` independent variates from ``stream``."""
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise ValueError(f"sample size must be a positive integer, got {m!r}")
        return self._sample(stream, int(m))

    # -- internals -------------------------------------------------------
    def _quantile(self, u: np.ndarray) -> np.ndarray:
        if np.any((u <= 0.0) | (u >= 1.0)):
            raise ValueError("quantile levels must lie strictly inside (0, 1)")
        closed = self._quantile_closed(u)
        if closed is not None:
            return closed
        key = u.tobytes()
        cache = self._quantile_cache
        hit = cache.get(key)
        if hit is None:
            hit = _bracket_bisect(self._cdf, u, self.support_lower, self._bracket_scale())
            cache[key] = hit
        return hit.copy()

    def _bracket_scale(self) -> float:
        return max(self.mean() - self.support_lower, 1e-9)

    @property
    def _quantile_cache(self) -> dict:
        cache = self.__dict__.get("_qcache")
        if cache is None:
            cache = {}
            self.__dict__["_qcache"] = cache
        return cache


@dataclass(frozen=True)
class Exponential(ContinuousDist):
    """Exponential law with the given hazard rate."""

    rate: float
    kind = "exponential"

    def __post_init__(self):
        object.__setattr__(self, "rate", float(self.rate))
        if not math.isfinite(self.rate) or self.rate <= 0.0:
            raise ValueError(f"rate must be a positive real, got {self.rate!r}")

    def _cdf(self, x):
        return np.where(x > 0.0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        res = np.exp(-self.rate * np.maximum(np.atleast_1d(x), 0.0))
        return float(res[0]) if x.ndim == 0 else res

    def _quantile_closed(self, u):
        return -np.log1p(-u) / self.rate

    def survival_inverse(self, s):
        s = np.asarray(s, dtype=float)
        s1 = np.atleast_1d(s)
        if np.any((s1 <= 0.0) | (s1 > 1.0)):
            raise ValueError("survival levels must lie in (0, 1]")
        res = -np.log(s1) / self.rate
        return float(res[0]) if s.ndim == 0 else res

    def _sample(self, stream, m):
        return -np.log1p(-stream.uniforms(m)) / self.rate

    def mean(self):
        return 1.0 / self.rate

    def variance(self):
        return 1.0 / self.rate**2

    def label(self):
        return f"exponential(rate={self.rate!r})"


def _partial_fraction_weights(rates: np.ndarray) -> np.ndarray:
    """Coefficients w_m with survival(t) = sum_m w_m exp(-r_m t)."""
    diff = rates[:, None] - rates[None, :]
    np.fill_diagonal(diff, 1.0)
    ratio = rates[:, None] / diff  # entry (l, m): r_l / (r_l - r_m)
    np.fill_diagonal(ratio, 1.0)
    return ratio.prod(axis=0)


def _uniformization_survival(rates: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Tail of a sum of exponential stages via uniformization.

    Robust for repeated or nearly-equal stage rates.  ``t`` must be positive.
    The transient-mass sequence v_k (probability the stage chain is still
    running after k uniformized jumps) is folded against Poisson weights;
    both truncations keep the absolute error below ``_UNIFORMIZATION_TOL``.
    """
    q = float(rates.max())
    qt = q * t
    kmax = int(poisson.isf(_UNIFORMIZATION_TOL, qt.max())) + 2
    advance = rates / q
    stay = 1.0 - advance
    w = np.zeros(len(rates))
    w[0] = 1.0
    v = [1.0]
    for _ in range(kmax):
        w = w * stay + np.concatenate(([0.0], (w * advance)[:-1]))
        total = float(w.sum())
        v.append(total)
        if total < _UNIFORMIZATION_TOL:
            break
    v = np.asarray(v)
    pmf = poisson.pmf(np.arange(v.size)[None, :], qt[:, None])
    return np.clip(pmf @ v, 0.0, 1.0)


@dataclass(frozen=True)
class Hypoexponential(ContinuousDist):
    """Sum of independent exponential stages with the given rates.

    The law is invariant under permutation of ``stage_rates``; repeated
    rates (Erlang blocks) are allowed.
    """

    stage_rates: tuple[float, ...]
    kind = "hypoexponential"

    def __post_init__(self):
        stages = tuple(float(r) for r in self.stage_rates)
        if not stages:
            raise ValueError("at least one stage rate is required")
        if any(not math.isfinite(r) or r <= 0.0 for r in stages):
            raise ValueError(f"stage rates must be positive reals, got {stages!r}")
        object.__setattr__(self, "stage_rates", stages)

    @cached_property
    def _rates_arr(self) -> np.ndarray:
        return np.asarray(self.stage_rates, dtype=float)

    @cached_property
    def _pf_weights(self):
        """Partial-fraction coefficients, or None when rates are too close."""
        r = self._rates_arr
        if r.size == 1:
            return np.array([1.0])
        gaps = np.abs(r[:, None] - r[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() <= _PF_RELATIVE_GAP * r.max():
            return None
        return _partial_fraction_weights(r)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        x1 = np.atleast_1d(x).astype(float)
        out = np.ones_like(x1)
        pos = x1 > 0.0
        if pos.any():
            out[pos] = self._survival_positive(x1[pos])
        return float(out[0]) if x.ndim == 0 else out

    def _survival_positive(self, t: np.ndarray) -> np.ndarray:
        w = self._pf_weights
        if w is not None:
            return np.clip(np.exp(-np.outer(t, self._rates_arr)) @ w, 0.0, 1.0)
        return _uniformization_survival(self._rates_arr, t)

    def _cdf(self, x):
        out = np.zeros_like(x, dtype=float)
        pos = x > 0.0
        if pos.any():
            out[pos] = 1.0 - self._survival_positive(x[pos])
        return out

    def _quantile_closed(self, u):
        if len(self.stage_rates) == 1:
            return -np.log1p(-u) / self.stage_rates[0]
        return None

    def _sample(self, stream, m):
        u = stream.uniforms((m, len(self.stage_rates)))
        return (-np.log1p(-u) / self._rates_arr[None, :]).sum(axis=1)

    def mean(self):
        return float(np.sum(1.0 / self._rates_arr))

    def variance(self):
        return float(np.sum(1.0 / self._rates_arr**2))

    def label(self):
        inner = ",".join(repr(r) for r in self.stage_rates)
        return f"hypoexponential({inner})"


@dataclass(frozen=True)
class FiniteMixture(ContinuousDist):
    """Finite mixture of component laws with fixed weights.

    ``components`` is a tuple of ``(weight, distribution)`` pairs; weights
    must lie in (0, 1] and sum to 1 within 1e-12.
    """

    components: tuple[tuple[float, ContinuousDist], ...]
    kind = "mixture"

    def __post_init__(self):
        comps = tuple((float(w), c) for w, c in self.components)
        if not comps:
            raise ValueError("a mixture needs at least one component")
        if any(w <= 0.0 or w > 1.0 for w, _ in comps):
            raise ValueError("mixture weights must lie in (0, 1]")
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {total!r}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(
            self, "support_lower", min(c.support_lower for _, c in comps)
        )

    def _cdf(self, x):
        out = np.zeros_like(x, dtype=float)
        for w, comp in self.components:
            out += w * comp._cdf(x)
        return out

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        x1 = np.atleast_1d(x)
        out = np.zeros_like(x1, dtype=float)
        for w, comp in self.components:
            out += w * np.atleast_1d(comp.survival(x1))
        return float(out[0]) if x.ndim == 0 else out

    def _sample(self, stream, m):
        cum = np.cumsum([w for w, _ in self.components])
        pick = np.searchsorted(cum, stream.uniforms(m), side="right")
        pick = np.minimum(pick, len(self.components) - 1)
        out = np.empty(m, dtype=float)
        for idx, (_, comp) in enumerate(self.components):
            mask = pick == idx
            count = int(mask.sum())
            if count:
                out[mask] = comp._sample(stream, count)
        return out

    def mean(self):
        return math.fsum(w * c.mean() for w, c in self.components)

    def variance(self):
        second = math.fsum(w * (c.variance() + c.mean() ** 2) for w, c in self.components)
        return second - self.mean() ** 2

    def label(self):
        inner = ";".join(f"{w!r}*{c.label()}" for w, c in self.components)
        return f"mixture({inner})"


@dataclass(frozen=True)
class Empirical(ContinuousDist):
    """Empirical law of a finite sample (step cdf, left-continuous inverse)."""

    points: tuple[float, ...]
    kind = "empirical"

    def __post_init__(self):
        pts = np.sort(np.asarray(self.points, dtype=float))
        if pts.size == 0:
            raise ValueError("empirical law of an empty sample is undefined")
        if not np.all(np.isfinite(pts)):
            raise ValueError("sample points must be finite")
        object.__setattr__(self, "points", tuple(pts.tolist()))
        object.__setattr__(self, "_pts_arr", pts)
        object.__setattr__(self, "support_lower", float(pts[0]))

    def _cdf(self, x):
        return np.searchsorted(self._pts_arr, x, side="right") / self._pts_arr.size

    def _quantile_closed(self, u):
        m = self._pts_arr.size
        idx = np.ceil(u * m).astype(int) - 1
        return self._pts_arr[np.clip(idx, 0, m - 1)]

    def mean(self):
        return float(self._pts_arr.mean())

    def variance(self):
        return float(self._pts_arr.var())

    def label(self):
        return f"empirical(m={self._pts_arr.size})"


@dataclass(frozen=True)
class Uniform(ContinuousDist):
    """Uniform law on the interval [lower, upper]."""

    lower: float = 0.0
    upper: float = 1.0
    kind = "uniform"

    def __post_init__(self):
        object.__setattr__(self, "lower", float(self.lower))
        object.__setattr__(self, "upper", float(self.upper))
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("interval endpoints must be finite")
        if self.upper <= self.lower:
            raise ValueError(f"need lower < upper, got [{self.lower!r}, {self.upper!r}]")
        object.__setattr__(self, "support_lower", self.lower)

    def _cdf(self, x):
        return np.clip((x - self.lower) / (self.upper - self.lower), 0.0, 1.0)

    def _quantile_closed(self, u):
        return self.lower + u * (self.upper - self.lower)

    def survival_inverse(self, s):
        s = np.asarray(s, dtype=float)
        s1 = np.atleast_1d(s)
        if np.any((s1 <= 0.0) | (s1 > 1.0)):
            raise ValueError("survival levels must lie in (0, 1]")
        res = self.upper - s1 * (self.upper - self.lower)
        return float(res[0]) if s.ndim == 0 else res

    def mean(self):
        return 0.5 * (self.lower + self.upper)

    def variance(self):
        return (self.upper - self.lower) ** 2 / 12.0

    def label(self):
        return f"uniform({self.lower!r},{self.upper!r})"


@dataclass(frozen=True)
class Weibull(ContinuousDist):
    """Weibull law with survival exp(-(x / scale)**shape)."""

    shape: float
    scale: float = 1.0
    kind = "weibull"

    def __post_init__(self):
        object.__setattr__(self, "shape", float(self.shape))
        object.__setattr__(self, "scale", float(self.scale))
        if self.shape <= 0.0 or self.scale <= 0.0:
            raise ValueError("shape and scale must be positive")

    def _cdf(self, x):
        z = np.maximum(x, 0.0) / self.scale
        return np.where(x > 0.0, -np.expm1(-(z**self.shape)), 0.0)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        z = np.maximum(np.atleast_1d(x), 0.0) / self.scale
        res = np.exp(-(z**self.shape))
        return float(res[0]) if x.ndim == 0 else res

    def _quantile_closed(self, u):
        return self.scale * (-np.log1p(-u)) ** (1.0 / self.shape)

    def survival_inverse(self, s):
        s = np.asarray(s, dtype=float)
        s1 = np.atleast_1d(s)
        if np.any((s1 <= 0.0) | (s1 > 1.0)):
            raise ValueError("survival levels must lie in (0, 1]")
        res = self.scale * (-np.log(s1)) ** (1.0 / self.shape)
        return float(res[0]) if s.ndim == 0 else res

    def mean(self):
        return self.scale * math.gamma(1.0 + 1.0 / self.shape)

    def variance(self):
        g1 = math.gamma(1.0 + 1.0 / self.shape)
        g2 = math.gamma(1.0 + 2.0 / self.shape)
        return self.scale**2 * (g2 - g1**2)

    def label(self):
        return f"weibull(shape={self.shape!r},scale={self.scale!r})"


@dataclass(frozen=True)
class ShiftedDist(ContinuousDist):
    """A base law translated by a fixed offset."""

    base: ContinuousDist
    shift: float
    kind = "shifted"

    def __post_init__(self):
        object.__setattr__(self, "shift", float(self.shift))
        if not math.isfinite(self.shift):
            raise ValueError("shift must be finite")
        object.__setattr__(self, "support_lower", self.base.support_lower + self.shift)

    def _cdf(self, x):
        return self.base._cdf(x - self.shift)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        res = np.atleast_1d(self.base.survival(np.atleast_1d(x) - self.shift))
        return float(res[0]) if x.ndim == 0 else res

    def _quantile_closed(self, u):
        return self.shift + self.base._quantile(u)

    def _sample(self, stream, m):
        return self.shift + self.base._sample(stream, m)

    def mean(self):
        return self.base.mean() + self.shift

    def variance(self):
        return self.base.variance()

    def label(self):
        return f"shift({self.base.label()},{self.shift!r})"


def ecdf(sample) -> Empirical:
    """Empirical law of a 1-d sample."""
    arr = np.asarray(sample, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("empirical law of an empty sample is undefined")
    return Empirical(tuple(arr.tolist()))


def ks_distance(sample, cdf) -> float:
    """Kolmogorov–Smirnov distance between a sample and a reference cdf.

    ``cdf`` is a callable evaluated vectorized on the sorted sample.
    """
    pts = np.sort(np.asarray(sample, dtype=float).ravel())
    m = pts.size
    if m == 0:
        raise ValueError("cannot compute a KS distance for an empty sample")
    ref = np.asarray(cdf(pts), dtype=float)
    grid = np.arange(1, m + 1) / m
    return float(max(np.max(grid - ref), np.max(ref - (grid - 1.0 / m))))


def ks_critical_value(m: int, alpha: float = 0.01) -> float:
    """One-sample KS critical value sqrt(ln(2/alpha) / 2) / sqrt(m).

    At the default 1% level the constant is about 1.63.
    """
    if m < 1:
        raise ValueError("sample size must be positive")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    return math.sqrt(math.log(2.0 / alpha) / 2.0) / math.sqrt(m)
