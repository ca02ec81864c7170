"""Grid-certified checkers for stochastic orderings.

Each checker evaluates the defining inequality of an order on a finite,
deterministic grid and returns an :class:`OrderVerdict` quantifying the
worst signed violation and where it occurs.  A verdict is a certificate
about the grid only; the grids default to fine regular lattices in (0, 1).

Conventions (F first, G second):

* ``check_st``    — F <= G in the usual stochastic order: G's cdf never
  exceeds F's.
* ``check_disp``  — F <= G in dispersion: the quantile difference
  G^{-1}(u) - F^{-1}(u) is nondecreasing in u.
* ``check_star``  — F <= G in the star order: the quantile ratio
  G^{-1}(u) / F^{-1}(u) is nondecreasing in u (positive supports).
* ``check_more_si`` — pair 2 is more stochastically increasing than pair 1
  (written pair1 ≺ pair2): for every p < q and every u,
  H2_{x2(q)}(H2_{x2(p)}^{-1}(u)) is no larger than
  H1_{x1(q)}(H1_{x1(p)}^{-1}(u)), where x(p) is the p-quantile of the
  relevant first coordinate and H the conditional family.  Smaller
  compositions mean stronger monotone regression dependence (a comonotone
  pair has composition 0, an independent pair has composition u).
* ``check_pqd``   — copula 1 sits pointwise below copula 2 on a shared
  lattice (pair 2 is more positive-quadrant dependent).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridSpec",
    "OrderVerdict",
    "FixedConditional",
    "DEFAULT_GRID",
    "check_st",
    "check_disp",
    "check_star",
    "check_more_si",
    "check_pqd",
]

DEFAULT_TOLERANCE = 1e-9
SI_DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class GridSpec:
    """Regular evaluation grids in the open unit interval.

    ``u_points`` interior levels k/(u_points+1) for quantile curves, and
    ``pq_points`` levels for the (p, q) marginal pairs of the SI check.
    """

    u_points: int = 199
    pq_points: int = 19

    def __post_init__(self):
        if not (isinstance(self.u_points, int) and self.u_points >= 2):
            raise ValueError(f"u_points must be an integer >= 2, got {self.u_points!r}")
        if not (isinstance(self.pq_points, int) and self.pq_points >= 2):
            raise ValueError(f"pq_points must be an integer >= 2, got {self.pq_points!r}")

    def u_grid(self) -> np.ndarray:
        return np.arange(1, self.u_points + 1) / (self.u_points + 1)

    def pq_grid(self) -> np.ndarray:
        return np.arange(1, self.pq_points + 1) / (self.pq_points + 1)

    def describe(self) -> str:
        return f"u:{self.u_points}/{self.u_points + 1};pq:{self.pq_points}/{self.pq_points + 1}"


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of one order check on one grid.

    ``holds`` is exactly ``max_violation <= tolerance``; ``witness`` is the
    grid point attaining the worst signed gap (reported even when the order
    holds).
    """

    order_name: str
    holds: bool
    max_violation: float
    witness: tuple[float, ...]
    grid: str
    tolerance: float

    def __post_init__(self):
        if self.max_violation < 0.0:
            raise ValueError("max_violation must be nonnegative")
        if self.holds != (self.max_violation <= self.tolerance):
            raise ValueError("holds must equal (max_violation <= tolerance)")

    def to_dict(self) -> dict:
        return {
            "order": self.order_name,
            "holds": self.holds,
            "max_violation": self.max_violation,
            "witness": list(self.witness),
            "grid": self.grid,
            "tolerance": self.tolerance,
        }


class FixedConditional:
    """A conditional family that ignores the conditioning value.

    Models an independent pair: every conditional law equals ``base``.
    Useful as the trivially-least-SI reference in tests.
    """

    def __init__(self, base):
        self.base = base

    def at(self, x):
        return self.base

    def cond_cdf(self, x, y):
        return self.base.cdf(y)

    def cond_quantile(self, x, u):
        return self.base.quantile(u)


def _verdict(name, signed_gaps, witness_of, grid_desc, tolerance) -> OrderVerdict:
    """Assemble a verdict from an array of signed gaps (positive = violation)."""
    flat = np.asarray(signed_gaps, dtype=float).ravel()
    k = int(np.argmax(flat))
    violation = float(max(flat[k], 0.0))
    return OrderVerdict(
        order_name=name,
        holds=violation <= tolerance,
        max_violation=violation,
        witness=witness_of(k),
        grid=grid_desc,
        tolerance=float(tolerance),
    )


def check_st(F, G, grid: GridSpec = DEFAULT_GRID, tolerance: float = DEFAULT_TOLERANCE) -> OrderVerdict:
    """Check F <= G in the usual stochastic order.

    The cdfs are compared on the pooled quantile grid of both laws; the
    signed gap is G.cdf(x) - F.cdf(x).
    """
    u = grid.u_grid()
    xs = np.unique(np.concatenate([F.quantile(u), G.quantile(u)]))
    gaps = G.cdf(xs) - F.cdf(xs)
    return _verdict("st", gaps, lambda k: (float(xs[k]),), grid.describe(), tolerance)


def check_disp(F, G, grid: GridSpec = DEFAULT_GRID, tolerance: float = DEFAULT_TOLERANCE) -> OrderVerdict:
    """Check F <= G in dispersion: quantile differences nondecreasing."""
    u = grid.u_grid()
    delta = G.quantile(u) - F.quantile(u)
    drops = delta[:-1] - delta[1:]
    return _verdict(
        "disp",
        drops,
        lambda k: (float(u[k]), float(u[k + 1])),
        grid.describe(),
        tolerance,
    )


def check_star(F, G, grid: GridSpec = DEFAULT_GRID, tolerance: float = DEFAULT_TOLERANCE) -> OrderVerdict:
    """Check F <= G in the star order: quantile ratios nondecreasing.

    Both supports must be strictly positive at every grid level.
    """
    u = grid.u_grid()
    qf = F.quantile(u)
    qg = G.quantile(u)
    if np.any(qf <= 0.0) or np.any(qg <= 0.0):
        raise ValueError("the star order needs strictly positive quantiles on the grid")
    ratio = qg / qf
    drops = ratio[:-1] - ratio[1:]
    return _verdict(
        "star",
        drops,
        lambda k: (float(u[k]), float(u[k + 1])),
        grid.describe(),
        tolerance,
    )


def check_more_si(
    fam1,
    marg1,
    fam2,
    marg2,
    grid: GridSpec = DEFAULT_GRID,
    tolerance: float = SI_DEFAULT_TOLERANCE,
) -> OrderVerdict:
    """Check that pair 2 is more stochastically increasing than pair 1.

    ``fam1``/``fam2`` expose ``cond_cdf(x, y)`` and ``cond_quantile(x, u)``;
    ``marg1``/``marg2`` are the laws of the respective first coordinates.
    For each p < q on the pq-grid and each u on the u-grid the signed gap is

        H2_{x2q}(H2_{x2p}^{-1}(u)) - H1_{x1q}(H1_{x1p}^{-1}(u)),

    which must stay below tolerance for the order to hold.  If pair 1 has
    independent components its composition is exactly u, so the check then
    asserts that pair 2 is stochastically increasing.
    """
    u = grid.u_grid()
    ps = grid.pq_grid()
    x1 = marg1.quantile(ps)
    x2 = marg2.quantile(ps)
    worst = -np.inf
    witness = (float(ps[0]), float(ps[1]), float(u[0]))
    for a in range(ps.size - 1):
        for b in range(a + 1, ps.size):
            lhs = fam2.cond_cdf(x2[b], fam2.cond_quantile(x2[a], u))
            rhs = fam1.cond_cdf(x1[b], fam1.cond_quantile(x1[a], u))
            gaps = lhs - rhs
            k = int(np.argmax(gaps))
            if gaps[k] > worst:
                worst = float(gaps[k])
                witness = (float(ps[a]), float(ps[b]), float(u[k]))
    violation = max(worst, 0.0)
    return OrderVerdict(
        order_name="more_si",
        holds=violation <= tolerance,
        max_violation=violation,
        witness=witness,
        grid=grid.describe(),
        tolerance=float(tolerance),
    )


def check_pqd(c1, c2, tolerance: float | None = None) -> OrderVerdict:
    """Check that copula ``c1`` lies pointwise below ``c2`` on the lattice.

    This is the positive-quadrant-dependence comparison: pair 2 is at least
    as PQD as pair 1.  The default tolerance is the sum of the grids'
    confidence radii, so two honestly-estimated empirical copulas are
    compared at their joint resolution of statistical noise.
    """
    if c1.resolution != c2.resolution or not np.array_equal(c1.u, c2.u):
        raise ValueError("copula grids must share the same lattice")
    if tolerance is None:
        tolerance = c1.confidence_radius + c2.confidence_radius
    gaps = c1.values - c2.values
    res = c1.resolution

    def witness_of(k: int) -> tuple[float, ...]:
        return (float(c1.u[k // res]), float(c1.u[k % res]))

    return _verdict("pqd", gaps, witness_of, f"lattice:{res}", float(tolerance))
