"""Distance matrices, Wiener index and certified distance spectral radius."""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import ConvergenceError, DisconnectedGraphError, ModeMismatchError
from .graph import Graph, classify

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000

_EPS = sys.float_info.epsilon


class BoundMode(str, enum.Enum):
    GENERAL = "general"
    BALANCED_BIPARTITE = "balanced_bipartite"


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Shortest-path distances of a connected graph (read-only int64 array)."""

    d: np.ndarray

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __eq__(self, other):
        return isinstance(other, DistanceMatrix) and np.array_equal(self.d, other.d)

    @property
    def row_sums(self) -> np.ndarray:
        return self.d.sum(axis=1)


@dataclass(frozen=True)
class SpectralEstimate:
    """Interval ``[lo, hi]`` certified to contain the Perron root."""

    lo: float
    hi: float
    value: float
    iterations: int
    residual: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "SpectralEstimate", slack: float = 0.0) -> bool:
        return self.lo <= other.hi + slack and other.lo <= self.hi + slack


def apsp(g: Graph) -> DistanceMatrix:
    indptr, indices = g.csr
    dist = kernels.apsp_kernel(g.adjacency_matrix, indptr, indices)
    bad = np.argwhere(dist < 0)
    if bad.size:
        u, v = (int(x) for x in bad[0])
        raise DisconnectedGraphError(u, v)
    dist.flags.writeable = False
    return DistanceMatrix(dist)


def wiener(dm: DistanceMatrix) -> int:
    return int(dm.d.sum()) // 2


def rayleigh_lower_bound(dm: DistanceMatrix) -> Fraction:
    """``2W/n``: the Rayleigh quotient of the all-ones vector."""
    return Fraction(2 * wiener(dm), dm.n)


def rho_d(dm: DistanceMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralEstimate:
    """Power iteration from the all-ones vector with a two-sided certificate.

    ``lo`` is the best Rayleigh quotient seen and ``hi`` the smallest
    Collatz-Wielandt ratio ``max_i (Dx)_i / x_i``. Both are widened by a
    floating-point rounding margin and clipped to the a-priori bracket
    ``[2W/n, max row sum]``. Raises :class:`ConvergenceError` carrying the
    current interval if ``hi - lo`` is still above ``tol`` after
    ``max_iter`` steps.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = dm.n
    if n == 1:
        return SpectralEstimate(0.0, 0.0, 0.0, 0, 0.0)
    d = dm.d.astype(np.float64)
    lo, hi, iters, resid, ok = kernels.power_kernel(d, float(tol), int(max_iter))
    floor = rayleigh_lower_bound(dm)
    ceil = int(dm.row_sums.max())
    margin = 4.0 * n * _EPS * ceil
    lo = max(lo - margin, _round_down(floor))
    hi = min(hi + margin, float(ceil))
    if hi < lo:  # both bounds pinned to the same exact value
        hi = lo
    est = SpectralEstimate(lo, hi, 0.5 * (lo + hi), int(iters), float(resid))
    if not ok and est.width > tol:
        raise ConvergenceError(est)
    return est


def _round_down(q: Fraction) -> float:
    f = float(q)
    return f if Fraction(f) <= q else math.nextafter(f, -math.inf)


def _round_up(q: Fraction) -> float:
    f = float(q)
    return f if Fraction(f) >= q else math.nextafter(f, math.inf)


class Comparison(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"


def compare_le(a: SpectralEstimate, b: SpectralEstimate) -> Comparison:
    """Decide ``rho(a) <= rho(b)`` from intervals, conservatively."""
    if a.hi <= b.lo:
        return Comparison.HOLDS
    if a.lo > b.hi:
        return Comparison.FAILS
    return Comparison.INDETERMINATE


def compare_lt_value(a: SpectralEstimate, bound) -> Comparison:
    """Decide ``rho(a) < bound`` for an exact rational/integer ``bound``."""
    bound = Fraction(bound)
    if Fraction(a.hi) < bound:
        return Comparison.HOLDS
    if Fraction(a.lo) >= bound:
        return Comparison.FAILS
    return Comparison.INDETERMINATE


def wiener_degree_bound(g: Graph, mode: BoundMode | str = BoundMode.GENERAL) -> Fraction:
    """Degree-based lower bound on the Wiener index.

    General: non-adjacent pairs are at distance >= 2, giving ``n(n-1) - m``.
    Balanced bipartite: same-side pairs are at distance >= 2 and non-adjacent
    cross pairs at >= 3, giving ``(5n/2 - 2) n / 2 - 2m``.
    """
    mode = BoundMode(mode)
    n, m = g.n, g.m
    if mode is BoundMode.GENERAL:
        return Fraction(n * (n - 1) - m)
    if not classify(g).is_balanced_bipartite:
        raise ModeMismatchError("balanced_bipartite bound requested for a graph that is not balanced bipartite")
    return (Fraction(5 * n, 2) - 2) * Fraction(n, 2) - 2 * m


def spectral_edge_bound(n: int, mode: BoundMode | str = BoundMode.GENERAL) -> Fraction:
    """Edge count forced by a small distance spectral radius.

    If ``rho_D < n + 2`` then ``m > n(n-4)/2``; for balanced bipartite graphs,
    ``rho_D < 3n/2 + 1`` forces ``m > n(n-3)/4``.
    """
    mode = BoundMode(mode)
    if mode is BoundMode.GENERAL:
        return Fraction(n * (n - 4), 2)
    return Fraction(n * (n - 3), 4)


def spectral_ceiling(n: int, mode: BoundMode | str = BoundMode.GENERAL) -> Fraction:
    """The radius below which :func:`spectral_edge_bound` applies."""
    mode = BoundMode(mode)
    return Fraction(n + 2) if mode is BoundMode.GENERAL else Fraction(3 * n, 2) + 1


def rho_lower_from_edges(n: int, m: int, mode: BoundMode | str = BoundMode.GENERAL) -> Fraction:
    """``2(n-1) - 2m/n`` (general) or ``5n/2 - 2 - 4m/n`` (balanced bipartite)."""
    mode = BoundMode(mode)
    if mode is BoundMode.GENERAL:
        return 2 * Fraction(n - 1) - Fraction(2 * m, n)
    return Fraction(5 * n, 2) - 2 - Fraction(4 * m, n)


def chain_check(n: int, m: int, hi: float, mode: BoundMode | str = BoundMode.GENERAL) -> bool | None:
    """Edge-count consequence of a small radius.

    Returns None when ``hi`` does not certify the radius is below the
    ceiling (nothing to check), else whether ``m`` exceeds the threshold.
    """
    if not Fraction(hi) < spectral_ceiling(n, mode):
        return None
    return m > spectral_edge_bound(n, mode)
