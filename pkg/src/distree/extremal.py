"""The two extremal families and their exact distance spectral radii.

``G1_join`` is ``K_{k-1} v (K_{n-k} u K_1)``; ``G2_bipartite`` is
``K_{n/2,n/2}`` with the edges from one X-vertex to ``n/2-k+1`` Y-vertices
removed. Both have a small equitable distance partition, so the Perron root
of ``D`` is the largest root of a 3x3 / 4x4 integer quotient matrix. That
root is isolated with a Sturm sequence and bisected in exact rationals.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CrossCheckError, DistreeError, EquitabilityError, InvalidParameterError
from .graph import Graph, complete, complete_bipartite, delete_edges, disjoint_union, join
from .spectral import (
    DEFAULT_TOL,
    Comparison,
    DistanceMatrix,
    SpectralEstimate,
    apsp,
    compare_lt_value,
    rayleigh_lower_bound,
    rho_d,
)


class ExtremalFamily(str, enum.Enum):
    G1_JOIN = "G1_join"
    G2_BIPARTITE = "G2_bipartite"

    @classmethod
    def parse(cls, name: str) -> "ExtremalFamily":
        key = name.strip().lower()
        if key in ("g1", "g1_join"):
            return cls.G1_JOIN
        if key in ("g2", "g2_bipartite"):
            return cls.G2_BIPARTITE
        raise InvalidParameterError(f"unknown extremal family {name!r}")


@dataclass(frozen=True)
class ExtremalSpec:
    family: ExtremalFamily
    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", ExtremalFamily.parse(self.family) if isinstance(self.family, str) else self.family)
        if self.k < 2:
            raise InvalidParameterError(f"k must be >= 2, got {self.k}")
        if self.family is ExtremalFamily.G1_JOIN:
            if self.n < self.k + 1:
                raise InvalidParameterError(f"G1_join needs n >= k+1, got n={self.n}, k={self.k}")
        else:
            if self.n % 2 or self.n // 2 < self.k + 1:
                raise InvalidParameterError(
                    f"G2_bipartite needs even n with n/2 >= k+1, got n={self.n}, k={self.k}"
                )

    @property
    def lemma_min_n(self) -> int:
        """Smallest n covered by the radius bound for this family."""
        return 2 * self.k + 6 if self.family is ExtremalFamily.G1_JOIN else 4 * self.k + 4

    @property
    def in_hypothesis(self) -> bool:
        return self.n >= self.lemma_min_n

    @property
    def bound(self) -> Fraction:
        """Upper bound on the radius: n + 2, or 3n/2 + 1 for the bipartite family."""
        if self.family is ExtremalFamily.G1_JOIN:
            return Fraction(self.n + 2)
        return Fraction(3 * self.n, 2) + 1


def build_extremal(spec: ExtremalSpec) -> Graph:
    k, n = spec.k, spec.n
    if spec.family is ExtremalFamily.G1_JOIN:
        # K_{k-1} on 0..k-2, K_{n-k} on k-1..n-2, the pendant-side K_1 is n-1
        return join(complete(k - 1), disjoint_union(complete(n - k), complete(1)))
    half = n // 2
    base = complete_bipartite(half, half)
    return delete_edges(base, [(0, half + j) for j in range(half - k + 1)])


def extremal_blocks(spec: ExtremalSpec) -> list[list[int]]:
    """Orbit blocks fixed by the constructor's labelling."""
    k, n = spec.k, spec.n
    if spec.family is ExtremalFamily.G1_JOIN:
        return [list(range(k - 1)), list(range(k - 1, n - 1)), [n - 1]]
    half = n // 2
    cut = half + (half - k + 1)
    return [[0], list(range(1, half)), list(range(half, cut)), list(range(cut, n))]


# ---------------------------------------------------------------- quotient matrix


@dataclass(frozen=True)
class QuotientMatrix:
    sizes: tuple[int, ...]
    b: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.sizes)


def quotient_matrix(dm: DistanceMatrix, blocks: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Block row sums of ``D``; raises if some block row sum is not constant."""
    d = dm.d
    rows = []
    for i, bi in enumerate(blocks):
        row = []
        for j, bj in enumerate(blocks):
            sums = d[list(bi)][:, list(bj)].sum(axis=1)
            if sums.min() != sums.max():
                raise EquitabilityError(f"block pair ({i}, {j}) has row sums {sorted(set(sums.tolist()))}")
            row.append(int(sums[0]))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(len(b) for b in blocks), tuple(rows))


def charpoly(b: Sequence[Sequence[int]]) -> list[Fraction]:
    """Coefficients of det(xI - B), highest degree first (Faddeev-LeVerrier)."""
    n = len(b)
    a = [[Fraction(x) for x in row] for row in b]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def _peval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _pderiv(p: Sequence[Fraction]) -> list[Fraction]:
    deg = len(p) - 1
    return [c * (deg - i) for i, c in enumerate(p[:-1])]


def _prem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def sturm_sequence(p: Sequence[Fraction]) -> list[list[Fraction]]:
    seq = [list(p), _pderiv(p)]
    while True:
        r = _prem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append([-c for c in r])


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def roots_above(seq: list[list[Fraction]], x: Fraction) -> int:
    """Distinct real roots in ``(x, inf)``; ``x`` must not be a root."""
    at_x = _sign_changes(_peval(q, x) for q in seq)
    at_inf = _sign_changes(q[0] for q in seq)
    return at_x - at_inf


def largest_root(p: Sequence[Fraction], lo: Fraction, hi: Fraction, tol: Fraction) -> tuple[Fraction, Fraction, int]:
    """Bracket the largest real root of ``p`` known to lie in ``(lo, hi]``.

    Returns ``(a, b, steps)`` with the root in ``(a, b]`` and ``b - a <= tol``.
    """
    seq = sturm_sequence(p)
    nudge = Fraction(1, 2**90)
    while _peval(p, lo) == 0:
        lo -= nudge
    if roots_above(seq, lo) < 1:
        raise DistreeError("no root above the lower bracket")
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        while _peval(p, mid) == 0:
            mid += nudge
        if mid >= hi:
            break
        if roots_above(seq, mid) >= 1:
            lo = mid
        else:
            hi = mid
        steps += 1
    return lo, hi, steps


def perron_root_quotient(q: QuotientMatrix, floor: Fraction, ceil: Fraction, tol: float) -> SpectralEstimate:
    p = charpoly(q.b)
    a, b, steps = largest_root(p, floor - 1, ceil, Fraction(tol) / 2)
    lo = _down(a)
    hi = _up(b)
    resid = abs(float(_peval(p, (a + b) / 2)))
    return SpectralEstimate(lo, hi, 0.5 * (lo + hi), steps, resid)


def _down(q: Fraction) -> float:
    f = float(q)
    return f if Fraction(f) <= q else math.nextafter(f, -math.inf)


def _up(q: Fraction) -> float:
    f = float(q)
    return f if Fraction(f) >= q else math.nextafter(f, math.inf)


@dataclass(frozen=True)
class ExtremalRho:
    spec: ExtremalSpec
    quotient: QuotientMatrix
    exact: SpectralEstimate
    power: SpectralEstimate


def exact_rho_extremal_detail(spec: ExtremalSpec, tol: float = DEFAULT_TOL) -> ExtremalRho:
    g = build_extremal(spec)
    dm = apsp(g)
    q = quotient_matrix(dm, extremal_blocks(spec))
    floor = rayleigh_lower_bound(dm)
    ceil = Fraction(int(dm.row_sums.max()))
    exact = perron_root_quotient(q, floor, ceil, tol)
    power = rho_d(dm, tol)
    if not exact.overlaps(power, slack=2 * tol):
        raise CrossCheckError(
            f"{spec}: quotient [{exact.lo!r}, {exact.hi!r}] vs power [{power.lo!r}, {power.hi!r}]"
        )
    return ExtremalRho(spec, q, exact, power)


def exact_rho_extremal(spec: ExtremalSpec, tol: float = DEFAULT_TOL) -> SpectralEstimate:
    """Certified radius of an extremal graph from its quotient matrix.

    The full-matrix power iteration is run as a cross-check and must agree
    within ``2 * tol``.
    """
    return exact_rho_extremal_detail(spec, tol).exact


# ---------------------------------------------------------------- lemma sweeps


@dataclass(frozen=True)
class LemmaRow:
    family: str
    k: int
    n: int
    lo: Optional[float]
    hi: Optional[float]
    bound: Fraction
    verdict: str
    in_hypothesis: bool
    power_lo: Optional[float] = None
    power_hi: Optional[float] = None
    error: str = ""


def check_lemma_bounds(family, k_range: Iterable[int], n_range: Iterable[int], tol: float = DEFAULT_TOL) -> list[LemmaRow]:
    """One row per (k, n): certified interval against the family's bound.

    Rows below the lemma's order threshold are still computed and marked
    ``in_hypothesis=False``. Odd n is skipped for the bipartite family;
    invalid or failing rows carry an ERROR verdict instead of aborting.
    """
    fam = ExtremalFamily.parse(family) if isinstance(family, str) else family
    rows = []
    for k in k_range:
        for n in n_range:
            if fam is ExtremalFamily.G2_BIPARTITE and n % 2:
                continue
            try:
                spec = ExtremalSpec(fam, k, n)
            except InvalidParameterError as exc:
                bound = Fraction(n + 2) if fam is ExtremalFamily.G1_JOIN else Fraction(3 * n, 2) + 1
                rows.append(LemmaRow(fam.value, k, n, None, None, bound, "ERROR", False, error=str(exc)))
                continue
            try:
                res = exact_rho_extremal_detail(spec, tol)
            except DistreeError as exc:
                rows.append(LemmaRow(fam.value, k, n, None, None, spec.bound, "ERROR", spec.in_hypothesis, error=str(exc)))
                continue
            cmp = compare_lt_value(res.exact, spec.bound)
            verdict = {Comparison.HOLDS: "PASS", Comparison.FAILS: "FAIL"}.get(cmp, "INDETERMINATE")
            rows.append(
                LemmaRow(
                    fam.value, k, n, res.exact.lo, res.exact.hi, spec.bound, verdict,
                    spec.in_hypothesis, res.power.lo, res.power.hi,
                )
            )
    return rows
