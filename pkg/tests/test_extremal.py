from fractions import Fraction

import numpy as np
import pytest

from distree.errors import EquitabilityError, InvalidParameterError
from distree.extremal import (
    ExtremalFamily,
    ExtremalSpec,
    build_extremal,
    charpoly,
    check_lemma_bounds,
    exact_rho_extremal,
    exact_rho_extremal_detail,
    extremal_blocks,
    largest_root,
    quotient_matrix,
)
from distree.graph import classify, path
from distree.packing import nu_f_exact, tau, tau_packing
from distree.spectral import apsp, rho_d

G1, G2 = ExtremalFamily.G1_JOIN, ExtremalFamily.G2_BIPARTITE


def test_build_counts():
    g = build_extremal(ExtremalSpec(G1, 2, 12))
    assert (g.n, g.m, classify(g).min_degree) == (12, 56, 1)
    g = build_extremal(ExtremalSpec(G2, 2, 12))
    assert g.m == 31 and g.degree(0) == 1
    assert build_extremal(ExtremalSpec(G1, 3, 14)).m == 80


@pytest.mark.parametrize("family,k,n", [(G1, 1, 5), (G1, 3, 3), (G2, 2, 7), (G2, 4, 8)])
def test_spec_validation(family, k, n):
    with pytest.raises(InvalidParameterError):
        ExtremalSpec(family, k, n)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("offset", [0, 1, 5])
def test_structure(k, offset):
    g1 = build_extremal(ExtremalSpec(G1, k, 2 * k + 6 + offset))
    d1 = apsp(g1).d
    assert sorted(g1.degrees).count(k - 1) == 1 and d1.max() == 2
    n2 = 4 * k + 4 + 2 * offset
    g2 = build_extremal(ExtremalSpec(G2, k, n2))
    d2 = apsp(g2).d
    assert list(g2.degrees).count(k - 1) == 1 and d2.max() == 3
    assert classify(g2).is_balanced_bipartite


def test_charpoly_matches_numpy():
    rng = np.random.default_rng(3)
    for size in (2, 3, 4):
        b = rng.integers(0, 9, size=(size, size))
        ours = [float(c) for c in charpoly(b.tolist())]
        assert np.allclose(ours, np.poly(b), rtol=1e-9, atol=1e-6)


def test_largest_root_picks_top_root():
    # (x - 1)(x - 2)(x - 3): every root lies in the bracket
    p = [Fraction(c) for c in (1, -6, 11, -6)]
    a, b, _ = largest_root(p, Fraction(0), Fraction(10), Fraction(1, 10**12))
    assert a < 3 <= b and b - a <= Fraction(1, 10**12)
    # root exactly at a dyadic bisection point
    p = [Fraction(1), Fraction(-4)]
    a, b, _ = largest_root(p, Fraction(0), Fraction(8), Fraction(1, 10**9))
    assert a < 4 <= b


def test_quotient_rejects_non_equitable():
    dm = apsp(path(4))
    with pytest.raises(EquitabilityError):
        quotient_matrix(dm, [[0, 1], [2, 3]])


@pytest.mark.parametrize("family,k,n", [(G1, 2, 12), (G2, 2, 12), (G1, 3, 14), (G2, 3, 20)])
def test_exact_rho_agrees_with_power(family, k, n):
    res = exact_rho_extremal_detail(ExtremalSpec(family, k, n))
    assert res.exact.width <= 1e-9 and res.power.width <= 1e-9
    assert res.exact.overlaps(res.power, slack=2e-9)
    ref = np.linalg.eigvalsh(apsp(build_extremal(res.spec)).d.astype(float))[-1]
    assert res.exact.lo - 1e-10 <= ref <= res.exact.hi + 1e-10
    assert res.quotient.order == len(extremal_blocks(res.spec))
    assert sum(res.quotient.sizes) == n


def test_point_values_against_bounds():
    g1 = exact_rho_extremal(ExtremalSpec(G1, 2, 12))
    assert 11 < g1.lo and g1.hi < 14
    g2 = exact_rho_extremal(ExtremalSpec(G2, 2, 12))
    assert g2.hi < 19


def test_lemma_sweeps_small():
    rows = check_lemma_bounds("g1", [2], range(10, 41))
    assert len(rows) == 31 and all(r.verdict == "PASS" and r.in_hypothesis for r in rows)
    rows = check_lemma_bounds("g2", [3], range(16, 41, 2))
    assert len(rows) == 13 and all(r.verdict == "PASS" for r in rows)


def test_out_of_hypothesis_row_is_flagged():
    (row,) = check_lemma_bounds("g1", [2], [8])
    assert not row.in_hypothesis
    assert row.verdict in ("PASS", "FAIL", "INDETERMINATE")
    assert row.lo is not None


def test_invalid_row_does_not_abort():
    rows = check_lemma_bounds("g2", [5], [8, 10, 40])
    assert [r.verdict for r in rows] == ["ERROR", "ERROR", "PASS"]


@pytest.mark.parametrize("k,n", [(2, 10), (2, 11), (2, 12)])
def test_g1_is_extremal_for_packing(k, n):
    g = build_extremal(ExtremalSpec(G1, k, n))
    nu, _ = nu_f_exact(g)
    assert k - 1 <= nu < k
    assert tau(g) == k - 1
    assert not tau_packing(g, k).found
