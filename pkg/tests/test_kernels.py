"""Numba and fallback kernels must agree on every input."""
import numpy as np
import pytest
from hypothesis import given, settings

from conftest import connected_graphs, graphs
from distree import kernels as K
from distree.campaign import graph_from_mask


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=12))
def test_apsp_paths_agree(g):
    indptr, indices = g.csr
    a = K._apsp_nb_entry(g.adjacency_matrix, indptr, indices)
    b = K._apsp_np_entry(g.adjacency_matrix, indptr, indices)
    assert (a == b).all()


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=14))
def test_power_paths_agree(g):
    d = K._apsp_np(g.adjacency_matrix).astype(np.float64)
    r1 = K._power_nb(d, 1e-10, 100000)
    r2 = K._power_np(d, 1e-10, 100000)
    assert r1[4] and r2[4]
    assert abs(r1[0] - r2[0]) < 1e-9 and abs(r1[1] - r2[1]) < 1e-9


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_min_partition_paths_agree(g):
    c1, s1, r1 = K._min_partition_nb(g.adjacency_matrix, g.n)
    c2, s2, r2 = K._min_partition_py(g.adjacency_matrix, g.n)
    assert (c1, s1) == (c2, s2) and list(r1) == list(r2)


@pytest.mark.parametrize("n,stride", [(2, 1), (3, 1), (4, 1), (5, 1), (6, 7)])
def test_connected_masks_agree(n, stride):
    total = 1 << (n * (n - 1) // 2)
    a = K._connected_masks_nb(n, 0, total, stride)
    b = K._connected_masks_np(n, 0, total, stride)
    assert a.tolist() == b.tolist()


def test_spectral_sweep_agrees():
    masks = K._connected_masks_np(5, 0, 1 << 10, 1)
    a = K._spectral_sweep_nb(5, masks, 1e-10, 100000)
    b = K._spectral_sweep_np(5, masks, 1e-10, 100000)
    assert (a[0] == b[0]).all() and (a[1] == b[1]).all()
    assert np.allclose(a[2], b[2], atol=1e-9) and np.allclose(a[3], b[3], atol=1e-9)
    for t in (0, len(masks) // 2, len(masks) - 1):
        g = graph_from_mask(5, int(masks[t]))
        assert a[0][t] == g.m


@pytest.mark.parametrize("s,vmax", [(1, 8), (2, 6), (3, 4), (4, 3)])
def test_product_lemma_verdicts_agree(s, vmax):
    c1, f1, _, _ = K._product_lemma_nb(s, vmax)
    c2, f2, _, _ = K._product_lemma_np(s, vmax)
    assert c1 > 0 and c2 > 0
    assert (f1 == 0) == (f2 == 0)


def _product_lemma_oracle(s, vmax):
    # plain itertools enumeration with ordered tuples
    import itertools

    pairs = [(x, y) for x in range(vmax + 1) for y in range(vmax + 1) if x + y >= 2]
    fails = 0
    for tup in itertools.combinations_with_replacement(pairs, s):
        a = sum(x for x, _ in tup)
        b = sum(y for _, y in tup)
        if b >= a and sum(x * y for x, y in tup) > a * (b - (s - 1)):
            fails += 1
    return fails


@pytest.mark.parametrize("s,vmax", [(1, 5), (2, 4), (3, 3)])
def test_product_lemma_matches_oracle(s, vmax):
    assert K._product_lemma_nb(s, vmax)[1] == _product_lemma_oracle(s, vmax)
