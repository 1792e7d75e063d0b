"""Acceptance criteria 1-10, one recorded PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v -s``; the summary is
printed at the end of the session under "acceptance criteria".
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from distree.campaign import (
    CampaignConfig,
    Model,
    exhaustive_spectral_sweep,
    graph_from_mask,
    instance_seed,
    random_graph,
    run_campaign,
    small_graph_masks,
)
from distree.extremal import check_lemma_bounds
from distree.graph import classify, complete, cycle, path
from distree.packing import (
    PStatus,
    check_p_certificate,
    nu_f_exact,
    tau,
    tau_packing,
    validate_trees,
    verify_P,
)
from distree.spectral import BoundMode, apsp, chain_check, rayleigh_lower_bound, rho_d

SEED = 20240601
# labelled connected graphs on 2..6 vertices
CONNECTED_UP_TO_6 = 1 + 4 + 38 + 728 + 26704
_cache = {}


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _random_suite():
    if "random" not in _cache:
        rng = np.random.default_rng(SEED)
        suite = []
        for i in range(1000):
            n = int(rng.integers(2, 31))
            p = float(rng.uniform(0.05, 0.95))
            suite.append(random_graph(n, 1, Model.GNP, p, instance_seed(SEED, i)))
        _cache["random"] = suite
    return _cache["random"]


def _config(name):
    base = {
        "thm_main1": {"campaign": "thm_main1", "k_values": [2], "n_values": [12, 14], "sample_count": 500, "seed": SEED},
        "thm_main2": {"campaign": "thm_main2", "k_values": [2], "n_values": [16, 20], "sample_count": 500, "seed": SEED},
        "tree_packing_equiv": {"campaign": "tree_packing_equiv", "max_enum_n": 6, "k_values": [1, 2, 3]},
        "fang_yang": {"campaign": "fang_yang", "max_enum_n": 6, "k_values": [1, 2], "d_values": [1, 2, 3]},
        "lemma_bounds": {"campaign": "lemma_bounds", "k_values": [2, 3, 4, 5]},
        "comb_lemmas": {"campaign": "comb_lemmas", "a_max": 200, "s_max": 5, "value_max": 12},
    }[name]
    return CampaignConfig.from_dict(base)


def _report(name):
    if name not in _cache:
        _cache[name] = _timed(lambda: run_campaign(_config(name)))
    return _cache[name]


def _sweep(family, bound_of):
    rows, secs = _timed(lambda: [r for k in range(2, 6) for r in check_lemma_bounds(
        family, [k], range(2 * k + 6 if family == "g1" else 4 * k + 4, 41))])
    bad = []
    for r in rows:
        width = r.hi - r.lo
        agree = abs((r.lo + r.hi) / 2 - (r.power_lo + r.power_hi) / 2)
        if r.verdict != "PASS" or not r.hi < bound_of(r.n) or width > 1e-9 or agree > 2e-9:
            bad.append((r.k, r.n, r.verdict, width, agree))
    return rows, secs, bad


def test_criterion_1_g1_sweep(criterion):
    rows, secs, bad = _sweep("g1", lambda n: n + 2)
    expected = sum(41 - (2 * k + 6) for k in range(2, 6))
    ok = not bad and len(rows) == expected and secs < 30
    assert criterion(1, ok, f"{len(rows)} rows, {len(bad)} bad, {secs:.1f}s"), bad[:5]


def test_criterion_2_g2_sweep(criterion):
    rows, secs, bad = _sweep("g2", lambda n: 1.5 * n + 1)
    expected = sum(len(range(4 * k + 4, 41, 2)) for k in range(2, 6))
    ok = not bad and len(rows) == expected and secs < 30
    assert criterion(2, ok, f"{len(rows)} rows, {len(bad)} bad, {secs:.1f}s"), bad[:5]


def test_criterion_3_rayleigh(criterion):
    sweeps = [exhaustive_spectral_sweep(n, slack=1e-9) for n in range(2, 8)]
    _cache["sweeps"] = sweeps
    exhaustive_bad = sum(s.rayleigh_violations + s.nonconverged for s in sweeps)
    random_bad = 0
    for g in _random_suite():
        dm = apsp(g)
        est = rho_d(dm)
        floor = float(rayleigh_lower_bound(dm))
        top = np.linalg.eigvalsh(dm.d.astype(float))[-1]
        if floor > est.lo + 1e-9 or not est.lo - 1e-9 <= top <= est.hi + 1e-9:
            random_bad += 1
    equality_bad = 0
    for g in [cycle(n) for n in range(3, 21)] + [complete(n) for n in range(2, 21)]:
        dm = apsp(g)
        est = rho_d(dm)
        if abs(float(rayleigh_lower_bound(dm)) - est.value) > 1e-9 or est.width > 1e-9:
            equality_bad += 1
    total = sum(s.graphs for s in sweeps)
    ok = exhaustive_bad == random_bad == equality_bad == 0
    detail = f"exhaustive {total} graphs, random 1000, violations {exhaustive_bad}/{random_bad}/{equality_bad}"
    assert criterion(3, ok, detail)


def test_criterion_4_tree_packing_equiv(criterion):
    rep, secs = _report("tree_packing_equiv")
    s = rep.summary
    ok = s["mismatches"] == 0 and s["invalid_certificates"] == 0 and s["cases"] == 3 * CONNECTED_UP_TO_6 and secs < 300
    assert criterion(4, ok, f"{s['cases']} cases, {s['mismatches']} mismatches, {secs:.1f}s")


def test_criterion_5_fang_yang(criterion):
    rep, secs = _report("fang_yang")
    s = rep.summary
    rechecked = 0
    for row in rep.rows:
        if row["verdict"] == "ImplicationHolds":
            assert row["certificate_valid"] is True
            rechecked += 1
    ok = (s["counterexamples"] == 0 and s["invalid_certificates"] == 0 and s["undecided"] == 0
          and s["cases"] == 6 * CONNECTED_UP_TO_6 and rechecked == s["ImplicationHolds"] and secs < 600)
    assert criterion(5, ok, f"{s['cases']} cases, {s['ImplicationHolds']} verified, {s['counterexamples']} counterexamples, {secs:.1f}s")


def test_criterion_6_main_theorems(criterion):
    lines, ok = [], True
    for name in ("thm_main1", "thm_main2"):
        rep, secs = _report(name)
        s = rep.summary
        ok &= s["counterexamples"] == 0 and s["errors"] == 0
        for key, st in s["per_config"].items():
            ok &= st["samples"] >= 500 and st["spectral_pass"] >= 1 and st["verified"] == st["spectral_pass"]
            lines.append(f"{name}[{key}] {st['spectral_pass']}/{st['samples']}")
        for row in rep.rows:
            if row.get("comparison") == "holds" and row["hyp_connected"] == "PASS":
                ok &= row["conclusion"] == PStatus.VERIFIED.value and row["certificate_valid"] is True
    assert criterion(6, ok, "; ".join(lines))


def test_criterion_7_chain(criterion):
    sweeps = _cache.get("sweeps") or [exhaustive_spectral_sweep(n) for n in range(2, 8)]
    general_checked = sum(s.chain_checked for s in sweeps)
    general_bad = sum(s.chain_failures for s in sweeps)
    for g in _random_suite():
        hi = rho_d(apsp(g)).hi
        if hi < g.n + 2:
            general_checked += 1
            general_bad += not g.m > g.n * (g.n - 4) / 2
    bip_checked = bip_bad = 0
    for n in (2, 4, 6):
        for mask in small_graph_masks(n, True):
            g = graph_from_mask(n, int(mask))
            if not classify(g).is_balanced_bipartite:
                continue
            hi = rho_d(apsp(g)).hi
            if hi < 1.5 * n + 1:
                bip_checked += 1
                bip_bad += chain_check(n, g.m, hi, BoundMode.BALANCED_BIPARTITE) is False
    for name in ("thm_main1", "thm_main2"):
        rep, _ = _report(name)
        for row in rep.rows:
            if row.get("chain") in ("PASS", "FAIL"):
                n, m, hi = row["n"], row["m"], row["rho_hi"]
                if name == "thm_main2" and hi < 1.5 * n + 1:
                    bip_checked += 1
                    bip_bad += not 4 * m > n * (n - 3)
                if hi < n + 2:
                    general_checked += 1
                    general_bad += not 2 * m > n * (n - 4)
                general_bad += row["chain"] == "FAIL"
    ok = general_bad == bip_bad == 0 and general_checked > 0 and bip_checked > 0
    assert criterion(7, ok, f"general {general_checked} checked/{general_bad} bad, bipartite {bip_checked} checked/{bip_bad} bad")


def test_criterion_8_comb_lemmas(criterion):
    rep, secs = _report("comb_lemmas")
    fails = [r for r in rep.rows if r["verdict"] == "FAIL"]
    ok = not fails and len(rep.rows) == 6 and secs < 60
    assert criterion(8, ok, f"{len(rep.rows)} rows, {len(fails)} FAIL, {secs:.1f}s")


def test_criterion_9_point_values(criterion):
    checks = {}
    checks["rho(K_n)"] = all(abs(rho_d(apsp(complete(n))).value - (n - 1)) <= 1e-9 for n in range(2, 51))
    est = rho_d(apsp(path(3)))
    checks["rho(P_3)"] = abs(est.value - (1 + math.sqrt(3))) <= 1e-9 and est.contains(1 + math.sqrt(3))
    checks["nu_f(C_4)"] = nu_f_exact(cycle(4))[0] == Fraction(4, 3)
    cert = tau_packing(complete(4), 2)
    validate_trees(complete(4), cert.trees, 2)
    checks["tau(K_4)"] = tau(complete(4)) == 2 and cert.found
    res = verify_P(complete(4), 1, 2)
    checks["P(K_4,1,2)"] = res.status is PStatus.VERIFIED and check_p_certificate(complete(4), 1, 2, res.certificate)
    res = verify_P(cycle(4), 1, 2)
    checks["P(C_4,1,2)"] = res.status is PStatus.REFUTED and res.tier == "3"
    bad = [k for k, v in checks.items() if not v]
    assert criterion(9, not bad, "all point values match" if not bad else f"mismatch: {bad}"), bad


@pytest.mark.parametrize("name", ["thm_main1", "thm_main2", "tree_packing_equiv", "fang_yang", "lemma_bounds", "comb_lemmas"])
def test_criterion_10_determinism(criterion, name):
    first, _ = _report(name)
    again = run_campaign(_config(name))
    same = first.to_csv().encode() == again.to_csv().encode()
    _cache.setdefault("det", {})[name] = same
    det = _cache["det"]
    if len(det) == 6:
        criterion(10, all(det.values()), f"byte-identical CSV for {sum(det.values())}/6 campaign kinds")
    assert same
