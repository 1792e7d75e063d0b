"""Instance generation, verification campaigns and report emission."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .errors import DistreeError, GenerationError, InvalidParameterError, SizeGuardError
from .extremal import ExtremalFamily, ExtremalSpec, check_lemma_bounds, exact_rho_extremal
from .graph import Graph, classify, graph_hash
from .packing import (
    CertificateKind,
    PStatus,
    FangYang,
    check_p_certificate,
    fang_yang_check,
    nu_f_exact,
    p_result_json,
    packing_certificate_json,
    rational_json,
    tau_packing,
    validate_packing_certificate,
    verify_P,
)
from .spectral import (
    DEFAULT_TOL,
    BoundMode,
    Comparison,
    apsp,
    chain_check,
    compare_le,
    rho_d,
)

MAX_ENUM_N = 8
SIDE_FILE_BYTES = 64 * 1024
_MASK64 = (1 << 64) - 1


# ---------------------------------------------------------------- seeding


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def instance_seed(root: int, index: int) -> int:
    return splitmix64((root ^ index) & _MASK64)


# ---------------------------------------------------------------- generators


class Model(str, enum.Enum):
    GNP = "gnp"
    BIPARTITE_GNP = "bipartite_gnp"


def random_graph(n: int, delta_min: int, model: Model | str, p: float, seed: int, max_retries: int = 100) -> Graph:
    """Seeded G(n, p) sample repaired up to minimum degree ``delta_min``.

    The bipartite model samples only between ``0..n/2-1`` and ``n/2..n-1``.
    Vertices below ``delta_min`` (scanned in label order) get uniformly random
    missing edges; disconnected results are resampled.
    """
    model = Model(model)
    if not 0 < p < 1:
        raise InvalidParameterError(f"p must lie in (0, 1), got {p}")
    if model is Model.BIPARTITE_GNP:
        if n % 2:
            raise InvalidParameterError("bipartite_gnp needs even n")
        if delta_min > n // 2:
            raise InvalidParameterError(f"delta_min={delta_min} exceeds part size {n // 2}")
    elif delta_min >= n:
        raise InvalidParameterError(f"delta_min={delta_min} must be < n={n}")
    rng = np.random.default_rng(seed)
    half = n // 2
    for _ in range(max_retries):
        adj = np.zeros((n, n), dtype=bool)
        if model is Model.GNP:
            iu = np.triu_indices(n, 1)
            hit = rng.random(iu[0].size) < p
            adj[iu[0][hit], iu[1][hit]] = True
        else:
            hit = rng.random((half, half)) < p
            adj[:half, half:] = hit
        adj |= adj.T
        for v in range(n):
            deg = int(adj[v].sum())
            if deg >= delta_min:
                continue
            if model is Model.GNP:
                pool = [w for w in range(n) if w != v and not adj[v, w]]
            else:
                side = range(half, n) if v < half else range(half)
                pool = [w for w in side if not adj[v, w]]
            for w in rng.choice(pool, size=delta_min - deg, replace=False):
                adj[v, w] = adj[w, v] = True
        iu = np.triu_indices(n, 1)
        sel = adj[iu]
        g = Graph.from_edges(n, zip(iu[0][sel].tolist(), iu[1][sel].tolist()))
        if classify(g).is_connected:
            return g
    raise GenerationError(f"no connected sample after {max_retries} tries (n={n}, p={p}, model={model.value})")


def pair_list(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in the bit order used by :func:`graph_from_mask`."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = pair_list(n)
    return Graph.from_edges(n, (pairs[b] for b in range(len(pairs)) if mask >> b & 1))


def small_graph_masks(n: int, connected_only: bool, stride: int = 1) -> np.ndarray:
    if n > MAX_ENUM_N:
        raise SizeGuardError(f"exhaustive enumeration is limited to n <= {MAX_ENUM_N}")
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    total = 1 << (n * (n - 1) // 2)
    if connected_only:
        if n == 1:
            return np.zeros(1, dtype=np.int64)
        return kernels.connected_masks_kernel(n, 0, total, stride)
    return np.arange(0, total, stride, dtype=np.int64)


def enumerate_small_graphs(n: int, connected_only: bool = True, stride: int = 1) -> Iterator[Graph]:
    """Every labelled graph on ``n <= 8`` vertices in bitmask order."""
    for mask in small_graph_masks(n, connected_only, stride):
        yield graph_from_mask(n, int(mask))


# ---------------------------------------------------------------- config and reports


class CampaignKind(str, enum.Enum):
    THM_MAIN1 = "thm_main1"
    THM_MAIN2 = "thm_main2"
    LEMMA_BOUNDS = "lemma_bounds"
    FANG_YANG = "fang_yang"
    TREE_PACKING_EQUIV = "tree_packing_equiv"
    COMB_LEMMAS = "comb_lemmas"


# p = 1 - c/n cycles through these to keep samples near complete
DENSE_BIAS = (0.5, 1.0, 1.5, 2.0, 3.0)


@dataclass
class CampaignConfig:
    campaign: CampaignKind
    k_range: Optional[list] = None
    n_range: Optional[list] = None
    k_values: Optional[list] = None
    n_values: Optional[list] = None
    d_values: Optional[list] = None
    families: Optional[list] = None
    sample_count: int = 500
    seed: int = 0
    tol: float = DEFAULT_TOL
    max_enum_n: int = 6
    stride: int = 1
    a_max: int = 200
    s_max: int = 5
    value_max: int = 12
    bias: list = field(default_factory=lambda: list(DENSE_BIAS))
    timing: bool = False
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        self.campaign = CampaignKind(self.campaign)
        if self.format not in ("csv", "json"):
            raise InvalidParameterError(f"format must be csv or json, got {self.format!r}")
        self.seed = int(self.seed) & _MASK64
        if self.tol <= 0:
            raise InvalidParameterError("tol must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "CampaignConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def ks(self, default) -> list[int]:
        return _values(self.k_values, self.k_range, default)

    def ns(self, default) -> list[int]:
        return _values(self.n_values, self.n_range, default)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["campaign"] = self.campaign.value
        out.pop("out")
        return out


def _values(explicit, span, default) -> list[int]:
    if explicit is not None:
        return [int(x) for x in explicit]
    if span is not None:
        lo, hi = int(span[0]), int(span[1])
        return list(range(lo, hi + 1))
    return list(default)


@dataclass
class Report:
    campaign: str
    columns: list[str]
    rows: list[dict]
    summary: dict
    config: dict
    certificates: dict = field(default_factory=dict)

    @property
    def counterexamples(self) -> int:
        return int(self.summary.get("counterexamples", 0))

    @property
    def inconsistencies(self) -> int:
        return int(self.summary.get("inconsistencies", 0))

    @property
    def exit_code(self) -> int:
        return 1 if self.counterexamples or self.inconsistencies else 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _cell(row.get(k)) for k in self.columns})
        return buf.getvalue()

    def to_json(self, side_dir: Optional[str] = None) -> str:
        rows = []
        for row in self.rows:
            row = {k: _jsonable(v) for k, v in row.items()}
            cert = self.certificates.get(row.get("instance"))
            if cert is not None:
                blob = json.dumps(cert, sort_keys=True)
                if side_dir is not None and len(blob) > SIDE_FILE_BYTES:
                    os.makedirs(side_dir, exist_ok=True)
                    name = f"{row['instance']}.json"
                    with open(os.path.join(side_dir, name), "w") as fh:
                        fh.write(blob)
                    row["certificate"] = {"$ref": os.path.join(os.path.basename(side_dir), name)}
                else:
                    row["certificate"] = cert
            rows.append(row)
        doc = {
            "campaign": self.campaign,
            "config": self.config,
            "summary": {k: _jsonable(v) for k, v in self.summary.items()},
            "rows": rows,
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def write(self, path: Optional[str], fmt: str) -> str:
        text = self.to_csv() if fmt == "csv" else self.to_json(side_dir=f"{path}.certs" if path else None)
        if path:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, enum.Enum):
        return str(v.value)
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return rational_json(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


# ---------------------------------------------------------------- main-theorem campaigns


THM_COLUMNS = [
    "instance", "graph_hash", "k", "n", "m", "min_degree", "p",
    "hyp_connected", "hyp_order", "hyp_min_degree", "hyp_balanced",
    "rho_lo", "rho_hi", "threshold_lo", "threshold_hi", "comparison",
    "conclusion", "tier", "certificate_valid", "chain", "flag", "error", "wall_time",
]


def _thm_instance(cfg: CampaignConfig, bipartite: bool, k: int, n: int, i: int, index: int, threshold) -> tuple[dict, Optional[dict]]:
    start = time.perf_counter()
    c = cfg.bias[i % len(cfg.bias)]
    p = min(max(1.0 - c / n, 0.05), 0.99)
    row = {"instance": f"{cfg.campaign.value}-k{k}-n{n}-{i:05d}", "k": k, "n": n, "p": p}
    cert = None
    try:
        g = random_graph(
            n, k + 2, Model.BIPARTITE_GNP if bipartite else Model.GNP, p, instance_seed(cfg.seed, index)
        )
    except DistreeError as exc:
        row.update(flag="ERROR", error=str(exc), conclusion="NotApplicable")
        return row, cert
    prof = classify(g)
    row.update(graph_hash=graph_hash(g), m=g.m, min_degree=prof.min_degree)
    hyps = {
        "hyp_connected": prof.is_connected,
        "hyp_order": n >= (4 * k + 8 if bipartite else 2 * k + 8),
        "hyp_min_degree": prof.min_degree >= k + 2,
    }
    if bipartite:
        hyps["hyp_balanced"] = prof.is_balanced_bipartite
    row.update({h: "PASS" if ok else "FAIL" for h, ok in hyps.items()})
    row["threshold_lo"], row["threshold_hi"] = threshold.lo, threshold.hi
    row["conclusion"] = "NotApplicable"
    row["flag"] = ""
    if not prof.is_connected:
        return row, cert
    dm = apsp(g)
    est = rho_d(dm, cfg.tol)
    cmp = compare_le(est, threshold)
    if cmp is Comparison.INDETERMINATE:
        est = rho_d(dm, cfg.tol / 100)
        threshold = exact_rho_extremal(
            ExtremalSpec(ExtremalFamily.G2_BIPARTITE if bipartite else ExtremalFamily.G1_JOIN, k, n), cfg.tol / 100
        )
        row["threshold_lo"], row["threshold_hi"] = threshold.lo, threshold.hi
        cmp = compare_le(est, threshold)
    row.update(rho_lo=est.lo, rho_hi=est.hi, comparison=cmp.value)
    mode = BoundMode.BALANCED_BIPARTITE if bipartite else BoundMode.GENERAL
    chain = chain_check(g.n, g.m, est.hi, BoundMode.GENERAL)
    if bipartite and prof.is_balanced_bipartite:
        chain_b = chain_check(g.n, g.m, est.hi, mode)
        chain = None if chain is None and chain_b is None else (chain is not False and chain_b is not False)
    row["chain"] = "n/a" if chain is None else ("PASS" if chain else "FAIL")
    if chain is False:
        row["flag"] = "INCONSISTENT"
    if all(hyps.values()) and cmp is Comparison.HOLDS:
        res = verify_P(g, k, prof.min_degree)
        row["conclusion"] = res.status.value
        row["tier"] = res.tier
        if res.certificate is not None:
            ok = check_p_certificate(g, k, prof.min_degree, res.certificate)
            row["certificate_valid"] = ok
            if not ok:
                row["flag"] = "INCONSISTENT"
        if res.status is PStatus.REFUTED and res.tier == "3":
            row["flag"] = "COUNTEREXAMPLE"
        cert = p_result_json(res)
    if cfg.timing:
        row["wall_time"] = round(time.perf_counter() - start, 6)
    return row, cert


def _run_thm(cfg: CampaignConfig, bipartite: bool) -> Report:
    family = ExtremalFamily.G2_BIPARTITE if bipartite else ExtremalFamily.G1_JOIN
    ks = cfg.ks([2])
    ns = cfg.ns([16, 20] if bipartite else [12, 14])
    rows, certs = [], {}
    per_config = {}
    index = 0
    for k in ks:
        for n in ns:
            key = f"k={k},n={n}"
            stats = dict(samples=0, hypotheses_pass=0, spectral_pass=0, verified=0, refuted=0, unknown=0,
                         counterexamples=0, inconsistencies=0, errors=0)
            per_config[key] = stats
            try:
                threshold = exact_rho_extremal(ExtremalSpec(family, k, n), cfg.tol)
            except DistreeError as exc:
                rows.append({"instance": f"{cfg.campaign.value}-k{k}-n{n}-threshold", "k": k, "n": n,
                             "flag": "ERROR", "error": str(exc), "conclusion": "NotApplicable"})
                stats["errors"] += 1
                continue
            for i in range(cfg.sample_count):
                row, cert = _thm_instance(cfg, bipartite, k, n, i, index, threshold)
                index += 1
                rows.append(row)
                if cert is not None:
                    certs[row["instance"]] = cert
                stats["samples"] += 1
                hyp_cols = [c for c in ("hyp_connected", "hyp_order", "hyp_min_degree", "hyp_balanced") if c in row]
                if hyp_cols and all(row[c] == "PASS" for c in hyp_cols):
                    stats["hypotheses_pass"] += 1
                    if row.get("comparison") == Comparison.HOLDS.value:
                        stats["spectral_pass"] += 1
                stats["verified"] += row["conclusion"] == PStatus.VERIFIED.value
                stats["refuted"] += row["conclusion"] == PStatus.REFUTED.value
                stats["unknown"] += row["conclusion"] == PStatus.UNKNOWN.value
                stats["counterexamples"] += row.get("flag") == "COUNTEREXAMPLE"
                stats["inconsistencies"] += row.get("flag") == "INCONSISTENT"
                stats["errors"] += row.get("flag") == "ERROR"
    summary = {key: sum(s[key] for s in per_config.values()) for key in
               ("samples", "hypotheses_pass", "spectral_pass", "verified", "refuted", "unknown",
                "counterexamples", "inconsistencies", "errors")}
    summary["per_config"] = per_config
    columns = [c for c in THM_COLUMNS if bipartite or c != "hyp_balanced"]
    if not cfg.timing:
        columns.remove("wall_time")
    return Report(cfg.campaign.value, columns, rows, summary, cfg.as_dict(), certs)


# ---------------------------------------------------------------- exhaustive campaigns


EQUIV_COLUMNS = ["instance", "n", "mask", "m", "k", "nu_f", "nu_f_ge_k", "tau_verdict", "match", "certificate_valid", "flag"]


def _run_tree_packing_equiv(cfg: CampaignConfig) -> Report:
    ks = cfg.ks([1, 2, 3])
    ns = cfg.ns(range(2, cfg.max_enum_n + 1))
    rows, certs = [], {}
    mism = bad = 0
    for n in ns:
        for mask in small_graph_masks(n, True, cfg.stride):
            g = graph_from_mask(n, int(mask))
            nu, _ = nu_f_exact(g, max(cfg.max_enum_n, n))
            for k in ks:
                cert = tau_packing(g, k)
                try:
                    validate_packing_certificate(g, k, cert)
                    valid = True
                except DistreeError:
                    valid = False
                match = cert.found == (nu >= k)
                mism += not match
                bad += not valid
                inst = f"equiv-n{n}-{int(mask)}-k{k}"
                rows.append({
                    "instance": inst, "n": n, "mask": int(mask), "m": g.m, "k": k, "nu_f": nu,
                    "nu_f_ge_k": nu >= k, "tau_verdict": cert.kind.value, "match": match,
                    "certificate_valid": valid, "flag": "" if match and valid else "INCONSISTENT",
                })
                certs[inst] = packing_certificate_json(cert)
    summary = {"cases": len(rows), "mismatches": mism, "invalid_certificates": bad,
               "counterexamples": 0, "inconsistencies": mism + bad}
    return Report(cfg.campaign.value, EQUIV_COLUMNS, rows, summary, cfg.as_dict(), certs)


FY_COLUMNS = ["instance", "n", "mask", "m", "k", "d", "nu_f", "verdict", "tier", "certificate_valid", "flag", "error"]


def _run_fang_yang(cfg: CampaignConfig) -> Report:
    ks = cfg.ks([1, 2])
    ds = [int(x) for x in (cfg.d_values or [1, 2, 3])]
    ns = cfg.ns(range(2, cfg.max_enum_n + 1))
    rows, certs = [], {}
    counts = {v.value: 0 for v in FangYang}
    bad = undecided = 0
    for n in ns:
        for mask in small_graph_masks(n, True, cfg.stride):
            g = graph_from_mask(n, int(mask))
            nu, _ = nu_f_exact(g, max(cfg.max_enum_n, n))
            for k in ks:
                for d in ds:
                    inst = f"fy-n{n}-{int(mask)}-k{k}-d{d}"
                    row = {"instance": inst, "n": n, "mask": int(mask), "m": g.m, "k": k, "d": d, "nu_f": nu, "flag": ""}
                    try:
                        verdict, res = fang_yang_check(g, k, d, nu)
                    except DistreeError as exc:
                        undecided += 1
                        row.update(verdict="Undecided", flag="INCONSISTENT", error=str(exc))
                        rows.append(row)
                        continue
                    counts[verdict.value] += 1
                    row["verdict"] = verdict.value
                    if res is not None:
                        row["tier"] = res.tier
                        certs[inst] = p_result_json(res)
                    if res is not None and res.certificate is not None:
                        ok = check_p_certificate(g, k, d, res.certificate)
                        row["certificate_valid"] = ok
                        if not ok:
                            bad += 1
                            row["flag"] = "INCONSISTENT"
                    if verdict is FangYang.COUNTEREXAMPLE:
                        row["flag"] = "COUNTEREXAMPLE"
                    rows.append(row)
    summary = dict(cases=len(rows), **counts, invalid_certificates=bad, undecided=undecided,
                   counterexamples=counts[FangYang.COUNTEREXAMPLE.value], inconsistencies=bad + undecided)
    return Report(cfg.campaign.value, FY_COLUMNS, rows, summary, cfg.as_dict(), certs)


LEMMA_COLUMNS = ["family", "k", "n", "lo", "hi", "bound", "verdict", "in_hypothesis", "power_lo", "power_hi", "error"]


def _run_lemma_bounds(cfg: CampaignConfig) -> Report:
    fams = [ExtremalFamily.parse(f) for f in (cfg.families or ["G1_join", "G2_bipartite"])]
    rows = []
    for fam in fams:
        for k in cfg.ks(range(2, 6)):
            lo_default = 2 * k + 6 if fam is ExtremalFamily.G1_JOIN else 4 * k + 4
            for r in check_lemma_bounds(fam, [k], cfg.ns(range(lo_default, 41)), cfg.tol):
                rows.append(asdict(r))
    verdicts = [r["verdict"] for r in rows]
    fails = sum(1 for r in rows if r["verdict"] == "FAIL" and r["in_hypothesis"])
    errors = sum(1 for r in rows if r["verdict"] == "ERROR" and r["in_hypothesis"])
    summary = {
        "rows": len(rows),
        "pass": verdicts.count("PASS"),
        "fail": verdicts.count("FAIL"),
        "indeterminate": verdicts.count("INDETERMINATE"),
        "error": verdicts.count("ERROR"),
        "out_of_hypothesis": sum(1 for r in rows if not r["in_hypothesis"]),
        "counterexamples": fails,
        "inconsistencies": errors,
    }
    return Report(cfg.campaign.value, LEMMA_COLUMNS, rows, summary, cfg.as_dict())


COMB_COLUMNS = ["lemma", "s", "bound", "checked", "failures", "witness", "verdict"]


def check_comb_lemmas(a_max: int, s_max: int, value_max: int) -> Report:
    """Exhaustive integer checks of the binomial-shift and product-sum lemmas."""
    if min(a_max, s_max, value_max) < 1:
        raise InvalidParameterError("all bounds must be >= 1")
    rows = []

    def c2(x):
        return x * (x - 1) // 2

    checked = fails = 0
    witness = ""
    for a in range(1, a_max + 1):
        for b in range(1, a + 1):
            checked += 1
            if not c2(a) + c2(b) < c2(a + 1) + c2(b - 1):
                fails += 1
                witness = witness or f"a={a},b={b}"
    rows.append({"lemma": "binomial_shift", "s": "", "bound": f"a_max={a_max}", "checked": checked,
                 "failures": fails, "witness": witness, "verdict": "FAIL" if fails else "PASS"})
    for s in range(1, s_max + 1):
        checked, fails, wa, wb = kernels.product_lemma_kernel(s, value_max)
        w = "" if not fails or wa[0] < 0 else ";".join(f"({int(x)},{int(y)})" for x, y in zip(wa, wb))
        rows.append({"lemma": "product_sum", "s": s, "bound": f"value_max={value_max}", "checked": int(checked),
                     "failures": int(fails), "witness": w, "verdict": "FAIL" if fails else "PASS"})
    nfail = sum(1 for r in rows if r["verdict"] == "FAIL")
    summary = {"rows": len(rows), "fail_rows": nfail, "counterexamples": 0, "inconsistencies": nfail}
    config = {"campaign": "comb_lemmas", "a_max": a_max, "s_max": s_max, "value_max": value_max}
    return Report("comb_lemmas", COMB_COLUMNS, rows, summary, config)


def run_campaign(cfg: CampaignConfig) -> Report:
    kind = cfg.campaign
    if kind is CampaignKind.THM_MAIN1:
        return _run_thm(cfg, bipartite=False)
    if kind is CampaignKind.THM_MAIN2:
        return _run_thm(cfg, bipartite=True)
    if kind is CampaignKind.TREE_PACKING_EQUIV:
        return _run_tree_packing_equiv(cfg)
    if kind is CampaignKind.FANG_YANG:
        return _run_fang_yang(cfg)
    if kind is CampaignKind.LEMMA_BOUNDS:
        return _run_lemma_bounds(cfg)
    report = check_comb_lemmas(cfg.a_max, cfg.s_max, cfg.value_max)
    report.config = cfg.as_dict()
    return report


# ---------------------------------------------------------------- Rayleigh / chain sweeps


@dataclass
class SweepResult:
    graphs: int
    rayleigh_violations: int
    worst_gap: float
    chain_checked: int
    chain_failures: int
    nonconverged: int


def exhaustive_spectral_sweep(n: int, tol: float = DEFAULT_TOL, slack: float = 1e-9) -> SweepResult:
    """Rayleigh bound and edge-count chain over every connected graph on n vertices.

    ``2W/n <= lo + slack`` is checked per graph, and whenever ``hi < n + 2``
    the edge count must exceed ``n(n-4)/2``.
    """
    masks = small_graph_masks(n, True)
    if n == 1:
        return SweepResult(1, 0, 0.0, 0, 0, 0)
    m, w, lo, hi, ok = kernels.spectral_sweep_kernel(n, masks, tol, 100_000)
    floor = 2.0 * w / n
    gap = floor - lo
    viol = int(np.sum(gap > slack))
    below = hi < n + 2
    chain_fail = 0
    for t in np.flatnonzero(below):
        if chain_check(n, int(m[t]), float(hi[t])) is False:
            chain_fail += 1
    return SweepResult(len(masks), viol, float(gap.max()), int(below.sum()), chain_fail, int((~ok).sum()))
