"""Spanning-tree packing, exact fractional packing number and property P(k, d).

Terminology used below: a *packing* is a list of pairwise edge-disjoint
forests; ``k`` of them being spanning trees gives ``tau >= k``. The extra
forest of property P(k, d) is always taken as a maximum spanning forest of
the residual graph (edges outside the trees): among all forests inside a
fixed residual it simultaneously maximises the edge count and the edge count
of every component, so only the choice of trees matters.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import kernels
from .errors import (
    DisconnectedGraphError,
    InvalidPackingError,
    InvalidParameterError,
    InvalidPartitionError,
    SizeGuardError,
    UndecidedError,
)
from .graph import Edge, Graph, components, is_connected

DEFAULT_MAX_N = 12
TIER3_MAX_N = 7
TIER3_MAX_M = 14


# ---------------------------------------------------------------- union-find


class DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def is_forest(n: int, edges: Iterable[Edge]) -> bool:
    ds = DisjointSet(n)
    return all(ds.union(u, v) for u, v in edges)


def is_spanning_tree(n: int, edges: Sequence[Edge]) -> bool:
    return len(edges) == n - 1 and is_forest(n, edges)


def forest_component_edges(n: int, edges: Iterable[Edge]) -> list[int]:
    """Edge count of every nontrivial component of a forest."""
    ds = DisjointSet(n)
    edges = list(edges)
    for u, v in edges:
        ds.union(u, v)
    counts: dict[int, int] = {}
    for u, _ in edges:
        r = ds.find(u)
        counts[r] = counts.get(r, 0) + 1
    return sorted(counts.values(), reverse=True)


# ---------------------------------------------------------------- partitions


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]
    crossing: int
    objective: Fraction

    @property
    def s(self) -> int:
        return len(self.blocks)


def partition_ratio(g: Graph, blocks: Iterable[Iterable[int]]) -> Partition:
    """Crossing-edge count of a vertex partition and ``crossing / (s - 1)``."""
    blocks = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
    where = [-1] * g.n
    for i, b in enumerate(blocks):
        if not b:
            raise InvalidPartitionError(f"block {i} is empty")
        for v in b:
            if not 0 <= v < g.n:
                raise InvalidPartitionError(f"vertex {v} out of range")
            if where[v] >= 0:
                raise InvalidPartitionError(f"vertex {v} is in blocks {where[v]} and {i}")
            where[v] = i
    missing = [v for v in range(g.n) if where[v] < 0]
    if missing:
        raise InvalidPartitionError(f"vertex {missing[0]} is in no block")
    if len(blocks) < 2:
        raise InvalidPartitionError("a partition needs at least 2 blocks")
    crossing = sum(1 for u, v in g.edges if where[u] != where[v])
    return Partition(blocks, crossing, Fraction(crossing, len(blocks) - 1))


def _blocks_from_rgs(rgs: Sequence[int]) -> list[list[int]]:
    blocks: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
    for v, b in enumerate(rgs):
        blocks[b].append(v)
    return blocks


def nu_f_exact(g: Graph, max_n: int = DEFAULT_MAX_N) -> tuple[Fraction, Partition]:
    """Exact fractional packing number by restricted-growth-string search.

    Ties go to the fewest blocks, then the lexicographically smallest string.
    """
    if g.n < 2:
        raise InvalidParameterError("fractional packing number needs n >= 2")
    if g.n > max_n:
        raise SizeGuardError(f"n={g.n} exceeds the enumeration guard max_n={max_n}")
    crossing, s, rgs = kernels.min_partition_kernel(g.adjacency_matrix, g.n)
    part = partition_ratio(g, _blocks_from_rgs([int(x) for x in rgs]))
    assert part.crossing == crossing and part.s == s, "partition search disagrees with recount"
    return part.objective, part


def nu_f_bruteforce(g: Graph) -> Fraction:
    """Reference minimum over every set partition, without pruning."""
    best = None
    for rgs in _all_rgs(g.n):
        if max(rgs) == 0:
            continue
        obj = partition_ratio(g, _blocks_from_rgs(rgs)).objective
        if best is None or obj < best:
            best = obj
    return best


def _all_rgs(n: int):
    def rec(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([0], 0)


# ---------------------------------------------------------------- forest packing


class ForestPacking:
    """``k`` edge-disjoint forests grown by shortest exchange paths.

    Inserting an edge searches breadth-first over swap moves: an edge ``f``
    can enter forest ``i`` directly if it closes no cycle there, otherwise
    each edge on its cycle in forest ``i`` may be displaced by it and must in
    turn find a home elsewhere.
    """

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.nbrs = [[set() for _ in range(n)] for _ in range(k)]
        self.owner: dict[Edge, int] = {}
        self.sizes = [0] * k

    def _add(self, e: Edge, i: int) -> None:
        u, v = e
        self.nbrs[i][u].add(v)
        self.nbrs[i][v].add(u)
        self.owner[e] = i
        self.sizes[i] += 1

    def _remove(self, e: Edge) -> None:
        i = self.owner.pop(e)
        u, v = e
        self.nbrs[i][u].discard(v)
        self.nbrs[i][v].discard(u)
        self.sizes[i] -= 1

    def place(self, e: Edge, i: int) -> None:
        """Put ``e`` in forest ``i`` (caller guarantees it stays acyclic)."""
        self._add(e, i)

    def cycle(self, i: int, e: Edge) -> Optional[list[Edge]]:
        """Edges of forest ``i`` on the path joining ``e``'s ends, or None."""
        src, dst = e
        adj = self.nbrs[i]
        prev = {src: src}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if u == dst:
                break
            for w in adj[u]:
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        if dst not in prev:
            return None
        out = []
        v = dst
        while v != src:
            u = prev[v]
            out.append((u, v) if u < v else (v, u))
            v = u
        return out

    def insert(self, e: Edge) -> bool:
        label: dict[Edge, Optional[tuple[Edge, int]]] = {e: None}
        queue = deque([e])
        while queue:
            f = queue.popleft()
            home = self.owner.get(f)
            for i in range(self.k):
                if i == home:
                    continue
                cyc = self.cycle(i, f)
                if cyc is None:
                    self._augment(f, i, label)
                    return True
                for h in cyc:
                    if h not in label:
                        label[h] = (f, i)
                        queue.append(h)
        return False

    def _augment(self, f: Edge, i: int, label) -> None:
        cur, target = f, i
        while True:
            if cur in self.owner:
                self._remove(cur)
            self._add(cur, target)
            step = label[cur]
            if step is None:
                return
            cur, target = step

    def forests(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.k)]
        for e, i in self.owner.items():
            out[i].append(e)
        return [sorted(f) for f in out]

    def span_closure(self, outside: Iterable[Edge]) -> set[Edge]:
        """Edges reachable by exchange from edges no forest can absorb."""
        seen = set(outside)
        queue = deque(sorted(seen))
        while queue:
            f = queue.popleft()
            home = self.owner.get(f)
            for i in range(self.k):
                if i == home:
                    continue
                cyc = self.cycle(i, f)
                if cyc is None:
                    raise AssertionError(f"edge {f} is insertable into forest {i}; packing is not maximal")
                for h in cyc:
                    if h not in seen:
                        seen.add(h)
                        queue.append(h)
        return seen


class CertificateKind(str, enum.Enum):
    TREES_FOUND = "TreesFound"
    VIOLATING_PARTITION = "ViolatingPartition"


@dataclass(frozen=True)
class PackingCertificate:
    kind: CertificateKind
    trees: Optional[tuple[tuple[Edge, ...], ...]] = None
    witness: Optional[Partition] = None

    @property
    def found(self) -> bool:
        return self.kind is CertificateKind.TREES_FOUND


def _max_packing(g: Graph, k: int) -> ForestPacking:
    pack = ForestPacking(g.n, k)
    for e in g.edges:
        pack.insert(e)
    return pack


def tau_packing(g: Graph, k: int) -> PackingCertificate:
    """``k`` edge-disjoint spanning trees, or a partition with ratio below ``k``."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    if not is_connected(g):
        comps = components(g)
        raise DisconnectedGraphError(comps[0][0], comps[1][0])
    if g.n == 1:
        return PackingCertificate(CertificateKind.TREES_FOUND, tuple(() for _ in range(k)))
    if g.m < k * (g.n - 1):
        # not enough edges: the all-singletons partition already certifies
        witness = partition_ratio(g, [[v] for v in range(g.n)])
        return PackingCertificate(CertificateKind.VIOLATING_PARTITION, witness=witness)
    pack = _max_packing(g, k)
    if all(sz == g.n - 1 for sz in pack.sizes):
        return PackingCertificate(CertificateKind.TREES_FOUND, tuple(tuple(f) for f in pack.forests()))
    outside = [e for e in g.edges if e not in pack.owner]
    clump = pack.span_closure(outside)
    ds = DisjointSet(g.n)
    for u, v in clump:
        ds.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(ds.find(v), []).append(v)
    blocks = sorted(groups.values())
    witness = partition_ratio(g, blocks)
    if not witness.objective < k:
        raise AssertionError(f"extracted partition has ratio {witness.objective} >= {k}")
    return PackingCertificate(CertificateKind.VIOLATING_PARTITION, witness=witness)


def tau(g: Graph) -> int:
    """Spanning tree packing number (largest k with k disjoint spanning trees)."""
    if g.n == 1:
        return 0
    k = 0
    while (k + 1) * (g.n - 1) <= g.m and tau_packing(g, k + 1).found:
        k += 1
    return k


def validate_trees(g: Graph, trees: Sequence[Sequence[Edge]], k: Optional[int] = None) -> None:
    """Raise :class:`InvalidPackingError` unless ``trees`` is a packing of spanning trees."""
    if k is not None and len(trees) != k:
        raise InvalidPackingError(f"expected {k} trees, got {len(trees)}")
    used: set[Edge] = set()
    for t, tree in enumerate(trees):
        norm = [tuple(sorted(e)) for e in tree]
        for e in norm:
            if not g.has_edge(*e):
                raise InvalidPackingError(f"tree {t} uses non-edge {e}")
            if e in used:
                raise InvalidPackingError(f"edge {e} is used twice")
            used.add(e)
        if not is_spanning_tree(g.n, norm):
            raise InvalidPackingError(f"tree {t} is not a spanning tree")


def validate_packing_certificate(g: Graph, k: int, cert: PackingCertificate) -> None:
    if cert.found:
        validate_trees(g, cert.trees, k)
        return
    w = partition_ratio(g, cert.witness.blocks)
    if w != cert.witness:
        raise InvalidPackingError("witness partition data does not match the graph")
    if not w.objective < k:
        raise InvalidPackingError(f"witness ratio {w.objective} is not below {k}")


def residual_max_forest(g: Graph, trees: Sequence[Sequence[Edge]]) -> tuple[Edge, ...]:
    """Greedy spanning forest of the edges left after removing ``trees``."""
    validate_trees(g, trees)
    used = {tuple(sorted(e)) for t in trees for e in t}
    ds = DisjointSet(g.n)
    return tuple(e for e in g.edges if e not in used and ds.union(*e))


# ---------------------------------------------------------------- property P(k, d)


@dataclass(frozen=True)
class PCertificate:
    trees: tuple[tuple[Edge, ...], ...]
    forest: tuple[Edge, ...]
    forest_edges: int
    largest_component_edges: int
    basis: tuple[str, ...] = ("a", "b", "c")


class PStatus(str, enum.Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PResult:
    status: PStatus
    certificate: Optional[PCertificate] = None
    tier: str = ""
    fractional_bound: Optional[bool] = None
    notes: tuple[str, ...] = field(default=())


def p_conditions(n: int, d: int, forest_edges: int, largest: int) -> tuple[bool, bool]:
    """(b) and (c) of P(k, d) for a forest with the given statistics."""
    cond_b = d * forest_edges > (d - 1) * (n - 1)
    cond_c = forest_edges == n - 1 or largest >= d
    return cond_b, cond_c


def check_p_certificate(g: Graph, k: int, d: int, cert: PCertificate) -> bool:
    """Re-derive conditions (a)-(c) from the raw edge sets."""
    try:
        validate_trees(g, cert.trees, k)
    except InvalidPackingError:
        return False
    used = {tuple(sorted(e)) for t in cert.trees for e in t}
    forest = [tuple(sorted(e)) for e in cert.forest]
    if len(set(forest)) != len(forest):
        return False
    if any(not g.has_edge(*e) or e in used for e in forest):
        return False
    if not is_forest(g.n, forest):
        return False
    comps = forest_component_edges(g.n, forest)
    largest = comps[0] if comps else 0
    if len(forest) != cert.forest_edges or largest != cert.largest_component_edges:
        return False
    return all(p_conditions(g.n, d, len(forest), largest))


def _score(g: Graph, residual: Iterable[Edge]) -> tuple[tuple[Edge, ...], int, int]:
    ds = DisjointSet(g.n)
    forest = tuple(e for e in sorted(residual) if ds.union(*e))
    comps = forest_component_edges(g.n, forest)
    return forest, len(forest), comps[0] if comps else 0


def _make_cert(g: Graph, trees, forest, largest) -> PCertificate:
    return PCertificate(
        tuple(tuple(sorted(t)) for t in trees), tuple(sorted(forest)), len(forest), largest
    )


def _tier2(g: Graph, k: int, d: int, budget: int) -> Optional[PCertificate]:
    if g.m < k * (g.n - 1):
        return None
    base = tau_packing(g, k)
    if not base.found:
        return None
    # grow a (k+1)-th forest while keeping k spanning trees: exchanges never
    # shrink a forest, so the extra forest ends at its maximum over all packings
    first = base.trees
    pack = ForestPacking(g.n, k + 1)
    for i, t in enumerate(first):
        for e in t:
            pack.place(e, i)
    for e in g.edges:
        if e not in pack.owner:
            pack.insert(e)
    forests = pack.forests()
    trees = [list(t) for t in forests[:k]]
    in_tree = {e for t in trees for e in t}
    residual = {e for e in g.edges if e not in in_tree}
    forest, size, largest = _score(g, residual)
    if not p_conditions(g.n, d, size, largest)[0]:
        return None
    if all(p_conditions(g.n, d, size, largest)):
        return _make_cert(g, trees, forest, largest)
    # hill-climb on condition (c): swap a residual edge into a tree
    attempts = 0
    improved = True
    while improved and attempts < budget:
        improved = False
        for i in range(k):
            tpack = ForestPacking(g.n, 1)
            for e in trees[i]:
                tpack.place(e, 0)
            for r in sorted(residual):
                for t in tpack.cycle(0, r) or ():
                    attempts += 1
                    cand = (residual - {r}) | {t}
                    f2, s2, l2 = _score(g, cand)
                    if (s2, l2) > (size, largest):
                        trees[i] = sorted((set(trees[i]) - {t}) | {r})
                        residual, forest, size, largest = cand, f2, s2, l2
                        improved = True
                        break
                    if attempts >= budget:
                        break
                if improved or attempts >= budget:
                    break
            if improved or attempts >= budget:
                break
        if all(p_conditions(g.n, d, size, largest)):
            return _make_cert(g, trees, forest, largest)
    return None


def spanning_tree_masks(g: Graph) -> list[int]:
    """Every spanning tree as a bitmask over ``g.edges`` indices."""
    out = []
    for combo in itertools.combinations(range(g.m), g.n - 1):
        ds = DisjointSet(g.n)
        if all(ds.union(*g.edges[j]) for j in combo):
            out.append(sum(1 << j for j in combo))
    return out


def _tier3(g: Graph, k: int, d: int) -> Optional[PCertificate]:
    """Exhaustive over every set of k disjoint spanning trees."""
    tree_masks = spanning_tree_masks(g)
    layer: dict[int, tuple[int, ...]] = {0: ()}
    for _ in range(k):
        nxt: dict[int, tuple[int, ...]] = {}
        for used in sorted(layer):
            for t in tree_masks:
                if t & used == 0:
                    nxt.setdefault(used | t, layer[used] + (t,))
        layer = nxt
    full = (1 << g.m) - 1
    for used in sorted(layer):
        residual = [g.edges[j] for j in range(g.m) if (full & ~used) >> j & 1]
        forest, size, largest = _score(g, residual)
        if all(p_conditions(g.n, d, size, largest)):
            trees = [[g.edges[j] for j in range(g.m) if t >> j & 1] for t in layer[used]]
            return _make_cert(g, trees, forest, largest)
    return None


def verify_P(g: Graph, k: int, d: int, budget: Optional[int] = None, max_n: int = DEFAULT_MAX_N) -> PResult:
    """Decide property P(k, d) with a certificate when possible.

    Tier 2 (constructive) runs first; the fractional-packing test (tier 1)
    and the exhaustive search (tier 3, n <= 7 and m <= 14) only run when it
    fails. ``Refuted`` comes only from tier 3 exhaustion.
    """
    if k < 1 or d < 1:
        raise InvalidParameterError("k and d must be >= 1")
    if not is_connected(g):
        comps = components(g)
        raise DisconnectedGraphError(comps[0][0], comps[1][0])
    if budget is None:
        budget = g.n * g.m
    cert = _tier2(g, k, d, budget)
    if cert is not None:
        return PResult(PStatus.VERIFIED, cert, tier="2")
    frac = None
    notes = []
    if 2 <= g.n <= max_n:
        nu, _ = nu_f_exact(g, max_n)
        frac = nu > k + Fraction(d - 1, d)
        if frac:
            notes.append(f"nu_f={nu} exceeds k+(d-1)/d, so P({k},{d}) holds")
    if g.n <= TIER3_MAX_N and g.m <= TIER3_MAX_M:
        cert = _tier3(g, k, d)
        if cert is not None:
            return PResult(PStatus.VERIFIED, cert, "3", frac, tuple(notes))
        return PResult(PStatus.REFUTED, None, "3", frac, tuple(notes))
    return PResult(PStatus.UNKNOWN, None, "", frac, tuple(notes))


class FangYang(str, enum.Enum):
    IMPLICATION_HOLDS = "ImplicationHolds"
    VACUOUS = "Vacuous"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


def fang_yang_check(g: Graph, k: int, d: int, nu: Optional[Fraction] = None) -> tuple[FangYang, Optional[PResult]]:
    """Check that ``nu_f > k + (d-1)/d`` implies P(k, d) on ``g``."""
    if nu is None:
        nu, _ = nu_f_exact(g)
    if nu <= k + Fraction(d - 1, d):
        return FangYang.VACUOUS, None
    res = verify_P(g, k, d)
    if res.status is PStatus.VERIFIED:
        return FangYang.IMPLICATION_HOLDS, res
    if res.status is PStatus.REFUTED:
        return FangYang.COUNTEREXAMPLE, res
    raise UndecidedError(f"verify_P could not decide P({k},{d}) on {g}")


# ---------------------------------------------------------------- JSON


def rational_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def partition_json(p: Partition) -> dict:
    return {
        "blocks": [list(b) for b in p.blocks],
        "crossing": p.crossing,
        "objective": rational_json(p.objective),
    }


def packing_certificate_json(c: PackingCertificate) -> dict:
    out = {"kind": c.kind.value}
    if c.trees is not None:
        out["trees"] = [[list(e) for e in t] for t in c.trees]
    if c.witness is not None:
        out["witness"] = partition_json(c.witness)
    return out


def p_certificate_json(c: PCertificate) -> dict:
    return {
        "trees": [[list(e) for e in t] for t in c.trees],
        "forest": [list(e) for e in c.forest],
        "forest_edges": c.forest_edges,
        "largest_component_edges": c.largest_component_edges,
        "basis": list(c.basis),
    }


def p_result_json(r: PResult) -> dict:
    out = {"status": r.status.value, "tier": r.tier}
    if r.fractional_bound is not None:
        out["fractional_bound"] = r.fractional_bound
    if r.certificate is not None:
        out["certificate"] = p_certificate_json(r.certificate)
    if r.notes:
        out["notes"] = list(r.notes)
    return out
