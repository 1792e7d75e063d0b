"""Immutable simple graphs, named families, graph algebra and serialization."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    FormatOverflowError,
    GraphParseError,
    InvalidParameterError,
    MissingEdgeError,
)

Edge = tuple[int, int]

GRAPH6_MAX_N = 68719476735


class Family(str, enum.Enum):
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    EMPTY = "empty"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an int bitset of the neighbours of ``v``; ``edges`` is the
    sorted tuple of pairs ``(u, v)`` with ``u < v``. Build instances with
    :meth:`from_edges`, which validates; the raw constructor trusts its input.
    """

    n: int
    adj: tuple[int, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 1:
            raise InvalidParameterError(f"graph needs n >= 1, got {n}")
        adj = [0] * n
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InvalidParameterError(f"multi-edge ({u}, {v})")
            seen.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        a, out, i = self.adj[v], [], 0
        while a:
            if a & 1:
                out.append(i)
            a >>= 1
            i += 1
        return out

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 ``uint8`` adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        if self.edges:
            e = np.asarray(self.edges, dtype=np.int64)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.flags.writeable = False
        return a

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` neighbour arrays, neighbours ascending."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.empty(2 * self.m, dtype=np.int64)
        pos = indptr[:-1].copy()
        for u, v in self.edges:
            indices[pos[u]] = v
            pos[u] += 1
            indices[pos[v]] = u
            pos[v] += 1
        for v in range(self.n):
            indices[indptr[v]:indptr[v + 1]].sort()
        return indptr, indices

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- families


def construct(family: Family | str, params: Sequence[int]) -> Graph:
    """Build a labelled member of a named family.

    ``complete [n]``, ``complete_bipartite [a, b]`` (parts ``0..a-1`` and
    ``a..a+b-1``), ``path [n]``, ``cycle [n]`` (n >= 3), ``star [leaves]``
    (centre 0), ``empty [n]``.
    """
    family = Family(family)
    params = [int(p) for p in params]
    want = 2 if family is Family.COMPLETE_BIPARTITE else 1
    if len(params) != want:
        raise InvalidParameterError(f"{family.value} takes {want} parameter(s), got {params}")
    if any(p < 1 for p in params):
        raise InvalidParameterError(f"{family.value} sizes must be positive, got {params}")
    if family is Family.COMPLETE:
        (n,) = params
        return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))
    if family is Family.COMPLETE_BIPARTITE:
        a, b = params
        return Graph.from_edges(a + b, ((u, a + j) for u in range(a) for j in range(b)))
    if family is Family.PATH:
        (n,) = params
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if family is Family.CYCLE:
        (n,) = params
        if n < 3:
            raise InvalidParameterError(f"cycle needs n >= 3, got {n}")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])
    if family is Family.STAR:
        (leaves,) = params
        return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))
    (n,) = params
    return Graph.from_edges(n, ())


def complete(n: int) -> Graph:
    return construct(Family.COMPLETE, [n])


def path(n: int) -> Graph:
    return construct(Family.PATH, [n])


def cycle(n: int) -> Graph:
    return construct(Family.CYCLE, [n])


def complete_bipartite(a: int, b: int) -> Graph:
    return construct(Family.COMPLETE_BIPARTITE, [a, b])


def empty(n: int) -> Graph:
    return construct(Family.EMPTY, [n])


# ---------------------------------------------------------------- algebra


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = list(g1.edges) + [(u + off, v + off) for u, v in g2.edges]
    return Graph.from_edges(g1.n + g2.n, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    off = g1.n
    edges = list(g1.edges) + [(u + off, v + off) for u, v in g2.edges]
    edges += [(u, off + w) for u in range(g1.n) for w in range(g2.n)]
    return Graph.from_edges(g1.n + g2.n, edges)


def delete_edges(g: Graph, removed: Iterable[Sequence[int]]) -> Graph:
    drop = set()
    for e in removed:
        u, v = sorted((int(e[0]), int(e[1])))
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise MissingEdgeError((u, v))
        drop.add((u, v))
    if not drop:
        return g
    return Graph.from_edges(g.n, (e for e in g.edges if e not in drop))


def add_edges(g: Graph, added: Iterable[Sequence[int]]) -> Graph:
    return Graph.from_edges(g.n, list(g.edges) + [tuple(e) for e in added])


# ---------------------------------------------------------------- classify


@dataclass(frozen=True)
class GraphProfile:
    n: int
    m: int
    min_degree: int
    is_connected: bool
    bipartition: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = field(default=None)
    is_balanced_bipartite: bool = False

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    reach, frontier = 1, 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << g.n) - 1


def two_coloring(g: Graph) -> Optional[list[int]]:
    """BFS 2-colouring (component by component), or None if an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def classify(g: Graph) -> GraphProfile:
    connected = is_connected(g)
    color = two_coloring(g)
    bip = None
    balanced = False
    if color is not None:
        x = tuple(v for v in range(g.n) if color[v] == 0)
        y = tuple(v for v in range(g.n) if color[v] == 1)
        bip = (x, y)
        # a disconnected graph has several bipartitions; only the connected case is unique
        balanced = connected and g.n % 2 == 0 and len(x) == len(y)
    return GraphProfile(g.n, g.m, g.min_degree, connected, bip, balanced)


# ---------------------------------------------------------------- serialization


def encode_graph(g: Graph, fmt: str = "edge_list") -> bytes:
    if fmt == "edge_list":
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt == "graph6":
        return _graph6_encode(g) + b"\n"
    raise InvalidParameterError(f"unknown format {fmt!r}")


def decode_graph(data: bytes | str, fmt: str = "edge_list") -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    if fmt == "edge_list":
        return _edge_list_decode(data)
    if fmt == "graph6":
        return _graph6_decode(data.rstrip(b"\r\n"))
    raise InvalidParameterError(f"unknown format {fmt!r}")


def _edge_list_decode(data: bytes) -> Graph:
    offset = 0
    rows = []
    for raw in data.split(b"\n"):
        line = raw.rstrip(b"\r")
        if line.strip():
            parts = line.split()
            try:
                rows.append((offset, int(parts[0]), int(parts[1])))
            except (ValueError, IndexError):
                raise GraphParseError(f"expected two integers, got {line!r}", offset) from None
            if len(parts) != 2:
                raise GraphParseError(f"expected two integers, got {line!r}", offset)
        offset += len(raw) + 1
    if not rows:
        raise GraphParseError("empty edge list", 0)
    _, n, m = rows[0]
    if n < 1 or m < 0:
        raise GraphParseError(f"bad header n={n} m={m}", 0)
    if len(rows) - 1 != m:
        raise GraphParseError(f"header declares {m} edges, found {len(rows) - 1}", rows[-1][0])
    seen = set()
    for off, u, v in rows[1:]:
        if not (0 <= u < v < n):
            raise GraphParseError(f"edge ({u}, {v}) violates 0 <= u < v < {n}", off)
        if (u, v) in seen:
            raise GraphParseError(f"duplicate edge ({u}, {v})", off)
        seen.add((u, v))
    return Graph.from_edges(n, seen)


def _graph6_header(n: int) -> bytes:
    if n < 0 or n > GRAPH6_MAX_N:
        raise FormatOverflowError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _graph6_encode(g: Graph) -> bytes:
    out = bytearray(_graph6_header(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def _graph6_decode(data: bytes) -> Graph:
    if data.startswith(b">>graph6<<"):
        data = data[10:]
        base = 10
    else:
        base = 0
    if not data:
        raise GraphParseError("empty graph6 string", base)
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise GraphParseError(f"byte {c} outside graph6 range 63..126", base + i)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphParseError("truncated 8-byte graph6 header", base + len(data))
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise GraphParseError("truncated 4-byte graph6 header", base + len(data))
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
    if n < 1:
        raise GraphParseError("graph6 graph has no vertices", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphParseError(f"expected {need} data bytes for n={n}, got {len(body)}", base + pos + min(len(body), need))
    edges = []
    k = 0
    i, j = 0, 1
    for c in body:
        v = c - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if v >> shift & 1:
                    raise GraphParseError("nonzero padding bits", base + pos + k // 6)
                continue
            if v >> shift & 1:
                edges.append((i, j))
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph.from_edges(n, edges)


def read_graph_file(path) -> Graph:
    """Load a graph file; ``.g6`` means graph6 (first line), anything else edge list."""
    path = str(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if path.endswith(".g6"):
        first = data.split(b"\n", 1)[0]
        return decode_graph(first, "graph6")
    return decode_graph(data, "edge_list")


def graph_hash(g: Graph) -> str:
    import hashlib

    return hashlib.sha256(encode_graph(g, "edge_list")).hexdigest()[:16]
