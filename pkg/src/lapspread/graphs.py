"""Graph representations, distances, high-eccentricity sets, Laplacians, graph6 I/O.

Simple graphs live on at most 64 vertices with one machine-word bitset per
adjacency row; weighted graphs are dense symmetric matrices with entries in
[0, 1].  All types are immutable after construction and every operation is a
pure function, so values can be shared freely across threads.

Unreachable pairs are reported as ``INFINITE`` distance, and a vertex of a
disconnected graph counts as having eccentricity >= 3.  Under that convention
the eccentricity-based connectivity bound degenerates to 0 for disconnected
graphs, consistent with an algebraic connectivity of 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

INFINITE = float("inf")

MAX_SIMPLE_VERTICES = 64
MAX_WEIGHTED_VERTICES = 256

_G6_HEADER = b">>graph6<<"


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected unweighted graph; ``adj[v]`` is the neighbour bitset of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (2 <= self.n <= MAX_SIMPLE_VERTICES):
            raise ValueError(f"vertex count {self.n} outside [2, {MAX_SIMPLE_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} has bits beyond vertex {self.n - 1}")
            if row & (1 << v):
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(self.n):
            for u in _bits(self.adj[v]):
                if not self.adj[u] & (1 << v):
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, (0,) * n)

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in _bits(self.adj[v]):
                if u > v:
                    yield (v, u)

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        if u == v:
            raise ValueError("cannot add a self-loop")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return SimpleGraph(self.n, tuple(rows))

    def relabel(self, perm: Iterable[int]) -> "SimpleGraph":
        """Return the graph with vertex v renamed to perm[v]."""
        p = tuple(perm)
        rows = [0] * self.n
        for v in range(self.n):
            for u in _bits(self.adj[v]):
                rows[p[v]] |= 1 << p[u]
        return SimpleGraph(self.n, tuple(rows))


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Symmetric edge-weight matrix with weights in [0, 1] and zero diagonal."""

    w: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weight matrix must be square")
        n = w.shape[0]
        if not (2 <= n <= MAX_WEIGHTED_VERTICES):
            raise ValueError(f"vertex count {n} outside [2, {MAX_WEIGHTED_VERTICES}]")
        if not np.array_equal(w, w.T):
            raise ValueError("weight matrix must be symmetric")
        if np.any(np.diag(w) != 0.0):
            raise ValueError("diagonal weights must be zero")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightedGraph) and np.array_equal(self.w, other.w)


Graph = Union[SimpleGraph, WeightedGraph]


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs hop distances; entries are ints or INFINITE."""

    dist: tuple[tuple[float, ...], ...]

    def __getitem__(self, pair: tuple[int, int]) -> float:
        u, v = pair
        return self.dist[u][v]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complement(g: Graph) -> Graph:
    """Complement a graph; weighted edges w become 1 - w off the diagonal."""
    if isinstance(g, SimpleGraph):
        full = (1 << g.n) - 1
        return SimpleGraph(g.n, tuple((row ^ full) & ~(1 << v) for v, row in enumerate(g.adj)))
    wc = 1.0 - g.w
    np.fill_diagonal(wc, 0.0)
    return WeightedGraph(wc)


def distances(g: SimpleGraph) -> DistanceTable:
    """Exact hop distances by BFS from every vertex; INFINITE when unreachable."""
    rows = []
    for v in range(g.n):
        dist: list[float] = [INFINITE] * g.n
        seen = 1 << v
        frontier = seen
        d = 0
        while frontier:
            for u in _bits(frontier):
                dist[u] = d
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
        rows.append(tuple(dist))
    return DistanceTable(tuple(rows))


def eccentricities(g: SimpleGraph) -> list[float]:
    """Per-vertex eccentricity; INFINITE whenever the graph is disconnected."""
    table = distances(g)
    return [max(row) for row in table.dist]


def high_ecc_set(g: SimpleGraph) -> frozenset[int]:
    """Vertices of eccentricity at least 3, counting INFINITE as >= 3."""
    return frozenset(v for v, e in enumerate(eccentricities(g)) if e >= 3)


def diameter(g: SimpleGraph) -> float:
    return max(eccentricities(g))


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian L = Deg - A; rows sum to zero exactly."""
    if isinstance(g, SimpleGraph):
        a = np.zeros((g.n, g.n))
        for v in range(g.n):
            for u in _bits(g.adj[v]):
                a[v, u] = 1.0
    else:
        a = np.array(g.w)
    lap = np.diag(a.sum(axis=1)) - a
    return lap


def parse_graph6(data: bytes | str) -> SimpleGraph:
    """Decode a short-form graph6 byte string (2 <= n <= 62).

    Layout: first byte n+63, then the upper-triangle adjacency bits in
    column-major order x(0,1), x(0,2), x(1,2), x(0,3), ... packed six per
    byte, most significant bit first, each byte offset by 63 and the final
    byte zero-padded.
    """
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):].strip()
    if not data:
        raise ValueError("empty graph6 string")
    for b in data:
        if not (63 <= b <= 126):
            raise ValueError(f"byte {b} outside graph6 range [63, 126]")
    if data[0] == 126:
        raise ValueError("graph6 long form (n > 62) not supported")
    n = data[0] - 63
    if n < 2:
        raise ValueError(f"graph6 order {n} below the supported minimum of 2")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) != 1 + nbytes:
        raise ValueError(f"graph6 length {len(data)} != expected {1 + nbytes} for n={n}")
    bits = 0
    for b in data[1:]:
        bits = (bits << 6) | (b - 63)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits in graph6 string")
    bits >>= pad
    rows = [0] * n
    t = nbits - 1  # bit t of `bits` holds upper-triangle position nbits-1-t
    for j in range(1, n):
        for i in range(j):
            if (bits >> t) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            t -= 1
    return SimpleGraph(n, tuple(rows))


def emit_graph6(g: SimpleGraph) -> bytes:
    """Encode a graph as short-form graph6 (requires n <= 62)."""
    if g.n > 62:
        raise ValueError("graph6 short form supports at most 62 vertices")
    bits = 0
    for j in range(1, g.n):
        for i in range(j):
            bits = (bits << 1) | ((g.adj[i] >> j) & 1)
    nbits = g.n * (g.n - 1) // 2
    nbytes = (nbits + 5) // 6
    bits <<= 6 * nbytes - nbits
    out = bytearray([g.n + 63])
    for shift in range(6 * (nbytes - 1), -1, -6):
        out.append(63 + ((bits >> shift) & 0x3F))
    return bytes(out)
