"""Exhaustive labeled-graph enumeration, canonical forms, and per-graph records.

The labeled space on n vertices is the set of 2^(n(n-1)/2) edge masks.  Mask
bit (T-1-t) holds upper-triangle position t in graph6 column-major order, so
ascending mask order coincides with lexicographic order on the adjacency
bitstring and the numerically smallest mask of an isomorphism class is its
canonical certificate.

Filters are evaluated for every mask with vectorized bitset arithmetic
(chunked, optionally across threads); only the survivors are deduplicated.
Deduplication walks survivors in ascending order and marks whole orbits
visited, so each isomorphism class costs one vectorized pass over the n!
permutations instead of one pass per labeled graph.

n = 8 sweeps (2^28 masks) are supported behind an explicit flag; n >= 9 is
refused.  Randomized weighted fuzzing uses numpy's PCG64 generator, which is
reproducible across platforms for a fixed seed.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import bounds
from .graphs import (INFINITE, SimpleGraph, complement, diameter, emit_graph6,
                     high_ecc_set)
from .spectra import laplacian_spectrum

MIN_N = 2
MAX_N = 8
UNGATED_MAX_N = 7
RNG_ALGORITHM = "numpy-PCG64"

_CHUNK_BITS = 20

FILTER_KINDS = ("all", "connected", "both-diam3", "diam", "ecc3")

CSV_COLUMNS = ("graph6", "n", "x", "y", "dsize", "diam", "diam_c",
               "f_bound", "weak_bound", "mohar", "lu", "green_residual", "se_residual")


def default_threads() -> int:
    env = os.environ.get("LAPSPREAD_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Filter:
    """Isomorphism-invariant predicate selecting a graph class."""

    kind: str
    arg: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FILTER_KINDS:
            raise ValueError(f"unknown filter {self.kind!r}")
        if self.kind in ("diam", "ecc3"):
            if self.arg is None or self.arg < 0:
                raise ValueError(f"filter {self.kind!r} needs a nonnegative argument")
        elif self.arg is not None:
            raise ValueError(f"filter {self.kind!r} takes no argument")

    @classmethod
    def parse(cls, text: str) -> "Filter":
        head, sep, tail = text.strip().lower().partition(":")
        if sep:
            return cls(head, int(tail))
        return cls(head)

    def text(self) -> str:
        return self.kind if self.arg is None else f"{self.kind}:{self.arg}"


@dataclass(frozen=True)
class GraphClassIter:
    """Enumeration request: order, filter, and dedup convention."""

    n: int
    filter: Filter = Filter("all")
    dedup: bool = False
    allow_n8: bool = False

    def __post_init__(self) -> None:
        if self.n > MAX_N:
            raise ValueError(f"enumeration refused for n={self.n} (max {MAX_N})")
        if self.n == MAX_N and not self.allow_n8:
            raise ValueError("n=8 sweep is gated; pass allow_n8=True (2^28 masks)")
        if self.n < MIN_N:
            raise ValueError(f"enumeration needs n >= {MIN_N}")


# ---------------------------------------------------------------------------
# Mask <-> graph conversion
# ---------------------------------------------------------------------------

def _pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_positions(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in graph6 column-major order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def mask_to_graph(n: int, mask: int) -> SimpleGraph:
    t = _pair_count(n) - 1
    rows = [0] * n
    for i, j in pair_positions(n):
        if (mask >> t) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        t -= 1
    return SimpleGraph(n, tuple(rows))


def graph_to_mask(g: SimpleGraph) -> int:
    mask = 0
    for i, j in pair_positions(g.n):
        mask = (mask << 1) | ((g.adj[i] >> j) & 1)
    return mask


# ---------------------------------------------------------------------------
# Permutation bit tables and canonical forms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, ...]:
    """Per-permutation lookup tables mapping 7-bit mask chunks to permuted masks."""
    t_count = _pair_count(n)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    pos = np.zeros((n, n), dtype=np.int64)
    for t, (i, j) in enumerate(pair_positions(n)):
        pos[i, j] = pos[j, i] = t
    contrib = np.zeros((len(perms), t_count), dtype=np.uint32)
    for t, (i, j) in enumerate(pair_positions(n)):
        lo = np.minimum(perms[:, i], perms[:, j])
        hi = np.maximum(perms[:, i], perms[:, j])
        b_new = t_count - 1 - pos[lo, hi]
        contrib[:, t_count - 1 - t] = np.left_shift(np.uint32(1), b_new.astype(np.uint32))
    chunk_vals = np.arange(128)
    tables = []
    for c in range((t_count + 6) // 7):
        tbl = np.zeros((len(perms), 128), dtype=np.uint32)
        for lb in range(7):
            b = 7 * c + lb
            if b >= t_count:
                break
            sel = ((chunk_vals >> lb) & 1).astype(bool)
            tbl[:, sel] |= contrib[:, b:b + 1]
        tables.append(tbl)
    return tuple(tables)


def _orbit(n: int, mask: int) -> np.ndarray:
    """Masks of all relabelings of `mask` (one entry per permutation)."""
    tables = _perm_tables(n)
    acc = tables[0][:, mask & 127].copy()
    for c in range(1, len(tables)):
        acc |= tables[c][:, (mask >> (7 * c)) & 127]
    return acc


def canonical_mask(n: int, mask: int) -> int:
    if n > MAX_N:
        raise ValueError(f"canonicalization supports n <= {MAX_N}")
    return int(_orbit(n, mask).min())


def canonical_form(g: SimpleGraph) -> bytes:
    """Canonical certificate: graph6 bytes of the lexicographically minimal
    relabeling.  Equal certificates hold exactly for isomorphic graphs."""
    return emit_graph6(mask_to_graph(g.n, canonical_mask(g.n, graph_to_mask(g))))


# ---------------------------------------------------------------------------
# Vectorized filter pipeline
# ---------------------------------------------------------------------------

def _mask_rows(n: int, masks: np.ndarray) -> np.ndarray:
    """Adjacency bitset rows (uint8) for every mask in `masks`."""
    t_count = _pair_count(n)
    rows = np.zeros((masks.shape[0], n), dtype=np.uint8)
    for t, (i, j) in enumerate(pair_positions(n)):
        bit = ((masks >> np.uint32(t_count - 1 - t)) & np.uint32(1)).astype(np.uint8)
        rows[:, i] |= bit << j
        rows[:, j] |= bit << i
    return rows


def _self_bits(n: int, count: int) -> np.ndarray:
    out = np.empty((count, n), dtype=np.uint8)
    for v in range(n):
        out[:, v] = 1 << v
    return out


def _expand_once(n: int, rows: np.ndarray, reach: np.ndarray) -> np.ndarray:
    """One BFS layer: reach'[v] = reach[v] | union of reach[u] over u ~ v."""
    out = reach.copy()
    for v in range(n):
        rv = rows[:, v]
        for u in range(n):
            if u == v:
                continue
            gate = np.negative((rv >> u) & 1)  # 0x00 or 0xFF
            out[:, v] |= reach[:, u] & gate
    return out


def _square(n: int, reach: np.ndarray) -> np.ndarray:
    """Radius doubling: out[v] = union of reach[u] over u in reach[v]."""
    out = reach.copy()
    for v in range(n):
        rv = reach[:, v]
        for u in range(n):
            if u == v:
                continue
            gate = np.negative((rv >> u) & 1)
            out[:, v] |= reach[:, u] & gate
    return out


def _reach_upto(n: int, rows: np.ndarray, dist: int) -> np.ndarray:
    reach = rows | _self_bits(n, rows.shape[0])
    for _ in range(dist - 1):
        reach = _expand_once(n, rows, reach)
    return reach


def _all_full(n: int, reach: np.ndarray) -> np.ndarray:
    full = np.uint8((1 << n) - 1)
    return (reach == full).all(axis=1)


def _connected_mask(n: int, rows: np.ndarray) -> np.ndarray:
    reach = rows | _self_bits(n, rows.shape[0])
    steps = 1
    while steps < n - 1:
        reach = _square(n, reach)
        steps *= 2
    return _all_full(n, reach)


def _filter_chunk(n: int, filt: Filter, lo: int, hi: int) -> np.ndarray:
    """Survivor masks among [lo, hi) for the given filter."""
    masks = np.arange(lo, hi, dtype=np.uint32)
    if filt.kind == "all":
        return masks
    rows = _mask_rows(n, masks)
    if filt.kind == "connected":
        keep = _connected_mask(n, rows)
    elif filt.kind == "both-diam3":
        keep = _diam_equals(n, rows, 3)
        full = np.uint8((1 << n) - 1)
        crows = (~rows & full) ^ _self_bits(n, rows.shape[0])
        keep &= _diam_equals(n, crows, 3)
    elif filt.kind == "diam":
        keep = _diam_equals(n, rows, filt.arg)
    else:  # ecc3
        reach2 = _square(n, rows | _self_bits(n, rows.shape[0]))
        full = np.uint8((1 << n) - 1)
        keep = (reach2 != full).sum(axis=1) == filt.arg
    return masks[keep]


def _diam_equals(n: int, rows: np.ndarray, d: int) -> np.ndarray:
    if d < 1 or d > n - 1:
        return np.zeros(rows.shape[0], dtype=bool)
    reach_d = _reach_upto(n, rows, d)
    ok = _all_full(n, reach_d)
    if d > 1:
        reach_prev = _reach_upto(n, rows, d - 1)
        ok &= ~_all_full(n, reach_prev)
    return ok


def _survivor_chunks(it: GraphClassIter, threads: int | None = None) -> Iterator[np.ndarray]:
    """Yield survivor-mask arrays per contiguous chunk, in ascending order.

    Chunks are processed in waves of `threads` workers so memory stays
    bounded at a few chunk arrays even for the gated 2^28-mask n=8 sweep.
    """
    n = it.n
    total = 1 << _pair_count(n)
    workers = threads if threads is not None else default_threads()
    chunk = 1 << _CHUNK_BITS
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if len(ranges) == 1 or workers <= 1:
        for lo, hi in ranges:
            yield _filter_chunk(n, it.filter, lo, hi)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for wave_start in range(0, len(ranges), workers):
            wave = ranges[wave_start:wave_start + workers]
            yield from pool.map(lambda r: _filter_chunk(n, it.filter, *r), wave)


def _dedup_iter(n: int, chunks: Iterator[np.ndarray]) -> Iterator[int]:
    """Canonical representatives (ascending) among isomorphism-closed survivors.

    Survivors must be closed under isomorphism (true for every Filter), so
    the first unvisited survivor is the minimum of its orbit.
    """
    visited = bytearray(1 << _pair_count(n))
    for arr in chunks:
        for m in arr.tolist():
            if visited[m]:
                continue
            yield m
            for x in _orbit(n, m).tolist():
                visited[x] = 1


def enumerate_masks(it: GraphClassIter, threads: int | None = None) -> Iterator[int]:
    """Stream survivor masks ascending, deduplicated to canonical
    representatives if requested."""
    chunks = _survivor_chunks(it, threads)
    if it.dedup:
        yield from _dedup_iter(it.n, chunks)
        return
    for arr in chunks:
        yield from arr.tolist()


def enumerate_classes(it: GraphClassIter, threads: int | None = None) -> Iterator[SimpleGraph]:
    """Stream the selected graphs in deterministic ascending order."""
    for mask in enumerate_masks(it, threads):
        yield mask_to_graph(it.n, mask)


def count_classes(it: GraphClassIter, threads: int | None = None) -> int:
    return sum(1 for _ in enumerate_masks(it, threads))


# ---------------------------------------------------------------------------
# Per-graph evaluation records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointRecord:
    """Spectral coordinates and bound evaluations of one graph."""

    graph6: str
    n: int
    x: float
    y: float
    dsize: int
    diam: float
    diam_c: float
    bound_values: dict = field(default_factory=dict)

    @staticmethod
    def csv_header() -> str:
        return ",".join(CSV_COLUMNS)

    def _cells(self) -> dict:
        cells: dict = {"graph6": self.graph6, "n": self.n, "x": self.x, "y": self.y,
                       "dsize": self.dsize, "diam": self.diam, "diam_c": self.diam_c}
        for key in CSV_COLUMNS[7:]:
            cells[key] = self.bound_values.get(key)
        return cells

    def to_csv_row(self) -> str:
        return ",".join(_render_cell(v) for v in self._cells().values())

    def to_json_obj(self) -> dict:
        obj = {}
        for key, v in self._cells().items():
            if isinstance(v, float) and v == INFINITE:
                v = "inf"
            obj[key] = v
        return obj

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def _render_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, float):
        if v == INFINITE:
            return "inf"
        return format(v, ".17g")
    return str(v)


def evaluate_point(g: SimpleGraph, bounds_requested: Sequence[str] | None = None) -> PointRecord:
    """Fuse distances, spectra and bounds into one record for graph `g`."""
    gc = complement(g)
    n = g.n
    x = float(laplacian_spectrum(g).eigs[1])
    y = float(laplacian_spectrum(gc).eigs[1])
    dsize = len(high_ecc_set(g))
    diam = diameter(g)
    diam_c = diameter(gc)
    m = g.num_edges()
    vals: dict = {
        "f_bound": bounds.f_bound(n, dsize / 2),
        "weak_bound": bounds.weak_bound(n, dsize / 2),
        "mohar": bounds.mohar_bound(n, diam) if diam != INFINITE else None,
        "lu": bounds.lu_bound(n, diam, m) if diam != INFINITE else None,
        "green_residual": bounds.green_residual(n, x, y),
        "se_residual": bounds.se_residual(n, x, y),
    }
    if bounds_requested is not None:
        vals = {k: v for k, v in vals.items() if k in bounds_requested}
    return PointRecord(graph6=canonical_form(g).decode("ascii"), n=n, x=x, y=y,
                       dsize=dsize, diam=diam, diam_c=diam_c, bound_values=vals)


# ---------------------------------------------------------------------------
# Weighted fuzzing
# ---------------------------------------------------------------------------

FUZZ_MODES = ("uniform", "se-perturbed")


@dataclass(frozen=True)
class FuzzResult:
    """Worst margins observed over a reproducible weighted-graph stream."""

    n: int
    samples: int
    seed: int
    mode: str
    rng_algorithm: str
    min_linear_margin: float       # min of x + y - 1
    min_hyperbola_margin: float    # min of x + y - 2xy/n - 1
    argmin_linear: int
    argmin_hyperbola: int
    points: np.ndarray | None = None

    def metadata(self) -> dict:
        return {"n": self.n, "samples": self.samples, "seed": self.seed,
                "mode": self.mode, "rng": self.rng_algorithm}


def _fuzz_batch_weights(n: int, count: int, mode: str, rng: np.random.Generator) -> np.ndarray:
    t_inner = (n - 2) * (n - 3) // 2
    w = np.zeros((count, n, n))
    iu = np.triu_indices(n, k=1)
    if mode == "uniform":
        flat = rng.random((count, iu[0].size))
        w[:, iu[0], iu[1]] = flat
    else:  # se-perturbed: near-extremal weights with noisy u/v rows
        s = rng.random(count)
        u_noise = 0.02 * rng.random((count, n - 2))
        v_noise = 0.02 * rng.random((count, n - 2))
        inner = rng.random((count, t_inner)) if t_inner else None
        w[:, 0, 1] = s
        w[:, 0, 2:] = u_noise
        w[:, 1, 2:] = 1.0 - v_noise
        if t_inner:
            inner_iu = np.triu_indices(n - 2, k=1)
            w[:, 2 + inner_iu[0], 2 + inner_iu[1]] = inner
    w = w + np.transpose(w, (0, 2, 1))
    return w


def fuzz_weighted(n: int, samples: int, seed: int, mode: str = "uniform",
                  batch: int = 4096, keep_points: bool = False) -> FuzzResult:
    """Stream `samples` random weighted graphs and record worst conjecture margins.

    Deterministic for fixed (n, samples, seed, mode) on every platform; the
    complementary connectivity is obtained from the exact identity
    lambda2(complement) = n - lambda_max.
    """
    if n > 64:
        raise ValueError("weighted fuzzing capped at n <= 64")
    if mode not in FUZZ_MODES:
        raise ValueError(f"unknown fuzz mode {mode!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    best_lin, best_hyp = np.inf, np.inf
    arg_lin = arg_hyp = -1
    pts = []
    done = 0
    while done < samples:
        count = min(batch, samples - done)
        w = _fuzz_batch_weights(n, count, mode, rng)
        lap = -w
        diag = w.sum(axis=2)
        idx = np.arange(n)
        lap[:, idx, idx] = diag
        eigs = np.linalg.eigvalsh(lap)
        x = eigs[:, 1]
        y = n - eigs[:, -1]
        lin = x + y - 1
        hyp = x + y - 2 * x * y / n - 1
        i_lin = int(np.argmin(lin))
        i_hyp = int(np.argmin(hyp))
        if lin[i_lin] < best_lin:
            best_lin, arg_lin = float(lin[i_lin]), done + i_lin
        if hyp[i_hyp] < best_hyp:
            best_hyp, arg_hyp = float(hyp[i_hyp]), done + i_hyp
        if keep_points:
            pts.append(np.column_stack([x, y]))
        done += count
    return FuzzResult(n=n, samples=samples, seed=seed, mode=mode,
                      rng_algorithm=RNG_ALGORITHM,
                      min_linear_margin=best_lin, min_hyperbola_margin=best_hyp,
                      argmin_linear=arg_lin, argmin_hyperbola=arg_hyp,
                      points=np.concatenate(pts) if pts else None)
