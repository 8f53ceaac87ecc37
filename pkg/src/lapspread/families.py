"""Named graph families, their quotient matrices, and predicted spectra.

Families
--------
G_RIJ       two adjacent hubs a, b with r common pendant neighbours, i
            pendants on a and j pendants on b (n = r + i + j + 2).
GHAT_RIJ    G_RIJ with the hub edge a-b removed (requires r >= 1).
DANDELION   G_RIJ with (r, i, j) = (0, 1, n-3): a hub of n-3 pendants, a
            stem vertex and one stem pendant.
THICK1      path (a, b, c, d) with a blown up to cluster A and c to cluster
            C; stem fraction s = |C|/(n-2).
THICK2      path (c, a, d, b) with the same two blowups; s = |A|/(n-2).
BULL        path (a, b, c, d) plus a cluster E joined to both b and c;
            s = t = 1/2.
SE          weighted graph with an all-zero-weight vertex u, an all-one-
            weight vertex v, bridge weight s between them, and arbitrary
            interior weights.

Cluster blowups keep every original cross edge complete between clusters;
intra-cluster adjacency is free, so generators take a fill rule
(zero / one / random) and the spectra of interest are fill-invariant.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .bounds import f_bound, maxbound_closed
from .graphs import SimpleGraph, WeightedGraph, eccentricities
from .spectra import Polynomial, real_roots_in

FAMILY_KINDS = ("G_RIJ", "GHAT_RIJ", "DANDELION", "THICK1", "THICK2", "BULL", "SE")
FILL_RULES = ("zero", "one", "random")

_KIND_PREFIX = {"G_RIJ": "G", "GHAT_RIJ": "Ghat", "DANDELION": "dandelion",
                "THICK1": "thick1", "THICK2": "thick2", "BULL": "bull", "SE": "se"}
_PREFIX_KIND = {p.lower(): k for k, p in _KIND_PREFIX.items()}


@dataclass(frozen=True)
class FamilySpec:
    """Tagged parameters selecting one family member.

    Canonical text forms: ``G:2,3,4``, ``Ghat:1,2,2``, ``dandelion:10``,
    ``thick1:n=9,C=3``, ``thick2:n=9,A=3``, ``bull:n=7``,
    ``se:n=8,s=0.3,fill=random,seed=42``.  A ``fill=``/``seed=`` suffix is
    accepted on the cluster families as well.
    """

    kind: str
    r: int | None = None
    i: int | None = None
    j: int | None = None
    n: int | None = None
    c_size: int | None = None
    a_size: int | None = None
    s: float | None = None
    fill: str = "zero"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.fill not in FILL_RULES:
            raise ValueError(f"unknown fill rule {self.fill!r}")
        if self.fill == "random" and self.seed is None:
            raise ValueError("random fill requires a seed")
        k = self.kind
        if k == "G_RIJ":
            self._need(self.r is not None and self.i is not None and self.j is not None,
                       "G_RIJ needs r, i, j")
            self._need(self.r >= 0 and self.i >= 0 and self.j >= 0, "r, i, j must be >= 0")
        elif k == "GHAT_RIJ":
            self._need(self.r is not None and self.i is not None and self.j is not None,
                       "GHAT_RIJ needs r, i, j")
            self._need(self.r >= 1, "GHAT_RIJ needs r >= 1")
            self._need(self.i >= 0 and self.j >= 0, "i, j must be >= 0")
        elif k == "DANDELION":
            self._need(self.n is not None and self.n >= 4, "dandelion needs n >= 4")
        elif k == "THICK1":
            self._need(self.n is not None and self.n >= 4, "thick1 needs n >= 4")
            self._need(self.c_size is not None and 1 <= self.c_size <= self.n - 3,
                       "thick1 needs 1 <= |C| <= n-3")
        elif k == "THICK2":
            self._need(self.n is not None and self.n >= 4, "thick2 needs n >= 4")
            self._need(self.a_size is not None and 1 <= self.a_size <= self.n - 3,
                       "thick2 needs 1 <= |A| <= n-3")
        elif k == "BULL":
            self._need(self.n is not None and self.n >= 5, "bull needs n >= 5")
        elif k == "SE":
            self._need(self.n is not None and self.n >= 3, "se needs n >= 3")
            self._need(self.s is not None and 0.0 < self.s < 1.0, "se needs s in (0, 1)")

    @staticmethod
    def _need(cond: bool, msg: str) -> None:
        if not cond:
            raise ValueError(msg)

    @property
    def size(self) -> int:
        """Vertex count of the generated graph."""
        if self.kind in ("G_RIJ", "GHAT_RIJ"):
            return self.r + self.i + self.j + 2
        return self.n

    @property
    def stem_fraction(self) -> float:
        """The s parameter of the cluster families (|C|/(n-2), |A|/(n-2), or 1/2)."""
        if self.kind == "THICK1":
            return self.c_size / (self.n - 2)
        if self.kind == "THICK2":
            return self.a_size / (self.n - 2)
        if self.kind == "BULL":
            return 0.5
        if self.kind == "SE":
            return self.s
        raise ValueError(f"{self.kind} has no stem fraction")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        head, sep, tail = text.strip().partition(":")
        if not sep:
            raise ValueError(f"family spec {text!r} missing ':'")
        kind = _PREFIX_KIND.get(head.strip().lower())
        if kind is None:
            raise ValueError(f"unknown family {head!r}")
        fields: dict = {"kind": kind}
        if kind in ("G_RIJ", "GHAT_RIJ"):
            parts = [p.strip() for p in tail.split(",")]
            if len(parts) != 3:
                raise ValueError(f"{head} spec needs exactly r,i,j")
            fields.update(r=int(parts[0]), i=int(parts[1]), j=int(parts[2]))
            return cls(**fields)
        if kind == "DANDELION":
            fields["n"] = int(tail)
            return cls(**fields)
        for item in tail.split(","):
            key, eq, val = item.strip().partition("=")
            if not eq:
                raise ValueError(f"expected key=value, got {item!r}")
            key = key.strip().lower()
            val = val.strip()
            if key == "n":
                fields["n"] = int(val)
            elif key == "c":
                fields["c_size"] = int(val)
            elif key == "a":
                fields["a_size"] = int(val)
            elif key == "s":
                fields["s"] = float(val)
            elif key == "fill":
                fields["fill"] = val.lower()
            elif key == "seed":
                fields["seed"] = int(val)
            else:
                raise ValueError(f"unknown key {key!r} in family spec")
        return cls(**fields)

    def text(self) -> str:
        """Canonical text form (inverse of parse)."""
        prefix = _KIND_PREFIX[self.kind]
        if self.kind in ("G_RIJ", "GHAT_RIJ"):
            return f"{prefix}:{self.r},{self.i},{self.j}"
        if self.kind == "DANDELION":
            return f"{prefix}:{self.n}"
        items = [f"n={self.n}"]
        if self.kind == "THICK1":
            items.append(f"C={self.c_size}")
        elif self.kind == "THICK2":
            items.append(f"A={self.a_size}")
        if self.kind == "SE":
            items.append(f"s={self.s:g}")
        if self.fill != "zero":
            items.append(f"fill={self.fill}")
            if self.seed is not None:
                items.append(f"seed={self.seed}")
        return f"{prefix}:" + ",".join(items)


@dataclass(frozen=True)
class QuotientMatrix:
    """Equitable-partition quotient; its eigenvalues embed in the full spectrum."""

    q: np.ndarray
    part_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        q = np.array(self.q, dtype=float)
        if np.max(np.abs(q.sum(axis=1)), initial=0.0) > 1e-9:
            raise ValueError("quotient rows must sum to zero")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    def eigenvalues(self) -> np.ndarray:
        return np.sort(np.linalg.eigvals(self.q).real)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _cluster_fill_edges(cluster: range, fill: str, rng: random.Random | None) -> Iterator[tuple[int, int]]:
    for idx, u in enumerate(cluster):
        for v in list(cluster)[idx + 1:]:
            if fill == "one" or (fill == "random" and rng.random() < 0.5):
                yield (u, v)


def make(spec: FamilySpec) -> SimpleGraph | WeightedGraph:
    """Construct the graph selected by `spec`."""
    rng = random.Random(spec.seed) if spec.fill == "random" else None
    k = spec.kind
    if k in ("G_RIJ", "GHAT_RIJ", "DANDELION"):
        if k == "DANDELION":
            r, i, j = 0, 1, spec.n - 3
        else:
            r, i, j = spec.r, spec.i, spec.j
        n = r + i + j + 2
        edges = [] if k == "GHAT_RIJ" else [(0, 1)]
        edges += [(0, 2 + t) for t in range(r)] + [(1, 2 + t) for t in range(r)]
        edges += [(0, 2 + r + t) for t in range(i)]
        edges += [(1, 2 + r + i + t) for t in range(j)]
        return SimpleGraph.from_edges(n, edges)
    if k == "THICK1":
        n, c = spec.n, spec.c_size
        a = n - 2 - c
        cluster_a, b, cluster_c, d = range(a), a, range(a + 1, a + 1 + c), n - 1
        edges = [(u, b) for u in cluster_a] + [(b, v) for v in cluster_c] + [(v, d) for v in cluster_c]
        edges += list(_cluster_fill_edges(cluster_a, spec.fill, rng))
        edges += list(_cluster_fill_edges(cluster_c, spec.fill, rng))
        return SimpleGraph.from_edges(n, edges)
    if k == "THICK2":
        n, a = spec.n, spec.a_size
        c = n - 2 - a
        cluster_c, cluster_a, d, b = range(c), range(c, c + a), n - 2, n - 1
        edges = [(u, v) for u in cluster_c for v in cluster_a]
        edges += [(v, d) for v in cluster_a] + [(d, b)]
        edges += list(_cluster_fill_edges(cluster_a, spec.fill, rng))
        edges += list(_cluster_fill_edges(cluster_c, spec.fill, rng))
        return SimpleGraph.from_edges(n, edges)
    if k == "BULL":
        n = spec.n
        a, b, c, d = 0, 1, 2, 3
        cluster_e = range(4, n)
        edges = [(a, b), (b, c), (c, d)]
        edges += [(b, v) for v in cluster_e] + [(c, v) for v in cluster_e]
        edges += list(_cluster_fill_edges(cluster_e, spec.fill, rng))
        return SimpleGraph.from_edges(n, edges)
    # SE: u = 0 (all-zero weights), v = 1 (all-one weights), bridge weight s.
    n, s = spec.n, spec.s
    w = np.zeros((n, n))
    w[0, 1] = w[1, 0] = s
    w[1, 2:] = w[2:, 1] = 1.0
    if spec.fill != "zero" and n > 3:
        iu, iv = np.triu_indices(n - 2, k=1)
        if spec.fill == "one":
            vals = np.ones(iu.size)
        else:
            vals = np.random.Generator(np.random.PCG64(spec.seed)).uniform(size=iu.size)
        w[2 + iu, 2 + iv] = w[2 + iv, 2 + iu] = vals
    return WeightedGraph(w)


# ---------------------------------------------------------------------------
# Characteristic polynomials and quotients
# ---------------------------------------------------------------------------

def hub_quartic(r: int, i: int, j: int) -> Polynomial:
    """Degree-4 factor of the G_RIJ Laplacian characteristic polynomial."""
    return Polynomial((
        r * r + i * r + j * r + 4 * r + 2 * i + 2 * j + 4,
        -(2 * r * r + 2 * i * r + 2 * j * r + 10 * r + 2 * i * j + 5 * i + 5 * j + 12),
        r * r + i * r + j * r + 8 * r + i * j + 4 * i + 4 * j + 13,
        -(2 * r + i + j + 6),
        1,
    ))


def split_hub_quartic(r: int, i: int, j: int) -> Polynomial:
    """Degree-4 factor of the GHAT_RIJ Laplacian characteristic polynomial."""
    return Polynomial((
        r * r + i * r + j * r + 2 * r,
        -(2 * r * r + 2 * i * r + 2 * j * r + 6 * r + 2 * i * j + 2 * i + 2 * j + 2),
        r * r + i * r + j * r + 6 * r + i * j + 3 * i + 3 * j + 5,
        -(2 * r + i + j + 4),
        1,
    ))


def dandelion_cubic(n: int) -> Polynomial:
    """Cubic x^3 - (n+2)x^2 + (3n-2)x - n carrying the three free dandelion
    eigenvalues; its smallest root is the algebraic connectivity."""
    return Polynomial((-n, 3 * n - 2, -(n + 2), 1))


def thick_stem_cubic(n: float, s: float) -> Polynomial:
    """Cubic w(x) with w(x)=0 iff x is a nontrivial quotient eigenvalue of a
    thick-stemmed graph with stem fraction s; satisfies w(n-x, 1-s) = -w(x, s).
    """
    return Polynomial((
        -n * n * s + 2 * n * s,
        n * n * s - 2 * n * s + 2 * n - 2,
        -s * n - n + 2 * s - 1,
        1,
    ))


def se_quadratic(n: int, s: float) -> Polynomial:
    """Quadratic z^2 - (2s+n-1)z + ns whose roots are the extreme nontrivial
    eigenvalues of the weighted extremal family."""
    return Polynomial((n * s, -(2 * s + n - 1), 1))


def thick_stem_quotient(n: float, s: float) -> np.ndarray:
    """THICK1 quotient for any real stem fraction s in (0, 1), for curve work."""
    m = n - 2
    return np.array([
        [1.0, -1.0, 0.0, 0.0],
        [-(1 - s) * m, m, -s * m, 0.0],
        [0.0, -1.0, 2.0, -1.0],
        [0.0, 0.0, -s * m, s * m],
    ])


def quotient(spec: FamilySpec) -> QuotientMatrix:
    """Equitable-partition quotient matrix of the family, where one exists.

    Defined for G_RIJ and GHAT_RIJ (nonempty parts only), THICK1, BULL and
    SE; the remaining kinds have no printed quotient and raise ValueError.
    """
    k = spec.kind
    if k == "G_RIJ" or k == "GHAT_RIJ":
        r, i, j = spec.r, spec.i, spec.j
        if min(r, i, j) < 1:
            raise ValueError("quotient needs all five parts nonempty (r, i, j >= 1)")
        hub = 0 if k == "GHAT_RIJ" else 1
        q = np.array([
            [r + i + hub, -hub, -r, -i, 0],
            [-hub, r + j + hub, -r, 0, -j],
            [-1, -1, 2, 0, 0],
            [-1, 0, 0, 1, 0],
            [0, -1, 0, 0, 1],
        ], dtype=float)
        return QuotientMatrix(q, (1, 1, r, i, j))
    if k == "THICK1":
        n, c = spec.n, spec.c_size
        return QuotientMatrix(thick_stem_quotient(n, c / (n - 2)), (n - 2 - c, 1, c, 1))
    if k == "BULL":
        n = spec.n
        q = np.array([
            [1, -1, 0, 0, 0],
            [-1, n - 2, -(n - 4), -1, 0],
            [0, -1, 2, -1, 0],
            [0, -1, -(n - 4), n - 2, -1],
            [0, 0, 0, -1, 1],
        ], dtype=float)
        return QuotientMatrix(q, (1, 1, n - 4, 1, 1))
    if k == "SE":
        n, s = spec.n, spec.s
        q = np.array([
            [s, -s, 0.0],
            [-s, s + n - 2, 2.0 - n],
            [0.0, -1.0, 1.0],
        ])
        return QuotientMatrix(q, (1, 1, n - 2))
    raise ValueError(f"{k} has no quotient matrix")


def _deflate(coeffs: list[int], root: int, times: int) -> list[int]:
    """Exact synthetic division of an integer polynomial by (x - root)^times."""
    for _ in range(times):
        desc = list(reversed(coeffs))
        out = [desc[0]]
        for c in desc[1:]:
            out.append(c + root * out[-1])
        if out[-1] != 0:
            raise AssertionError(f"deflation by (x - {root}) left remainder {out[-1]}")
        coeffs = list(reversed(out[:-1]))
    return coeffs


def _extract_integer_roots(coeffs: list[int], n: int) -> tuple[list[float], list[int]]:
    """Strip all integer roots in [0, n] by exact division, with multiplicity.

    Degenerate parameter choices (empty pendant sets, stars, joins) make the
    printed quartic share integer roots with the twin factors; pulling those
    out exactly keeps the numeric root isolation on simple roots only.
    """
    found: list[float] = []
    for c in range(0, n + 1):
        while len(coeffs) > 1 and sum(a * c ** t for t, a in enumerate(coeffs)) == 0:
            coeffs = _deflate(coeffs, c, 1)
            found.append(float(c))
    return found, coeffs


def predicted_spectrum(spec: FamilySpec) -> np.ndarray:
    """Laplacian spectrum predicted by the factored characteristic polynomial.

    For the hub families the factorization is
    x (x-2)^(r-1) (x-1)^(i+j-2) q(x) with q the printed quartic.  Degenerate
    exponents are resolved exactly: a negative exponent cancels against a
    matching integer root of q, which is removed by exact division.
    """
    k = spec.kind
    if k == "DANDELION":
        n = spec.n
        int_roots, coeffs = _extract_integer_roots([int(c) for c in dandelion_cubic(n).coeffs], n)
        roots = int_roots + _simple_roots(coeffs, n)
        return np.sort(np.array([0.0] + [1.0] * (n - 4) + roots))
    if k not in ("G_RIJ", "GHAT_RIJ"):
        raise ValueError(f"no predicted spectrum for kind {k}")
    r, i, j = spec.r, spec.i, spec.j
    n = spec.size
    quartic = hub_quartic(r, i, j) if k == "G_RIJ" else split_hub_quartic(r, i, j)
    coeffs = [int(c) for c in quartic.coeffs]
    coeffs = _deflate(coeffs, 2, max(0, 1 - r))
    coeffs = _deflate(coeffs, 1, max(0, 2 - i - j))
    int_roots, coeffs = _extract_integer_roots(coeffs, n)
    roots = int_roots + _simple_roots(coeffs, n)
    eigs = [0.0] + [2.0] * max(0, r - 1) + [1.0] * max(0, i + j - 2) + roots
    if len(eigs) != n:
        raise AssertionError(f"predicted multiset has {len(eigs)} values, expected {n}")
    return np.sort(np.array(eigs))


def _simple_roots(coeffs: list[int], n: int) -> list[float]:
    poly = Polynomial(tuple(coeffs))
    if poly.degree == 0:
        return []
    return real_roots_in(poly, -0.5, n + 0.5, poly.degree)


def se_predicted_spectrum(n: int, s: float) -> np.ndarray:
    """Spectrum of the zero-fill weighted extremal graph:
    {0} + {1}^(n-3) + roots of the extreme quadratic."""
    b = 2 * s + n - 1
    disc = math.sqrt(b * b - 4 * n * s)
    return np.sort(np.array([0.0] + [1.0] * (n - 3) + [(b - disc) / 2, (b + disc) / 2]))


def family_lambda2_closed(spec: FamilySpec) -> float:
    """Closed-form algebraic connectivity for the symmetric cases.

    G_RIJ with i = j = k >= 1 gives f_bound(n, k); GHAT_RIJ with i = j = k >= 1
    gives (n-k-1 - sqrt((n-k-1)^2 - 4(n-2k-2)))/2; BULL gives the maxbound
    value.  k = 0 is excluded: with no pendants the eigenvalue-1 twin factors
    cancel and the quartic root below 1 is no longer an eigenvalue.
    """
    k = spec.kind
    if k == "G_RIJ" and spec.i == spec.j >= 1:
        return f_bound(spec.size, spec.i)
    if k == "GHAT_RIJ" and spec.i == spec.j >= 1:
        n, kk = spec.size, spec.i
        b = n - kk - 1
        return (b - math.sqrt(b * b - 4 * (n - 2 * kk - 2))) / 2
    if k == "BULL":
        return maxbound_closed(spec.n)
    raise ValueError(f"no closed form for {spec.text()!r}")


def insert_edges_preserving_ecc(g: SimpleGraph, rng_seed: int) -> SimpleGraph:
    """Add a random subset of edges, each verified to leave every vertex
    eccentricity unchanged.  Deterministic for a fixed seed; may add nothing.
    """
    rng = random.Random(rng_seed)
    base_ecc = eccentricities(g)
    candidates = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    rng.shuffle(candidates)
    current = g
    for u, v in candidates:
        if rng.random() < 0.5:
            continue
        trial = current.with_edge(u, v)
        if eccentricities(trial) == base_ecc:
            current = trial
    return current
