"""Symmetric eigensolves, Laplacian eigenvalue extraction, polynomials, root isolation.

Dense solves only; everything here targets matrices of order at most a few
hundred.  The eigenvalue tolerance is 1e-9 relative to the operator norm, so
downstream conjecture checks can use a 1e-7 margin and be certain that a
reported violation is not numerical noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph, laplacian

SYMMETRY_TOL = 1e-12
EIG_REL_TOL = 1e-9
MULTIPLICITY_RADIUS = 1e-6
BISECT_TOL = 1e-13
BISECT_MAX_ITER = 200


class BracketError(ValueError):
    """A root bracket was supplied without a sign change."""


@dataclass(frozen=True)
class Spectrum:
    """Nondecreasing eigenvalues together with the accuracy bound used."""

    eigs: np.ndarray
    tol: float

    def __post_init__(self) -> None:
        e = np.asarray(self.eigs, dtype=float)
        e.flags.writeable = False
        object.__setattr__(self, "eigs", e)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with coefficients in ascending degree order."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        c = tuple(float(v) for v in self.coeffs)
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return poly_eval(self, x)


def poly_eval(p: Polynomial, x: float) -> float:
    """Horner evaluation in double precision."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def sym_eigs(m: np.ndarray) -> Spectrum:
    """All eigenvalues of a real symmetric matrix, ascending.

    Rejects matrices that are not entrywise symmetric within 1e-12.  The
    reported tolerance is 1e-9 relative to an operator-norm upper bound
    (the maximum absolute row sum).
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric within 1e-12")
    eigs = np.linalg.eigvalsh(a)
    norm_bound = float(np.max(np.abs(a).sum(axis=1), initial=0.0))
    return Spectrum(eigs=eigs, tol=EIG_REL_TOL * max(1.0, norm_bound))


def laplacian_spectrum(g: Graph) -> Spectrum:
    return sym_eigs(laplacian(g))


def lambda2(g: Graph) -> float:
    """Algebraic connectivity: second smallest Laplacian eigenvalue."""
    return float(laplacian_spectrum(g).eigs[1])


def lambda_max(g: Graph) -> float:
    return float(laplacian_spectrum(g).eigs[-1])


def spread(g: Graph) -> float:
    """Laplacian spread, the gap between the largest and second smallest eigenvalue."""
    eigs = laplacian_spectrum(g).eigs
    return float(eigs[-1] - eigs[1])


def multiplicity(eigs: np.ndarray | Sequence[float], value: float,
                 radius: float = MULTIPLICITY_RADIUS) -> int:
    """Count eigenvalues within `radius` of `value` (cluster convention)."""
    arr = np.asarray(eigs, dtype=float)
    return int(np.count_nonzero(np.abs(arr - value) <= radius))


def bisect_root(p: Polynomial, lo: float, hi: float,
                tol: float = BISECT_TOL, max_iter: int = BISECT_MAX_ITER) -> float:
    """Locate the sign change of p inside [lo, hi] by bisection."""
    flo, fhi = poly_eval(p, lo), poly_eval(p, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid == lo or mid == hi:
            break
        fmid = poly_eval(p, mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def isolate_roots(p: Polynomial, brackets: Sequence[tuple[float, float]]) -> list[float]:
    """One bisection root per caller-supplied sign-change bracket."""
    return [bisect_root(p, lo, hi) for lo, hi in brackets]


def real_roots_in(p: Polynomial, lo: float, hi: float, expected: int,
                  grid: int = 4096) -> list[float]:
    """All `expected` real roots of p in [lo, hi], ascending.

    Scans a uniform grid for sign changes and bisects each bracket.  If the
    scan finds fewer brackets than expected (repeated or tangent roots), the
    companion-matrix eigenvalues are used instead and filtered to [lo, hi].
    """
    xs = np.linspace(lo, hi, grid + 1)
    coeffs_desc = list(reversed(p.coeffs))
    vals = np.polyval(coeffs_desc, xs)
    roots: list[float] = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0.0:
            roots.append(bisect_root(p, float(a), float(b)))
    if vals[-1] == 0.0:
        roots.append(float(xs[-1]))
    if len(roots) == expected:
        return sorted(roots)
    comp = np.roots(coeffs_desc)
    real = sorted(float(r.real) for r in comp
                  if abs(r.imag) <= 1e-8 * max(1.0, abs(r)) and lo - 1e-9 <= r.real <= hi + 1e-9)
    if len(real) != expected:
        raise ValueError(f"expected {expected} real roots in [{lo}, {hi}], found {len(real)}")
    return real
