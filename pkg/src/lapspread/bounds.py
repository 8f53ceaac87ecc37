"""Closed-form bounds and curves for algebraic connectivity and spread.

Every function here is a pure real function with an explicit domain, erroring
loudly outside it rather than clamping.  The high-eccentricity parameter k
may be any real in [0, n/2]: a graph with an odd number of eccentricity->=3
vertices has half-integer k, and the curve tracing evaluates at arbitrary
reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

BOUND_IDS = ("F_N", "WEAK", "MOHAR", "LU", "GN", "GREEN", "SE_HYPERBOLA", "R_N", "MAXBOUND")


@dataclass(frozen=True)
class BoundValue:
    """One evaluated bound with the parameters that produced it."""

    value: float
    bound_id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.bound_id not in BOUND_IDS:
            raise ValueError(f"unknown bound id {self.bound_id!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"bound {self.bound_id} evaluated to non-finite {self.value}")


def _check_nk(n: float, k: float) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if not (0.0 <= k <= n / 2 + 1e-12):
        raise ValueError(f"k={k} outside [0, n/2] for n={n}")


def f_bound(n: float, k: float) -> float:
    """Conjectured floor for the algebraic connectivity of an n-vertex graph
    with 2k vertices of eccentricity at least 3.

    f(k) = (n-k+1 - sqrt((n-k+1)^2 - 4(n-2k))) / 2; decreasing in k, with
    f(0) = 1 and f(n/2) = 0.
    """
    _check_nk(n, k)
    b = n - k + 1
    disc = b * b - 4 * (n - 2 * k)
    if disc < 0:
        raise ValueError(f"negative discriminant at n={n}, k={k}")
    return (b - math.sqrt(disc)) / 2


def weak_bound(n: float, k: float) -> float:
    """Rational relaxation of f_bound: 1 - (k+1)/(n-k+1).  Never exceeds f_bound."""
    _check_nk(n, k)
    return 1 - (k + 1) / (n - k + 1)


def mohar_bound(n: float, d: float) -> float:
    """Classical diameter bound lambda2 >= 4/(n d)."""
    if not (d >= 1 and math.isfinite(d)):
        raise ValueError(f"diameter must be finite and >= 1, got {d}")
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    return 4 / (n * d)


def lu_bound(n: float, d: float, m: float) -> float:
    """Diameter-and-size bound lambda2 >= 2n / (2 + d(n(n-1) - 2m))."""
    if not (d >= 1 and math.isfinite(d)):
        raise ValueError(f"diameter must be finite and >= 1, got {d}")
    if not (0 <= m <= n * (n - 1) / 2):
        raise ValueError(f"edge count m={m} outside [0, n(n-1)/2]")
    return 2 * n / (2 + d * (n * (n - 1) - 2 * m))


def lu_comparison_poly(n: float, k: float, m: float) -> float:
    """Sign-equivalent polynomial for f_bound(n, k) >= lu_bound(n, 3, m).

    Equals ((n-k+1)D - 4n)^2 - S^2 D^2 with D = 2 + 3(n(n-1) - 2m) and
    S^2 the discriminant of f_bound, expanded to a polynomial in n, k, m.
    """
    return (36 * n**5 - 72 * k * n**4 - 144 * m * n**3 + 288 * k * m * n**2
            - 96 * n**4 + 168 * k * n**3 + 84 * n**3 + 192 * m * n**2
            - 192 * k * n**2 - 24 * n**2 + 144 * m**2 * n - 336 * k * m * n
            - 48 * m * n + 112 * k * n - 288 * k * m**2 + 192 * k * m - 32 * k)


def g_bound(n: float, k: float) -> float:
    """Surplus of the paired bound above 1:
    f_bound(n, k) + f_bound(n, (n-2k)/2) = 1 + g_bound(n, k).

    g = (3n/2 - sqrt((n-k+1)^2 - 4(n-2k)) - sqrt(((n+2k+2)/2)^2 - 8k)) / 2;
    vanishes at k = 0 and k = n/2 and is concave down between them.
    """
    _check_nk(n, k)
    s1 = math.sqrt((n - k + 1) ** 2 - 4 * (n - 2 * k))
    s2 = math.sqrt(((n + 2 * k + 2) / 2) ** 2 - 8 * k)
    return (1.5 * n - s1 - s2) / 2


def g_bound_second_derivative(n: float, k: float) -> float:
    """Closed form of g_bound'' in k; strictly negative on (0, n/2) for n >= 3."""
    _check_nk(n, k)
    a = (n - k - 1) ** 2 + 4 * k
    b = (k + n / 2 + 1) ** 2 - 8 * k
    a32, b32 = a ** 1.5, b ** 1.5
    return -(2 * n - 4) * (a32 + b32) / (a32 * b32)


def diam3_floor(n: float) -> float:
    """Closed-form floor 1 + (2n-8)/(n(n+4)) for the connectivity sum of a
    graph and complement that both have diameter 3."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    return 1 + (2 * n - 8) / (n * (n + 4))


def diam3_pair_bound(n: float) -> float:
    """Exact intermediate f_bound(n, 1) + f_bound(n, n/2 - 1) that the
    diam3_floor expression relaxes."""
    return f_bound(n, 1) + f_bound(n, n / 2 - 1)


def balanced_max_floor(n: float) -> float:
    """Floor for max of the two connectivities at the balanced split k = n/4:
    ((3/4)n + 1 - sqrt(((3/4)n + 1)^2 - 2n)) / 2.  Increasing in n; equals
    2 - sqrt(2) at n = 4."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    b = 0.75 * n + 1
    return (b - math.sqrt(b * b - 2 * n)) / 2


def green_lhs(x: float, y: float) -> float:
    return x * y * (2 - x * y)


def green_rhs(n: float, x: float, y: float) -> float:
    return n * (1 - x) * (1 - y) * (n - 2 - x - y)


def green_residual(n: float, x: float, y: float) -> float:
    """xy(2-xy) - n(1-x)(1-y)(n-2-x-y); zero exactly on the extremal curve
    traced by the thick-stem and generalized-bull families, conjectured
    nonnegative for every graph with x, y < 1."""
    return green_lhs(x, y) - green_rhs(n, x, y)


def cluster_fraction(n: float, x: float) -> float:
    """Rational map recovering the stem cluster fraction s = |C|/(n-2) from a
    spectral coordinate x of a thick-stemmed graph.

    r(x) = x(x-2)(x-n+1) / [x(x-2)(x-n+1) - (x-1)(x-n+2)(x-n)]; increasing
    from (0,0) to (1,1), and pairs on the extremal curve satisfy
    r(x) + r(y) = 1.
    """
    num = x * (x - 2) * (x - n + 1)
    den = num - (x - 1) * (x - n + 2) * (x - n)
    if den == 0.0:
        raise ZeroDivisionError(f"cluster_fraction pole at n={n}, x={x}")
    return num / den


def se_residual(n: float, x: float, y: float) -> float:
    """x + y - 2xy/n - 1; zero on the weighted extremal hyperbola
    (x - n/2)(y - n/2) = (n/4)(n-2)."""
    return x + y - 2 * x * y / n - 1


def se_recover_s(x: float, y: float) -> float:
    """Bridge weight s = (x - y + 1)/2 of the weighted extremal graph whose
    connectivity pair is (x, y)."""
    return (x - y + 1) / 2


def maxbound_closed(n: float) -> float:
    """Closed-form value (n - sqrt((n-2)^2 + 4))/2 attained by generalized
    bulls as max of the two connectivities; strictly between (n-3)/(n-2)
    and (n-2)/(n-1) for n >= 5."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    return (n - math.sqrt((n - 2) ** 2 + 4)) / 2
