"""Kemeny's constant for connected threshold graphs, by three independent routes.

The code-vector route works entirely in integers read off the construction
code; the degree route re-expresses the same quantity through the degree
sequence; the spectral route evaluates the shared eigenbasis numerically.
All three must agree, which is the core cross-validation this package
provides.  Also here: the two proven upper bounds and the closed form for
the pineapple family together with its exact argmax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import ConstructionCode, degree_profile
from .errors import Disconnected, OrderTooSmall, ParameterOutOfRange
from .spectral import hessenberg_basis, laplacian_spectrum

CODE_VECTOR = "code-vector"
DEGREE_FORM = "degree-form"
SPECTRAL_FORM = "spectral-form"


@dataclass(frozen=True)
class KemenyResult:
    """Kemeny's constant for one code, tagged with the route that produced it.

    ``exact`` is None for the floating spectral route; ``value`` is always
    the floating view.
    """

    n: int
    m: int
    method: str
    exact: Fraction | None
    value: float


@dataclass(frozen=True)
class CodeVectors:
    """The three integer vectors whose dot products with the code drive the exact route.

    w_k = w_hat_k - k (k+1) e_{k+1}, and z_k dotted with the code equals the
    k-th Laplacian eigenvalue.
    """

    w: tuple[int, ...]
    w_hat: tuple[int, ...]
    z: tuple[int, ...]


def code_vectors(n: int, k: int) -> CodeVectors:
    """Vectors w_k, w_hat_k, z_k of length n for 1 <= k <= n-1."""
    if not 1 <= k <= n - 1:
        raise ParameterOutOfRange(f"k must lie in 1..{n - 1}, got {k}")
    w_hat = tuple(2 * j for j in range(k + 1)) + (0,) * (n - k - 1)
    w = list(w_hat)
    w[k] -= k * (k + 1)
    z = (0,) * k + (k + 1,) + (1,) * (n - k - 1)
    return CodeVectors(tuple(w), w_hat, z)


def _require_walk(code: ConstructionCode, min_n: int = 2) -> None:
    if code.n < min_n:
        raise OrderTooSmall(f"random-walk quantities need order >= {min_n}, got {code.n}")
    if code.bits[-1] != 1:
        raise Disconnected("Kemeny's constant is undefined for a disconnected code")


def kemeny_from_code(code: ConstructionCode) -> KemenyResult:
    """Kemeny's constant straight from the code, in exact integer arithmetic.

    The dot products w_i . c and z_i . c follow first-order recurrences, so
    one pass over the code suffices; the rational sum is accumulated over a
    running denominator and normalized once at the end.
    """
    _require_walk(code)
    bits = code.bits
    n = code.n
    # each dominating vertex at 1-based position j contributes j-1 edges
    m = sum(j for j in range(n) if bits[j])
    two_m = 2 * m
    theta = [0] * n
    for i in range(n - 2, -1, -1):
        theta[i] = theta[i + 1] + bits[i + 1]
    num, den = 0, 1
    s = 0  # running w_i . c
    for i in range(1, n):
        c_next = bits[i]
        lam = theta[i - 1] + i * c_next  # z_i . c
        s += i * (i - 1) * (bits[i - 1] - c_next)
        if c_next:
            num, den = num * lam - den, den * lam
        if s:
            d = two_m * i * (i + 1) * lam
            num, den = num * d + den * s * (two_m - s), den * d
    exact = Fraction(num, den) + (n - 1)
    return KemenyResult(n, m, CODE_VECTOR, exact, float(exact))


def kemeny_degree_form(code: ConstructionCode) -> KemenyResult:
    """Kemeny's constant from the degree sequence; equals the code-vector route exactly."""
    _require_walk(code)
    n = code.n
    prof = degree_profile(code)
    d = prof.degrees
    two_m = 2 * prof.m
    prefix = 0  # d_1 + ... + d_{j-1}
    total = Fraction(0)
    for j in range(2, n + 1):
        dj = d[j - 1]
        cj = code.bits[j - 1]
        prefix += d[j - 2]
        bracket = Fraction(prefix + (j - 1) ** 2 * dj) - Fraction((prefix - (j - 1) * dj) ** 2, two_m)
        total += bracket / ((dj + cj) * j * (j - 1))
    return KemenyResult(n, prof.m, DEGREE_FORM, total, float(total))


def kemeny_spectral_form(code: ConstructionCode) -> KemenyResult:
    """Floating Kemeny's constant from the shared eigenbasis.

    Sums degree-weighted squared differences of basis-column entries over
    all vertex pairs, one column per nonzero eigenvalue.  Agrees with the
    exact routes to ~1e-12 at desk scale.
    """
    _require_walk(code)
    n = code.n
    prof = degree_profile(code)
    d = np.array(prof.degrees, dtype=float)
    lam = laplacian_spectrum(code).eigenvalues
    U = hessenberg_basis(n).to_array()
    acc = 0.0
    for i in range(n - 1):
        col = U[:, i]
        diff = col[:, None] - col[None, :]
        pair_sum = float((d[:, None] * d[None, :] * diff * diff).sum()) / 2.0
        acc += pair_sum / lam[i]
    return KemenyResult(n, prof.m, SPECTRAL_FORM, None, acc / (2.0 * prof.m))


@dataclass(frozen=True)
class UpperBounds:
    """The two proven upper bounds and whether the given code respects both."""

    linear_bound: int
    sparse_bound: float
    both_hold: bool


def upper_bounds(code: ConstructionCode) -> UpperBounds:
    """Evaluate K < 2n - 3 and K < n - 1 + (3/2) sqrt(m) for a connected code, n >= 3.

    The sparse comparison drops to exact rational arithmetic (squaring both
    sides) whenever the floating margin is below 1e-6, so near-boundary
    cases cannot produce false verdicts.
    """
    if code.n < 3:
        raise OrderTooSmall(f"the bounds assume order >= 3, got {code.n}")
    result = kemeny_from_code(code)
    k_exact = result.exact
    linear_bound = 2 * code.n - 3
    sparse_bound = code.n - 1 + 1.5 * math.sqrt(result.m)
    holds_linear = k_exact < linear_bound
    if abs(result.value - sparse_bound) < 1e-6:
        shifted = k_exact - (code.n - 1)
        holds_sparse = shifted <= 0 or shifted * shifted < Fraction(9 * result.m, 4)
    else:
        holds_sparse = result.value < sparse_bound
    return UpperBounds(linear_bound, sparse_bound, bool(holds_linear and holds_sparse))


def pineapple_kemeny(n: int, r: int) -> Fraction:
    """Closed-form Kemeny's constant of the pineapple code 0 1^r 0^(n-r-2) 1.

    Equals kemeny_from_code(pineapple_code(n, r)).exact for every admissible
    pair; r = 0 gives the star value n - 3/2 and r = n-2 the complete-graph
    value (n-1)^2 / n.
    """
    if n < 3:
        raise ParameterOutOfRange(f"pineapple family needs n >= 3, got {n}")
    if not 0 <= r <= n - 2:
        raise ParameterOutOfRange(f"r must lie in 0..{n - 2}, got {r}")
    return (
        Fraction(n - 4)
        + Fraction(2, r + 2)
        + Fraction((n - 1) * (2 * r + 3), 2 * n + r * r + r - 2)
    )


@dataclass(frozen=True)
class PineappleArgmax:
    """Exact argmax of the pineapple family at order n.

    ``predicted_set`` is the two-element window suggested by the calculus
    argument, reported verbatim for comparison; the empirical argmax is not
    asserted to lie in it (and sometimes does not).
    """

    r_star: int
    k_star: Fraction
    tied_rs: tuple[int, ...]
    predicted_set: tuple[int, int]


def pineapple_argmax(n: int) -> PineappleArgmax:
    """Sweep r = 0..n-2 exactly; ties resolve to the smallest r but are all reported."""
    if n < 3:
        raise OrderTooSmall(f"pineapple family needs n >= 3, got {n}")
    best: Fraction | None = None
    ties: list[int] = []
    for r in range(n - 1):
        value = pineapple_kemeny(n, r)
        if best is None or value > best:
            best, ties = value, [r]
        elif value == best:
            ties.append(r)
    root = math.isqrt(2 * n)
    predicted = (root - 1, root) if n <= 20 else (root, root + 1)
    return PineappleArgmax(ties[0], best, tuple(ties), predicted)
