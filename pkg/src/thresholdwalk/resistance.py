"""Exact effective resistances, 2-forest counts, moments, accessibility, and ordering checks.

The resistance between two code positions has a closed form in the degrees
and code bits whose inner sum telescopes, so the full matrix costs O(n^2)
rational additions.  Forest counts are tau * R entrywise (and must come out
integral); moments are degree-weighted resistance sums; accessibility is
moment minus Kemeny's constant.  All of it is exact, which is what lets the
ordering checks below be decided without tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .codes import ConstructionCode, blocks, degree_profile
from .errors import Disconnected, IndexOutOfRange, NonIntegralEntry, OrderTooSmall
from .kemeny import kemeny_from_code
from .spectral import spanning_tree_count


@dataclass(frozen=True)
class ResistanceProfile:
    """Exact rational bundle for one connected code.

    R is symmetric with zero diagonal; F = tau * R entrywise and integral;
    mu[v-1] = sum_j d_j r_{j,v}; alpha = mu - K with the stationary-weighted
    average of alpha equal to K.
    """

    n: int
    R: tuple[tuple[Fraction, ...], ...]
    F: tuple[tuple[int, ...], ...]
    tau: int
    mu: tuple[Fraction, ...]
    alpha: tuple[Fraction, ...]
    kemeny: Fraction


def _require_connected(code: ConstructionCode) -> None:
    if code.n < 2:
        raise OrderTooSmall(f"resistance quantities need order >= 2, got {code.n}")
    if code.bits[-1] != 1:
        raise Disconnected("effective resistance requires a connected code")


def resistance_closed_form(code: ConstructionCode, j: int, v: int) -> Fraction:
    """Effective resistance between code positions j and v (1-based).

    Arguments in either order; j == v returns 0.
    """
    _require_connected(code)
    n = code.n
    if not (1 <= j <= n and 1 <= v <= n):
        raise IndexOutOfRange(f"pair ({j}, {v}) outside 1..{n}")
    if j == v:
        return Fraction(0)
    if j > v:
        j, v = v, j
    prof = degree_profile(code)

    def dc(p: int) -> int:
        return prof.degrees[p - 1] + code.bits[p - 1]

    total = Fraction(j - 1, dc(j) * j) + Fraction(v, dc(v) * (v - 1))
    for i in range(j, v - 1):
        total += Fraction(1, dc(i + 1) * i * (i + 1))
    return total


def resistance_matrix(code: ConstructionCode) -> ResistanceProfile:
    """Full exact profile: R, F, tau, moments, accessibility and Kemeny's constant.

    Prefix sums over 1 / ((d_{i+1} + c_{i+1}) i (i+1)) share the inner sum
    of the closed form across all pairs, so R costs O(n^2).
    """
    _require_connected(code)
    n = code.n
    prof = degree_profile(code)
    d = prof.degrees
    dc = [d[p] + code.bits[p] for p in range(n)]
    prefix = [Fraction(0)] * n
    for i in range(1, n):
        prefix[i] = prefix[i - 1] + Fraction(1, dc[i] * i * (i + 1))
    first_term = [Fraction(p, dc[p] * (p + 1)) for p in range(n)]
    R = [[Fraction(0)] * n for _ in range(n)]
    for j0 in range(n):
        base = first_term[j0] - prefix[j0]
        for v0 in range(j0 + 1, n):
            value = base + Fraction(v0 + 1, dc[v0] * v0) + prefix[v0 - 1]
            R[j0][v0] = R[v0][j0] = value

    tau = spanning_tree_count(code)
    F = []
    for row in R:
        f_row = []
        for entry in row:
            scaled = entry * tau
            if scaled.denominator != 1:
                raise NonIntegralEntry(f"tau * r = {scaled} is not an integer")
            f_row.append(int(scaled))
        F.append(tuple(f_row))

    kemeny = kemeny_from_code(code).exact
    mu = tuple(
        sum((d[j0] * R[j0][v0] for j0 in range(n) if j0 != v0), Fraction(0))
        for v0 in range(n)
    )
    alpha = tuple(value - kemeny for value in mu)
    return ResistanceProfile(
        n, tuple(tuple(row) for row in R), tuple(F), tau, mu, alpha, kemeny
    )


def forest_matrix(code: ConstructionCode) -> tuple[tuple[int, ...], ...]:
    """Spanning-2-forest counts F = tau * R, every entry verified integral."""
    return resistance_matrix(code).F


def moment_profile(code: ConstructionCode) -> tuple[Fraction, ...]:
    """Moments mu(v) = sum_{j != v} d_j r_{j,v}, exactly."""
    return resistance_matrix(code).mu


def accessibility_profile(code: ConstructionCode) -> tuple[Fraction, ...]:
    """Accessibility indices alpha(v) = mu(v) - K, exactly."""
    return resistance_matrix(code).alpha


@dataclass(frozen=True)
class OrderingReport:
    """Pass/fail of every exact ordering check, with witnesses for failures.

    All entries are decided in rational arithmetic; no tolerance is involved
    anywhere.
    """

    case_i_equal: bool
    case_ii_leq: bool
    case_iii_strict: bool
    case_iv_leq: bool
    chain_zero_block: bool
    chain_one_block: bool
    degree_characterization: bool
    block_moment_ordering: bool
    s1_equality: bool
    witnesses: tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return (
            self.case_i_equal
            and self.case_ii_leq
            and self.case_iii_strict
            and self.case_iv_leq
            and self.chain_zero_block
            and self.chain_one_block
            and self.degree_characterization
            and self.block_moment_ordering
            and self.s1_equality
        )


def _chain_ok(entries: list[tuple[object, str]]) -> bool:
    """Check a chain of exact values against '<' / '<=' links.

    ``entries`` holds (value, relation-to-next) pairs; value None marks an
    absent element, whose incoming and outgoing links merge ('<' wins).
    """
    prev = None
    rel = None
    for value, next_rel in entries:
        if value is None:
            if rel != "<":
                rel = "<" if next_rel == "<" else rel or next_rel
            continue
        if prev is not None:
            if rel == "<" and not prev < value:
                return False
            if rel == "<=" and not prev <= value:
                return False
        prev = value
        rel = next_rel
    return True


def verify_orderings(code: ConstructionCode) -> OrderingReport:
    """Run every exact ordering check for one connected code.

    Covers the four local comparison cases on F entries, the two global
    chains over block representatives, the degree characterization, and the
    block-level moment/accessibility ordering with its leading-run equality
    condition.
    """
    profile = resistance_matrix(code)
    F = profile.F
    bits = code.bits
    n = code.n
    d = degree_profile(code).degrees
    witnesses: list[str] = []

    def others(*excluded: int):
        return (i for i in range(n) if i not in excluded)

    # (i) equal adjacent bits: the two positions are twins
    ok_i = True
    for p in range(n - 1):
        if bits[p] == bits[p + 1]:
            for i in others(p, p + 1):
                if F[i][p] != F[i][p + 1]:
                    ok_i = False
                    witnesses.append(f"case i: f[{i + 1},{p + 1}] != f[{i + 1},{p + 2}]")

    # (ii) mixed adjacent bits: the 1-position never beats the 0-position,
    # with equality exactly for the leading 01 pair
    ok_ii = True
    for p in range(n - 1):
        if bits[p] != bits[p + 1]:
            v, w = (p, p + 1) if bits[p] == 1 else (p + 1, p)
            equality = p == 0
            for i in others(p, p + 1):
                good = F[i][v] == F[i][w] if equality else F[i][v] < F[i][w]
                if not good:
                    ok_ii = False
                    witnesses.append(f"case ii: pair ({v + 1},{w + 1}) fails at i={i + 1}")

    # (iii) zero, ones, zero: the earlier zero is strictly smaller
    ok_iii = True
    for p in range(n):
        if bits[p]:
            continue
        q = next((t for t in range(p + 1, n) if bits[t] == 0), None)
        if q is None or q == p + 1:
            continue
        for i in others(p, q):
            if not F[i][p] < F[i][q]:
                ok_iii = False
                witnesses.append(f"case iii: pair ({p + 1},{q + 1}) fails at i={i + 1}")

    # (iv) one, zeros, one: the later one is at most the earlier one; equal
    # exactly when the later one ends the code and i precedes the earlier one
    ok_iv = True
    for p in range(n):
        if not bits[p]:
            continue
        q = next((t for t in range(p + 1, n) if bits[t] == 1), None)
        if q is None or q == p + 1:
            continue
        for i in others(p, q):
            if q == n - 1 and i < p:
                good = F[i][q] == F[i][p]
            else:
                good = F[i][q] < F[i][p]
            if not good:
                ok_iv = False
                witnesses.append(f"case iv: pair ({p + 1},{q + 1}) fails at i={i + 1}")

    # block representatives: start position of each run, in code order
    form = blocks(code)
    k = form.k
    zero_starts, one_starts = [], []
    pos = 0
    for s, t in form.pairs:
        zero_starts.append(pos)
        pos += s
        one_starts.append(pos)
        pos += t

    def in_block(i: int, starts: list[int], runs: tuple[int, ...]) -> int | None:
        for idx, start in enumerate(starts):
            if start <= i < start + runs[idx]:
                return idx
        return None

    def chain_entries(i: int, own_kind: int, own_idx: int):
        # shared skeleton: 0 < F[i][w_k] <= F[i][w_{k-1}] < ... < F[i][w_1]
        #                    <= F[i][v_1] < F[i][v_2] < ... < F[i][v_k]
        entries: list[tuple[object, str]] = [(0, "<")]
        for ordinal, bk in enumerate(range(k - 1, -1, -1)):
            if own_kind == 1 and bk == own_idx:
                rep = _alternate_rep(one_starts[bk], form.one_runs[bk], i)
            else:
                rep = one_starts[bk]
            rel = "<=" if ordinal == 0 or bk == 0 else "<"
            entries.append((None if rep is None else F[i][rep], rel))
        for bk in range(k):
            if own_kind == 0 and bk == own_idx:
                rep = _alternate_rep(zero_starts[bk], form.zero_runs[bk], i)
            else:
                rep = zero_starts[bk]
            entries.append((None if rep is None else F[i][rep], "<"))
        return entries

    ok_chain_zero = True
    ok_chain_one = True
    for i in range(n):
        zero_idx = in_block(i, zero_starts, form.zero_runs)
        if zero_idx is not None:
            if not _chain_ok(chain_entries(i, 0, zero_idx)):
                ok_chain_zero = False
                witnesses.append(f"zero-block chain fails at i={i + 1}")
        else:
            one_idx = in_block(i, one_starts, form.one_runs)
            if not _chain_ok(chain_entries(i, 1, one_idx)):
                ok_chain_one = False
                witnesses.append(f"one-block chain fails at i={i + 1}")

    # degree characterization: F entries are monotone against the reversed
    # degree order, and equal degrees force equal entries (twin blocks).
    # The full converse is not asserted: the equality branch of case (iv)
    # can tie entries across strictly different degrees.
    ok_degree = True
    for i in range(n):
        for w in others(i):
            for v in others(i, w):
                if d[w] <= d[v] and not F[i][w] >= F[i][v]:
                    ok_degree = False
                    witnesses.append(
                        f"degree monotonicity fails at i={i + 1}, w={w + 1}, v={v + 1}"
                    )
                elif d[w] == d[v] and F[i][w] != F[i][v]:
                    ok_degree = False
                    witnesses.append(
                        f"equal degrees, unequal entries at i={i + 1}, w={w + 1}, v={v + 1}"
                    )

    # block-level moment and accessibility ordering
    mu = profile.mu
    mu_zero = [mu[p] for p in zero_starts]
    mu_one = [mu[p] for p in one_starts]
    ok_blocks = all(mu_zero[b] > mu_zero[b - 1] for b in range(1, k))
    ok_blocks = ok_blocks and mu_zero[0] >= mu_one[0]
    ok_blocks = ok_blocks and all(mu_one[b - 1] > mu_one[b] for b in range(1, k))
    alpha = profile.alpha
    ok_blocks = ok_blocks and all(
        (alpha[p] > alpha[q]) == (mu[p] > mu[q]) for p in range(n) for q in range(n)
    )
    if not ok_blocks:
        witnesses.append("block moment ordering fails")
    s1_eq = (mu_zero[0] == mu_one[0]) == (form.zero_runs[0] == 1)
    if not s1_eq:
        witnesses.append("leading-run equality condition fails")

    return OrderingReport(
        ok_i,
        ok_ii,
        ok_iii,
        ok_iv,
        ok_chain_zero,
        ok_chain_one,
        ok_degree,
        ok_blocks,
        s1_eq,
        tuple(witnesses),
    )


def _alternate_rep(start: int, run: int, i: int) -> int | None:
    """Representative of vertex i's own block that differs from i, if the block has one."""
    if run < 2:
        return None
    return start if i != start else start + 1
