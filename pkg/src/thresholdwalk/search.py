"""Exhaustive extremal search for Kemeny's constant over all connected codes of one order.

The code space splits into contiguous index ranges (fixed high-order
interior bits); each worker keeps an exact local maximum and the reduction
compares rationals exactly, then code order, so the result is bitwise
reproducible for any worker count.  Progress is checkpointed one line per
completed range and a restart reproduces the identical report.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .codes import ConstructionCode, code_count, code_from_index, pineapple_r
from .errors import OrderOutOfRange, ParameterOutOfRange
from .kemeny import kemeny_from_code

MIN_ORDER = 3
MAX_ORDER = 26
CHECKPOINT_INTERVAL = 1 << 16  # codes per checkpointed range


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one exhaustive sweep at order n.

    ``ties`` lists every code achieving the maximum, lexicographically;
    ``argmax_code`` is the first of them.  ``is_pineapple`` records whether
    any maximizer has the pineapple shape (with its r), which is the
    conjecture being probed.  ``predicted_asymptote`` is n + sqrt(n)/2 for
    charting the remainder.
    """

    n: int
    argmax_code: str
    k_exact: Fraction
    k_float: float
    is_pineapple: bool
    r: int | None
    ties: tuple[str, ...]
    codes_examined: int
    seconds: float
    predicted_asymptote: float


def _chunk_best(task: tuple[int, int, int]) -> tuple[int, int, tuple[str, ...]]:
    """Exact maximum over the index window [start, stop); ties kept in code order."""
    n, start, stop = task
    best: Fraction | None = None
    ties: list[str] = []
    for index in range(start, stop):
        code = code_from_index(n, index)
        value = kemeny_from_code(code).exact
        if best is None or value > best:
            best, ties = value, [str(code)]
        elif value == best:
            ties.append(str(code))
    return best.numerator, best.denominator, tuple(ties)


def _plan_chunks(total: int, threads: int, chunk_codes: int) -> list[tuple[int, int]]:
    want = max(threads, -(-total // chunk_codes))
    chunks = 1
    while chunks < want:
        chunks <<= 1
    chunks = min(chunks, total)
    span = total // chunks  # both are powers of two
    return [(c * span, (c + 1) * span) for c in range(chunks)]


def _read_checkpoint(path: str, n: int, n_chunks: int):
    done: dict[int, tuple[int, int, list[str]]] = {}
    if not path or not os.path.exists(path):
        return {}
    with open(path, encoding="ascii") as handle:
        for line in handle:
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"corrupt checkpoint line: {line.strip()!r}")
            chunk_id, code_str = int(parts[0]), parts[1]
            num, den = int(parts[2]), int(parts[3])
            if chunk_id >= n_chunks or len(code_str) != n:
                raise ValueError("checkpoint does not match this search (order or chunking differ)")
            entry = done.setdefault(chunk_id, (num, den, []))
            if (entry[0], entry[1]) != (num, den):
                raise ValueError(f"conflicting checkpoint values for range {chunk_id}")
            entry[2].append(code_str)
    return {cid: (num, den, tuple(codes)) for cid, (num, den, codes) in done.items()}


def _append_checkpoint(path: str | None, chunk_id: int, result) -> None:
    if not path:
        return
    num, den, ties = result
    with open(path, "a", encoding="ascii") as handle:
        for code_str in ties:
            handle.write(f"{chunk_id} {code_str} {num} {den}\n")
        handle.flush()


def max_kemeny_search(
    n: int,
    threads: int = 1,
    checkpoint: str | None = None,
    chunk_codes: int = CHECKPOINT_INTERVAL,
) -> SearchReport:
    """Exact argmax of Kemeny's constant over every connected code of order n.

    Deterministic for any thread count: ranges are fixed by the interior-bit
    prefix, reduction runs in range order, and ties resolve to the smallest
    code.  ``checkpoint`` names a line-oriented progress file; completed
    ranges found there are not recomputed.
    """
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise OrderOutOfRange(f"exhaustive search supports {MIN_ORDER} <= n <= {MAX_ORDER}, got {n}")
    if threads < 1:
        raise ParameterOutOfRange(f"threads must be >= 1, got {threads}")
    started = time.perf_counter()
    total = code_count(n)
    ranges = _plan_chunks(total, threads, chunk_codes)
    results = _read_checkpoint(checkpoint, n, len(ranges)) if checkpoint else {}
    pending = [(cid, (n, lo, hi)) for cid, (lo, hi) in enumerate(ranges) if cid not in results]

    if threads > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for (cid, _), outcome in zip(pending, pool.map(_chunk_best, [t for _, t in pending])):
                results[cid] = outcome
                _append_checkpoint(checkpoint, cid, outcome)
    else:
        for cid, task in pending:
            outcome = _chunk_best(task)
            results[cid] = outcome
            _append_checkpoint(checkpoint, cid, outcome)

    best: Fraction | None = None
    ties: list[str] = []
    for cid in range(len(ranges)):
        num, den, chunk_ties = results[cid]
        value = Fraction(num, den)
        if best is None or value > best:
            best, ties = value, list(chunk_ties)
        elif value == best:
            ties.extend(chunk_ties)

    r: int | None = None
    for code_str in ties:
        candidate = pineapple_r(ConstructionCode(tuple(int(ch) for ch in code_str)))
        if candidate is not None:
            r = candidate
            break
    return SearchReport(
        n=n,
        argmax_code=ties[0],
        k_exact=best,
        k_float=float(best),
        is_pineapple=r is not None,
        r=r,
        ties=tuple(ties),
        codes_examined=total,
        seconds=time.perf_counter() - started,
        predicted_asymptote=n + math.sqrt(n) / 2.0,
    )


def verify_conjecture_range(
    n_min: int,
    n_max: int,
    threads: int = 1,
    checkpoint_dir: str | None = None,
) -> list[SearchReport]:
    """One exhaustive report per order in [n_min, n_max].

    Flags (via ``is_pineapple``) any order whose maximizer is not of
    pineapple shape; the remainder against n + sqrt(n)/2 is derivable from
    each report.
    """
    if not (MIN_ORDER <= n_min <= n_max <= MAX_ORDER):
        raise OrderOutOfRange(
            f"range must satisfy {MIN_ORDER} <= n_min <= n_max <= {MAX_ORDER}, got [{n_min}, {n_max}]"
        )
    reports = []
    for n in range(n_min, n_max + 1):
        path = os.path.join(checkpoint_dir, f"search_n{n}.checkpoint") if checkpoint_dir else None
        reports.append(max_kemeny_search(n, threads=threads, checkpoint=path))
    return reports
