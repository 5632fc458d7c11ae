"""Formula-free reference computations used to validate every closed form.

Everything here works from the explicit graph structure, never from the
construction code: numeric eigensolves, fundamental-matrix first-passage
times, exact integer determinants, and exhaustive spanning-forest
enumeration.  Slower than the closed forms by design; that independence is
the point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codes import AdjacencyStructure
from .errors import (
    Disconnected,
    EigensolveFailure,
    IndexOutOfRange,
    OrderTooSmall,
    SameVertex,
    SingularSolve,
    TooLarge,
)

FOREST_ORDER_CAP = 9


def is_connected(graph: AdjacencyStructure) -> bool:
    """Breadth-first reachability from vertex 1."""
    if graph.n == 0:
        return False
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for v in frontier:
            for u in graph.neighbors[v - 1]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return len(seen) == graph.n


def _require_connected(graph: AdjacencyStructure) -> None:
    if not is_connected(graph):
        raise Disconnected("oracle computations need a connected graph")


def transition_matrix(graph: AdjacencyStructure) -> np.ndarray:
    """Row-stochastic random-walk matrix: each row of A divided by its degree."""
    A = graph.adjacency_matrix().astype(float)
    deg = A.sum(axis=1)
    if (deg == 0).any():
        raise Disconnected("an isolated vertex has no outgoing transition")
    return A / deg[:, None]


def stationary_distribution(graph: AdjacencyStructure) -> np.ndarray:
    """Stationary vector w with w_i proportional to the degree of vertex i."""
    deg = np.array(graph.degree_sequence(), dtype=float)
    return deg / deg.sum()


def _walk_eigenvalues(graph: AdjacencyStructure) -> np.ndarray:
    """Eigenvalues of the transition matrix, descending.

    Computed from the symmetric similarity D^(-1/2) A D^(-1/2), which shares
    the spectrum of D^(-1) A but keeps the solve well conditioned.
    """
    A = graph.adjacency_matrix().astype(float)
    deg = A.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(deg)
    sym = A * inv_sqrt[:, None] * inv_sqrt[None, :]
    try:
        vals = np.linalg.eigvalsh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigensolveFailure(str(exc)) from exc
    return vals[::-1]


def kemeny_eigen_oracle(graph: AdjacencyStructure) -> float:
    """Kemeny's constant from the walk spectrum: sum of 1/(1 - rho_j) over rho_j != 1.

    Exactly one eigenvalue (the one nearest 1) is removed; a genuine
    eigenvalue at -1 (bipartite case, e.g. stars) is kept and contributes
    1/2.
    """
    if graph.n < 2:
        raise OrderTooSmall("Kemeny's constant needs at least two vertices")
    _require_connected(graph)
    vals = _walk_eigenvalues(graph)
    drop = int(np.argmin(np.abs(vals - 1.0)))
    kept = np.delete(vals, drop)
    return float((1.0 / (1.0 - kept)).sum())


@dataclass(frozen=True)
class WalkStatistics:
    """Floating random-walk bundle for one graph.

    Attributes
    ----------
    transition : ndarray, shape (n, n)
        Row-stochastic walk matrix.
    eigenvalues : ndarray, shape (n,)
        Transition-matrix spectrum, descending; leading entry is 1 up to
        rounding.
    stationary : ndarray, shape (n,)
        Degree-proportional stationary vector.
    mfpt : ndarray, shape (n, n)
        Mean first passage times m[i, j]; the diagonal is zero by convention.
    kemeny : float
        Stationary-weighted mean first passage time out of vertex 1 (the
        same value for every start vertex).
    """

    n: int
    transition: np.ndarray
    eigenvalues: np.ndarray
    stationary: np.ndarray
    mfpt: np.ndarray
    kemeny: float


def mfpt_matrix(graph: AdjacencyStructure) -> WalkStatistics:
    """Mean first passage times via the fundamental matrix Z = (I - T + 1 w^T)^(-1).

    m[i, j] = (z_jj - z_ij) / w_j for i != j.  The solve uses partial
    pivoting and is rejected if the residual exceeds 1e-9.
    """
    if graph.n < 2:
        raise OrderTooSmall("first passage times need at least two vertices")
    _require_connected(graph)
    n = graph.n
    T = transition_matrix(graph)
    w = stationary_distribution(graph)
    system = np.eye(n) - T + np.outer(np.ones(n), w)
    try:
        Z = np.linalg.solve(system, np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise SingularSolve(str(exc)) from exc
    residual = float(np.abs(system @ Z - np.eye(n)).max())
    if residual > 1e-9:
        raise SingularSolve(f"fundamental-matrix residual {residual:.3e} exceeds 1e-9")
    M = (np.diag(Z)[None, :] - Z) / w[None, :]
    np.fill_diagonal(M, 0.0)
    kemeny = float((w * M[0]).sum())
    return WalkStatistics(n, T, _walk_eigenvalues(graph), w, M, kemeny)


def accessibility_oracle(graph: AdjacencyStructure) -> np.ndarray:
    """Accessibility indices alpha(j) = sum_i w_i m_ij from the first-passage matrix."""
    stats = mfpt_matrix(graph)
    return stats.stationary @ stats.mfpt


def resistance_oracle(graph: AdjacencyStructure) -> np.ndarray:
    """Numeric effective resistances r_ij = l+_ii + l+_jj - 2 l+_ij.

    The pseudoinverse comes from an eigendecomposition of L with the single
    near-zero eigenvalue zeroed out.
    """
    _require_connected(graph)
    A = graph.adjacency_matrix().astype(float)
    L = np.diag(A.sum(axis=1)) - A
    try:
        vals, vecs = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise EigensolveFailure(str(exc)) from exc
    inv = np.zeros_like(vals)
    zero_idx = int(np.argmin(np.abs(vals)))
    for idx in range(len(vals)):
        if idx != zero_idx:
            inv[idx] = 1.0 / vals[idx]
    pinv = (vecs * inv[None, :]) @ vecs.T
    q = np.diag(pinv)
    return q[:, None] + q[None, :] - 2.0 * pinv


def spanning_tree_oracle(graph: AdjacencyStructure) -> int:
    """Spanning-tree count as an exact determinant of the reduced Laplacian.

    Deletes the last row and column and runs fraction-free (Bareiss)
    elimination over Python integers, so the answer is exact at any size.
    """
    _require_connected(graph)
    n = graph.n
    if n == 1:
        return 1
    A = graph.adjacency_matrix()
    deg = A.sum(axis=1)
    reduced = [
        [int(deg[i]) if i == j else -int(A[i, j]) for j in range(n - 1)]
        for i in range(n - 1)
    ]
    return _bareiss_determinant(reduced)


def _bareiss_determinant(matrix: list[list[int]]) -> int:
    m = [row[:] for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _forest_guard(graph: AdjacencyStructure) -> None:
    if graph.n > FOREST_ORDER_CAP:
        raise TooLarge(f"forest enumeration is capped at order {FOREST_ORDER_CAP}, got {graph.n}")
    if graph.n < 2:
        raise OrderTooSmall("a spanning 2-forest needs at least two vertices")
    _require_connected(graph)


@lru_cache(maxsize=16)
def _forest_bipartitions(graph: AdjacencyStructure) -> np.ndarray:
    """Bitmask of vertex 1's component for every spanning 2-forest.

    A subset of n-2 edges is a spanning 2-forest exactly when it is acyclic,
    so enumeration walks all (n-2)-subsets with a union-find cycle prune.
    """
    n = graph.n
    edges = graph.edges
    masks = []
    for subset in itertools.combinations(range(len(edges)), n - 2):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for e in subset:
            a, b = edges[e]
            ra, rb = find(a - 1), find(b - 1)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic:
            continue
        root = find(0)
        mask = 0
        for v in range(n):
            if find(v) == root:
                mask |= 1 << v
        masks.append(mask)
    return np.array(masks, dtype=np.uint32)


def _vertex_bits(graph: AdjacencyStructure, masks: np.ndarray, v: int) -> np.ndarray:
    if not 1 <= v <= graph.n:
        raise IndexOutOfRange(f"vertex {v} outside 1..{graph.n}")
    return (masks >> np.uint32(v - 1)) & np.uint32(1)


def two_forest_enumeration(graph: AdjacencyStructure, i: int, j: int) -> int:
    """Exact count of spanning 2-forests separating vertices i and j (1-based)."""
    _forest_guard(graph)
    if i == j:
        raise SameVertex(f"vertices must differ, both are {i}")
    masks = _forest_bipartitions(graph)
    return int((_vertex_bits(graph, masks, i) != _vertex_bits(graph, masks, j)).sum())


def two_forest_refinement(graph: AdjacencyStructure, z: int, x: int, y: int) -> int:
    """Count of spanning 2-forests whose tree containing x also contains z, with y apart."""
    _forest_guard(graph)
    if len({z, x, y}) != 3:
        raise SameVertex(f"vertices must be pairwise distinct, got {z}, {x}, {y}")
    masks = _forest_bipartitions(graph)
    bz = _vertex_bits(graph, masks, z)
    bx = _vertex_bits(graph, masks, x)
    by = _vertex_bits(graph, masks, y)
    return int(((bz == bx) & (bx != by)).sum())


def two_forest_matrix(graph: AdjacencyStructure) -> list[list[int]]:
    """All pairwise separating-forest counts from a single enumeration pass."""
    _forest_guard(graph)
    masks = _forest_bipartitions(graph)
    n = graph.n
    bits = [_vertex_bits(graph, masks, v) for v in range(1, n + 1)]
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            count = int((bits[a] != bits[b]).sum())
            out[a][b] = out[b][a] = count
    return out
