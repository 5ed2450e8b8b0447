"""Bipartite matching engines.

Two solvers over the same graph type: maximum-cardinality matching
(Hopcroft-Karp) and minimum-weight maximum-cardinality matching for
weights restricted to {0, 1}.  Missing (row, col) pairs mean an
unusable edge; they are represented by absence, never by a big finite
constant, so all arithmetic stays exact.

The weighted solver returns a canonical optimum: among all matchings
with maximum cardinality and minimum total weight, the one whose sorted
(row, col) pair sequence is lexicographically smallest.  That makes
placement output reproducible across platforms and library versions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import min_weight_full_bipartite_matching

from .structure import Pattern

__all__ = [
    "WeightedBipartite",
    "Matching",
    "max_matching",
    "min_weight_max_matching",
    "generic_rank",
]


@dataclass(frozen=True)
class WeightedBipartite:
    """Bipartite graph with edge weights in {0, 1}.

    ``edges`` holds (row, col, weight) triples, at most one per
    (row, col) pair; absent pairs cannot be matched at any cost.
    """

    n_rows: int
    n_cols: int
    edges: frozenset

    def __init__(self, n_rows: int, n_cols: int, edges: Iterable = ()):
        n_rows, n_cols = int(n_rows), int(n_cols)
        if n_rows < 0 or n_cols < 0:
            raise ValueError("vertex counts must be non-negative")
        triples = frozenset((int(r), int(c), int(w)) for r, c, w in edges)
        pairs = set()
        for r, c, w in triples:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError(f"edge ({r}, {c}) outside {n_rows} x {n_cols} graph")
            if w not in (0, 1):
                raise ValueError(f"edge weight must be 0 or 1, got {w}")
            if (r, c) in pairs:
                raise ValueError(f"duplicate edge for pair ({r}, {c})")
            pairs.add((r, c))
        object.__setattr__(self, "n_rows", n_rows)
        object.__setattr__(self, "n_cols", n_cols)
        object.__setattr__(self, "edges", triples)

    def adjacency(self) -> list[list[int]]:
        """Per-row sorted column lists (weights dropped)."""
        adj: list[list[int]] = [[] for _ in range(self.n_rows)]
        for r, c, _ in self.edges:
            adj[r].append(c)
        for lst in adj:
            lst.sort()
        return adj

    def weight_of(self) -> dict:
        return {(r, c): w for r, c, w in self.edges}


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint (row, col) pairs with its total weight."""

    pairs: frozenset
    total_weight: int

    def __init__(self, pairs: Iterable, total_weight: int):
        pair_set = frozenset((int(r), int(c)) for r, c in pairs)
        rows = [r for r, _ in pair_set]
        cols = [c for _, c in pair_set]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("matching repeats a row or column vertex")
        object.__setattr__(self, "pairs", pair_set)
        object.__setattr__(self, "total_weight", int(total_weight))

    @property
    def cardinality(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple]:
        return sorted(self.pairs)


def _hopcroft_karp(adj: Sequence[Sequence[int]], n_cols: int) -> list[int]:
    """Match rows to columns; returns match_row (col index or -1 per row).

    Phased BFS/DFS, O(E sqrt(V)).  Deterministic: rows and adjacency are
    scanned in ascending order.
    """
    n_rows = len(adj)
    match_row = [-1] * n_rows
    match_col = [-1] * n_cols
    dist = [0] * n_rows

    while True:
        q = deque()
        for r in range(n_rows):
            if match_row[r] == -1:
                dist[r] = 0
                q.append(r)
            else:
                dist[r] = -1
        reachable_free = False
        while q:
            r = q.popleft()
            for c in adj[r]:
                r2 = match_col[c]
                if r2 == -1:
                    reachable_free = True
                elif dist[r2] == -1:
                    dist[r2] = dist[r] + 1
                    q.append(r2)
        if not reachable_free:
            break
        for r in range(n_rows):
            if match_row[r] == -1:
                _augment(r, adj, match_row, match_col, dist)
    return match_row


def _augment(root, adj, match_row, match_col, dist) -> bool:
    # iterative layered DFS; flips the augmenting path on success
    stack = [(root, 0)]
    cols_path: list[int] = []
    while stack:
        r, pos = stack[-1]
        advanced = False
        row_adj = adj[r]
        while pos < len(row_adj):
            c = row_adj[pos]
            pos += 1
            r2 = match_col[c]
            if r2 == -1:
                cols_path.append(c)
                for (rr, _), cc in zip(stack, cols_path):
                    match_row[rr] = cc
                    match_col[cc] = rr
                return True
            if dist[r2] == dist[r] + 1:
                stack[-1] = (r, pos)
                stack.append((r2, 0))
                cols_path.append(c)
                advanced = True
                break
        if advanced:
            continue
        dist[r] = -1  # dead end for this phase
        stack.pop()
        if cols_path:
            cols_path.pop()
    return False


def max_matching(graph: WeightedBipartite) -> Matching:
    """Maximum-cardinality matching; weights are ignored for the search.

    O(E sqrt(V)) Hopcroft-Karp.  The reported total weight sums the graph
    weights of the chosen pairs.
    """
    match_row = _hopcroft_karp(graph.adjacency(), graph.n_cols)
    weight = graph.weight_of()
    pairs = [(r, c) for r, c in enumerate(match_row) if c != -1]
    return Matching(pairs, sum(weight[p] for p in pairs))


def _optimum(rows, cols, weights, n_rows, n_cols):
    """(cardinality, weight) of a min-weight max-cardinality matching.

    Reduction to a full row assignment: every row gets one finite slack
    column with cost L = min(n_rows, n_cols) + 2, and real edge costs are
    shifted to w + 1 (sparse storage cannot hold explicit zeros).  Since
    any real matching weight is at most min(n_rows, n_cols) < L - 1, the
    assignment optimum maximizes cardinality first, then minimizes real
    weight; both adjustments cancel exactly in integer arithmetic.
    """
    m = len(rows)
    if n_rows == 0 or m == 0:
        return 0, 0
    big = min(n_rows, n_cols) + 2
    data = np.concatenate([np.asarray(weights) + 1, np.full(n_rows, big)])
    r_ind = np.concatenate([np.asarray(rows), np.arange(n_rows)])
    c_ind = np.concatenate([np.asarray(cols), np.arange(n_rows) + n_cols])
    mat = csr_matrix(
        (data.astype(float), (r_ind, c_ind)), shape=(n_rows, n_cols + n_rows)
    )
    row_ind, col_ind = min_weight_full_bipartite_matching(mat)
    real = col_ind < n_cols
    card = int(np.count_nonzero(real))
    lookup = {(int(r), int(c)): int(w) for r, c, w in zip(rows, cols, weights)}
    total = sum(lookup[(int(r), int(c))] for r, c in zip(row_ind[real], col_ind[real]))
    return card, total


def min_weight_max_matching(graph: WeightedBipartite) -> Matching:
    """Minimum total weight among maximum-cardinality matchings.

    Solved as a sparse assignment over the existing edges only.  Ties are
    broken canonically: pairs are forced greedily in ascending (row, col)
    order, keeping a pair exactly when the remaining graph still reaches
    the optimal (cardinality, weight); the result is the lexicographically
    smallest optimal pair sequence.
    """
    edges = sorted(graph.edges)
    if not edges:
        return Matching((), 0)
    er = np.array([e[0] for e in edges])
    ec = np.array([e[1] for e in edges])
    ew = np.array([e[2] for e in edges])
    n_rows, n_cols = graph.n_rows, graph.n_cols

    best_card, best_weight = _optimum(er, ec, ew, n_rows, n_cols)
    if best_card == 0:
        return Matching((), 0)

    order = np.arange(len(edges))
    free_row = np.ones(n_rows, dtype=bool)
    free_col = np.ones(n_cols, dtype=bool)
    forced: list[tuple] = []
    need_card, need_weight = best_card, best_weight
    for t, (r, c, w) in enumerate(edges):
        if not (free_row[r] and free_col[c]):
            continue
        mask = (order > t) & free_row[er] & free_col[ec] & (er != r) & (ec != c)
        card, weight = _optimum(er[mask], ec[mask], ew[mask], n_rows, n_cols)
        if card == need_card - 1 and weight == need_weight - w:
            forced.append((r, c))
            free_row[r] = False
            free_col[c] = False
            need_card -= 1
            need_weight -= w
            if need_card == 0:
                break
    if need_card != 0:
        raise RuntimeError("tie-breaking failed to reconstruct the optimum")
    return Matching(forced, best_weight)


def generic_rank(patterns: Sequence[Pattern], extra_cols: Pattern | None = None) -> int:
    """Generic rank of the horizontal concatenation of structured matrices.

    Equals the maximum-cardinality matching of the concatenation's
    bipartite graph (rows vs. all columns); appending columns can only
    increase it.
    """
    pats = list(patterns)
    if extra_cols is not None:
        pats.append(extra_cols)
    if not pats:
        return 0
    n_rows = pats[0].nrows
    edges = []
    offset = 0
    for p in pats:
        if p.nrows != n_rows:
            raise ValueError(
                f"row-count mismatch: {p.nrows} vs {n_rows} in concatenation"
            )
        edges.extend((r, offset + c, 0) for r, c in p.entries)
        offset += p.ncols
    graph = WeightedBipartite(n_rows, offset, edges)
    return max_matching(graph).cardinality
