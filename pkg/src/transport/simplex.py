"""
Transportation Simplex - FSW Embedding Toolkit

Exact discrete optimal transport between two probability vectors a (n,)
and b (k,) with a cost matrix C (n, k):

    minimize  sum_ij pi_ij C_ij
    s.t.      sum_j pi_ij = a_i,  sum_i pi_ij = b_j,  pi >= 0

METHODOLOGY:
============
1. Initial basis from the north-west corner rule: a staircase of exactly
   n + k - 1 cells forming a spanning tree of the bipartite row/column
   graph. Cells that receive zero flow stay in the basis, so the tree is
   always complete even on degenerate instances.
2. Dual potentials u, v solve u_i + v_j = C_ij on the basic cells
   (u_0 = 0), found by walking the tree.
3. Reduced costs r_ij = C_ij - u_i - v_j. If every r_ij >= -tol the basis
   is optimal (complementary slackness holds by construction).
4. Otherwise the entering cell is the smallest flat index with r_ij < -tol
   (Bland's rule). Its cycle is the tree path from row i to column j;
   cells on the path alternate -, +, -, ... starting next to row i.
   The step is the smallest flow among the - cells, and the leaving cell
   is the smallest flat index among the - cells achieving it.

Bland's choice of entering and leaving cells rules out cycling on
degenerate bases, so the method always terminates.
"""

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from config import MARGINAL_TOL, PIVOT_TOL, REDUCED_COST_TOL
from ..errors import FSWError


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """
    Optimal coupling between two discrete probability measures.

    Attributes:
        matrix: (n, k) plan pi, indexed by the original atoms of both measures
        source_weights: (n,) row marginal it must reproduce
        target_weights: (k,) column marginal it must reproduce
        cost: Transport cost (sum pi_ij ||x_i - y_j||^p)^(1/p)
        p: Order of the cost
        row_duals: (n,) dual potentials u (zero for dropped atoms)
        col_duals: (k,) dual potentials v (zero for dropped atoms)
        min_reduced_cost: Smallest reduced cost at termination; >= -1e-9
            certifies optimality
        pivots: Number of simplex pivots performed
    """
    matrix: np.ndarray
    source_weights: np.ndarray
    target_weights: np.ndarray
    cost: float
    p: float
    row_duals: np.ndarray
    col_duals: np.ndarray
    min_reduced_cost: float
    pivots: int = 0

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.float64)
        if matrix.shape != (len(self.source_weights), len(self.target_weights)):
            raise FSWError(f"plan of shape {matrix.shape} does not match the marginals")
        # round-off below zero is clamped on output
        if np.any(matrix < -PIVOT_TOL):
            raise FSWError(f"plan has a negative entry {matrix.min()!r}")
        matrix = np.maximum(matrix, 0.0)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def marginal_errors(self) -> Tuple[float, float]:
        """Largest row-sum and column-sum deviations from the marginals."""
        rows = float(np.max(np.abs(self.matrix.sum(axis=1) - self.source_weights)))
        cols = float(np.max(np.abs(self.matrix.sum(axis=0) - self.target_weights)))
        return rows, cols

    def check(self):
        """Raise FSWError unless the marginals hold within 1e-9."""
        rows, cols = self.marginal_errors()
        if rows > MARGINAL_TOL or cols > MARGINAL_TOL:
            raise FSWError(f"plan marginals off by {max(rows, cols):.3g}")

    def to_dict(self) -> Dict:
        return {"cost": self.cost, "p": self.p, "plan": self.matrix.tolist()}

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        """Audit dump {"cost": ..., "p": ..., "plan": [[...], ...]}."""
        text = json.dumps(self.to_dict(), indent=2)
        if path is not None:
            Path(path).write_text(text + "\n", encoding="utf-8")
        return text

    def __repr__(self) -> str:
        n, k = self.matrix.shape
        return f"TransportPlan({n}x{k}, cost={self.cost:.6g}, p={self.p:g})"


# =============================================================================
# Basis handling
# =============================================================================

def north_west_corner(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """
    Initial basic feasible solution.

    Returns:
        flow matrix and the n + k - 1 basic cells (degenerate ones included)
    """
    n, k = len(a), len(b)
    supply, demand = a.astype(np.float64).copy(), b.astype(np.float64).copy()
    flow = np.zeros((n, k))
    basis = []
    i = j = 0
    while True:
        amount = min(supply[i], demand[j])
        flow[i, j] = amount
        basis.append((i, j))
        supply[i] -= amount
        demand[j] -= amount
        if i == n - 1 and j == k - 1:
            break
        if i == n - 1:
            j += 1
        elif j == k - 1:
            i += 1
        elif supply[i] <= demand[j]:
            i += 1
        else:
            j += 1
    # leftover rounding between the two sums ends up in the last cell
    flow[n - 1, k - 1] += min(supply[n - 1], demand[k - 1])
    return flow, basis


def _adjacency(basis: List[Tuple[int, int]], n: int, k: int) -> List[List[int]]:
    # nodes 0..n-1 are rows, n..n+k-1 are columns
    neighbours = [[] for _ in range(n + k)]
    for i, j in basis:
        neighbours[i].append(n + j)
        neighbours[n + j].append(i)
    return neighbours


def _potentials(cost: np.ndarray, neighbours: List[List[int]], n: int) -> Tuple[np.ndarray, np.ndarray]:
    k = cost.shape[1]
    u, v = np.zeros(n), np.zeros(k)
    seen = np.zeros(n + k, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        node = queue.popleft()
        for other in neighbours[node]:
            if seen[other]:
                continue
            seen[other] = True
            if node < n:
                v[other - n] = cost[node, other - n] - u[node]
            else:
                u[other] = cost[other, node - n] - v[node - n]
            queue.append(other)
    if not np.all(seen):
        raise FSWError("basis is not a spanning tree")
    return u, v


def _tree_path(neighbours: List[List[int]], start: int, goal: int) -> List[int]:
    parent = {start: start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for other in neighbours[node]:
            if other not in parent:
                parent[other] = node
                queue.append(other)
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path[::-1]


# =============================================================================
# Solver
# =============================================================================

def solve_transport(a: np.ndarray, b: np.ndarray, cost: np.ndarray,
                    max_pivots: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, int]:
    """
    Optimal plan for strictly positive marginals a, b with equal sums.

    Args:
        a: (n,) source weights, all > 0
        b: (k,) target weights, all > 0
        cost: (n, k) cost matrix
        max_pivots: Safety cap on the number of pivots

    Returns:
        (flow, u, v, min_reduced_cost, pivots)
    """
    n, k = cost.shape
    flow, basis = north_west_corner(a, b)
    in_basis = np.zeros((n, k), dtype=bool)
    for cell in basis:
        in_basis[cell] = True
    if max_pivots is None:
        max_pivots = 50 * (n * k + n + k)

    pivots = 0
    while True:
        neighbours = _adjacency(basis, n, k)
        u, v = _potentials(cost, neighbours, n)
        reduced = cost - u[:, None] - v[None, :]
        reduced[in_basis] = 0.0

        candidates = np.flatnonzero(reduced.ravel() < -REDUCED_COST_TOL)
        if candidates.size == 0:
            return flow, u, v, float(reduced.min()), pivots
        if pivots >= max_pivots:
            raise FSWError(f"transport simplex did not converge in {max_pivots} pivots")

        ei, ej = divmod(int(candidates[0]), k)
        path = _tree_path(neighbours, ei, n + ej)
        cycle = []
        for step, (p, q) in enumerate(zip(path[:-1], path[1:])):
            cell = (p, q - n) if p < n else (q, p - n)
            cycle.append((cell, -1 if step % 2 == 0 else 1))

        minus = [cell for cell, sign in cycle if sign < 0]
        theta = min(flow[cell] for cell in minus)
        ties = [cell for cell in minus if flow[cell] <= theta + PIVOT_TOL]
        leaving = min(ties, key=lambda cell: cell[0] * k + cell[1])

        flow[ei, ej] += theta
        for cell, sign in cycle:
            flow[cell] = max(flow[cell] + sign * theta, 0.0)
        flow[leaving] = 0.0

        basis.remove(leaving)
        in_basis[leaving] = False
        basis.append((ei, ej))
        in_basis[ei, ej] = True
        pivots += 1
