"""Weighted iterated local search.

Provides lower bounds for the branch-and-reduce solver and the standalone
``ls`` / ``hybrid`` modes.  The search alternates greedy descent built from
two moves and an escalating random perturbation:

* an insertion swap puts a vertex into the solution whenever it strictly
  outweighs its current solution neighbors (plain insertion when it has
  none), evicting them and re-maximizing greedily by weight;
* a one-for-two swap trades a solution vertex for its best pair of
  non-adjacent neighbors that conflict only with it, when the pair is
  strictly heavier.

Runs are deterministic given (graph, seed, round budget); a wall-clock
budget simply stops issuing rounds once the deadline passes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _ls_core as core
from .graph import WeightedGraph
from .solution import Solution

_CHUNK_ROUNDS = 32


def _csr_of(graph: WeightedGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[int]]:
    verts = sorted(graph.alive_vertices())
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    xadj = np.zeros(n + 1, dtype=np.int64)
    for v in verts:
        xadj[index[v] + 1] = graph.degree(v)
    np.cumsum(xadj, out=xadj)
    adj = np.empty(int(xadj[-1]), dtype=np.int64)
    for v in verts:
        i = index[v]
        adj[xadj[i]:xadj[i + 1]] = [index[u] for u in graph.neighbors(v)]
    w = np.array([graph.weight(v) for v in verts], dtype=np.int64)
    return xadj, adj, w, verts


class LsState:
    """Resumable local-search state over a snapshot of the alive graph.

    Vertex arguments and reported solutions use the graph's vertex ids; the
    snapshot is taken at construction, later graph edits are not seen.
    """

    def __init__(self, graph: WeightedGraph, seed: int = 0):
        self.graph = graph
        self.xadj, self.adj, self.w, self.verts = _csr_of(graph)
        n = len(self.verts)
        self._index = {v: i for i, v in enumerate(self.verts)}
        self.order = np.array(
            sorted(range(n), key=lambda i: (-int(self.w[i]), i)), dtype=np.int64
        )
        self.in_sol = np.zeros(n, dtype=np.uint8)
        self.tight = np.zeros(n, dtype=np.int64)
        self.loss = np.zeros(n, dtype=np.int64)
        self.best_sol = np.zeros(n, dtype=np.uint8)
        self.cand = np.empty(max(n, 1), dtype=np.int64)
        self.state = np.zeros(core.STATE_LEN, dtype=np.int64)
        self.state[core.S_RNG] = seed & ((1 << 63) - 1)

    # -- spec-level move operations (mainly for tests) -------------------

    def omega_one_swap(self, v: int) -> bool:
        """Insert ``v`` if strictly heavier than its solution neighbors."""
        applied = core._omega_swap(self._index[v], self.xadj, self.adj, self.w,
                                   self.in_sol, self.tight, self.loss, self.state)
        if applied:
            self._maximize()
        return bool(applied)

    def weighted_one_two_swap(self, v: int) -> bool:
        """Trade ``v`` for its best strictly-heavier free neighbor pair."""
        applied = core._one_two_swap(self._index[v], self.xadj, self.adj, self.w,
                                     self.in_sol, self.tight, self.loss,
                                     self.cand, self.state)
        if applied:
            self._maximize()
        return bool(applied)

    def _maximize(self) -> None:
        core._greedy_maximize(self.xadj, self.adj, self.w, self.order,
                              self.in_sol, self.tight, self.loss, self.state)

    def run_rounds(self, rounds: int) -> None:
        core.ils_rounds(self.xadj, self.adj, self.w, self.order, self.in_sol,
                        self.tight, self.loss, self.best_sol, self.cand,
                        self.state, rounds)

    # -- views -----------------------------------------------------------

    @property
    def current_weight(self) -> int:
        return int(self.state[core.S_CUR])

    @property
    def best_weight(self) -> int:
        return int(self.state[core.S_BEST])

    def current_vertices(self) -> tuple[int, ...]:
        return tuple(self.verts[i] for i in np.flatnonzero(self.in_sol))

    def best_vertices(self) -> tuple[int, ...]:
        return tuple(self.verts[i] for i in np.flatnonzero(self.best_sol))


@dataclass
class LsResult:
    solution: Solution
    rounds: int
    convergence: list[tuple[float, int]] = field(default_factory=list)


def ils_run(graph: WeightedGraph, iterations: int | None = None,
            time_limit: float | None = None, seed: int = 0,
            start_time: float | None = None) -> LsResult:
    """Run the iterated local search under a round and/or time budget.

    At least one budget must be given.  Emits a ``(elapsed_seconds, weight)``
    convergence entry whenever the best known weight improves (observed at
    chunk granularity).  ``start_time`` lets callers anchor the elapsed
    clock; defaults to now.
    """
    if iterations is None and time_limit is None:
        raise ValueError("ils_run needs an iteration or time budget")
    t0 = time.monotonic() if start_time is None else start_time
    deadline = None if time_limit is None else t0 + time_limit
    if graph.n_alive == 0:
        return LsResult(Solution((), 0), 0, [])
    st = LsState(graph, seed=seed)
    convergence: list[tuple[float, int]] = []
    logged = 0
    done = 0
    while True:
        if deadline is not None and time.monotonic() >= deadline:
            break
        if iterations is not None and done >= iterations:
            break
        chunk = _CHUNK_ROUNDS if iterations is None else min(_CHUNK_ROUNDS, iterations - done)
        st.run_rounds(chunk)
        done += chunk
        if st.best_weight > logged:
            logged = st.best_weight
            convergence.append((time.monotonic() - t0, logged))
    if st.state[core.S_INIT] == 0:  # deadline hit before the first chunk
        st.run_rounds(0)
        if st.best_weight > logged:
            convergence.append((time.monotonic() - t0, st.best_weight))
    sol = Solution(tuple(st.best_vertices()), st.best_weight, optimal=False)
    return LsResult(sol, done, convergence)
