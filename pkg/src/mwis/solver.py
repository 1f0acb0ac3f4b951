"""Exact branch-and-reduce solver for maximum weight independent sets.

Each search node reduces the graph to a fixpoint through the incremental
reduction engine, computes a one-off local-search lower bound per
subproblem, prunes against a weighted clique cover upper bound, splits
connected components into independent subproblems, and otherwise branches
on the vertex of maximum degree (including it first).  Backtracking rolls
the shared graph back via the edit log instead of copying.

The recursion is run on an explicit frame stack so deep exclusion chains
cannot overflow the interpreter stack.  Under a time limit the solver is
anytime: it returns its best lifted solution, greedily completed, flagged
non-optimal.  Every returned solution is certificate-checked against the
input graph.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from .bounds import clique_cover_bound
from .errors import InternalError
from .graph import WeightedGraph
from .local_search import ils_run
from .reductions import ReductionEngine, lift_solution
from .solution import Solution, verify_independent_set, verify_solution

_TIMEOUT_CHECK_MASK = 255  # deadline looked at every 256 nodes


@dataclass
class SolverConfig:
    """Knobs of the branch-and-reduce search.

    ``variant`` selects the reduction portfolio: ``full`` runs everything
    including the global critical-set rule; ``dense`` drops the critical-set
    rule entirely and, outside the initial kernelization, restricts the
    clique rules to triangles and disables the folding/subsolve meta rules.

    The local-search lower bound runs once per subproblem with a
    deterministic round budget (``ls_iterations``); when a time limit is set
    it is additionally wall-capped at ``ls_fraction`` of the limit, at most
    10 seconds.
    """

    variant: str = "full"
    time_limit: float | None = None
    seed: int = 0
    ls_fraction: float = 0.05
    max_meta_size: int = 16
    ls_iterations: int = 600
    ls_min_size: int = 12
    use_pruning: bool = True
    explore_include_first: bool = True
    reduction_mode: str = "queue"


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    ils_runs: int = 0
    max_depth: int = 0
    rule_applications: Counter = field(default_factory=Counter)


@dataclass
class SolveResult:
    solution: Solution
    stats: SearchStats
    convergence: list[tuple[float, int]]
    kernel_n: int
    kernel_m: int
    elapsed: float


class _Timeout(Exception):
    pass


def select_branch_vertex(graph: WeightedGraph) -> int:
    """Maximum degree; ties: larger weight, then lower id."""
    return min(
        graph.alive_vertices(),
        key=lambda v: (-graph.degree(v), -graph.weight(v), v),
    )


def greedy_complete(graph: WeightedGraph, partial=()) -> Solution:
    """Extend an independent set to a maximal one, heaviest vertices first."""
    verify_independent_set(graph, partial)
    chosen = set(partial)
    blocked = set()
    for v in chosen:
        blocked.update(graph.neighbors(v))
    order = sorted(graph.alive_vertices(), key=lambda v: (-graph.weight(v), v))
    for v in order:
        if v in chosen or v in blocked:
            continue
        chosen.add(v)
        blocked.update(graph.neighbors(v))
    return Solution.of(graph, chosen)


class _Ctx:
    """Incumbent state of one (sub)problem: a graph plus its engine."""

    __slots__ = ("engine", "best_w", "best_set", "ils_done", "reduced_once",
                 "index", "on_improve")

    def __init__(self, engine: ReductionEngine, index: int, on_improve=None):
        self.engine = engine
        self.best_w = 0
        self.best_set: set[int] | None = None
        self.ils_done = False
        self.reduced_once = False
        self.index = index
        self.on_improve = on_improve

    def offer(self, weight: int, vertices: set[int]) -> None:
        if weight > self.best_w or self.best_set is None:
            self.best_w = weight
            self.best_set = vertices
            if self.on_improve is not None:
                self.on_improve(weight)


class _NodeFrame:
    __slots__ = ("ctx", "stage", "ckpt0", "ckpt1", "branch_v")

    def __init__(self, ctx: _Ctx):
        self.ctx = ctx
        self.stage = 0
        self.ckpt0 = None
        self.ckpt1 = None
        self.branch_v = -1


class _CompFrame:
    __slots__ = ("ctx", "ckpt0", "children", "idx")

    def __init__(self, ctx: _Ctx, ckpt0, children):
        self.ctx = ctx
        self.ckpt0 = ckpt0
        self.children = children  # (child ctx, local-to-parent id map) pairs
        self.idx = 0


class _Machine:
    def __init__(self, engine: ReductionEngine, config: SolverConfig,
                 stats: SearchStats, t0: float):
        self.config = config
        self.stats = stats
        self.t0 = t0
        self.deadline = None if config.time_limit is None else t0 + config.time_limit
        self.convergence: list[tuple[float, int]] = []
        self._logged = -1
        self._ctx_counter = 0
        self.root = self._new_ctx(engine, is_root=True)
        self.kernel_n = engine.g.n_alive
        self.kernel_m = engine.g.m_alive

    def _new_ctx(self, engine: ReductionEngine, is_root: bool = False) -> _Ctx:
        idx = self._ctx_counter
        self._ctx_counter += 1
        on_improve = self._log_improvement if is_root else None
        return _Ctx(engine, idx, on_improve)

    def _log_improvement(self, weight: int) -> None:
        if weight > self._logged:
            self._logged = weight
            self.convergence.append((time.monotonic() - self.t0, weight))

    def _check_deadline(self) -> None:
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise _Timeout

    def run(self) -> None:
        stack: list = [_NodeFrame(self.root)]
        while stack:
            if len(stack) > self.stats.max_depth:
                self.stats.max_depth = len(stack)
            fr = stack[-1]
            if isinstance(fr, _CompFrame):
                self._step_components(fr, stack)
            elif fr.stage == 0:
                self._enter_node(fr, stack)
            elif fr.stage == 1:
                fr.ctx.engine.rollback(fr.ckpt1)
                self._apply_branch(fr, include=not self.config.explore_include_first)
                fr.stage = 2
                stack.append(_NodeFrame(fr.ctx))
            else:
                fr.ctx.engine.rollback(fr.ckpt0)
                stack.pop()

    def _apply_branch(self, fr: _NodeFrame, include: bool) -> None:
        if include:
            fr.ctx.engine.include_vertex(fr.branch_v)
        else:
            fr.ctx.engine.exclude_vertex(fr.branch_v)

    def _enter_node(self, fr: _NodeFrame, stack: list) -> None:
        ctx = fr.ctx
        eng = ctx.engine
        self.stats.nodes += 1
        if self.stats.nodes & _TIMEOUT_CHECK_MASK == 0:
            self._check_deadline()
        fr.ckpt0 = eng.checkpoint()
        initial = ctx is self.root and not ctx.reduced_once
        eng.reduce(initial=initial, deadline=self.deadline)
        ctx.reduced_once = True
        if initial:
            self.kernel_n = eng.g.n_alive
            self.kernel_m = eng.g.m_alive
        self._check_deadline()
        if not ctx.ils_done and ctx.best_w == 0:
            ctx.ils_done = True
            self._ils_bound(ctx)
        g = eng.g
        if g.n_alive == 0:
            ctx.offer(eng.offset, lift_solution((), eng.records))
            eng.rollback(fr.ckpt0)
            stack.pop()
            return
        if self.config.use_pruning and \
                eng.offset + clique_cover_bound(g) <= ctx.best_w:
            self.stats.prunes += 1
            eng.rollback(fr.ckpt0)
            stack.pop()
            return
        comps = g.connected_components()
        if len(comps) > 1:
            children = []
            for comp in comps:
                sub, mapping = g.induced_subgraph(comp)
                child_engine = ReductionEngine(
                    sub, variant=self.config.variant,
                    max_meta_size=self.config.max_meta_size,
                    mode=self.config.reduction_mode,
                    stats=self.stats.rule_applications)
                children.append((self._new_ctx(child_engine), mapping))
            stack[-1] = _CompFrame(ctx, fr.ckpt0, children)
            return
        fr.branch_v = select_branch_vertex(g)
        fr.ckpt1 = eng.checkpoint()
        self._apply_branch(fr, include=self.config.explore_include_first)
        fr.stage = 1
        stack.append(_NodeFrame(ctx))

    def _step_components(self, fr: _CompFrame, stack: list) -> None:
        if fr.idx < len(fr.children):
            child_ctx, _ = fr.children[fr.idx]
            fr.idx += 1
            stack.append(_NodeFrame(child_ctx))
            return
        eng = fr.ctx.engine
        total = eng.offset
        union: set[int] = set()
        for child_ctx, mapping in fr.children:
            total += child_ctx.best_w
            for i in child_ctx.best_set or ():
                union.add(mapping[i])
        fr.ctx.offer(total, lift_solution(union, eng.records))
        eng.rollback(fr.ckpt0)
        stack.pop()

    def _ils_bound(self, ctx: _Ctx) -> None:
        g = ctx.engine.g
        n = g.n_alive
        if n < self.config.ls_min_size:
            return
        self.stats.ils_runs += 1
        rounds = min(self.config.ls_iterations, 10 * n + 50)
        cap = None
        if self.config.time_limit is not None:
            cap = min(self.config.ls_fraction * self.config.time_limit, 10.0)
            if self.deadline is not None:
                cap = min(cap, max(self.deadline - time.monotonic(), 0.0))
        sub, mapping = g.compact_copy()
        seed = (self.config.seed * 0x9E3779B9 + ctx.index) & ((1 << 62) - 1)
        res = ils_run(sub, iterations=rounds, time_limit=cap, seed=seed)
        kernel_verts = [mapping[i] for i in res.solution.vertices]
        lifted = lift_solution(kernel_verts, ctx.engine.records)
        ctx.offer(ctx.engine.offset + res.solution.weight, lifted)


def solve(graph: WeightedGraph, config: SolverConfig | None = None) -> SolveResult:
    """Solve MWIS on ``graph`` exactly, or anytime under a time limit.

    The input graph is not modified.  The result's solution is flagged
    ``optimal`` only when the search finished within the budget; either way
    it is a verified independent set of the input.
    """
    config = config or SolverConfig()
    t0 = time.monotonic()
    stats = SearchStats()
    working, root_map = graph.compact_copy()
    engine = ReductionEngine(
        working, variant=config.variant,
        max_meta_size=config.max_meta_size, mode=config.reduction_mode,
        stats=stats.rule_applications)
    machine = _Machine(engine, config, stats, t0)
    completed = True
    try:
        machine.run()
    except _Timeout:
        completed = False
    best = machine.root.best_set or set()
    chosen = {root_map[v] for v in best}
    if completed:
        solution = Solution.of(graph, chosen, optimal=True)
        if solution.weight != machine.root.best_w:
            raise InternalError(
                f"solver weight accounting is off: {solution.weight} "
                f"!= {machine.root.best_w}")
    else:
        solution = greedy_complete(graph, chosen)
        machine._log_improvement(solution.weight)
    verify_solution(graph, solution)
    return SolveResult(
        solution=solution,
        stats=stats,
        convergence=machine.convergence,
        kernel_n=machine.kernel_n,
        kernel_m=machine.kernel_m,
        elapsed=time.monotonic() - t0,
    )
