"""Weight-preserving data reductions and the incremental reduction scheduler.

Every rule here shrinks the graph while keeping the maximum weight
independent set reconstructible: the engine accumulates a weight ``offset``
and a stack of :class:`FoldRecord` entries whose replay (:func:`lift_solution`)
turns any independent set of the reduced graph into one of the original graph
with weight increased by exactly the offset.  Applying the rules to a
fixpoint yields the kernel.

Scheduling follows the incremental discipline: each local rule keeps a
min-heap of vertices whose closed neighborhood changed since the rule last
looked at them.  A rule drains its queue; whenever any rule changed the
graph, scheduling restarts from the first rule.  The ``scan`` mode instead
re-seeds each rule's queue with every alive vertex, which must produce the
same kernel (the dirty-vertex bookkeeping only skips vertices whose check
cannot have changed); the test suite asserts that equivalence.

Rule order (cheap local rules first, the global flow-based rule last):

1.  neighborhood removal        (forces a vertex outweighing its neighbors)
2.  weighted domination         (drops a dominated-covering lighter vertex)
3.  weighted vertex folding     (degree-2 fold)
4.  isolated vertex removal     (simplicial vertex of maximum clique weight)
5.  isolated weight transfer    (simplicial vertex, weight pushed to heavier
                                 clique mates)
6.  weighted twin               (degree-3 twins, include or fold)
7.  neighborhood folding        (independent neighborhood fold, size-capped)
8.  neighbor removal            (local exact subsolve, size-capped)
9.  critical weighted set       (global min-cut rule; full variant only)
"""

from __future__ import annotations

import heapq
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .critical import critical_weighted_set
from .graph import WeightedGraph
from .oracle import subgraph_mwis_weight
from .solution import verify_independent_set

LOCAL_RULES = (
    "neighborhood_removal",
    "weighted_domination",
    "weighted_vertex_folding",
    "isolated_vertex_removal",
    "isolated_weight_transfer",
    "weighted_twin",
    "neighborhood_folding",
    "neighbor_removal_meta",
)
CRITICAL_RULE = "critical_set"


@dataclass(frozen=True)
class FoldRecord:
    """One reversible reduction step.

    Replayed back-to-front over a kernel solution ``I``:

    * ``introduced`` set: a fold.  If the introduced vertex is in ``I`` it is
      swapped for ``fold_in``, otherwise ``fold_out`` joins.
    * ``guard`` set: a weight transfer.  ``forced`` joins only when ``I``
      avoids every guard vertex.
    * otherwise: ``forced`` joins unconditionally.

    Each replay raises the solution weight by exactly ``offset``.
    """

    rule: str
    consumed: tuple[int, ...]
    offset: int
    introduced: int | None = None
    fold_in: tuple[int, ...] = ()
    fold_out: tuple[int, ...] = ()
    forced: tuple[int, ...] = ()
    guard: tuple[int, ...] = ()


def lift_solution(kernel_vertices: Iterable[int], stack: Sequence[FoldRecord],
                  forced_in: Iterable[int] = ()) -> set[int]:
    """Map an independent set of the kernel back to the original graph.

    ``stack`` is replayed last-record-first.  ``forced_in`` vertices are
    added at the end; they are only needed by callers that track decided
    vertices outside the record stack.
    """
    chosen = set(kernel_vertices)
    for rec in reversed(stack):
        if rec.introduced is not None:
            if rec.introduced in chosen:
                chosen.discard(rec.introduced)
                chosen.update(rec.fold_in)
            else:
                chosen.update(rec.fold_out)
        elif rec.guard:
            if chosen.isdisjoint(rec.guard):
                chosen.update(rec.forced)
        else:
            chosen.update(rec.forced)
    chosen.update(forced_in)
    return chosen


@dataclass
class KernelResult:
    """Outcome of reducing a graph to its kernel."""

    kernel: WeightedGraph
    offset: int
    stack: tuple[FoldRecord, ...]
    forced_in: tuple[int, ...]

    def lift(self, kernel_vertices: Iterable[int]) -> set[int]:
        """Lift a kernel independent set; validates it first."""
        verify_independent_set(self.kernel, kernel_vertices)
        return lift_solution(kernel_vertices, self.stack)


class ReductionEngine:
    """Owns a graph, its dirty-vertex queues, and the lifting stack.

    All graph edits made by the solver must go through the engine so the
    queues stay sound.  ``checkpoint``/``rollback`` mirror the graph's and
    additionally truncate the record stack; queues are simply cleared on
    rollback, which is correct because the engine only reduces immediately
    after edits (rolled-back edits leave nothing pending).
    """

    def __init__(self, graph: WeightedGraph, variant: str = "full",
                 max_meta_size: int = 16, mode: str = "queue",
                 stats: Counter | None = None):
        if variant not in ("full", "dense"):
            raise ValueError(f"unknown variant {variant!r}")
        if mode not in ("queue", "scan"):
            raise ValueError(f"unknown reduction mode {mode!r}")
        self.g = graph
        self.variant = variant
        self.max_meta_size = max_meta_size
        self.mode = mode
        self.records: list[FoldRecord] = []
        self.offset = 0
        self.stats: Counter = Counter() if stats is None else stats
        self._queues = {rule: ([], set()) for rule in LOCAL_RULES}
        self._clique_degree_cap: int | None = None
        for v in graph.alive_vertices():
            self.touch(v)

    # ------------------------------------------------------------------
    # Dirty-vertex bookkeeping and tracked edits
    # ------------------------------------------------------------------

    def touch(self, v: int) -> None:
        if not self.g.is_alive(v):
            return
        for heap, members in self._queues.values():
            if v not in members:
                members.add(v)
                heapq.heappush(heap, v)

    def remove_vertex(self, v: int) -> None:
        nbrs = list(self.g.neighbors(v))
        self.g.remove_vertex(v)
        for u in nbrs:
            self.touch(u)

    def set_weight(self, v: int, w: int) -> None:
        self.g.set_weight(v, w)
        self.touch(v)
        for u in self.g.neighbors(v):
            self.touch(u)

    def fold(self, consumed: Sequence[int], new_weight: int,
             new_neighbors: Sequence[int]) -> int:
        fringe = set()
        cset = set(consumed)
        for c in consumed:
            fringe.update(u for u in self.g.neighbors(c) if u not in cset)
        vid = self.g.fold_into_new_vertex(consumed, new_weight, new_neighbors)
        self.touch(vid)
        for u in fringe:
            self.touch(u)
        for u in new_neighbors:
            self.touch(u)
        return vid

    def include_vertex(self, v: int, rule: str = "branch") -> None:
        """Force ``v`` into the solution: record it and delete its closed
        neighborhood."""
        nbrs = sorted(self.g.neighbors(v))
        w = self.g.weight(v)
        self._push_record(FoldRecord(
            rule=rule, consumed=tuple(nbrs) + (v,), offset=w, forced=(v,)))
        for u in nbrs:
            self.remove_vertex(u)
        self.remove_vertex(v)

    def exclude_vertex(self, v: int) -> None:
        """Remove ``v`` knowing some optimal solution avoids it."""
        self.remove_vertex(v)

    def _push_record(self, rec: FoldRecord) -> None:
        self.records.append(rec)
        self.offset += rec.offset

    # ------------------------------------------------------------------
    # Checkpointing
    # ------------------------------------------------------------------

    def checkpoint(self) -> tuple[int, int, int]:
        return (self.g.checkpoint(), len(self.records), self.offset)

    def rollback(self, mark: tuple[int, int, int]) -> None:
        gmark, nrec, offset = mark
        self.g.rollback(gmark)
        del self.records[nrec:]
        self.offset = offset
        for heap, members in self._queues.values():
            heap.clear()
            members.clear()

    # ------------------------------------------------------------------
    # The scheduler
    # ------------------------------------------------------------------

    def _enabled_rules(self, initial: bool) -> list[str]:
        rules = list(LOCAL_RULES)
        if self.variant == "dense":
            if not initial:
                rules.remove("neighborhood_folding")
                rules.remove("neighbor_removal_meta")
            return rules
        return rules + [CRITICAL_RULE]

    def reduce(self, initial: bool = False, deadline: float | None = None) -> None:
        """Apply the enabled rules to a fixpoint (or until the deadline)."""
        rules = self._enabled_rules(initial)
        self._clique_degree_cap = 2 if (self.variant == "dense" and not initial) else None
        i = 0
        while i < len(rules):
            if deadline is not None and time.monotonic() >= deadline:
                return
            rule = rules[i]
            if rule == CRITICAL_RULE:
                changed = self.cwis_reduction()
            else:
                changed = self._drain(rule, deadline)
            i = 0 if changed else i + 1

    def _drain(self, rule: str, deadline: float | None) -> bool:
        heap, members = self._queues[rule]
        if self.mode == "scan":
            for v in self.g.alive_vertices():
                if v not in members:
                    members.add(v)
                    heapq.heappush(heap, v)
        apply_at = getattr(self, "_try_" + rule)
        changed = False
        ticks = 0
        while heap:
            v = heapq.heappop(heap)
            members.discard(v)
            if not self.g.is_alive(v):
                continue
            if apply_at(v):
                self.stats[rule] += 1
                changed = True
            ticks += 1
            if deadline is not None and ticks % 64 == 0 and time.monotonic() >= deadline:
                break
        return changed

    # ------------------------------------------------------------------
    # Small structural helpers
    # ------------------------------------------------------------------

    def _covers(self, big: Sequence[int], small: Sequence[int], skip: int) -> bool:
        """True when ``set(small) - {skip}`` is contained in sorted ``big``."""
        i = 0
        nbig = len(big)
        for x in small:
            if x == skip:
                continue
            while i < nbig and big[i] < x:
                i += 1
            if i == nbig or big[i] != x:
                return False
            i += 1
        return True

    def _is_clique(self, verts: Sequence[int]) -> bool:
        for u in verts:
            if not self._covers(self.g.neighbors(u), verts, skip=u):
                return False
        return True

    def _is_independent(self, verts: Sequence[int]) -> bool:
        for i, u in enumerate(verts):
            for x in verts[i + 1:]:
                if self.g.has_edge(u, x):
                    return False
        return True

    def _fringe(self, group: Iterable[int]) -> list[int]:
        gset = set(group)
        out = set()
        for v in gset:
            out.update(u for u in self.g.neighbors(v) if u not in gset)
        return sorted(out)

    # ------------------------------------------------------------------
    # The rules.  ``_try_<rule>(v)`` performs at most one application and
    # reports whether the graph changed; the spec-shaped pair operations
    # are public for direct use in tests.
    # ------------------------------------------------------------------

    def _try_neighborhood_removal(self, v: int) -> bool:
        return self.neighborhood_removal(v)

    def neighborhood_removal(self, v: int) -> bool:
        """Force ``v`` in when it outweighs its whole neighborhood."""
        g = self.g
        if g.weight(v) >= sum(g.weight(u) for u in g.neighbors(v)):
            self.include_vertex(v, rule="neighborhood_removal")
            return True
        return False

    def _try_weighted_domination(self, v: int) -> bool:
        g = self.g
        wv = g.weight(v)
        dv = g.degree(v)
        for u in list(g.neighbors(v)):
            if not g.is_alive(u):
                continue
            wu = g.weight(u)
            u_covers = g.degree(u) >= dv and self._covers(g.neighbors(u), g.neighbors(v), skip=u)
            v_covers = dv >= g.degree(u) and self._covers(g.neighbors(v), g.neighbors(u), skip=v)
            drop_u = u_covers and wu <= wv
            drop_v = v_covers and wv <= wu
            if drop_u and drop_v:
                # Mutual domination with equal weights: keep the lower id.
                if self.weighted_domination(max(u, v), min(u, v)):
                    return True
            elif drop_u:
                if self.weighted_domination(u, v):
                    return True
            elif drop_v:
                if self.weighted_domination(v, u):
                    return True
            if not g.is_alive(v):
                return False
        return False

    def weighted_domination(self, u: int, v: int) -> bool:
        """Remove ``u`` when ``N[u]`` covers ``N[v]`` and ``w(u) <= w(v)``."""
        g = self.g
        if u == v or not g.has_edge(u, v):
            return False
        if g.weight(u) > g.weight(v):
            return False
        if not self._covers(g.neighbors(u), g.neighbors(v), skip=u):
            return False
        self.remove_vertex(u)
        return True

    def _try_weighted_vertex_folding(self, v: int) -> bool:
        return self.weighted_vertex_folding(v)

    def weighted_vertex_folding(self, v: int) -> bool:
        """Fold a degree-2 vertex with non-adjacent neighbors."""
        g = self.g
        if g.degree(v) != 2:
            return False
        u, x = g.neighbors(v)
        if g.has_edge(u, x):
            return False
        wv, wu, wx = g.weight(v), g.weight(u), g.weight(x)
        if not (wv < wu + wx and wv >= max(wu, wx)):
            return False
        new_nbrs = self._fringe((v, u, x))
        vid = self.fold((v, u, x), wu + wx - wv, new_nbrs)
        self._push_record(FoldRecord(
            rule="weighted_vertex_folding", consumed=(v, u, x), offset=wv,
            introduced=vid, fold_in=(u, x), fold_out=(v,)))
        return True

    def _try_isolated_vertex_removal(self, v: int) -> bool:
        return self.isolated_vertex_removal(v)

    def isolated_vertex_removal(self, v: int) -> bool:
        """Force in a simplicial vertex that is heaviest in its clique."""
        g = self.g
        nbrs = g.neighbors(v)
        if self._clique_degree_cap is not None and len(nbrs) > self._clique_degree_cap:
            return False
        wv = g.weight(v)
        if any(g.weight(u) > wv for u in nbrs):
            return False
        if not self._is_clique(nbrs):
            return False
        self.include_vertex(v, rule="isolated_vertex_removal")
        return True

    def _try_isolated_weight_transfer(self, v: int) -> bool:
        return self.isolated_weight_transfer(v)

    def isolated_weight_transfer(self, v: int) -> bool:
        """Remove a simplicial vertex, pushing its weight onto heavier mates.

        Clique mates no heavier than ``v`` are deleted outright; the rest
        lose ``w(v)`` weight.  Applied only when it deletes at least one
        neighbor, and only when every simplicial clique mate is no heavier
        than ``v``.
        """
        g = self.g
        nbrs = list(g.neighbors(v))
        if self._clique_degree_cap is not None and len(nbrs) > self._clique_degree_cap:
            return False
        wv = g.weight(v)
        removed = [u for u in nbrs if g.weight(u) <= wv]
        if not removed:
            return False
        if not self._is_clique(nbrs):
            return False
        for u in nbrs:
            if g.weight(u) > wv and self._is_clique(g.neighbors(u)):
                return False  # a heavier simplicial clique mate forbids the transfer
        keep = tuple(u for u in nbrs if g.weight(u) > wv)
        self._push_record(FoldRecord(
            rule="isolated_weight_transfer", consumed=tuple(removed) + (v,),
            offset=wv, forced=(v,), guard=keep))
        for u in removed:
            self.remove_vertex(u)
        self.remove_vertex(v)
        for x in keep:
            self.set_weight(x, g.weight(x) - wv)
        return True

    def _try_weighted_twin(self, v: int) -> bool:
        g = self.g
        if g.degree(v) != 3:
            return False
        nv = g.neighbors(v)
        for u in list(g.neighbors(nv[0])):
            if u != v and g.degree(u) == 3 and g.neighbors(u) == nv:
                return self.weighted_twin(min(u, v), max(u, v))
        return False

    def weighted_twin(self, u: int, v: int) -> bool:
        """Twins over an independent degree-3 neighborhood: include or fold."""
        g = self.g
        if u == v or g.has_edge(u, v):
            return False
        nbrs = g.neighbors(u)
        if len(nbrs) != 3 or g.neighbors(v) != nbrs:
            return False
        if not self._is_independent(nbrs):
            return False
        p, q, r = nbrs
        w_twins = g.weight(u) + g.weight(v)
        w_nbrs = g.weight(p) + g.weight(q) + g.weight(r)
        if w_twins >= w_nbrs:
            pair = tuple(sorted((u, v)))
            self._push_record(FoldRecord(
                rule="weighted_twin", consumed=pair + (p, q, r),
                offset=w_twins, forced=pair))
            for x in (p, q, r):
                self.remove_vertex(x)
            self.remove_vertex(u)
            self.remove_vertex(v)
            return True
        if w_twins > w_nbrs - min(g.weight(p), g.weight(q), g.weight(r)):
            group = (u, v, p, q, r)
            new_nbrs = self._fringe(group)
            vid = self.fold(group, w_nbrs - w_twins, new_nbrs)
            self._push_record(FoldRecord(
                rule="weighted_twin", consumed=group, offset=w_twins,
                introduced=vid, fold_in=(p, q, r), fold_out=tuple(sorted((u, v)))))
            return True
        return False

    def _try_neighborhood_folding(self, v: int) -> bool:
        return self.neighborhood_folding(v)

    def neighborhood_folding(self, v: int) -> bool:
        """Fold ``v`` with its independent neighborhood when only the full
        neighborhood can beat ``v``."""
        g = self.g
        nbrs = list(g.neighbors(v))
        if not nbrs or len(nbrs) > self.max_meta_size:
            return False
        wv = g.weight(v)
        w_nb = sum(g.weight(u) for u in nbrs)
        if not (w_nb > wv and w_nb - min(g.weight(u) for u in nbrs) < wv):
            return False
        if not self._is_independent(nbrs):
            return False
        group = (v, *nbrs)
        new_nbrs = self._fringe(group)
        vid = self.fold(group, w_nb - wv, new_nbrs)
        self._push_record(FoldRecord(
            rule="neighborhood_folding", consumed=group, offset=wv,
            introduced=vid, fold_in=tuple(nbrs), fold_out=(v,)))
        return True

    def _try_neighbor_removal_meta(self, v: int) -> bool:
        g = self.g
        for u in list(g.neighbors(v)):
            if not g.is_alive(u):
                continue
            if self.neighbor_removal_meta(v, u):
                return True
            if self.neighbor_removal_meta(u, v):
                return True
            if not g.is_alive(v):
                return False
        return False

    def neighbor_removal_meta(self, v: int, u: int) -> bool:
        """Remove the neighbor ``u`` of ``v`` when the best set inside
        ``N(v) - N[u]`` plus ``u`` still cannot beat ``v``.  The local
        subproblem is solved exactly, so its size is capped at
        ``max_meta_size``."""
        g = self.g
        if not g.has_edge(u, v):
            return False
        nu = set(g.neighbors(u))
        local = [x for x in g.neighbors(v) if x != u and x not in nu]
        if len(local) > self.max_meta_size:
            return False
        if subgraph_mwis_weight(g, local) + g.weight(u) > g.weight(v):
            return False
        self.remove_vertex(u)
        return True

    def cwis_reduction(self) -> bool:
        """Force in a critical weighted independent set found by min cut."""
        if self.g.n_alive == 0:
            return False
        chosen, value = critical_weighted_set(self.g)
        if value <= 0 or not chosen:
            return False
        nbhd = set(self._fringe(chosen))
        core = sorted(x for x in chosen if x not in nbhd)
        if not core:
            return False
        self.stats[CRITICAL_RULE] += 1
        self._push_record(FoldRecord(
            rule="cwis", consumed=tuple(sorted(set(core) | nbhd)),
            offset=sum(self.g.weight(x) for x in core), forced=tuple(core)))
        for x in sorted(nbhd):
            self.remove_vertex(x)
        for x in core:
            self.remove_vertex(x)
        return True


def reduce_to_kernel(graph: WeightedGraph, variant: str = "full",
                     max_meta_size: int = 16, mode: str = "queue") -> KernelResult:
    """Reduce ``graph`` in place to its kernel.

    Returns the kernel view together with the accumulated weight offset and
    the lifting stack.  ``forced_in`` is the baseline solution obtained by
    lifting the empty kernel set; for an empty kernel it is the full optimum.
    """
    engine = ReductionEngine(graph, variant=variant, max_meta_size=max_meta_size, mode=mode)
    engine.reduce(initial=True)
    stack = tuple(engine.records)
    return KernelResult(
        kernel=graph,
        offset=engine.offset,
        stack=stack,
        forced_in=tuple(sorted(lift_solution((), stack))),
    )
