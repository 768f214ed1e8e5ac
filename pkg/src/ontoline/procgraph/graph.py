"""Process DAG and its graph kernels.

All tie-breaks are lexicographic on operation ids so every result is
reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable

import numpy as np

from ontoline.errors import CycleDetected, ValidationError
from ontoline.numbers import from_millis, to_millis

MODES = ("manual", "automatic")


@dataclass(frozen=True)
class Operation:
    id: str
    duration: Decimal
    mode: str = "manual"
    label: str = ""
    demands: dict[str, int] = field(default_factory=dict)
    position: tuple[Decimal, Decimal, Decimal] | None = None
    mass: Decimal | None = None
    posture_factor: Decimal | None = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("operation id must be non-empty")
        duration = Decimal(self.duration)
        object.__setattr__(self, "duration", duration)
        if duration < 0:
            raise ValidationError(f"{self.id}: negative duration {duration}")
        try:
            to_millis(duration)
        except ValueError as exc:
            raise ValidationError(f"{self.id}: {exc}") from None
        if self.mode not in MODES:
            raise ValidationError(f"{self.id}: mode {self.mode!r} not in {MODES}")
        for rtype, count in self.demands.items():
            if not isinstance(count, int) or count < 1:
                raise ValidationError(f"{self.id}: demand {rtype}={count!r} must be a positive integer")
        object.__setattr__(self, "demands", dict(sorted(self.demands.items())))
        if not self.label:
            object.__setattr__(self, "label", self.id)
        if self.mass is not None and self.mass < 0:
            raise ValidationError(f"{self.id}: negative mass")
        if self.posture_factor is not None and self.posture_factor < 1:
            raise ValidationError(f"{self.id}: posture_factor must be >= 1")

    @property
    def millis(self) -> int:
        return to_millis(self.duration)

    def __hash__(self):
        return hash(self.id)


@dataclass(frozen=True)
class ProcessGraph:
    """Operations (kept sorted by id) and precedence edges ``(pred, succ)``.

    Acyclicity is not enforced here; :func:`topological_order` is the check.
    """

    operations: tuple[Operation, ...] = ()
    edges: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        ops = tuple(sorted(self.operations, key=lambda op: op.id))
        ids = [op.id for op in ops]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate operation ids: {', '.join(dupes)}")
        known = set(ids)
        edges = frozenset(self.edges)
        for pred, succ in edges:
            if pred not in known or succ not in known:
                raise ValidationError(f"edge ({pred}, {succ}) references an unknown operation")
        object.__setattr__(self, "operations", ops)
        object.__setattr__(self, "edges", edges)

    @property
    def ids(self) -> list[str]:
        return [op.id for op in self.operations]

    def op(self, op_id: str) -> Operation:
        for op in self.operations:
            if op.id == op_id:
                return op
        raise KeyError(op_id)

    def by_id(self) -> dict[str, Operation]:
        return {op.id: op for op in self.operations}

    def predecessors(self) -> dict[str, list[str]]:
        preds: dict[str, list[str]] = {i: [] for i in self.ids}
        for p, s in sorted(self.edges):
            preds[s].append(p)
        return preds

    def successors(self) -> dict[str, list[str]]:
        succs: dict[str, list[str]] = {i: [] for i in self.ids}
        for p, s in sorted(self.edges):
            succs[p].append(s)
        return succs

    def __len__(self) -> int:
        return len(self.operations)


def adjacency_matrix(g: ProcessGraph) -> np.ndarray:
    """Boolean n x n matrix in id order; ``M[i, j]`` iff edge (op_i, op_j)."""
    index = {op_id: i for i, op_id in enumerate(g.ids)}
    m = np.zeros((len(index), len(index)), dtype=bool)
    for pred, succ in g.edges:
        m[index[pred], index[succ]] = True
    return m


def _find_cycle(nodes: Iterable[str], succs: dict[str, list[str]]) -> list[str]:
    remaining = set(nodes)
    for start in sorted(remaining):
        path: list[str] = []
        on_path: dict[str, int] = {}
        stack = [(start, iter(sorted(s for s in succs[start] if s in remaining)))]
        path.append(start)
        on_path[start] = 0
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                on_path.pop(path.pop())
                continue
            if nxt in on_path:
                return path[on_path[nxt]:]
            on_path[nxt] = len(path)
            path.append(nxt)
            stack.append((nxt, iter(sorted(s for s in succs[nxt] if s in remaining))))
    return sorted(remaining)


def topological_order(g: ProcessGraph) -> list[str]:
    """Kahn's algorithm, always releasing the lexicographically smallest ready id."""
    succs = g.successors()
    indegree = {op_id: 0 for op_id in g.ids}
    for _, succ in g.edges:
        indegree[succ] += 1
    ready = [op_id for op_id, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        node = heapq.heappop(ready)
        order.append(node)
        for succ in succs[node]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                heapq.heappush(ready, succ)
    if len(order) != len(indegree):
        stuck = [n for n, d in indegree.items() if d > 0]
        raise CycleDetected(_find_cycle(stuck, succs))
    return order


def critical_path(g: ProcessGraph) -> tuple[Decimal, list[str]]:
    """Longest node-weighted path.

    Among equally long paths the lexicographically smallest id sequence wins.
    Returns ``(0, [])`` for an empty graph.
    """
    order = topological_order(g)
    ops = g.by_id()
    preds = g.predecessors()
    # best[v] = (-length, path ending at v); tuple order encodes the tie-break.
    best: dict[str, tuple[int, list[str]]] = {}
    for v in order:
        w = ops[v].millis
        candidates = [(-w, [v])]
        for p in preds[v]:
            neg_len, path = best[p]
            candidates.append((neg_len - w, path + [v]))
        best[v] = min(candidates)
    if not best:
        return Decimal(0), []
    neg_len, path = min(best.values())
    return from_millis(-neg_len), path
