"""Reduction rules and the fixpoint driver that shrinks host graphs.

Three rules are applied exhaustively, recomputing the twin decomposition
after every change:

1. some twin class is larger than the target's clique number: the instance
   is a trivial no;
2. all constraint rows of one class lie in the GF(2) span of the rows the
   graph generates after deleting the edges between two classes: delete
   those edges;
3. an isolated class no larger than the target's clique number: delete it.

Each application removes at least one vertex or edge, so the driver
terminates. The result is always a subgraph of the input.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from .constraints import iter_class_constraint_keys
from .gf2 import BACKEND, MaskBasis, MonomialInterner
from .graphs import Graph, PatternGraph, TwinDecomposition, twin_decomposition


@dataclass
class KernelStats:
    """Counters collected while kernelizing one instance."""

    input_n: int = 0
    input_m: int = 0
    kernel_n: int = 0
    kernel_m: int = 0
    twin_classes: int = 0
    passes: int = 0
    rule1: int = 0
    rule2: int = 0
    rule3: int = 0
    removed_vertices: int = 0
    removed_edges: int = 0
    span_tests: int = 0
    rows_considered: int = 0
    max_basis_rank: int = 0
    time_seconds: float = 0.0
    backend: str = BACKEND

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "input": {"n": self.input_n, "m": self.input_m},
            "kernel": {"n": self.kernel_n, "m": self.kernel_m},
            "twin_classes": self.twin_classes,
            "passes": self.passes,
            "rules": {"rule1": self.rule1, "rule2": self.rule2, "rule3": self.rule3},
            "removed": {"vertices": self.removed_vertices, "edges": self.removed_edges},
            "span_tests": self.span_tests,
            "rows_considered": self.rows_considered,
            "max_basis_rank": self.max_basis_rank,
            "time_seconds": self.time_seconds,
            "gf2_backend": self.backend,
        }


@dataclass(frozen=True)
class AppliedRule:
    """One successful rule application; ``graph`` is the state afterwards."""

    rule: str
    detail: str
    graph: Graph


@dataclass
class KernelResult:
    """Outcome of a kernelization run.

    Either ``trivial_no`` is set (rule 1 fired; ``graph`` is None) or
    ``graph`` holds the kernel, a subgraph of the input.
    """

    graph: Graph | None
    trivial_no: bool
    stats: KernelStats
    history: tuple[AppliedRule, ...] = field(default_factory=tuple)


class _SpanEngine:
    """Shared interner plus per-neighborhood row cache for rule 2 tests.

    Rows depend only on (class size capped at omega(H)+1, sorted open
    neighborhood), so repeated tests across the run reuse the cached
    bitmasks. Class sizes above omega(H)+1 behave identically because
    omega(H[Y]) < size is then always true.

    Row families grow like |N(P)|**(Delta+1), so classes are fed into the
    basis cheapest first and the test exits as soon as every target is
    covered: the span only grows with more generators, hence membership
    against a prefix already proves membership against the full set.
    Expensive families are materialized only when the test is going to
    need them, which in practice happens after the graph has shrunk.
    """

    def __init__(self, h: PatternGraph):
        self.h = h
        self.interner = MonomialInterner()
        self._rows: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}
        self._seq_counts: dict[tuple[int, int], int] = {}
        self.span_tests = 0
        self.rows_considered = 0
        self.max_basis_rank = 0

    def _cap(self, class_size: int) -> int:
        return min(class_size, self.h.clique_number + 1)

    def _color_seq_count(self, class_size: int, k: int) -> int:
        """Number of length-k color sequences whose common neighborhood in
        the target has no clique of the class size."""
        key = (self._cap(class_size), k)
        got = self._seq_counts.get(key)
        if got is None:
            h = self.h
            got = sum(
                1 for seq in itertools.product(h.color_ids, repeat=k)
                if h.omega_of(h.common_neighborhood(seq)) < key[0])
            self._seq_counts[key] = got
        return got

    def estimate_rows(self, class_size: int, nbhd_size: int) -> int:
        """Exact row count for a class, without materializing anything."""
        d = self.h.max_degree
        total = 0
        if nbhd_size >= d + 1:
            total += math.comb(nbhd_size, d + 1) * math.comb(self.h.num_colors, d + 1)
        for k in range(1, d + 1):
            count = self._color_seq_count(class_size, k)
            if count:
                total += math.comb(nbhd_size, k) * count
        return total

    def class_rows(self, class_size: int, neighborhood: tuple[int, ...]) -> tuple[int, ...]:
        key = (self._cap(class_size), neighborhood)
        rows = self._rows.get(key)
        if rows is None:
            interner = self.interner
            masks = []
            for _kind, _s, _x, keys in iter_class_constraint_keys(self.h, key[0], neighborhood):
                mask = 0
                for mk in keys:
                    mask |= 1 << interner.id_of(mk)
                masks.append(mask)
            rows = tuple(masks)
            self._rows[key] = rows
        return rows

    def rule2_result(self, g: Graph, pi: TwinDecomposition,
                     p1: frozenset[int], p2: frozenset[int]) -> Graph | None:
        """Apply rule 2 to the ordered class pair (p1, p2), if admissible.

        Removing E(p1, p2) changes only the open neighborhoods of p1 and
        p2; the decomposition of g stays a partial twin decomposition of
        the reduced graph, so all other classes reuse their cached rows.
        """
        removed = g.edges_between(p1, p2)
        if not removed:
            return None
        self.span_tests += 1
        targets = self.class_rows(len(p1), tuple(sorted(g.neighborhood_of_set(p1))))
        if not targets:
            # empty target set is vacuously in any span
            return g.without_edges(removed)

        sources = []
        for cls in pi.classes:
            nbhd = g.neighborhood_of_set(cls)
            if cls == p1:
                nbhd -= p2
            elif cls == p2:
                nbhd -= p1
            nbhd_t = tuple(sorted(nbhd))
            sources.append((self.estimate_rows(len(cls), len(nbhd_t)),
                            min(cls), len(cls), nbhd_t))
        sources.sort(key=lambda s: (s[0], s[1]))

        basis = MaskBasis(self.interner.size)
        pending = list(targets)
        for _est, _anchor, size, nbhd_t in sources:
            rows = self.class_rows(size, nbhd_t)
            if not rows:
                continue
            basis.ensure_columns(self.interner.size)
            grew = False
            for mask in sorted(set(rows)):  # dedupe identical vectors
                grew |= basis.insert(mask)
            self.rows_considered += len(rows)
            self.max_basis_rank = max(self.max_basis_rank, basis.rank)
            if grew:
                pending = [t for t in pending if not basis.contains(t)]
                if not pending:
                    return g.without_edges(removed)
        return None


def rule1_trivial_no(g: Graph, h: PatternGraph, pi: TwinDecomposition) -> bool:
    """True iff some twin class exceeds the target's clique number."""
    return any(len(cls) > h.clique_number for cls in pi.classes)


def rule2_try_remove_edges(g: Graph, h: PatternGraph, pi: TwinDecomposition,
                           p1: frozenset[int], p2: frozenset[int]) -> Graph | None:
    """Standalone rule 2 on one ordered class pair; None when inadmissible."""
    p1, p2 = frozenset(p1), frozenset(p2)
    if p1 == p2:
        raise ValueError("rule 2 needs two distinct twin classes")
    return _SpanEngine(h).rule2_result(g, pi, p1, p2)


def rule3_remove_isolated_clique(g: Graph, h: PatternGraph,
                                 pi: TwinDecomposition) -> Graph | None:
    """Drop the first isolated class of size at most omega(H), if any."""
    for cls in pi.classes:
        if len(cls) <= h.clique_number and not g.neighborhood_of_set(cls):
            return g.without_vertices(cls)
    return None


def _rule2_pairs(g: Graph, pi: TwinDecomposition, engine: _SpanEngine):
    """Ordered class pairs with at least one connecting edge.

    Pairs are tried cheapest first (exact row count of the tested class,
    ties broken lexicographically by smallest members): the rules are
    individually safe in any order, and deferring the combinatorially
    heavy classes lets the cheap removals shrink their neighborhoods
    before their row families are ever materialized.
    """
    classes = sorted(pi.classes, key=min)
    ranked = []
    for p1 in classes:
        nbhd = g.neighborhood_of_set(p1)
        cost = engine.estimate_rows(len(p1), len(nbhd))
        for p2 in classes:
            if p1 is not p2 and nbhd & p2:
                ranked.append((cost, min(p1), min(p2), p1, p2))
    ranked.sort(key=lambda r: r[:3])
    for _cost, _a, _b, p1, p2 in ranked:
        yield p1, p2


def kernelize(g: Graph, h: PatternGraph, *, record_history: bool = False) -> KernelResult:
    """Apply the three reduction rules to a fixpoint.

    After any successful application the pass restarts: rule 1, then rule
    3, then rule 2 over class pairs in deterministic order. The twin
    decomposition is recomputed after every change.
    """
    if h.is_bipartite:
        raise ValueError("target graph must be non-bipartite")
    start = time.perf_counter()
    stats = KernelStats(input_n=g.n, input_m=g.m,
                        twin_classes=len(twin_decomposition(g).classes))
    engine = _SpanEngine(h)
    history: list[AppliedRule] = []
    work = g

    def record(rule: str, detail: str) -> None:
        if record_history:
            history.append(AppliedRule(rule, detail, work))

    trivial = False
    while True:
        stats.passes += 1
        pi = twin_decomposition(work)
        if rule1_trivial_no(work, h, pi):
            stats.rule1 += 1
            trivial = True
            record("rule1", "twin class larger than target clique number")
            break
        reduced = rule3_remove_isolated_clique(work, h, pi)
        if reduced is not None:
            stats.rule3 += 1
            stats.removed_vertices += work.n - reduced.n
            stats.removed_edges += work.m - reduced.m
            work = reduced
            record("rule3", "removed isolated twin class")
            continue
        applied = False
        for p1, p2 in _rule2_pairs(work, pi, engine):
            reduced = engine.rule2_result(work, pi, p1, p2)
            if reduced is not None:
                stats.rule2 += 1
                stats.removed_edges += work.m - reduced.m
                work = reduced
                record("rule2", f"removed edges between classes "
                                f"{sorted(p1)} and {sorted(p2)}")
                applied = True
                break
        if not applied:
            break

    stats.span_tests = engine.span_tests
    stats.rows_considered = engine.rows_considered
    stats.max_basis_rank = engine.max_basis_rank
    if trivial:
        stats.kernel_n = 0
        stats.kernel_m = 0
    else:
        stats.kernel_n = work.n
        stats.kernel_m = work.m
    stats.time_seconds = time.perf_counter() - start
    return KernelResult(
        graph=None if trivial else work,
        trivial_no=trivial,
        stats=stats,
        history=tuple(history),
    )


def kernel_size_bound(k: int, h: PatternGraph) -> int:
    """Explicit vertex bound for the kernel of a host with twin-cover size k.

    ((k * |V(H)|)**Delta(H) + 1) * (Delta(H) + 1)**2 + k, which is
    O(k**Delta(H)) for a fixed target.
    """
    if k < 0:
        raise ValueError("twin-cover size must be non-negative")
    d = h.max_degree
    return ((k * h.num_colors) ** d + 1) * (d + 1) ** 2 + k
