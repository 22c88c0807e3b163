"""Brute-force ground truth: homomorphism search and list-coloring solvers.

These are desk-scale exact solvers guarded by configurable vertex limits;
they exist to validate the kernelization and the instance composition,
never to compete with real coloring solvers. Guards can be overridden via
the HCKERNEL_SOLVE_GUARD environment variable (an integer) or by passing
``guard=None`` for no limit.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Mapping

from .graphs import CapacityError, Graph, PatternGraph

_UNSET = object()

H_COLORING_GUARD = 20
LIST_COLORING_GUARD = 24


def _resolve_guard(guard, default: int) -> int | None:
    if guard is not _UNSET:
        return guard
    env = os.environ.get("HCKERNEL_SOLVE_GUARD")
    if env:
        return int(env)
    return default


@dataclass(frozen=True)
class Homomorphism:
    """Total map from host vertices to target colors, edge-preserving."""

    mapping: dict[int, int]

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]


def find_h_coloring(g: Graph, h: PatternGraph, guard=_UNSET) -> Homomorphism | None:
    """Search for an edge-preserving map from g into the target.

    Backtracking over vertices in decreasing-degree order, colors tried in
    id order, so the returned witness is deterministic. Returns None when
    no homomorphism exists.
    """
    limit = _resolve_guard(guard, H_COLORING_GUARD)
    if limit is not None and g.n > limit:
        raise CapacityError(f"h-coloring guard exceeded: {g.n} > {limit} vertices")
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    earlier = [sorted(u for u in g.adj[v] if pos[u] < pos[v]) for v in order]
    colors = h.color_ids
    hadj = h.graph.adj
    assign: dict[int, int] = {}

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        allowed: frozenset[int] | None = None
        for u in earlier[i]:
            nb = hadj[assign[u]]
            allowed = nb if allowed is None else allowed & nb
            if not allowed:
                return False
        for c in colors if allowed is None else sorted(allowed):
            assign[v] = c
            if extend(i + 1):
                return True
        assign.pop(v, None)
        return False

    if extend(0):
        return Homomorphism(dict(assign))
    return None


def verify_h_coloring(g: Graph, h: PatternGraph, f: Homomorphism | Mapping[int, int]) -> bool:
    """Edge-by-edge check that f maps g into the target."""
    mapping = f.mapping if isinstance(f, Homomorphism) else f
    missing = [v for v in g.vertices if v not in mapping]
    if missing:
        raise ValueError(f"map is not total; unassigned vertices: {missing[:5]}")
    hadj = h.graph.adj
    for u, v in g.edges():
        if mapping[v] not in hadj[mapping[u]]:
            return False
    return True


def _solve_lists(g: Graph, domains: dict[int, set[int]]) -> dict[int, int] | None:
    """Complete backtracking search with forward checking.

    Singleton lists are propagated before any branching; variables are
    chosen by minimum remaining values (degree tie-break). Whenever the
    residual graph on unassigned vertices falls apart, the connected
    components are solved independently: a component with no solution
    refutes the current branch outright, and alternatives in one component
    are never re-enumerated because a sibling failed. That keeps search
    local on instances stitched together from many small widgets.
    """
    if any(not d for d in domains.values()):
        return None
    adj = g.adj
    assigned: dict[int, int] = {}
    trail: list[tuple[str, int, int]] = []

    def propagate(seeds: list[tuple[int, int]]) -> bool:
        queue = list(seeds)
        while queue:
            v, c = queue.pop()
            if v in assigned:
                if assigned[v] != c:
                    return False
                continue
            if c not in domains[v]:
                return False
            assigned[v] = c
            trail.append(("as", v, 0))
            for u in adj[v]:
                if u in assigned:
                    if assigned[u] == c:
                        return False
                    continue
                du = domains[u]
                if c in du:
                    du.remove(c)
                    trail.append(("rm", u, c))
                    if not du:
                        return False
                    if len(du) == 1:
                        queue.append((u, next(iter(du))))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            op, v, c = trail.pop()
            if op == "as":
                del assigned[v]
            else:
                domains[v].add(c)

    def split(vs: set[int]) -> list[set[int]]:
        left = set(vs)
        out = []
        while left:
            seed = left.pop()
            comp = {seed}
            stack = [seed]
            while stack:
                w = stack.pop()
                for u in adj[w]:
                    if u in left:
                        left.remove(u)
                        comp.add(u)
                        stack.append(u)
            out.append(comp)
        out.sort(key=min)
        return out

    def solve_component(comp: set[int]) -> bool:
        live = {v for v in comp if v not in assigned}
        if not live:
            return True
        v = min(live, key=lambda u: (len(domains[u]), -len(adj[u]), u))
        mark = len(trail)
        for c in sorted(domains[v]):
            if propagate([(v, c)]):
                rest = {u for u in live if u not in assigned}
                if all(solve_component(sub) for sub in split(rest)):
                    return True
            undo(mark)
        return False

    limit = sys.getrecursionlimit()
    want = 4 * g.n + 1000
    if want > limit:
        sys.setrecursionlimit(want)
    try:
        forced = [(v, next(iter(domains[v])))
                  for v in sorted(g.vertices) if len(domains[v]) == 1]
        if not propagate(forced):
            return None
        rest = {v for v in g.vertices if v not in assigned}
        if all(solve_component(comp) for comp in split(rest)):
            return dict(assigned)
        return None
    finally:
        sys.setrecursionlimit(limit)


def find_list_3_coloring(inst, guard=_UNSET) -> dict[int, int] | None:
    """Proper coloring of a list instance with lists inside {1, 2, 3}.

    Returns a vertex -> color dict, or None (immediately when some list is
    empty). ``inst`` is a composer.ListColoringInstance.
    """
    limit = _resolve_guard(guard, LIST_COLORING_GUARD)
    if limit is not None and inst.graph.n > limit:
        raise CapacityError(
            f"list-coloring guard exceeded: {inst.graph.n} > {limit} vertices")
    domains = {v: set(inst.lists[v]) for v in inst.graph.vertices}
    return _solve_lists(inst.graph, domains)


def find_3_coloring(g: Graph, guard=_UNSET) -> dict[int, int] | None:
    """Plain proper 3-coloring (all lists {1, 2, 3})."""
    limit = _resolve_guard(guard, LIST_COLORING_GUARD)
    if limit is not None and g.n > limit:
        raise CapacityError(f"3-coloring guard exceeded: {g.n} > {limit} vertices")
    domains = {v: {1, 2, 3} for v in g.vertices}
    return _solve_lists(g, domains)


def find_2_3_coloring(inst, guard=_UNSET) -> dict[int, int] | None:
    """Proper 3-coloring of a triangle-split instance with the independent
    side restricted to colors {1, 2}.

    Equivalent to list coloring with lists {1,2} on the independent side
    and {1,2,3} on the triangle side. ``inst`` is a
    composer.TriangleSplitInstance.
    """
    g = inst.to_graph()
    limit = _resolve_guard(guard, LIST_COLORING_GUARD)
    if limit is not None and g.n > limit:
        raise CapacityError(f"2-3-coloring guard exceeded: {g.n} > {limit} vertices")
    domains = {v: ({1, 2} if v < inst.u_size else {1, 2, 3}) for v in g.vertices}
    return _solve_lists(g, domains)
