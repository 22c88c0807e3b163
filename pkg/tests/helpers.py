"""Independent brute-force oracles and graph generators shared by the tests.

Everything here recomputes properties straight from definitions (pairwise
neighborhood comparison, subset enumeration, exhaustive coloring search)
so that library results are checked against a second, dumber route.
"""

from __future__ import annotations

import itertools
import random

from hckernel.graphs import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def all_labeled_graphs(n: int):
    """Every labeled graph on n vertices (2^C(n,2) of them; keep n tiny)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])


def brute_twin_classes(g: Graph) -> set[frozenset[int]]:
    """Group vertices by closed neighborhoods, comparing all pairs directly."""
    closed = {v: g.adj[v] | {v} for v in g.vertices}
    classes: list[set[int]] = []
    for v in g.vertices:
        for cls in classes:
            u = next(iter(cls))
            if closed[u] == closed[v]:
                cls.add(v)
                break
        else:
            classes.append({v})
    return {frozenset(cls) for cls in classes}


def brute_is_twin_cover(g: Graph, s: set[int]) -> bool:
    closed = {v: g.adj[v] | {v} for v in g.vertices}
    return all(u in s or v in s or closed[u] == closed[v] for u, v in g.edges())


def brute_min_twin_cover_size(g: Graph) -> int:
    verts = list(g.vertices)
    for size in range(len(verts) + 1):
        for cand in itertools.combinations(verts, size):
            if brute_is_twin_cover(g, set(cand)):
                return size
    raise AssertionError("vertex set itself always covers")


def brute_minimal_twin_covers(g: Graph) -> list[frozenset[int]]:
    """All inclusion-minimal twin covers, by filtering every subset.

    A cover is inclusion-minimal iff removing any single vertex breaks it.
    """
    verts = list(g.vertices)
    covers = [frozenset(cand)
              for size in range(len(verts) + 1)
              for cand in itertools.combinations(verts, size)
              if brute_is_twin_cover(g, set(cand))]
    return [c for c in covers
            if all(not brute_is_twin_cover(g, set(c - {v})) for v in c)]


def brute_h_colorable(g: Graph, h: Graph) -> bool:
    """Exhaustive homomorphism existence test (full product for tiny n,
    else simple backtracking without any ordering heuristics)."""
    verts = list(g.vertices)
    colors = list(h.vertices)

    def extend(idx: int, assign: dict[int, int]) -> bool:
        if idx == len(verts):
            return True
        v = verts[idx]
        for c in colors:
            ok = True
            for u in g.adj[v]:
                if u in assign and c not in h.adj[assign[u]]:
                    ok = False
                    break
            if ok:
                assign[v] = c
                if extend(idx + 1, assign):
                    return True
                del assign[v]
        return False

    return extend(0, {})


def enumerate_h_colorings(g: Graph, h: Graph):
    """Yield every proper coloring map (backtracking, all solutions)."""
    verts = list(g.vertices)
    colors = list(h.vertices)

    def extend(idx: int, assign: dict[int, int]):
        if idx == len(verts):
            yield dict(assign)
            return
        v = verts[idx]
        for c in colors:
            ok = True
            for u in g.adj[v]:
                if u in assign and c not in h.adj[assign[u]]:
                    ok = False
                    break
            if ok:
                assign[v] = c
                yield from extend(idx + 1, assign)
                del assign[v]

    yield from extend(0, {})


def petersen_edges() -> list[tuple[int, int]]:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return edges
