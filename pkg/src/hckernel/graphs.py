"""Graph primitives: adjacency-set graphs, target-graph analysis, twin classes.

Vertices are integers (dense 0-based ids at parse time). Operations that
remove vertices or edges return new graphs and keep the surviving ids
unchanged, so every reduced graph is literally a subgraph of its input.
All values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class CapacityError(RuntimeError):
    """An exact routine was asked to exceed its configured size guard."""


class PatternError(ValueError):
    """The target graph is unusable for homomorphism kernelization."""


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``vertices`` is a strictly increasing tuple of ids; ``adj`` maps every
    vertex to the frozenset of its neighbours. Self-loops are rejected.
    ``labels`` optionally carries original external names for output
    fidelity; it is ignored by equality-sensitive algorithms.
    """

    vertices: tuple[int, ...]
    adj: dict[int, frozenset[int]]
    labels: dict[int, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        vs = self.vertices
        if list(vs) != sorted(set(vs)):
            raise ValueError("vertex ids must be unique and sorted")
        if set(self.adj) != set(vs):
            raise ValueError("adjacency keys must match the vertex set")
        for v, nb in self.adj.items():
            if v in nb:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nb:
                if u not in self.adj or v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency at {{{u},{v}}}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: dict[int, str] | None = None) -> "Graph":
        """Graph on vertices 0..n-1 with the given (deduplicated) edges."""
        vs = tuple(range(n))
        nb: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nb[u].add(v)
            nb[v].add(u)
        return Graph(vs, {v: frozenset(nb[v]) for v in vs}, labels)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        for u in self.vertices:
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def neighborhood_of_set(self, s: Iterable[int]) -> frozenset[int]:
        """Open neighborhood of a vertex set (neighbours outside the set)."""
        s = frozenset(s)
        out: set[int] = set()
        for v in s:
            out |= self.adj[v]
        return frozenset(out - s)

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> frozenset[tuple[int, int]]:
        """Edges with one endpoint in a and the other in b, as sorted pairs."""
        a, b = frozenset(a), frozenset(b)
        out = set()
        for u in a:
            for v in self.adj[u] & b:
                out.add((min(u, v), max(u, v)))
        return frozenset(out)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop: dict[int, set[int]] = {}
        for u, v in edges:
            drop.setdefault(u, set()).add(v)
            drop.setdefault(v, set()).add(u)
        adj = {v: (nb - drop[v] if v in drop else nb) for v, nb in self.adj.items()}
        return Graph(self.vertices, adj, self.labels)

    def without_vertices(self, remove: Iterable[int]) -> "Graph":
        remove = frozenset(remove)
        vs = tuple(v for v in self.vertices if v not in remove)
        adj = {v: self.adj[v] - remove for v in vs}
        labels = None
        if self.labels is not None:
            labels = {v: self.labels[v] for v in vs if v in self.labels}
        return Graph(vs, adj, labels)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        return self.without_vertices(set(self.vertices) - keep)

    def label_of(self, v: int) -> str:
        if self.labels is not None and v in self.labels:
            return self.labels[v]
        return str(v)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return (set(self.vertices) <= set(other.vertices)
                and all(self.adj[v] <= other.adj[v] for v in self.vertices))


@dataclass(frozen=True)
class TwinDecomposition:
    """Partition of V(G) into maximal classes of mutual true twins.

    True twins share their closed neighborhood, hence are adjacent, so each
    class induces a clique. Classes are ordered by smallest member.
    """

    classes: tuple[frozenset[int], ...]

    def class_containing(self, v: int) -> frozenset[int]:
        for cls in self.classes:
            if v in cls:
                return cls
        raise KeyError(v)

    def class_index(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, cls in enumerate(self.classes):
            for v in cls:
                out[v] = i
        return out


@dataclass(frozen=True)
class TwinCover:
    """Vertex set meeting every edge whose endpoints are not true twins."""

    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(eq=False)
class PatternGraph:
    """A fixed target graph with its cached structural parameters."""

    graph: Graph
    max_degree: int
    clique_number: int
    is_bipartite: bool
    _omega_memo: dict[frozenset[int], int] = field(default_factory=dict, repr=False)

    @property
    def color_ids(self) -> tuple[int, ...]:
        return self.graph.vertices

    @property
    def num_colors(self) -> int:
        return self.graph.n

    def common_neighborhood(self, colors: Iterable[int]) -> frozenset[int]:
        """Colors adjacent in the target to every color in the sequence."""
        out: frozenset[int] | None = None
        for c in colors:
            out = self.graph.adj[c] if out is None else out & self.graph.adj[c]
        if out is None:
            raise ValueError("common neighborhood of an empty sequence")
        return out

    def omega_of(self, colors: frozenset[int]) -> int:
        """Clique number of the subgraph induced on a color subset (memoized)."""
        colors = frozenset(colors)
        got = self._omega_memo.get(colors)
        if got is None:
            got = _max_clique_size(self.graph, colors)
            self._omega_memo[colors] = got
        return got


def twin_decomposition(g: Graph) -> TwinDecomposition:
    """Group vertices of g by equal closed neighborhoods.

    Sorting the closed neighborhood of every vertex gives the unique
    maximal decomposition in O((n+m) log n) time. An empty graph yields an
    empty class sequence.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in g.vertices:
        key = tuple(sorted(g.adj[v] | {v}))
        groups.setdefault(key, []).append(v)
    classes = sorted((frozenset(vs) for vs in groups.values()), key=min)
    return TwinDecomposition(tuple(classes))


def is_twin_cover(g: Graph, s: Iterable[int]) -> bool:
    """True iff every edge of g has an endpoint in s or joins true twins."""
    s = frozenset(s)
    unknown = s - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertex ids in cover candidate: {sorted(unknown)}")
    cls = twin_decomposition(g).class_index()
    for u, v in g.edges():
        if u not in s and v not in s and cls[u] != cls[v]:
            return False
    return True


def min_twin_cover(g: Graph, guard: int | None = 30) -> TwinCover:
    """Exact minimum twin-cover by branch and bound.

    Exponential in the worst case, so graphs above the guard are refused.
    This is a measurement tool for statistics and tests; the kernelization
    itself never calls it.
    """
    if guard is not None and g.n > guard:
        raise CapacityError(f"min_twin_cover guard exceeded: {g.n} > {guard} vertices")
    cls = twin_decomposition(g).class_index()
    edges = [e for e in g.edges() if cls[e[0]] != cls[e[1]]]
    if not edges:
        return TwinCover(frozenset())

    # Greedy upper bound: repeatedly pick the endpoint covering the most
    # remaining non-twin edges. Seeds the branch-and-bound cutoff.
    greedy: set[int] = set()
    left = list(edges)
    while left:
        count: dict[int, int] = {}
        for u, v in left:
            count[u] = count.get(u, 0) + 1
            count[v] = count.get(v, 0) + 1
        pick = max(count, key=lambda v: (count[v], -v))
        greedy.add(pick)
        left = [e for e in left if pick not in e]

    best: list = [len(greedy), frozenset(greedy)]

    def branch(start: int, chosen: set[int]) -> None:
        if len(chosen) >= best[0]:
            return
        idx = start
        while idx < len(edges):
            u, v = edges[idx]
            if u not in chosen and v not in chosen:
                break
            idx += 1
        else:
            best[0], best[1] = len(chosen), frozenset(chosen)
            return
        u, v = edges[idx]
        chosen.add(u)
        branch(idx + 1, chosen)
        chosen.discard(u)
        chosen.add(v)
        branch(idx + 1, chosen)
        chosen.discard(v)

    branch(0, set())
    return TwinCover(best[1])


def _bipartition(g: Graph) -> bool:
    """BFS 2-coloring; True iff g has no odd cycle."""
    color: dict[int, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in g.adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def _max_clique_size(g: Graph, within: frozenset[int] | None = None) -> int:
    """Exhaustive maximum clique on a constant-size graph."""
    verts = sorted(within) if within is not None else list(g.vertices)
    best = 0

    def extend(size: int, candidates: list[int]) -> None:
        nonlocal best
        if size > best:
            best = size
        for i, v in enumerate(candidates):
            if size + len(candidates) - i <= best:
                return
            extend(size + 1, [u for u in candidates[i + 1:] if u in g.adj[v]])

    extend(0, verts)
    return best


def pattern_analyze(h: Graph) -> PatternGraph:
    """Validate and analyze a target graph.

    Fills the maximum degree, the clique number (by exhaustive search; the
    target is constant-size) and the bipartiteness flag. Bipartite targets
    are rejected: for them the homomorphism question degenerates to a
    bipartiteness test and is polynomial-time solvable, so there is nothing
    to kernelize. Self-loops are already impossible in ``Graph`` values.
    """
    if h.n == 0:
        raise PatternError("empty target graph")
    if _bipartition(h):
        raise PatternError(
            "bipartite target graph rejected: the coloring question is "
            "polynomial-time solvable, nothing to kernelize")
    return PatternGraph(
        graph=h,
        max_degree=max(h.degree(v) for v in h.vertices),
        clique_number=_max_clique_size(h),
        is_bipartite=False,
    )
