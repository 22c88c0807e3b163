"""File formats: DIMACS-style graphs, triangle-split instances, JSON reports.

Graph grammar (one directive per line, blank lines ignored):

    c <free text>          comment
    p edge <n> <m>         header, exactly once, before any edge
    e <u> <v>              edge with 1-based endpoints in 1..n

Duplicate edge lines collapse; self-loops are rejected. The declared edge
count is advisory (duplicates may make it disagree) and is not enforced.
Triangle-split instances use the same shape with a ``p tsd <m> <n>``
header and cross edges ``e <u> <v>`` where u indexes the independent side
(1..m) and v the triangle side (1..3n).
"""

from __future__ import annotations

import json
from typing import IO

from .composer import TriangleSplitInstance
from .graphs import Graph, PatternGraph, pattern_analyze


class ParseError(ValueError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _directive_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield line_no, line.split()


def parse_graph(text: str) -> Graph:
    """Parse the DIMACS-style edge format into a graph.

    Vertex ids become dense 0-based integers; the original 1-based names
    are kept as labels.
    """
    n = None
    edges: set[tuple[int, int]] = set()
    for line_no, parts in _directive_lines(text):
        if parts[0] == "p":
            if n is not None:
                raise ParseError(line_no, "duplicate problem header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(line_no, f"expected 'p edge <n> <m>', got {' '.join(parts)!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, "non-integer sizes in header") from None
            if n < 0 or declared_m < 0:
                raise ParseError(line_no, "negative sizes in header")
        elif parts[0] == "e":
            if n is None:
                raise ParseError(line_no, "edge before problem header")
            if len(parts) != 3:
                raise ParseError(line_no, f"expected 'e <u> <v>', got {' '.join(parts)!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, "non-integer endpoints") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(line_no, f"endpoint out of range 1..{n}")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(line_no, f"unknown directive {parts[0]!r}")
    if n is None:
        raise ParseError(1, "missing 'p edge' header")
    labels = {v: str(v + 1) for v in range(n)}
    return Graph.from_edges(n, sorted(edges), labels)


def emit_graph(g: Graph, include_labels: bool = True) -> str:
    """Canonical DIMACS-style text: sorted edges, vertices renumbered 1..n.

    When the graph carries non-trivial labels (e.g. a kernel remembering
    its original vertex names), they are emitted as comments.
    """
    index = {v: i + 1 for i, v in enumerate(g.vertices)}
    lines = [f"p edge {g.n} {g.m}"]
    if include_labels and g.labels is not None:
        for v in g.vertices:
            if g.label_of(v) != str(index[v]):
                lines.append(f"c label {index[v]} {g.label_of(v)}")
    for u, v in sorted((index[u], index[v]) for u, v in g.edges()):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_tsd(text: str) -> TriangleSplitInstance:
    """Parse a triangle-split instance file."""
    dims = None
    edges: set[tuple[int, int]] = set()
    for line_no, parts in _directive_lines(text):
        if parts[0] == "p":
            if dims is not None:
                raise ParseError(line_no, "duplicate problem header")
            if len(parts) != 4 or parts[1] != "tsd":
                raise ParseError(line_no, f"expected 'p tsd <m> <n>', got {' '.join(parts)!r}")
            try:
                dims = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(line_no, "non-integer sizes in header") from None
        elif parts[0] == "e":
            if dims is None:
                raise ParseError(line_no, "edge before problem header")
            if len(parts) != 3:
                raise ParseError(line_no, f"expected 'e <u> <v>', got {' '.join(parts)!r}")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= dims[0] and 1 <= v <= 3 * dims[1]):
                raise ParseError(line_no, "cross-edge endpoint out of range")
            edges.add((u - 1, v - 1))
        else:
            raise ParseError(line_no, f"unknown directive {parts[0]!r}")
    if dims is None:
        raise ParseError(1, "missing 'p tsd' header")
    return TriangleSplitInstance(dims[0], dims[1], frozenset(edges))


def emit_tsd(inst: TriangleSplitInstance) -> str:
    lines = [f"p tsd {inst.u_size} {inst.triangle_count}"]
    for u, v in sorted(inst.cross_edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def _clique(q: int) -> Graph:
    return Graph.from_edges(q, [(i, j) for i in range(q) for j in range(i + 1, q)])


def _cycle(q: int) -> Graph:
    return Graph.from_edges(q, [(i, (i + 1) % q) for i in range(q)])


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]          # outer cycle
    edges += [(i, i + 5) for i in range(5)]               # spokes
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]  # inner pentagram
    return Graph.from_edges(10, edges)


NAMED_PATTERNS = {
    **{f"K{q}": (lambda q=q: _clique(q)) for q in range(3, 10)},
    "C5": lambda: _cycle(5),
    "C7": lambda: _cycle(7),
    "petersen": _petersen,
}


def resolve_pattern(name_or_path: str) -> PatternGraph:
    """Analyze a named target (K3..K9, C5, C7, petersen) or a graph file.

    K_q targets make a run equivalent to ordinary q-coloring. Bipartite
    targets are rejected by the analysis.
    """
    key = name_or_path.strip()
    builder = NAMED_PATTERNS.get(key) or NAMED_PATTERNS.get(key.upper()) \
        or NAMED_PATTERNS.get(key.lower())
    if builder is not None:
        return pattern_analyze(builder())
    with open(name_or_path, "r", encoding="utf-8") as fh:
        return pattern_analyze(parse_graph(fh.read()))


def write_json(payload: dict, stream: IO[str]) -> None:
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")
