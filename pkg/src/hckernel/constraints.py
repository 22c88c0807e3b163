"""Coloring polynomial and the per-twin-class constraint families.

For a twin class P of the host graph, the constraints describe necessary
conditions on the coloring of the open neighborhood N(P) so that P itself
(a clique) can still be colored:

* kind "P" rows say "any Delta(H)+1 neighbours cannot use Delta(H)+1
  distinct colors" via the distinct-color selector polynomial;
* kind "Q" rows forbid a neighborhood palette whose common neighborhood in
  the target has no clique as large as |P|.

Both families only mention indicator variables of vertices in N(P), and
every row has degree at most Delta(H).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .gf2 import GF2Constraint, Monomial, Var
from .graphs import Graph, PatternGraph, TwinDecomposition


@dataclass(frozen=True)
class PartialChoiceAssignment:
    """Partial map row -> chosen color; unmapped rows have all-zero indicators.

    A dict can hold at most one color per row, so the at-most-one-choice
    invariant is structural.
    """

    chosen: Mapping[int, int]

    @staticmethod
    def of(chosen: Mapping[int, int]) -> "PartialChoiceAssignment":
        return PartialChoiceAssignment(dict(chosen))


class ClassConstraint(NamedTuple):
    """One generated row, tagged with its generating subset data."""

    kind: str                 # "P" or "Q"
    s: tuple[int, ...]        # neighborhood subset, sorted
    x: tuple[int, ...]        # color subset (kind P) or color sequence (kind Q)
    poly: GF2Constraint


@dataclass(frozen=True)
class ConstraintSet:
    """All rows generated for one twin class."""

    owner: frozenset[int]
    constraints: tuple[ClassConstraint, ...]

    def __len__(self) -> int:
        return len(self.constraints)

    def polynomials(self) -> list[GF2Constraint]:
        return [c.poly for c in self.constraints]


def _selector_monomial_keys(rows: tuple[int, ...], cols: tuple[int, ...]) -> Iterator[tuple]:
    """Monomial keys of the distinct-color selector polynomial.

    One monomial per ordered selection of len(rows)-1 distinct rows; the
    k-th selected row is paired with the k-th column. Keys are sorted
    (vertex, color) tuples.
    """
    q = len(rows)
    for sel in itertools.permutations(range(q), q - 1):
        yield tuple(sorted((rows[i], cols[k]) for k, i in enumerate(sel)))


def build_coloring_polynomial(q: int) -> GF2Constraint:
    """Degree q-1 polynomial over variables y[i,k], i,k in 1..q.

    Under a partial choice assignment it evaluates to 1 mod 2 exactly when
    no color is chosen by two distinct rows and every column 1..q-1 is
    chosen by some row; q! monomials in total (one monomial, the constant,
    for q = 1).
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    ids = tuple(range(1, q + 1))
    monos = [Monomial.of(keys) for keys in _selector_monomial_keys(ids, ids)]
    return GF2Constraint.of(monos, degree_bound=max(q - 1, 0))


def evaluate(constraint: GF2Constraint, assignment: PartialChoiceAssignment | Mapping[int, int]) -> int:
    """Constraint value mod 2 under a partial choice assignment.

    The indicator Var(v, c) is 1 exactly when the assignment maps v to c.
    """
    chosen = assignment.chosen if isinstance(assignment, PartialChoiceAssignment) else assignment
    total = 0
    for mono in constraint.monomials:
        if all(chosen.get(v.vertex) == v.color for v in mono.vars):
            total ^= 1
    return total


def iter_class_constraint_keys(
    h: PatternGraph, class_size: int, neighborhood: tuple[int, ...]
) -> Iterator[tuple[str, tuple[int, ...], tuple[int, ...], tuple[tuple, ...]]]:
    """Yield (kind, s, x, monomial_keys) rows for one twin class.

    ``neighborhood`` must be sorted. This generator is the single source of
    truth for row generation; the object layer and the kernelizer fast path
    both consume it.
    """
    d = h.max_degree
    colors = h.color_ids
    # kind P: no Delta+1 neighbours may be rainbow-colored. No subsets exist
    # when the neighborhood is not larger than Delta(H).
    if len(neighborhood) >= d + 1:
        for s in itertools.combinations(neighborhood, d + 1):
            for x in itertools.combinations(colors, d + 1):
                keys = tuple(sorted(set(_selector_monomial_keys(s, x))))
                yield ("P", s, x, keys)
    # kind Q: forbid neighborhood palettes that leave no room for the class
    # clique in the target.
    for k in range(1, d + 1):
        for s in itertools.combinations(neighborhood, k):
            for x in itertools.product(colors, repeat=k):
                common = h.common_neighborhood(x)
                if h.omega_of(common) < class_size:
                    yield ("Q", s, x, (tuple(sorted(zip(s, x))),))


def build_constraints_for_class(g: Graph, h: PatternGraph, p: Iterable[int]) -> ConstraintSet:
    """Rows for one class of a (partial) twin decomposition of g."""
    p = frozenset(p)
    if not p:
        raise ValueError("twin class must be non-empty")
    nbhd = tuple(sorted(g.neighborhood_of_set(p)))
    rows = []
    for kind, s, x, keys in iter_class_constraint_keys(h, len(p), nbhd):
        poly = GF2Constraint.of(
            (Monomial.of(key) for key in keys), degree_bound=h.max_degree)
        rows.append(ClassConstraint(kind, s, x, poly))
    return ConstraintSet(p, tuple(rows))


def build_all_constraints(g: Graph, h: PatternGraph, pi: TwinDecomposition) -> tuple[ConstraintSet, ...]:
    """Union of the per-class rows over all classes, in class order."""
    return tuple(build_constraints_for_class(g, h, p) for p in pi.classes)


def constraint_count_bound(n: int, h: PatternGraph) -> int:
    """Coarse cap on the number of generated rows for an n-vertex host."""
    d = h.max_degree
    return 2 * n * n ** (d + 1) * h.num_colors ** (d + 1)


def distinct_monomials(sets: Iterable[ConstraintSet]) -> set[Monomial]:
    """All monomials appearing across the given constraint sets."""
    out: set[Monomial] = set()
    for cs in sets:
        for row in cs.constraints:
            out |= row.poly.monomials
    return out
