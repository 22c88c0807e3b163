"""Pure-Python GF(2) elimination backend.

Rows are arbitrary-precision int bitmasks; bit i is the coefficient of the
monomial interned at index i. Kept API-compatible with the compiled
backend in ``_gf2core``.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


class XorBasis:
    """Row basis over GF(2) with pivot-indexed reduction.

    Stored rows are in row-echelon form: each has a distinct leading
    (highest) bit, used as the pivot during reduction.
    """

    __slots__ = ("num_columns", "_pivots")

    def __init__(self, num_columns: int = 0):
        self.num_columns = num_columns
        self._pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, row: int) -> int:
        pivots = self._pivots
        while row:
            other = pivots.get(row.bit_length() - 1)
            if other is None:
                return row
            row ^= other
        return 0

    def insert(self, row: int) -> bool:
        """Reduce row against the basis and keep it when independent.

        Returns True iff the row was inserted (it was not already in the
        span). Inserting the zero row returns False.
        """
        row = self._reduce(row)
        if row == 0:
            return False
        self._pivots[row.bit_length() - 1] = row
        return True

    def contains(self, row: int) -> bool:
        """True iff row is a GF(2) combination of the stored rows."""
        return self._reduce(row) == 0

    def rows(self) -> list[int]:
        """Stored rows, highest pivot first."""
        return [self._pivots[p] for p in sorted(self._pivots, reverse=True)]
