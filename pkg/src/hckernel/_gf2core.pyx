# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled GF(2) elimination backend.

Same contract as ``hckernel._gf2py``: rows enter and leave as Python int
bitmasks, but are stored and reduced as fixed-width uint64 arrays, which
avoids big-int allocation in the elimination inner loop.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

BACKEND_NAME = "compiled"

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline int _top_bit(unsigned long long *row, int width) nogil:
    """Index of the highest set bit, or -1 for the zero row."""
    cdef int w = width - 1
    while w >= 0:
        if row[w] != 0:
            return (w << 6) + 63 - __builtin_clzll(row[w])
        w -= 1
    return -1


cdef class XorBasis:
    """Row basis over GF(2) with pivot-indexed reduction.

    The column universe (number of interned monomials) is fixed at
    construction; rows with higher bits are rejected.
    """

    cdef unsigned long long *_data     # rank rows, each `width` words
    cdef unsigned long long *_tmp      # scratch row for reductions
    cdef int *_pivot_row               # per column: owning row index or -1
    cdef int _width
    cdef int _cap_rows
    cdef int _n_rows
    cdef readonly int num_columns

    def __cinit__(self, int num_columns=0):
        if num_columns < 0:
            raise ValueError("num_columns must be non-negative")
        self.num_columns = num_columns
        self._width = (num_columns + 63) >> 6
        if self._width == 0:
            self._width = 1
        self._cap_rows = 16
        self._n_rows = 0
        self._data = <unsigned long long *> malloc(
            self._cap_rows * self._width * sizeof(unsigned long long))
        self._tmp = <unsigned long long *> malloc(
            self._width * sizeof(unsigned long long))
        cdef int cols = num_columns if num_columns > 0 else 1
        self._pivot_row = <int *> malloc(cols * sizeof(int))
        if self._data == NULL or self._tmp == NULL or self._pivot_row == NULL:
            raise MemoryError()
        memset(self._pivot_row, 0xFF, cols * sizeof(int))  # all -1

    def __dealloc__(self):
        if self._data != NULL:
            free(self._data)
        if self._tmp != NULL:
            free(self._tmp)
        if self._pivot_row != NULL:
            free(self._pivot_row)

    @property
    def rank(self):
        return self._n_rows

    cdef int _load(self, object row) except -1:
        """Unpack a Python int bitmask into the scratch buffer."""
        cdef bytes raw
        if row < 0:
            raise ValueError("row bitmask must be non-negative")
        try:
            raw = row.to_bytes(self._width << 3, "little")
        except OverflowError:
            raise ValueError("row has bits beyond the basis column universe")
        memcpy(self._tmp, <const unsigned char *> raw, self._width << 3)
        return 0

    cdef int _reduce_tmp(self) nogil:
        """Reduce the scratch row; returns its top bit or -1 when zeroed."""
        cdef int bit, ridx, w
        cdef unsigned long long *base
        bit = _top_bit(self._tmp, self._width)
        while bit >= 0:
            ridx = self._pivot_row[bit]
            if ridx < 0:
                return bit
            base = self._data + ridx * self._width
            for w in range(self._width):
                self._tmp[w] ^= base[w]
            bit = _top_bit(self._tmp, self._width)
        return -1

    def insert(self, row) -> bool:
        """Reduce row against the basis and keep it when independent."""
        self._load(row)
        cdef int bit = self._reduce_tmp()
        if bit < 0:
            return False
        if self._n_rows == self._cap_rows:
            self._cap_rows *= 2
            self._data = <unsigned long long *> realloc(
                self._data,
                self._cap_rows * self._width * sizeof(unsigned long long))
            if self._data == NULL:
                raise MemoryError()
        memcpy(self._data + self._n_rows * self._width, self._tmp,
               self._width << 3)
        self._pivot_row[bit] = self._n_rows
        self._n_rows += 1
        return True

    def contains(self, row) -> bool:
        """True iff row is a GF(2) combination of the stored rows."""
        self._load(row)
        return self._reduce_tmp() < 0

    def rows(self):
        """Stored rows as Python ints, highest pivot first."""
        cdef int i
        out = []
        for i in range(self._n_rows):
            raw = <bytes> (<const unsigned char *> (self._data + i * self._width))[:self._width << 3]
            out.append(int.from_bytes(raw, "little"))
        out.sort(key=lambda r: r.bit_length(), reverse=True)
        return out
