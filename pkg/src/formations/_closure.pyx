# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled subgroup-closure kernel.

closure_packed(table, gens) returns the subgroup generated by `gens` inside
the group whose Cayley table is `table`, packed as a little-endian bitmask.
This is the inner loop of subgroup-lattice enumeration, so it is kept as a
plain BFS over table lookups with no Python objects in the loop.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

import numpy as np


def closure_packed(table, gens):
    """Bitmask (little-endian bytes) of the subgroup generated by `gens`.

    `table` must be a C-contiguous int32 (n, n) Cayley table with identity 0.
    """
    cdef const int[:, ::1] t = table
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t ngens = len(gens)
    cdef Py_ssize_t head, count, i, j
    cdef int x, y

    gen_arr = np.asarray(gens, dtype=np.int32)
    cdef const int[::1] g = gen_arr

    flag_arr = np.zeros(n, dtype=np.uint8)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] flags = flag_arr
    cdef int[::1] queue = queue_arr

    flags[0] = 1
    queue[0] = 0
    count = 1
    head = 0
    while head < count:
        x = queue[head]
        head += 1
        for j in range(ngens):
            y = t[x, g[j]]
            if not flags[y]:
                flags[y] = 1
                queue[count] = y
                count += 1

    cdef Py_ssize_t nbytes = (n + 7) // 8
    packed_arr = np.zeros(nbytes, dtype=np.uint8)
    cdef unsigned char[::1] packed = packed_arr
    for i in range(count):
        x = queue[i]
        packed[x >> 3] |= <unsigned char> (1 << (x & 7))
    return PyBytes_FromStringAndSize(<char*> &packed[0], nbytes)
