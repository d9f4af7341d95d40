# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops; same signatures as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()


cdef inline int64_t _find(int64_t* parent, int64_t x) nogil:
    cdef int64_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def component_labels(Py_ssize_t n, ei, ej):
    cdef cnp.ndarray[int64_t, ndim=1] a = np.ascontiguousarray(ei, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] b = np.ascontiguousarray(ej, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] parent = np.arange(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] labels = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] rootlab = np.full(n, -1, dtype=np.int64)
    cdef int64_t* par = <int64_t*> parent.data
    cdef Py_ssize_t k, m = a.shape[0], v
    cdef int64_t ra, rb, nxt = 0
    with nogil:
        for k in range(m):
            ra = _find(par, a[k])
            rb = _find(par, b[k])
            if ra != rb:
                if ra < rb:
                    par[rb] = ra
                else:
                    par[ra] = rb
        for v in range(n):
            ra = _find(par, v)
            if rootlab[ra] < 0:
                rootlab[ra] = nxt
                nxt += 1
            labels[v] = rootlab[ra]
    return labels


def f2_rank(columns, Py_ssize_t nrows):
    cdef Py_ssize_t words = (nrows + 63) // 64 if nrows > 0 else 1
    cdef Py_ssize_t ncols = len(columns)
    cdef uint64_t* basis = <uint64_t*> malloc(nrows * words * sizeof(uint64_t) + 8)
    cdef char* have = <char*> malloc(nrows + 1)
    cdef uint64_t* v = <uint64_t*> malloc(words * sizeof(uint64_t))
    cdef Py_ssize_t rank = 0, w, top, t
    cdef uint64_t x
    cdef int64_t idx
    if basis == NULL or have == NULL or v == NULL:
        raise MemoryError()
    memset(have, 0, nrows + 1)
    try:
        for col in columns:
            memset(v, 0, words * sizeof(uint64_t))
            for i in col:
                idx = i
                v[idx >> 6] ^= (<uint64_t>1) << (idx & 63)
            while True:
                top = -1
                for w in range(words - 1, -1, -1):
                    x = v[w]
                    if x:
                        t = 63
                        while not (x >> t) & 1:
                            t -= 1
                        top = w * 64 + t
                        break
                if top < 0:
                    break
                if have[top]:
                    for w in range(words):
                        v[w] ^= basis[top * words + w]
                else:
                    for w in range(words):
                        basis[top * words + w] = v[w]
                    have[top] = 1
                    rank += 1
                    break
    finally:
        free(basis)
        free(have)
        free(v)
    return rank


def triangles(adj):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = A.shape[0], i, j, k
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if not A[i, j]:
                continue
            for k in range(j + 1, n):
                if A[i, k] and A[j, k]:
                    out.append((i, j, k))
    return np.array(out, dtype=np.int64).reshape(-1, 3)
