# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-source persistence kernel.

Mirrors :mod:`gbfp._pykernels` operation for operation, so both backends
produce bit-identical results.
"""

from libc.stdlib cimport calloc, free


cdef double _one_source(
    int a,
    const int[::1] fwd_ptr, const int[::1] fwd_idx,
    const int[::1] bwd_ptr, const int[::1] bwd_idx,
    const int[::1] layer, const int[::1] order, const int[::1] pos,
    double* acc, char* reached,
) noexcept nogil:
    cdef Py_ssize_t n = layer.shape[0]
    cdef int t = layer[a]
    cdef int k, v, w, cnt
    cdef Py_ssize_t p
    cdef long pending = 0
    cdef double f, kp = 0.0

    if fwd_ptr[a] == fwd_ptr[a + 1]:
        return 0.0
    for k in range(fwd_ptr[a], fwd_ptr[a + 1]):
        w = fwd_idx[k]
        acc[w] += 1.0
        if not reached[w]:
            reached[w] = 1
            pending += 1

    p = pos[a] + 1
    while pending > 0 and p < n:
        v = order[p]
        p += 1
        if not reached[v]:
            continue
        reached[v] = 0
        pending -= 1
        cnt = 0
        for k in range(bwd_ptr[v], bwd_ptr[v + 1]):
            if layer[bwd_idx[k]] >= t:
                cnt += 1
        f = acc[v] / cnt
        acc[v] = 0.0
        if fwd_ptr[v] == fwd_ptr[v + 1]:
            kp += f
        else:
            for k in range(fwd_ptr[v], fwd_ptr[v + 1]):
                w = fwd_idx[k]
                acc[w] += f
                if not reached[w]:
                    reached[w] = 1
                    pending += 1
    return kp


def kp_sources(
    const int[::1] fwd_ptr, const int[::1] fwd_idx,
    const int[::1] bwd_ptr, const int[::1] bwd_idx,
    const int[::1] layer, const int[::1] order, const int[::1] pos,
    const int[::1] sources, double[::1] out,
):
    """Fill ``out[i]`` with the persistence of node ``sources[i]``.

    Graph arrays are CSR (``*_ptr`` of length n+1). ``order`` is a
    topological order and ``pos`` its inverse permutation.
    """
    cdef Py_ssize_t n = layer.shape[0]
    cdef Py_ssize_t i
    if out.shape[0] < sources.shape[0]:
        raise ValueError("output buffer too small")
    cdef double* acc = <double*> calloc(n + 1, sizeof(double))
    cdef char* reached = <char*> calloc(n + 1, sizeof(char))
    if acc == NULL or reached == NULL:
        free(acc)
        free(reached)
        raise MemoryError()
    try:
        with nogil:
            for i in range(sources.shape[0]):
                out[i] = _one_source(
                    sources[i], fwd_ptr, fwd_idx, bwd_ptr, bwd_idx,
                    layer, order, pos, acc, reached,
                )
    finally:
        free(acc)
        free(reached)
