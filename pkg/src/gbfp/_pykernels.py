"""Pure-Python fallback for the persistence kernel.

Same signature and arithmetic order as the compiled ``_ckernels`` module.
Pending nodes are kept in a heap keyed by topological position instead of
scanning the order, which visits them in the same sequence.
"""

from __future__ import annotations

import heapq


def kp_sources(fwd_ptr, fwd_idx, bwd_ptr, bwd_idx, layer, order, pos, sources, out):
    fwd_ptr = list(fwd_ptr)
    fwd_idx = list(fwd_idx)
    bwd_ptr = list(bwd_ptr)
    bwd_idx = list(bwd_idx)
    layer = list(layer)
    pos = list(pos)
    if len(out) < len(sources):
        raise ValueError("output buffer too small")
    for i, a in enumerate(sources):
        out[i] = _one_source(int(a), fwd_ptr, fwd_idx, bwd_ptr, bwd_idx, layer, pos)


def _one_source(a, fwd_ptr, fwd_idx, bwd_ptr, bwd_idx, layer, pos):
    lo, hi = fwd_ptr[a], fwd_ptr[a + 1]
    if lo == hi:
        return 0.0
    t = layer[a]
    acc: dict[int, float] = {}
    heap: list[tuple[int, int]] = []
    for w in fwd_idx[lo:hi]:
        if w not in acc:
            acc[w] = 0.0
            heapq.heappush(heap, (pos[w], w))
        acc[w] += 1.0
    kp = 0.0
    while heap:
        _, v = heapq.heappop(heap)
        cnt = 0
        for u in bwd_idx[bwd_ptr[v]:bwd_ptr[v + 1]]:
            if layer[u] >= t:
                cnt += 1
        f = acc.pop(v) / cnt
        lo, hi = fwd_ptr[v], fwd_ptr[v + 1]
        if lo == hi:
            kp += f
            continue
        for w in fwd_idx[lo:hi]:
            if w not in acc:
                acc[w] = 0.0
                heapq.heappush(heap, (pos[w], w))
            acc[w] += f
    return kp
