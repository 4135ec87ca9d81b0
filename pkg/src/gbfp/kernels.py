"""Backend selection for the hot persistence loop.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module takes over with identical results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from types import ModuleType
from typing import Sequence

import numpy as np

from gbfp import _pykernels
from gbfp.graph import CitationNetwork

try:
    from gbfp import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

DEFAULT_BACKEND = "cython" if _ckernels is not None else "python"


def get_backend(name: str | None = None) -> ModuleType:
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; have {sorted(BACKENDS)}") from None


def default_workers() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class KernelGraph:
    """CSR arrays of a network plus its layers and topological order."""

    fwd_ptr: np.ndarray
    fwd_idx: np.ndarray
    bwd_ptr: np.ndarray
    bwd_idx: np.ndarray
    layer: np.ndarray
    order: np.ndarray
    pos: np.ndarray

    @classmethod
    def build(cls, network: CitationNetwork, layers: Sequence[int]) -> "KernelGraph":
        def csr(adj):
            ptr = np.zeros(len(adj) + 1, dtype=np.int32)
            ptr[1:] = np.cumsum([len(a) for a in adj])
            idx = np.fromiter((v for a in adj for v in a), dtype=np.int32, count=int(ptr[-1]))
            return ptr, idx

        fwd_ptr, fwd_idx = csr(network.forward)
        bwd_ptr, bwd_idx = csr(network.backward)
        order = np.asarray(network.topological_order(), dtype=np.int32)
        pos = np.empty_like(order)
        pos[order] = np.arange(len(order), dtype=np.int32)
        return cls(fwd_ptr, fwd_idx, bwd_ptr, bwd_idx,
                   np.asarray(layers, dtype=np.int32), order, pos)


def kp_sources(graph: KernelGraph, sources: Sequence[int], *,
               backend: str | None = None, workers: int = 1) -> np.ndarray:
    """Persistence of each source node. Output does not depend on ``workers``."""
    kernel = get_backend(backend)
    src = np.ascontiguousarray(sources, dtype=np.int32)
    out = np.zeros(len(src), dtype=np.float64)
    args = (graph.fwd_ptr, graph.fwd_idx, graph.bwd_ptr, graph.bwd_idx,
            graph.layer, graph.order, graph.pos)
    workers = max(1, min(workers, len(src)))
    if workers == 1:
        kernel.kp_sources(*args, src, out)
        return out
    bounds = np.linspace(0, len(src), workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(kernel.kp_sources, *args, src[lo:hi], out[lo:hi])
                   for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        for fut in futures:
            fut.result()
    return out
