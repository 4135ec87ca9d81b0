"""Genetic knowledge persistence and its GP/LP normalizations.

Knowledge of a patent ``a`` flows forward along citations; every citing
patent ``v`` inherits ``1 / n(v)`` of what each of its cited patents holds,
where ``n(v)`` counts only the cited patents whose layer is at least
``layer(a)``. The persistence of ``a`` is what all endpoints end up holding.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from types import MappingProxyType
from typing import IO, Mapping, Union

from gbfp.errors import OracleTooLarge
from gbfp.graph import CitationNetwork
from gbfp.kernels import KernelGraph, default_workers, kp_sources
from gbfp.layering import LayerAssignment


@dataclass(frozen=True)
class PersistenceScores:
    kp: Mapping[str, float]
    gp: Mapping[str, float]
    lp: Mapping[str, float]
    max_kp_global: float
    max_kp_per_layer: Mapping[int, float]
    layer: Mapping[str, int]

    def __iter__(self):
        return iter(sorted(self.kp))


@dataclass(frozen=True)
class PathEnumeration:
    """Every backward path from ``sink`` down to ``source``, with its retained share."""

    source: str
    sink: str
    paths: list[tuple[str, ...]]
    contributions: list[float]

    @property
    def retained(self) -> float:
        return sum(self.contributions)


def _layer_list(network: CitationNetwork, layers: LayerAssignment) -> list[int]:
    return [layers.layer[i] for i in network.ids]


def effective_backward_count(network: CitationNetwork, layers: LayerAssignment, v: str, t: int) -> int:
    """Number of patents cited by ``v`` that sit on layer ``t`` or above."""
    return sum(1 for u in network.cited(v) if layers.layer[u] >= t)


def knowledge_persistence(network: CitationNetwork, layers: LayerAssignment, a: str,
                          *, backend: str | None = None) -> float:
    """Persistence of a single patent, by forward dynamic programming from ``a``.

    Raises:
        KeyError: ``a`` is not in the network.
        CycleError: the network is cyclic.
    """
    idx = network.index(a)
    graph = KernelGraph.build(network, _layer_list(network, layers))
    return float(kp_sources(graph, [idx], backend=backend)[0])


def compute_all_persistence(network: CitationNetwork, layers: LayerAssignment, *,
                            workers: int | None = None, backend: str | None = None) -> PersistenceScores:
    """Persistence for every patent, normalized to GP and LP.

    Sources are split across ``workers`` threads (the compiled kernel
    releases the GIL); each source is independent, so the result is the
    same for any worker count.
    """
    graph = KernelGraph.build(network, _layer_list(network, layers))
    kp = kp_sources(graph, range(len(network)), backend=backend,
                    workers=workers if workers is not None else default_workers())
    return normalize(dict(zip(network.ids, kp.tolist())), layers)


def normalize(scores: Union[PersistenceScores, Mapping[str, float]], layers: LayerAssignment) -> PersistenceScores:
    """Divide persistence by the domain maximum (GP) and by the layer maximum (LP).

    A zero maximum maps every score of its scope to 0.
    """
    kp = dict(scores.kp if isinstance(scores, PersistenceScores) else scores)
    layer = {k: layers.layer[k] for k in kp}
    max_global = max(kp.values(), default=0.0)
    per_layer: dict[int, float] = {}
    for k, value in kp.items():
        t = layer[k]
        if value > per_layer.get(t, 0.0):
            per_layer[t] = value
        else:
            per_layer.setdefault(t, 0.0)
    gp = {k: (v / max_global if max_global > 0 else 0.0) for k, v in kp.items()}
    lp = {}
    for k, v in kp.items():
        m = per_layer[layer[k]]
        lp[k] = v / m if m > 0 else 0.0
    return PersistenceScores(
        kp=MappingProxyType(kp),
        gp=MappingProxyType(gp),
        lp=MappingProxyType(lp),
        max_kp_global=max_global,
        max_kp_per_layer=MappingProxyType(dict(sorted(per_layer.items()))),
        layer=MappingProxyType(layer),
    )


def brute_force_persistence(network: CitationNetwork, layers: LayerAssignment, a: str,
                            *, max_paths: int = 100_000) -> tuple[float, list[PathEnumeration]]:
    """Persistence of ``a`` by listing every path to every reachable endpoint.

    Exponential in general; meant as a reference for small networks.

    Raises:
        OracleTooLarge: more than ``max_paths`` paths would be enumerated.
    """
    if a not in network:
        raise KeyError(f"unknown patent id {a!r}")
    network.topological_order()
    t = layers.layer[a]
    eff = {}

    def contribution_factor(v: str) -> float:
        if v not in eff:
            eff[v] = effective_backward_count(network, layers, v, t)
        return 1.0 / eff[v]

    by_sink: dict[str, list[tuple[tuple[str, ...], float]]] = {}
    count = 0
    stack: list[tuple[str, tuple[str, ...], float]] = [(c, (a, c), contribution_factor(c)) for c in reversed(network.citing(a))]
    while stack:
        v, path, share = stack.pop()
        nxt = network.citing(v)
        if not nxt:
            count += 1
            if count > max_paths:
                raise OracleTooLarge(f"more than {max_paths} paths from {a!r}")
            by_sink.setdefault(v, []).append((tuple(reversed(path)), share))
            continue
        for w in reversed(nxt):
            stack.append((w, path + (w,), share * contribution_factor(w)))

    enumerations = []
    total = 0.0
    for sink in sorted(by_sink):
        items = sorted(by_sink[sink])
        enum = PathEnumeration(a, sink, [p for p, _ in items], [c for _, c in items])
        total += enum.retained
        enumerations.append(enum)
    return total, enumerations


def write_scores(scores: PersistenceScores, sink: IO[str]) -> None:
    """CSV ``patent_id,layer,kp,gp,lp``; kp in full precision, gp/lp to 5 decimals."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(("patent_id", "layer", "kp", "gp", "lp"))
    for ident in sorted(scores.kp):
        writer.writerow((ident, scores.layer[ident], repr(scores.kp[ident]),
                         f"{scores.gp[ident]:.5f}", f"{scores.lp[ident]:.5f}"))
