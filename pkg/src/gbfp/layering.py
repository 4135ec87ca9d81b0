"""Longest-backward-chain layering of a citation DAG."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from types import MappingProxyType
from typing import IO, Mapping

from gbfp.graph import CitationNetwork


@dataclass(frozen=True)
class LayerAssignment:
    """Layer per patent; startpoints (and isolated patents) are layer 1."""

    layer: Mapping[str, int]
    max_layer: int

    @classmethod
    def from_mapping(cls, layer: Mapping[str, int]) -> "LayerAssignment":
        if any(v < 1 for v in layer.values()):
            raise ValueError("layers start at 1")
        return cls(MappingProxyType(dict(layer)), max(layer.values(), default=1))

    def __getitem__(self, ident: str) -> int:
        return self.layer[ident]

    def members(self, t: int) -> list[str]:
        return sorted(k for k, v in self.layer.items() if v == t)


def layer_array(network: CitationNetwork) -> list[int]:
    """Layers indexed like ``network.ids``.

    Raises:
        CycleError: if the network is cyclic.
    """
    layers = [1] * len(network)
    for v in network.topological_order():
        cited = network.backward[v]
        if cited:
            layers[v] = 1 + max(layers[u] for u in cited)
    return layers


def assign_layers(network: CitationNetwork) -> LayerAssignment:
    layers = layer_array(network)
    return LayerAssignment(
        MappingProxyType(dict(zip(network.ids, layers))),
        max(layers, default=1),
    )


def write_layers(layers: LayerAssignment, sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(("patent_id", "layer"))
    for ident in sorted(layers.layer):
        writer.writerow((ident, layers.layer[ident]))
