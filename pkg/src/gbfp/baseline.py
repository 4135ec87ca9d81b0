"""Comparison baseline: SPC link weights and forward greedy search from startpoints."""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import IO, Literal, Mapping, NamedTuple

from gbfp.errors import ParameterError
from gbfp.graph import CitationEdge, CitationNetwork
from gbfp.mainpath import HppSet, MainPathNetwork, Provenance
from gbfp.persistence import PersistenceScores

Scheme = Literal["GP", "SPC"]


@dataclass(frozen=True)
class LinkWeights:
    weight: Mapping[CitationEdge, int | float]
    scheme: str


def path_counts(network: CitationNetwork) -> tuple[list[int], list[int]]:
    """Per node: paths arriving from any startpoint, paths leaving to any endpoint.

    Raises:
        CycleError: if the network is cyclic.
    """
    order = network.topological_order()
    n_in = [0] * len(network)
    n_out = [0] * len(network)
    for v in order:
        cited = network.backward[v]
        n_in[v] = sum(n_in[u] for u in cited) if cited else 1
    for v in reversed(order):
        citing = network.forward[v]
        n_out[v] = sum(n_out[w] for w in citing) if citing else 1
    return n_in, n_out


def spc_weights(network: CitationNetwork) -> LinkWeights:
    """Search path count of every edge, as exact Python integers."""
    n_in, n_out = path_counts(network)
    ids = network.ids
    weight = {}
    for u, outs in enumerate(network.forward):
        for v in outs:
            weight[CitationEdge(ids[u], ids[v])] = n_in[u] * n_out[v]
    return LinkWeights(MappingProxyType(weight), "SPC")


def gp_weights(network: CitationNetwork, scores: PersistenceScores) -> LinkWeights:
    """Each edge weighted by the GP of the citing patent it leads to."""
    return LinkWeights(MappingProxyType({e: scores.gp[e.citing] for e in network.edges()}), "GP")


def baseline_forward_paths(network: CitationNetwork, scores: PersistenceScores | None = None,
                           weights: LinkWeights | None = None, scheme: Scheme = "GP",
                           hpps: HppSet | None = None) -> MainPathNetwork:
    """Union of greedy forward walks started at every startpoint.

    Each step follows every outgoing edge of maximal value: the citing
    patent's GP under ``"GP"``, the edge's SPC under ``"SPC"``. ``hpps``
    only annotates the result.
    """
    if scheme == "GP":
        if scores is None:
            raise ParameterError("GP scheme needs persistence scores")
        weights = gp_weights(network, scores)
    elif scheme == "SPC":
        if weights is None or weights.scheme != "SPC":
            raise ParameterError("SPC scheme needs SPC link weights")
    else:
        raise ParameterError(f"unknown baseline scheme {scheme!r}")
    w = weights.weight
    ids = network.ids
    provenance: dict[CitationEdge, list[Provenance]] = {}
    for s, cited in enumerate(network.backward):
        if cited or not network.forward[s]:
            continue
        seed = Provenance(ids[s], "forward")
        visited = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            outs = network.forward[u]
            if not outs:
                continue
            edges = [CitationEdge(ids[u], ids[v]) for v in outs]
            best = max(w[e] for e in edges)
            for v, e in zip(outs, edges):
                if w[e] != best:
                    continue
                provenance.setdefault(e, []).append(seed)
                if v not in visited:
                    visited.add(v)
                    queue.append(v)
    return MainPathNetwork.assemble(provenance, (), scores, hpps, scheme)


class Component(NamedTuple):
    nodes: tuple[str, ...]
    node_count: int
    edge_count: int
    hpp_count: int


def rank_components(net: MainPathNetwork, hpps: HppSet) -> list[Component]:
    """Weakly connected components, largest first.

    Ties break on HPP count (more first), then on the smallest member id.
    """
    parent = {i: i for i in net.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in net.edges:
        a, b = find(e.cited), find(e.citing)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, list[str]] = {}
    for i in net.nodes:
        groups.setdefault(find(i), []).append(i)
    edge_counts: dict[str, int] = {}
    for e in net.edges:
        r = find(e.cited)
        edge_counts[r] = edge_counts.get(r, 0) + 1
    comps = [
        Component(tuple(sorted(members)), len(members), edge_counts.get(root, 0),
                  sum(1 for m in members if m in hpps))
        for root, members in groups.items()
    ]
    comps.sort(key=lambda c: (-c.node_count, -c.hpp_count, c.nodes[0]))
    return comps


def write_link_weights(weights: LinkWeights, sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(("citing_id", "cited_id", "weight"))
    for e in sorted(weights.weight):
        writer.writerow((e.citing, e.cited, weights.weight[e]))
