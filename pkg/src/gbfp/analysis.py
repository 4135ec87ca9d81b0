"""Comparison of main-path networks and synthetic layered citation networks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from gbfp.errors import ParameterError
from gbfp.graph import CitationNetwork
from gbfp.mainpath import HppSet, MainPathNetwork


@dataclass(frozen=True)
class ComparisonReport:
    gbfp_nodes: int
    gbfp_edges: int
    baseline_nodes: int
    baseline_edges: int
    complexity_ratio: float | None
    hpp_total: int
    hpp_in_gbfp: int
    hpp_in_baseline: int
    hpp_retention_gbfp: float
    hpp_retention_baseline: float
    missing_hpps_baseline: list[str] = field(default_factory=list)
    shared_nodes: int | None = None
    shared_edges: int | None = None

    @classmethod
    def from_counts(cls, gbfp_nodes: int, gbfp_edges: int, baseline_nodes: int, baseline_edges: int,
                    hpp_total: int, hpp_in_gbfp: int, hpp_in_baseline: int, **extra) -> "ComparisonReport":
        """Report arithmetic from raw counts alone (e.g. published figures)."""
        def retention(k):
            return k / hpp_total if hpp_total else 1.0

        return cls(
            gbfp_nodes, gbfp_edges, baseline_nodes, baseline_edges,
            baseline_nodes / gbfp_nodes if gbfp_nodes else None,
            hpp_total, hpp_in_gbfp, hpp_in_baseline,
            retention(hpp_in_gbfp), retention(hpp_in_baseline), **extra,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    CSV_FIELDS = (
        "gbfp_nodes", "gbfp_edges", "baseline_nodes", "baseline_edges", "complexity_ratio",
        "hpp_total", "hpp_in_gbfp", "hpp_in_baseline", "hpp_retention_gbfp",
        "hpp_retention_baseline", "shared_nodes", "shared_edges", "missing_hpps_baseline",
    )

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        d["missing_hpps_baseline"] = " ".join(self.missing_hpps_baseline)
        return ["" if d[k] is None else str(d[k]) for k in self.CSV_FIELDS]


def compare_networks(gbfp: MainPathNetwork, baseline: MainPathNetwork, hpps: HppSet) -> ComparisonReport:
    members = hpps.members
    in_gbfp = sum(1 for h in members if h in gbfp.nodes)
    in_base = sum(1 for h in members if h in baseline.nodes)
    return ComparisonReport.from_counts(
        gbfp.node_count, gbfp.edge_count, baseline.node_count, baseline.edge_count,
        len(members), in_gbfp, in_base,
        missing_hpps_baseline=sorted(h for h in members if h not in baseline.nodes),
        shared_nodes=len(gbfp.nodes.keys() & baseline.nodes.keys()),
        shared_edges=len(gbfp.edges.keys() & baseline.edges.keys()),
    )


@dataclass(frozen=True)
class SynthParams:
    """Parameters of the layered preferential-attachment generator.

    Random numbers come from numpy's PCG64 bit generator seeded with
    ``rng_seed`` (``numpy.random.default_rng``); the draw sequence is part of
    the reproducibility contract for a given numpy major version.
    """

    layer_count: int = 5
    nodes_per_layer: int = 10
    mean_backward_citations: float = 3.0
    attachment_bias: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.layer_count < 1:
            raise ParameterError("layer_count must be >= 1")
        if self.nodes_per_layer < 1:
            raise ParameterError("nodes_per_layer must be >= 1")
        if not self.mean_backward_citations > 0:
            raise ParameterError("mean_backward_citations must be > 0")
        if self.attachment_bias < 0:
            raise ParameterError("attachment_bias must be >= 0")
        if not 0 <= self.rng_seed < 2**64:
            raise ParameterError("rng_seed must fit in 64 bits")


def generate_synthetic(params: SynthParams) -> CitationNetwork:
    """Generation-by-generation citation network.

    Every patent after the first generation cites ``1 + Poisson(mean - 1)``
    distinct patents of earlier generations (capped by how many exist),
    picked with probability proportional to ``1 + bias * forward citations
    so far``. Ids are ``P`` plus a zero-padded serial in generation order.
    """
    rng = np.random.default_rng(params.rng_seed)
    per = params.nodes_per_layer
    n = params.layer_count * per
    width = len(str(n - 1))
    ids = [f"P{i:0{width}d}" for i in range(n)]
    weight = np.ones(n, dtype=np.float64)
    extra_mean = max(params.mean_backward_citations - 1.0, 0.0)
    edges = []
    for g in range(1, params.layer_count):
        pool = g * per
        for j in range(g * per, (g + 1) * per):
            k = min(1 + int(rng.poisson(extra_mean)), pool)
            w = weight[:pool]
            targets = rng.choice(pool, size=k, replace=False, p=w / w.sum())
            for t in targets.tolist():
                edges.append((ids[t], ids[j]))
            if params.attachment_bias:
                weight[targets] += params.attachment_bias
    return CitationNetwork.from_edges(edges, nodes=ids)
