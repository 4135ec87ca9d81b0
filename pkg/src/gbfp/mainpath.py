"""High-persistence patent selection and the backward/forward main-path search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Literal, Mapping, NamedTuple

from gbfp.errors import ParameterError
from gbfp.graph import CitationEdge, CitationNetwork
from gbfp.persistence import PersistenceScores

Direction = Literal["backward", "forward"]


@dataclass(frozen=True)
class Cutoffs:
    """HPP thresholds on GP and LP.

    ``inclusive`` selects ``>=`` comparisons (the default, which keeps a
    patent sitting exactly on a cutoff); ``inclusive=False`` requires a
    strict excess.
    """

    gp_cutoff: float = 0.3
    lp_cutoff: float = 0.8
    inclusive: bool = True

    def __post_init__(self):
        for name in ("gp_cutoff", "lp_cutoff"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ParameterError(f"{name} must be in [0, 1], got {value}")

    def admits(self, gp: float, lp: float) -> bool:
        if self.inclusive:
            return gp >= self.gp_cutoff or lp >= self.lp_cutoff
        return gp > self.gp_cutoff or lp > self.lp_cutoff


@dataclass(frozen=True)
class HppSet:
    members: frozenset[str]
    cutoffs: Cutoffs

    def __contains__(self, ident: object) -> bool:
        return ident in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


class NodeInfo(NamedTuple):
    layer: int
    kp: float
    gp: float
    lp: float
    hpp: bool


class Provenance(NamedTuple):
    seed: str
    direction: str


@dataclass(frozen=True)
class MainPathNetwork:
    """Subgraph selected by a main-path method.

    ``edges`` maps each selected edge to the sorted searches that picked it.
    ``method`` is ``"GBFP"`` or the baseline scheme (``"GP"``/``"SPC"``).
    """

    nodes: Mapping[str, NodeInfo]
    edges: Mapping[CitationEdge, tuple[Provenance, ...]]
    method: str = "GBFP"

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @classmethod
    def assemble(cls, provenance: Mapping[CitationEdge, Iterable[Provenance]], extra_nodes: Iterable[str],
                 scores: PersistenceScores | None, hpps: HppSet | None, method: str) -> "MainPathNetwork":
        edges = {e: tuple(sorted(set(provenance[e]))) for e in sorted(provenance)}
        ids = set(extra_nodes)
        for e in edges:
            ids.add(e.cited)
            ids.add(e.citing)
        members = hpps.members if hpps is not None else frozenset()
        nodes = {}
        for i in sorted(ids):
            if scores is not None and i in scores.kp:
                nodes[i] = NodeInfo(scores.layer[i], scores.kp[i], scores.gp[i], scores.lp[i], i in members)
            else:
                nodes[i] = NodeInfo(0, 0.0, 0.0, 0.0, i in members)
        return cls(MappingProxyType(nodes), MappingProxyType(edges), method)


def select_hpps(scores: PersistenceScores, cutoffs: Cutoffs = Cutoffs()) -> HppSet:
    members = frozenset(k for k in scores.kp if cutoffs.admits(scores.gp[k], scores.lp[k]))
    return HppSet(members, cutoffs)


def step_select(network: CitationNetwork, scores: PersistenceScores, hpps: HppSet,
                current: str, direction: Direction) -> set[str]:
    """Neighbors to move to from ``current``.

    The highest-GP cited (backward) or citing (forward) patents, all ties
    kept, plus every HPP neighbor when ``current`` is itself an HPP.
    """
    if direction == "backward":
        candidates = network.cited(current)
    elif direction == "forward":
        candidates = network.citing(current)
    else:
        raise ValueError(f"direction must be 'backward' or 'forward', got {direction!r}")
    if not candidates:
        return set()
    gp = scores.gp
    best = max(gp[c] for c in candidates)
    chosen = {c for c in candidates if gp[c] == best}
    if current in hpps:
        chosen.update(c for c in candidates if c in hpps)
    return chosen


def _search(network, scores, hpps, seed, direction) -> set[CitationEdge]:
    edges: set[CitationEdge] = set()
    visited = {seed}
    queue = deque([seed])
    while queue:
        current = queue.popleft()
        for nxt in step_select(network, scores, hpps, current, direction):
            if direction == "backward":
                edges.add(CitationEdge(nxt, current))
            else:
                edges.add(CitationEdge(current, nxt))
            if nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)
    return edges


def backward_search(network: CitationNetwork, scores: PersistenceScores, hpps: HppSet,
                    seed: str) -> set[CitationEdge]:
    """Edges chosen walking from ``seed`` toward the startpoints."""
    return _search(network, scores, hpps, seed, "backward")


def forward_search(network: CitationNetwork, scores: PersistenceScores, hpps: HppSet,
                   seed: str) -> set[CitationEdge]:
    """Edges chosen walking from ``seed`` toward the endpoints."""
    return _search(network, scores, hpps, seed, "forward")


def build_main_paths(network: CitationNetwork, scores: PersistenceScores, hpps: HppSet) -> MainPathNetwork:
    """Union of the backward and forward searches seeded at every HPP.

    HPPs without any selected edge are still included as isolated nodes.
    """
    provenance: dict[CitationEdge, list[Provenance]] = {}
    for seed in sorted(hpps.members):
        for direction in ("backward", "forward"):
            for edge in _search(network, scores, hpps, seed, direction):
                provenance.setdefault(edge, []).append(Provenance(seed, direction))
    return MainPathNetwork.assemble(provenance, hpps.members, scores, hpps, "GBFP")
