"""In-domain patent citation network: loading, validation, structural queries.

Edges point along knowledge flow, from the cited (older) patent to the
citing (newer) one. Patent ids are opaque, case-sensitive strings; nodes are
indexed internally in lexicographic id order, which is also the canonical
output order everywhere in the package.
"""

from __future__ import annotations

import csv
import datetime as dt
import heapq
import io
import warnings
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from types import MappingProxyType
from typing import IO, Iterable, Iterator, Mapping, NamedTuple, Union

from gbfp.errors import CycleError, MetadataWarning, ParseError

Source = Union[str, Path, bytes, IO[bytes], IO[str]]

CITATION_HEADER = ("citing_id", "cited_id")
METADATA_HEADER = ("patent_id", "patent_number", "application_date", "title")


class CitationEdge(NamedTuple):
    cited: str
    citing: str


@dataclass(frozen=True)
class PatentRecord:
    id: str
    patent_number: str | None = None
    application_date: dt.date | None = None
    title: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    duplicate_edges: list[CitationEdge]
    self_loops: list[CitationEdge]
    cycle: list[str] | None
    isolated_nodes: int

    @property
    def is_dag(self) -> bool:
        return self.cycle is None

    def to_dict(self) -> dict:
        return {
            "duplicate_edges": {
                "count": len(self.duplicate_edges),
                "edges": [{"cited": e.cited, "citing": e.citing} for e in self.duplicate_edges],
            },
            "self_loops": {
                "count": len(self.self_loops),
                "edges": [{"cited": e.cited, "citing": e.citing} for e in self.self_loops],
            },
            "cycle": self.cycle,
            "isolated_nodes": self.isolated_nodes,
            "is_dag": self.is_dag,
        }


@dataclass(frozen=True, eq=False)
class CitationNetwork:
    """Immutable citation DAG (acyclicity is checked lazily, see :meth:`topological_order`).

    Build instances with :meth:`from_edges` or :func:`load_citation_pairs`
    rather than calling the constructor directly.
    """

    ids: tuple[str, ...]
    forward: tuple[tuple[int, ...], ...]
    backward: tuple[tuple[int, ...], ...]
    records: Mapping[str, PatentRecord]
    duplicate_edges: tuple[CitationEdge, ...] = ()
    self_loops: tuple[CitationEdge, ...] = ()
    _index: Mapping[str, int] = field(default_factory=dict, repr=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        nodes: Iterable[str] = (),
        records: Iterable[PatentRecord] = (),
        *,
        strict: bool = True,
    ) -> "CitationNetwork":
        """Build a network from ``(cited, citing)`` pairs.

        Duplicate pairs are merged and remembered for :func:`validate`.
        Self-loops raise ``ValueError`` when ``strict``; otherwise they are
        dropped and reported by :func:`validate`.
        """
        seen: set[tuple[str, str]] = set()
        dups: list[CitationEdge] = []
        loops: list[CitationEdge] = []
        node_set = set(nodes)
        for cited, citing in edges:
            if cited == citing:
                if strict:
                    raise ValueError(f"self-loop on {cited!r}")
                loops.append(CitationEdge(cited, citing))
                node_set.add(cited)
                continue
            node_set.add(cited)
            node_set.add(citing)
            if (cited, citing) in seen:
                dups.append(CitationEdge(cited, citing))
            else:
                seen.add((cited, citing))
        for ident in node_set:
            if not ident:
                raise ValueError("empty patent id")
        ids = tuple(sorted(node_set))
        index = {ident: i for i, ident in enumerate(ids)}
        fwd: list[list[int]] = [[] for _ in ids]
        bwd: list[list[int]] = [[] for _ in ids]
        for cited, citing in seen:
            fwd[index[cited]].append(index[citing])
            bwd[index[citing]].append(index[cited])
        recs = {ident: PatentRecord(ident) for ident in ids}
        for rec in records:
            if rec.id in recs:
                recs[rec.id] = rec
        return cls(
            ids=ids,
            forward=tuple(tuple(sorted(a)) for a in fwd),
            backward=tuple(tuple(sorted(a)) for a in bwd),
            records=MappingProxyType(recs),
            duplicate_edges=tuple(sorted(dups)),
            self_loops=tuple(sorted(loops)),
            _index=MappingProxyType(index),
        )

    def with_records(self, records: Mapping[str, PatentRecord]) -> "CitationNetwork":
        merged = dict(self.records)
        merged.update({k: v for k, v in records.items() if k in self._index})
        return replace(self, records=MappingProxyType(merged))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, ident: object) -> bool:
        return ident in self._index

    def index(self, ident: str) -> int:
        try:
            return self._index[ident]
        except KeyError:
            raise KeyError(f"unknown patent id {ident!r}") from None

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.forward)

    def edges(self) -> Iterator[CitationEdge]:
        """All edges in canonical ``(cited, citing)`` order."""
        ids = self.ids
        for u, outs in enumerate(self.forward):
            for v in outs:
                yield CitationEdge(ids[u], ids[v])

    def citing(self, ident: str) -> tuple[str, ...]:
        return tuple(self.ids[v] for v in self.forward[self.index(ident)])

    def cited(self, ident: str) -> tuple[str, ...]:
        return tuple(self.ids[u] for u in self.backward[self.index(ident)])

    def forward_degree(self, ident: str) -> int:
        return len(self.forward[self.index(ident)])

    def backward_degree(self, ident: str) -> int:
        return len(self.backward[self.index(ident)])

    @cached_property
    def _topo(self) -> tuple[int, ...] | None:
        indeg = [len(b) for b in self.backward]
        heap = [i for i, d in enumerate(indeg) if d == 0]
        heapq.heapify(heap)
        order: list[int] = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in self.forward[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        if len(order) != len(self.ids):
            return None
        return tuple(order)

    def topological_order(self) -> tuple[int, ...]:
        """Node indices in topological order, smallest id first among ready nodes.

        Raises:
            CycleError: if the network contains a cycle.
        """
        order = self._topo
        if order is None:
            raise CycleError(self.find_cycle() or [])
        return order

    def is_acyclic(self) -> bool:
        return self._topo is not None

    def find_cycle(self) -> list[str] | None:
        """Return one cycle (rotated to start at its smallest id), or None."""
        if self._topo is not None:
            return None
        WHITE, GREY, BLACK = 0, 1, 2
        color = [WHITE] * len(self.ids)
        parent = [-1] * len(self.ids)
        for root in range(len(self.ids)):
            if color[root] != WHITE:
                continue
            stack = [(root, 0)]
            color[root] = GREY
            while stack:
                u, k = stack[-1]
                outs = self.forward[u]
                if k == len(outs):
                    color[u] = BLACK
                    stack.pop()
                    continue
                stack[-1] = (u, k + 1)
                v = outs[k]
                if color[v] == WHITE:
                    color[v] = GREY
                    parent[v] = u
                    stack.append((v, 0))
                elif color[v] == GREY:
                    cyc = [u]
                    while cyc[-1] != v:
                        cyc.append(parent[cyc[-1]])
                    cyc.reverse()
                    names = [self.ids[i] for i in cyc]
                    m = names.index(min(names))
                    return names[m:] + names[:m]
        return None  # pragma: no cover - _topo said there is a cycle


def _open_text(source: Source) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, newline="", encoding="utf-8")
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8"), newline="")
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8", newline="")


def load_citation_pairs(source: Source) -> CitationNetwork:
    """Parse a ``citing_id,cited_id`` CSV into a network.

    Line numbers in errors are physical lines of the file (the header is line 1).

    Raises:
        ParseError: wrong header, wrong column count, empty id, or a self-loop.
    """
    stream = _open_text(source)
    try:
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CITATION_HEADER:
            raise ParseError("expected header 'citing_id,cited_id'", line=1)
        pairs: list[tuple[str, str]] = []
        for row in reader:
            line = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 columns, got {len(row)}", line=line)
            citing, cited = row[0].strip(), row[1].strip()
            if not citing or not cited:
                raise ParseError("empty patent id", line=line)
            if citing == cited:
                raise ParseError("self-loop", line=line)
            pairs.append((cited, citing))
    finally:
        if isinstance(source, (str, Path)):
            stream.close()
    return CitationNetwork.from_edges(pairs)


def _parse_date(text: str) -> dt.date:
    if len(text) == 4 and text.isdigit():
        return dt.date(int(text), 1, 1)
    return dt.date.fromisoformat(text)


def load_metadata(network: CitationNetwork, source: Source) -> CitationNetwork:
    """Attach patent number, application date and title to matching records.

    Rows for ids absent from the network are skipped with a
    :class:`MetadataWarning`; so are unparseable dates (the rest of the row
    is kept). Bare years load as January 1 of that year.
    """
    stream = _open_text(source)
    updates: dict[str, PatentRecord] = {}
    try:
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None:
            return network
        if tuple(h.strip() for h in header) != METADATA_HEADER:
            raise ParseError("expected header 'patent_id,patent_number,application_date,title'", line=1)
        for row in reader:
            line = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 columns, got {len(row)}", line=line)
            pid, number, date_text, title = (c.strip() for c in row)
            if not pid:
                raise ParseError("empty patent id", line=line)
            if pid not in network:
                warnings.warn(f"metadata for unknown patent {pid!r} at line {line} ignored", MetadataWarning, stacklevel=2)
                continue
            date = None
            if date_text:
                try:
                    date = _parse_date(date_text)
                except ValueError:
                    warnings.warn(f"bad date {date_text!r} at line {line}", MetadataWarning, stacklevel=2)
            updates[pid] = PatentRecord(pid, number or None, date, title or None)
    finally:
        if isinstance(source, (str, Path)):
            stream.close()
    if not updates:
        return network
    return network.with_records(updates)


def write_citation_pairs(edges: Iterable[CitationEdge], sink: IO[str]) -> None:
    """Write edges in the citation CSV format, in canonical order."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CITATION_HEADER)
    for e in sorted(edges):
        writer.writerow((e.citing, e.cited))


def validate(network: CitationNetwork) -> ValidationReport:
    isolated = sum(1 for f, b in zip(network.forward, network.backward) if not f and not b)
    return ValidationReport(
        duplicate_edges=list(network.duplicate_edges),
        self_loops=list(network.self_loops),
        cycle=network.find_cycle(),
        isolated_nodes=isolated,
    )


def startpoints(network: CitationNetwork) -> set[str]:
    """Patents citing nothing inside the domain."""
    return {network.ids[i] for i, b in enumerate(network.backward) if not b}


def endpoints(network: CitationNetwork) -> set[str]:
    """Patents cited by nothing inside the domain."""
    return {network.ids[i] for i, f in enumerate(network.forward) if not f}
