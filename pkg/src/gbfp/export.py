"""Deterministic DOT, GraphML and JSON output for main-path networks.

Nodes are emitted in lexicographic id order and edges in ``(cited, citing)``
order; floats use ``repr`` so JSON output round-trips exactly.
"""

from __future__ import annotations

import json
from types import MappingProxyType
from typing import IO, Any, Mapping
from xml.sax.saxutils import escape, quoteattr

from gbfp.analysis import ComparisonReport
from gbfp.graph import CitationEdge, CitationNetwork
from gbfp.mainpath import MainPathNetwork, NodeInfo, Provenance

FORMATS = ("dot", "graphml", "json")


def serial_numbers(network: CitationNetwork) -> dict[str, int]:
    """1-based serials over the whole network, ordered by patent number (id when absent)."""
    def key(i):
        rec = network.records[i]
        return (rec.patent_number or i, i)

    return {i: k for k, i in enumerate(sorted(network.ids, key=key), start=1)}


def _seeds_text(prov: tuple[Provenance, ...]) -> str:
    return " ".join(f"{p.seed}:{p.direction}" for p in prov)


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: MainPathNetwork, serials: Mapping[str, int] | None = None) -> str:
    if not net.nodes:
        return "digraph main_paths { }\n"
    lines = ["digraph main_paths {"]
    for ident, info in net.nodes.items():
        attrs = [f"layer={info.layer}", f"kp={info.kp!r}", f"gp={info.gp!r}", f"lp={info.lp!r}",
                 f"hpp={'true' if info.hpp else 'false'}"]
        if serials is not None:
            attrs.append(f"serial={serials[ident]}")
        lines.append(f"  {_dot_id(ident)} [{', '.join(attrs)}];")
    for edge, prov in net.edges.items():
        lines.append(f"  {_dot_id(edge.cited)} -> {_dot_id(edge.citing)} [seeds={_dot_id(_seeds_text(prov))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_KEYS = (
    ("layer", "node", "int"),
    ("kp", "node", "double"),
    ("gp", "node", "double"),
    ("lp", "node", "double"),
    ("hpp", "node", "boolean"),
)


def to_graphml(net: MainPathNetwork, serials: Mapping[str, int] | None = None) -> str:
    keys = list(_GRAPHML_KEYS)
    if serials is not None:
        keys.append(("serial", "node", "int"))
    keys.append(("seeds", "edge", "string"))
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">']
    for name, domain, typ in keys:
        out.append(f'  <key id="{name}" for="{domain}" attr.name="{name}" attr.type="{typ}"/>')
    out.append('  <graph id="main_paths" edgedefault="directed">')
    for ident, info in net.nodes.items():
        data = [("layer", str(info.layer)), ("kp", repr(info.kp)), ("gp", repr(info.gp)),
                ("lp", repr(info.lp)), ("hpp", "true" if info.hpp else "false")]
        if serials is not None:
            data.append(("serial", str(serials[ident])))
        body = "".join(f'<data key="{k}">{v}</data>' for k, v in data)
        out.append(f"    <node id={quoteattr(ident)}>{body}</node>")
    for edge, prov in net.edges.items():
        out.append(f"    <edge source={quoteattr(edge.cited)} target={quoteattr(edge.citing)}>"
                   f'<data key="seeds">{escape(_seeds_text(prov))}</data></edge>')
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def report_dict(net: MainPathNetwork, meta: Mapping[str, Any],
                comparison: ComparisonReport | None = None,
                serials: Mapping[str, int] | None = None) -> dict:
    nodes = []
    for ident, info in net.nodes.items():
        node = {"id": ident, "layer": info.layer, "kp": info.kp, "gp": info.gp, "lp": info.lp, "hpp": info.hpp}
        if serials is not None:
            node["serial"] = serials[ident]
        nodes.append(node)
    report = {
        "meta": {"gp_cutoff": meta.get("gp_cutoff"), "lp_cutoff": meta.get("lp_cutoff"),
                 "scheme": meta.get("scheme", net.method)},
        "nodes": nodes,
        "edges": [
            {"cited": e.cited, "citing": e.citing,
             "seeds": [{"seed": p.seed, "direction": p.direction} for p in prov]}
            for e, prov in net.edges.items()
        ],
    }
    if comparison is not None:
        report["comparison"] = comparison.to_dict()
    return report


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def to_json(net: MainPathNetwork, meta: Mapping[str, Any], comparison: ComparisonReport | None = None,
            serials: Mapping[str, int] | None = None) -> str:
    return dumps_json(report_dict(net, meta, comparison, serials))


def read_json_report(text: str) -> tuple[MainPathNetwork, dict, dict | None]:
    """Inverse of :func:`to_json`: network, meta block, optional comparison block."""
    data = json.loads(text)
    nodes = {n["id"]: NodeInfo(n["layer"], n["kp"], n["gp"], n["lp"], n["hpp"]) for n in data["nodes"]}
    edges = {
        CitationEdge(e["cited"], e["citing"]): tuple(Provenance(s["seed"], s["direction"]) for s in e["seeds"])
        for e in data["edges"]
    }
    meta = data["meta"]
    net = MainPathNetwork(MappingProxyType(dict(sorted(nodes.items()))),
                          MappingProxyType(dict(sorted(edges.items()))), meta.get("scheme") or "GBFP")
    return net, meta, data.get("comparison")


def export_graph(net: MainPathNetwork, fmt: str, sink: IO[str], *, meta: Mapping[str, Any] | None = None,
                 comparison: ComparisonReport | None = None, serials: Mapping[str, int] | None = None) -> None:
    if fmt == "dot":
        sink.write(to_dot(net, serials))
    elif fmt == "graphml":
        sink.write(to_graphml(net, serials))
    elif fmt == "json":
        sink.write(to_json(net, meta or {}, comparison, serials))
    else:
        raise ValueError(f"unsupported graph format {fmt!r}; choose from {FORMATS}")
