"""Small named networks and the transcribed appendix score tables.

``figure3()`` rebuilds the persistence worked example: patent E on layer 2
spreads its knowledge to G, H, J, K and L. G also cites the startpoint A,
which is below E's layer and so does not dilute G; X1..X3 sit on E's layer
and do dilute G, H and K. The endpoints J, K, L retain 2/3, 1/2 and 3/4 of
E's knowledge, 23/12 in total.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from gbfp.graph import CitationNetwork

FIGURE3_EDGES = (
    ("A", "E"), ("A", "G"), ("A", "X1"), ("A", "X2"), ("A", "X3"),
    ("E", "G"), ("E", "H"), ("E", "J"), ("E", "K"), ("E", "L"),
    ("X1", "G"), ("X2", "H"), ("X3", "K"),
    ("G", "J"), ("H", "J"), ("H", "L"),
)


def figure3() -> CitationNetwork:
    return CitationNetwork.from_edges(FIGURE3_EDGES)


def chain() -> CitationNetwork:
    return CitationNetwork.from_edges([("A", "B"), ("B", "C")])


def diamond() -> CitationNetwork:
    return CitationNetwork.from_edges([("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")])


NETWORKS = {"figure3": figure3, "chain": chain, "diamond": diamond}


@dataclass(frozen=True)
class AppendixRow:
    patent_number: str
    serial: int
    layer: int
    application_year: int
    kp: float
    gp: float
    lp: float
    forward_citations: int
    title: str


def appendix_table(domain: str) -> list[AppendixRow]:
    """High-persistence patents as printed for ``"solar_pv"`` or ``"desalination"``."""
    text = resources.files("gbfp.data").joinpath(f"appendix_{domain}.csv").read_text(encoding="utf-8")
    rows = []
    for r in csv.DictReader(text.splitlines()):
        rows.append(AppendixRow(
            r["patent_number"], int(r["serial"]), int(r["layer"]), int(r["application_year"]),
            float(r["kp"]), float(r["gp"]), float(r["lp"]), int(r["forward_citations"]), r["title"],
        ))
    return rows
