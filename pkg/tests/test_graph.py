import io
import warnings

import networkx as nx
import pytest
from hypothesis import given

from conftest import dags, random_dag
from gbfp.errors import MetadataWarning, ParseError
from gbfp.graph import (
    CitationEdge,
    CitationNetwork,
    endpoints,
    load_citation_pairs,
    load_metadata,
    startpoints,
    validate,
    write_citation_pairs,
)


def csv_bytes(rows, header="citing_id,cited_id"):
    return io.BytesIO(("\n".join([header] + [f"{a},{b}" for a, b in rows]) + "\n").encode())


def test_load_chain():
    # rows are (citing, cited)
    net = load_citation_pairs(csv_bytes([("B", "A"), ("C", "B")]))
    assert len(net) == 3 and net.num_edges == 2
    assert startpoints(net) == {"A"}
    assert endpoints(net) == {"C"}
    assert list(net.edges()) == [CitationEdge("A", "B"), CitationEdge("B", "C")]


def test_duplicates_merged_and_reported():
    net = load_citation_pairs(csv_bytes([("B", "A"), ("B", "A")]))
    assert net.num_edges == 1
    assert len(validate(net).duplicate_edges) == 1


def test_self_loop_rejected_with_line():
    with pytest.raises(ParseError, match="self-loop at line 2"):
        load_citation_pairs(csv_bytes([("A", "A")]))


@pytest.mark.parametrize("body, line", [
    ("citing_id,cited_id\nA,B,C\n", 2),
    ("citing_id,cited_id\nB,A\n,A\n", 3),
    ("patent,cites\nB,A\n", 1),
])
def test_malformed_rows(body, line):
    with pytest.raises(ParseError) as info:
        load_citation_pairs(io.BytesIO(body.encode()))
    assert info.value.line == line


def test_text_and_path_sources(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("citing_id,cited_id\nB,A\n\n")
    assert load_citation_pairs(p).num_edges == 1
    assert load_citation_pairs(io.StringIO("citing_id,cited_id\nB,A\n")).num_edges == 1


def test_ids_are_case_sensitive():
    net = load_citation_pairs(csv_bytes([("b", "B")]))
    assert net.ids == ("B", "b")


def test_metadata_attached(chain):
    meta = 'patent_id,patent_number,application_date,title\nA,US1,1977,"t, with comma"\nB,,1980-02-03,\n'
    net = load_metadata(chain, io.BytesIO(meta.encode()))
    assert net.records["A"].title == "t, with comma"
    assert net.records["A"].application_date.year == 1977
    assert net.records["B"].application_date.isoformat() == "1980-02-03"
    assert net.records["C"].title is None
    assert chain.records["A"].title is None


def test_metadata_unknown_id_warns(chain):
    meta = "patent_id,patent_number,application_date,title\nZ,US9,2000,x\n"
    with pytest.warns(MetadataWarning) as rec:
        net = load_metadata(chain, io.BytesIO(meta.encode()))
    assert len(rec) == 1
    assert "Z" not in net and dict(net.records) == dict(chain.records)


def test_metadata_bad_date_warns(chain):
    meta = "patent_id,patent_number,application_date,title\nA,US1,19xx,x\n"
    with pytest.warns(MetadataWarning, match="bad date"):
        net = load_metadata(chain, io.BytesIO(meta.encode()))
    assert net.records["A"].application_date is None and net.records["A"].title == "x"


def test_metadata_empty_stream(chain):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert load_metadata(chain, io.BytesIO(b"")) is chain


def test_validate_examples(chain, diamond):
    report = validate(chain)
    assert report.cycle is None and not report.duplicate_edges
    assert validate(diamond).cycle is None
    assert validate(CitationNetwork.from_edges([("A", "B"), ("B", "A")])).cycle == ["A", "B"]


def test_cycle_witness_is_a_cycle():
    net = CitationNetwork.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "b"), ("x", "a")])
    cyc = validate(net).cycle
    assert cyc == ["b", "c", "d"]
    g = nx.DiGraph(list(net.edges()))
    for u, v in zip(cyc, cyc[1:] + cyc[:1]):
        assert g.has_edge(u, v)


def test_lenient_self_loops_reported():
    net = CitationNetwork.from_edges([("A", "A"), ("A", "B")], strict=False)
    assert validate(net).self_loops == [CitationEdge("A", "A")]
    with pytest.raises(ValueError):
        CitationNetwork.from_edges([("A", "A")])


def test_start_and_end_examples(diamond):
    assert startpoints(diamond) == {"A"} and endpoints(diamond) == {"D"}
    two = CitationNetwork.from_edges([("A", "B"), ("C", "D")])
    assert startpoints(two) == {"A", "C"}
    star = CitationNetwork.from_edges([("A", "B"), ("A", "C")])
    assert endpoints(star) == {"B", "C"}


def test_isolated_nodes():
    net = CitationNetwork.from_edges([("A", "B")], nodes=["Z"])
    assert validate(net).isolated_nodes == 1
    assert startpoints(net) & endpoints(net) == {"Z"}


@given(dags())
def test_structural_invariants(net):
    order = net.topological_order()
    pos = {v: i for i, v in enumerate(order)}
    for u, outs in enumerate(net.forward):
        for v in outs:
            assert pos[u] < pos[v]
    isolated = {i for i in net.ids if not net.cited(i) and not net.citing(i)}
    assert startpoints(net) & endpoints(net) == isolated
    assert sum(net.backward_degree(i) for i in net.ids) == sum(net.forward_degree(i) for i in net.ids) == net.num_edges


@pytest.mark.parametrize("seed", range(20))
def test_acyclicity_agrees_with_networkx(seed):
    net = random_dag(seed)
    extra = list(net.edges())[:1]
    cyclic = CitationNetwork.from_edges(list(net.edges()) + [(b, a) for a, b in extra], nodes=net.ids)
    for candidate in (net, cyclic):
        g = nx.DiGraph()
        g.add_nodes_from(candidate.ids)
        g.add_edges_from(candidate.edges())
        assert candidate.is_acyclic() == nx.is_directed_acyclic_graph(g)
        assert (validate(candidate).cycle is None) == candidate.is_acyclic()


@given(dags())
def test_csv_round_trip(net):
    buf = io.StringIO()
    write_citation_pairs(net.edges(), buf)
    again = load_citation_pairs(io.BytesIO(buf.getvalue().encode()))
    assert set(again.edges()) == set(net.edges())
