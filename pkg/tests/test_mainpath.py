from types import MappingProxyType

import pytest
from hypothesis import given, settings

from conftest import dags
from gbfp.analysis import SynthParams, generate_synthetic
from gbfp.errors import ParameterError
from gbfp.graph import CitationEdge, CitationNetwork
from gbfp.layering import assign_layers
from gbfp.mainpath import (
    Cutoffs,
    HppSet,
    backward_search,
    build_main_paths,
    forward_search,
    select_hpps,
    step_select,
)
from gbfp.persistence import PersistenceScores, compute_all_persistence


def scores_from(gp, lp=None, layer=None):
    lp = lp or dict(gp)
    layer = layer or {k: 1 for k in gp}
    return PersistenceScores(MappingProxyType(dict(gp)), MappingProxyType(dict(gp)), MappingProxyType(dict(lp)),
                             max(gp.values()), MappingProxyType({}), MappingProxyType(layer))


def pipeline(net, cutoffs=Cutoffs()):
    scores = compute_all_persistence(net, assign_layers(net), workers=1)
    return scores, select_hpps(scores, cutoffs)


def test_cutoff_defaults_and_range():
    c = Cutoffs()
    assert (c.gp_cutoff, c.lp_cutoff) == (0.3, 0.8)
    for bad in (-0.1, 1.5):
        with pytest.raises(ParameterError):
            Cutoffs(gp_cutoff=bad)
        with pytest.raises(ParameterError):
            Cutoffs(lp_cutoff=bad)


def test_select_hpps_appendix_rows():
    s = scores_from({"US4377723": 1.0, "US5858121": 0.141, "other": 0.1},
                    {"US4377723": 1.0, "US5858121": 1.0, "other": 0.5})
    hpps = select_hpps(s)
    assert hpps.members == {"US4377723", "US5858121"}
    assert hpps.cutoffs == Cutoffs()


def test_boundary_values_follow_inclusive_flag():
    s = scores_from({"a": 0.3, "b": 0.1}, {"a": 0.1, "b": 0.8})
    assert select_hpps(s).members == {"a", "b"}
    assert select_hpps(s, Cutoffs(inclusive=False)).members == set()


def test_step_select_hpp_links_always_chosen():
    # HPP z (GP 0.2, LP 1.0) cites two HPPs and one plain patent of higher GP than one of them
    net = CitationNetwork.from_edges([("h1", "z"), ("h2", "z"), ("n", "z")])
    s = scores_from({"z": 0.2, "h1": 0.5, "h2": 0.35, "n": 0.4}, {"z": 1.0, "h1": 0.9, "h2": 0.9, "n": 0.5})
    hpps = HppSet(frozenset({"z", "h1", "h2"}), Cutoffs())
    assert step_select(net, s, hpps, "z", "backward") == {"h1", "h2"}


def test_step_select_plain_neighbor_then_continue():
    # HPP (GP 0.4, LP 0.8) with no HPP neighbor; best plain neighbor has GP 0.2
    net = CitationNetwork.from_edges([("s", "p"), ("s", "q"), ("p", "r"), ("p", "u")])
    s = scores_from({"s": 0.4, "p": 0.2, "q": 0.1, "r": 0.05, "u": 0.0},
                    {"s": 0.8, "p": 0.25, "q": 0.1, "r": 0.1, "u": 0.0})
    hpps = HppSet(frozenset({"s"}), Cutoffs())
    assert step_select(net, s, hpps, "s", "forward") == {"p"}
    assert forward_search(net, s, hpps, "s") == {CitationEdge("s", "p"), CitationEdge("p", "r")}


def test_step_select_ties_and_empty():
    net = CitationNetwork.from_edges([("c", "x"), ("c", "y"), ("c", "w")])
    s = scores_from({"c": 0.9, "x": 0.5, "y": 0.5, "w": 0.2})
    none = HppSet(frozenset(), Cutoffs())
    assert step_select(net, s, none, "c", "forward") == {"x", "y"}
    assert step_select(net, s, none, "c", "backward") == set()
    with pytest.raises(ValueError):
        step_select(net, s, none, "c", "sideways")


def test_searches_on_chain(chain):
    s, _ = pipeline(chain)
    hpps = HppSet(frozenset("ABC"), Cutoffs())
    assert backward_search(chain, s, hpps, "A") == set()
    assert backward_search(chain, s, hpps, "C") == {CitationEdge("B", "C"), CitationEdge("A", "B")}
    assert forward_search(chain, s, hpps, "C") == set()
    assert forward_search(chain, s, hpps, "A") == {CitationEdge("A", "B"), CitationEdge("B", "C")}


def test_backward_search_diamond_tie(diamond):
    s, _ = pipeline(diamond)
    assert s.gp["B"] == s.gp["C"] == 0.5
    hpps = HppSet(frozenset({"D"}), Cutoffs())
    assert backward_search(diamond, s, hpps, "D") == {
        CitationEdge("B", "D"), CitationEdge("C", "D"), CitationEdge("A", "B"), CitationEdge("A", "C")}


def test_build_main_paths_examples(chain):
    s, hpps = pipeline(chain, Cutoffs(1.0, 1.0, inclusive=False))
    assert len(hpps) == 0
    empty = build_main_paths(chain, s, hpps)
    assert empty.node_count == 0 and empty.edge_count == 0
    net = build_main_paths(chain, s, HppSet(frozenset({"B"}), Cutoffs()))
    assert set(net.nodes) == {"A", "B", "C"}
    assert set(net.edges) == {CitationEdge("A", "B"), CitationEdge("B", "C")}
    assert net.edges[CitationEdge("A", "B")] == (("B", "backward"),)
    assert [k for k, v in net.nodes.items() if v.hpp] == ["B"]


def test_isolated_hpp_kept():
    net = CitationNetwork.from_edges([("A", "B")], nodes=["Z"])
    s, _ = pipeline(net)
    mp = build_main_paths(net, s, HppSet(frozenset({"Z"}), Cutoffs()))
    assert set(mp.nodes) == {"Z"} and mp.edge_count == 0


def check_gbfp_invariants(net, scores, hpps):
    mp = build_main_paths(net, scores, hpps)
    assert hpps.members <= set(mp.nodes)
    for e in net.edges():
        if e.cited in hpps and e.citing in hpps:
            assert e in mp.edges
    for e, prov in mp.edges.items():
        assert prov and e.citing in net.citing(e.cited)
    union = set()
    for seed in hpps.members:
        b, f = backward_search(net, scores, hpps, seed), forward_search(net, scores, hpps, seed)
        assert len(b) <= net.num_edges and len(f) <= net.num_edges
        union |= b | f
    assert union == set(mp.edges)
    return mp


@settings(max_examples=60)
@given(dags())
def test_gbfp_invariants_property(net):
    scores, hpps = pipeline(net)
    check_gbfp_invariants(net, scores, hpps)


@pytest.mark.parametrize("seed", range(5))
def test_gbfp_invariants_synthetic(seed):
    net = generate_synthetic(SynthParams(8, 30, 3.0, 1.0, seed))
    scores, hpps = pipeline(net)
    mp = check_gbfp_invariants(net, scores, hpps)
    assert build_main_paths(net, scores, hpps) == mp


@given(dags())
def test_monotone_cutoffs(net):
    scores, low = pipeline(net)
    high = select_hpps(scores, Cutoffs(0.5, 0.9))
    assert high.members <= low.members
