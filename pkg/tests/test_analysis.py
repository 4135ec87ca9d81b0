import random

import pytest

from gbfp.analysis import ComparisonReport, SynthParams, compare_networks, generate_synthetic
from gbfp.baseline import baseline_forward_paths
from gbfp.errors import ParameterError
from gbfp.graph import startpoints, validate
from gbfp.layering import assign_layers
from gbfp.mainpath import build_main_paths, select_hpps
from gbfp.persistence import compute_all_persistence


def run(net):
    scores = compute_all_persistence(net, assign_layers(net))
    hpps = select_hpps(scores)
    return build_main_paths(net, scores, hpps), baseline_forward_paths(net, scores, hpps=hpps), hpps


def test_published_counts_solar_pv():
    r = ComparisonReport.from_counts(159, 192, 1821, 1729, 58, 58, 44)
    assert r.complexity_ratio == pytest.approx(11.45, abs=0.01)
    assert r.hpp_retention_baseline == pytest.approx(0.759, abs=0.001)
    assert r.hpp_retention_gbfp == 1.0


def test_published_counts_desalination():
    r = ComparisonReport.from_counts(115, 134, 1774, 1508, 50, 50, 41)
    assert r.hpp_retention_baseline == pytest.approx(0.82, abs=0.001)


def test_zero_sized_gbfp_has_no_ratio():
    r = ComparisonReport.from_counts(0, 0, 10, 9, 0, 0, 0)
    assert r.complexity_ratio is None and r.hpp_retention_gbfp == 1.0


def test_identical_inputs():
    net = generate_synthetic(SynthParams(6, 15, 3.0, 1.0, 2))
    gbfp, _, hpps = run(net)
    r = compare_networks(gbfp, gbfp, hpps)
    assert r.complexity_ratio == 1.0
    assert r.hpp_retention_gbfp == r.hpp_retention_baseline == 1.0
    assert r.shared_nodes == gbfp.node_count and r.shared_edges == gbfp.edge_count


def test_report_fields_on_synthetic():
    net = generate_synthetic(SynthParams(10, 40, 3.0, 1.0, 5))
    gbfp, base, hpps = run(net)
    r = compare_networks(gbfp, base, hpps)
    assert r.hpp_in_gbfp == r.hpp_total == len(hpps)
    assert 0.0 <= r.hpp_retention_baseline <= 1.0
    assert r.missing_hpps_baseline == sorted(set(hpps.members) - set(base.nodes))
    assert r.hpp_in_baseline == r.hpp_total - len(r.missing_hpps_baseline)
    assert len(r.csv_row()) == len(ComparisonReport.CSV_FIELDS)


def test_generator_counts():
    net = generate_synthetic(SynthParams(5, 10, 3.0, 0.0, 42))
    assert len(net) == 50
    assert validate(net).cycle is None
    assert len(startpoints(net)) == 10
    assert startpoints(net) == {f"P{i:02d}" for i in range(10)}


def test_generator_deterministic():
    p = SynthParams(5, 10, 3.0, 0.5, 42)
    assert list(generate_synthetic(p).edges()) == list(generate_synthetic(p).edges())
    assert list(generate_synthetic(p).edges()) != list(generate_synthetic(SynthParams(5, 10, 3.0, 0.5, 43)).edges())


def test_generator_mean_citations():
    net = generate_synthetic(SynthParams(30, 100, 4.0, 0.0, 1))
    later = [v for v in net.ids if net.backward_degree(v) > 0]
    mean = sum(net.backward_degree(v) for v in later) / len(later)
    assert mean == pytest.approx(4.0, abs=0.15)


def test_attachment_bias_concentrates_citations():
    flat = generate_synthetic(SynthParams(20, 50, 3.0, 0.0, 9))
    biased = generate_synthetic(SynthParams(20, 50, 3.0, 5.0, 9))
    top = lambda net: max(net.forward_degree(v) for v in net.ids)  # noqa: E731
    assert top(biased) > top(flat)


@pytest.mark.parametrize("kwargs", [
    {"layer_count": 0}, {"nodes_per_layer": 0}, {"mean_backward_citations": 0.0},
    {"attachment_bias": -1.0}, {"rng_seed": -1}, {"rng_seed": 2**64},
])
def test_generator_parameter_errors(kwargs):
    with pytest.raises(ParameterError):
        SynthParams(**kwargs)


def test_generator_always_acyclic():
    rng = random.Random(0)
    for _ in range(1000):
        p = SynthParams(rng.randint(1, 6), rng.randint(1, 6), rng.uniform(0.1, 5.0),
                        rng.uniform(0.0, 3.0), rng.getrandbits(64))
        net = generate_synthetic(p)
        assert len(net) == p.layer_count * p.nodes_per_layer
        assert validate(net).cycle is None
        if p.layer_count > 1:
            assert len(startpoints(net)) == p.nodes_per_layer


def test_gbfp_smaller_than_baseline_at_desk_scale():
    gbfp, base, hpps = run(generate_synthetic(SynthParams(20, 100, 4.0, 1.0, 7)))
    assert gbfp.node_count < base.node_count
