import json

import pytest

from entcap.fixtures import FIXTURE_NAMES, diamond_network, fixture, fixture_text, path_network
from entcap.netmodel import (
    Edge,
    NetworkError,
    TooLargeError,
    all_bidirectional,
    cut_value,
    dump_network,
    is_acyclic,
    load_network,
    min_cut,
    network,
    orient,
    scale,
    tensor_power,
    validate,
)


def single_edge(dim):
    return network(["s", "t"], [Edge("e", "s", "t", dim)], ["s"], ["t"])


class TestValidate:
    def test_wellformed_diamond(self):
        assert validate(diamond_network(2, 3, 3, 2, 2)) == []

    def test_dim_zero(self):
        net = network(["s", "t"], [Edge("e", "s", "t", 0)], ["s"], ["t"])
        assert any("dimension < 1" in e for e in validate(net))

    def test_overlapping_terminals(self):
        net = network(["s"], [], ["s"], ["s"])
        assert any("overlap" in e for e in validate(net))

    def test_unknown_endpoint(self):
        net = network(["s", "t"], [Edge("e", "s", "x", 2)], ["s"], ["t"])
        assert any("unknown endpoint" in e for e in validate(net))

    def test_empty_terminals(self):
        net = network(["s", "t"], [], [], ["t"])
        assert any("empty source" in e for e in validate(net))


class TestMinCut:
    def test_fig2_counterexample(self):
        assert min_cut(fixture("fig2_counterexample")).value == 15

    @pytest.mark.parametrize("d5", range(2, 11))
    def test_diamond_family(self, d5):
        assert min_cut(diamond_network(2, 3, 3, 2, d5)).value == 6

    def test_single_edge(self):
        cut = min_cut(single_edge(7))
        assert cut.value == 7
        assert cut.s_side == frozenset({"s"})

    @pytest.mark.parametrize("a,b", [(2, 5), (5, 2), (3, 3)])
    def test_path_bottleneck(self, a, b):
        assert min_cut(path_network(a, b)).value == min(a, b)

    def test_scaled_diamond(self):
        assert min_cut(scale(diamond_network(2, 3, 3, 2, 2), 2)).value == 24

    def test_witness_recomputes(self):
        for name in ("fig2_counterexample", "n_d5_4", "path_2_3"):
            net = fixture(name)
            cut = min_cut(net)
            assert cut_value(net, cut.s_side) == cut.value

    def test_deterministic_witness_tiebreak(self):
        # Both {s} and {s,n1,n2} attain 15 on the counterexample; the
        # lexicographically smaller sorted vertex tuple wins.
        cut = min_cut(fixture("fig2_counterexample"))
        assert sorted(cut.s_side) == ["n1", "n2", "s"]

    def test_self_loop_never_counts(self):
        net = network(
            ["s", "n", "t"],
            [Edge("a", "s", "n", 3), Edge("b", "n", "t", 3), Edge("l", "n", "n", 99)],
            ["s"],
            ["t"],
        )
        assert min_cut(net).value == 3

    def test_dim_one_edges_are_inert(self):
        with_triv = diamond_network(2, 3, 3, 2, 1)
        assert min_cut(with_triv).value == min(4, 6)

    def test_too_large(self):
        dims = [2] * 25
        with pytest.raises(TooLargeError):
            min_cut(path_network(*dims))

    def test_invalid_network_rejected(self):
        net = network(["s", "t"], [Edge("e", "s", "t", 0)], ["s"], ["t"])
        with pytest.raises(NetworkError):
            min_cut(net)

    def test_relabel_invariance(self):
        net = diamond_network(5, 3, 3, 5, 2)
        relabeled = network(
            ["alpha", "zz1", "zz2", "omega"],
            [
                Edge("d1", "alpha", "zz1", 5),
                Edge("d2", "alpha", "zz2", 3),
                Edge("d3", "zz1", "omega", 3),
                Edge("d4", "zz2", "omega", 5),
                Edge("d5", "zz1", "zz2", 2),
            ],
            ["alpha"],
            ["omega"],
        )
        assert min_cut(net).value == min_cut(relabeled).value

    def test_edge_reorder_invariance(self):
        net = fixture("fig2_counterexample")
        shuffled = network(
            net.vertices, tuple(reversed(net.edges)), net.sources, net.sinks
        )
        assert min_cut(net).value == min_cut(shuffled).value


class TestPowerAndScale:
    def test_tensor_power_dims(self):
        net = tensor_power(diamond_network(2, 3, 3, 2, 2), 2)
        assert [e.dim for e in net.edges] == [4, 9, 9, 4, 4]

    def test_power_one_is_identity(self):
        net = diamond_network(2, 3, 3, 2, 2)
        assert tensor_power(net, 1) == net

    def test_scale_dims(self):
        net = scale(diamond_network(2, 3, 3, 2, 2), 2)
        assert [e.dim for e in net.edges] == [4, 6, 6, 4, 4]

    def test_scale_one_is_identity(self):
        net = diamond_network(2, 3, 3, 2, 2)
        assert scale(net, 1) == net

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_mincut_multiplicative_on_paths(self, n):
        net = path_network(3, 5)
        assert min_cut(tensor_power(net, n)).value == min(3, 5) ** n


class TestOrient:
    def test_flow_orientation_acyclic(self):
        net = orient(
            diamond_network(2, 3, 3, 2, 2),
            {"d1": "uv", "d2": "uv", "d3": "uv", "d4": "uv", "d5": "vu"},
        )
        assert is_acyclic(net)

    def test_opposed_parallel_pair_is_cyclic(self):
        net = network(
            ["s", "n1", "n2", "t"],
            [
                Edge("d1", "s", "n1", 2, "uv"),
                Edge("d2", "s", "n2", 3, "uv"),
                Edge("d3", "n1", "t", 3, "uv"),
                Edge("d4", "n2", "t", 2, "uv"),
                Edge("d5a", "n2", "n1", 2, "uv"),
                Edge("d5b", "n1", "n2", 2, "uv"),
            ],
            ["s"],
            ["t"],
        )
        assert not is_acyclic(net)

    def test_empty_assignment_identity(self):
        directed = orient(
            diamond_network(2, 3, 3, 2, 2),
            {eid: "uv" for eid in ("d1", "d2", "d3", "d4", "d5")},
        )
        assert orient(directed, {}) == directed

    def test_unknown_edge_rejected(self):
        with pytest.raises(NetworkError):
            orient(diamond_network(2, 3, 3, 2, 2), {"nope": "uv"})

    def test_uncovered_undirected_rejected(self):
        with pytest.raises(NetworkError):
            orient(diamond_network(2, 3, 3, 2, 2), {"d1": "uv"})

    def test_orientation_never_beats_undirected(self):
        import itertools

        net = diamond_network(2, 3, 3, 2, 4)
        undirected_mc = min_cut(net).value
        eids = [e.id for e in net.edges]
        for dirs in itertools.product(("uv", "vu"), repeat=len(eids)):
            oriented = orient(net, dict(zip(eids, dirs)))
            assert min_cut(oriented).value <= undirected_mc

    def test_bidirectional_attains_undirected(self):
        for name in ("fig2_counterexample", "n_d5_3", "path_2_3"):
            net = fixture(name)
            assert min_cut(all_bidirectional(net)).value == min_cut(net).value


class TestJson:
    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_fixture_roundtrip_byte_identical(self, name):
        text = fixture_text(name)
        assert dump_network(load_network(text)) == text

    def test_unknown_network_field_rejected(self):
        obj = json.loads(fixture_text("path_2_3"))
        obj["extra"] = 1
        with pytest.raises(NetworkError, match="unknown network fields"):
            load_network(json.dumps(obj))

    def test_unknown_edge_field_rejected(self):
        obj = json.loads(fixture_text("path_2_3"))
        obj["edges"][0]["weight"] = 1.0
        with pytest.raises(NetworkError, match="unknown edge fields"):
            load_network(json.dumps(obj))

    def test_missing_field_rejected(self):
        obj = json.loads(fixture_text("path_2_3"))
        del obj["sources"]
        with pytest.raises(NetworkError, match="missing network field"):
            load_network(json.dumps(obj))

    def test_stage_pairs_roundtrip(self):
        text = fixture_text("n4_split_2x2")
        net = load_network(text)
        assert net.stage_pairs == (("n1_early", "n1_late"), ("n2_early", "n2_late"))
        assert dump_network(net) == text
