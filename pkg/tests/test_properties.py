"""Hypothesis property suites over randomly generated small networks."""

import numpy as np
from hypothesis import given, settings, strategies as st

from entcap.codingsearch import SearchConfig, c1_exact, exhaustive_achievable, is_valid
from entcap.fixtures import path_network
from entcap.netmodel import (
    all_bidirectional,
    cut_value,
    is_acyclic,
    min_cut,
    network,
    orient,
    random_network,
    tensor_power,
)
from entcap.tnrank import estimate_r1
from entcap.transforms import round_networks

SUITE = settings(max_examples=60, deadline=None)


def net_from_seed(seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    return random_network(rng)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@SUITE
@given(seeds)
def test_mincut_witness_recomputes(seed):
    net = net_from_seed(seed)
    cut = min_cut(net)
    assert cut_value(net, cut.s_side) == cut.value


@SUITE
@given(seeds, st.integers(min_value=1, max_value=3))
def test_mincut_multiplicative(seed, n):
    net = net_from_seed(seed)
    assert min_cut(tensor_power(net, n)).value == min_cut(net).value ** n


@SUITE
@given(seeds)
def test_edge_reordering_invariance(seed):
    net = net_from_seed(seed)
    shuffled = network(
        net.vertices,
        tuple(sorted(net.edges, key=lambda e: e.dim)),
        net.sources,
        net.sinks,
        net.stage_pairs,
    )
    assert min_cut(net).value == min_cut(shuffled).value


@SUITE
@given(seeds)
def test_rank_below_mincut(seed):
    net = net_from_seed(seed)
    est = estimate_r1(net, trials=1, seed=seed)
    assert est.r1_lower <= min_cut(net).value


@SUITE
@given(seeds)
def test_bidirectional_matches_undirected_mincut(seed):
    net = net_from_seed(seed)
    assert min_cut(all_bidirectional(net)).value == min_cut(net).value


@SUITE
@given(seeds)
def test_oriented_mincut_never_larger(seed):
    net = net_from_seed(seed)
    oriented = orient(net, {e.id: "uv" for e in net.edges if not e.is_directed})
    assert min_cut(oriented).value <= min_cut(net).value


@SUITE
@given(seeds)
def test_coding_witness_is_valid(seed):
    net = net_from_seed(seed)
    oriented = orient(net, {e.id: "uv" for e in net.edges if not e.is_directed})
    if not is_acyclic(oriented):
        return
    res = exhaustive_achievable(oriented, SearchConfig(alphabet_size=2, budget=10**6))
    if res.status == "witness":
        assert is_valid(oriented, res.witness)


@given(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_series_path_c1_is_bottleneck(dims):
    net = path_network(*dims)
    oriented = orient(net, {e.id: "uv" for e in net.edges})
    assert c1_exact(oriented, max(dims) + 1) == min(dims)


@given(
    st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=4)
)
@settings(max_examples=100, deadline=None)
def test_rounding_brackets(dim, n):
    pair = round_networks(path_network(dim), n)
    low, high = pair.lower.edges[0].dim, pair.upper.edges[0].dim
    assert low <= dim**n <= high <= 2 * low
    assert low.bit_count() == 1 and high.bit_count() == 1
