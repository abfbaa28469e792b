import math
import random
from fractions import Fraction

import pytest

from lexchoice.cooc import SignificanceThresholds, pair_key
from lexchoice.network import (
    CoocNetwork,
    InvalidRootError,
    NetworkCaps,
    WordNotInNetworkError,
    build_network,
    max_sig_shortest_path,
    read_network,
    significance,
    write_network,
)

from conftest import significant_counts
from oracles import bfs_depths, enumerate_shortest_path_scores, random_layered_network


def chain_network(weights: list[float], root: str = "r") -> CoocNetwork:
    words = [root] + [f"n{i}" for i in range(1, len(weights) + 1)]
    depths = {w: i for i, w in enumerate(words)}
    edges = {pair_key(words[i], words[i + 1]): weights[i] for i in range(len(weights))}
    return CoocNetwork(
        root=root,
        max_order=len(weights),
        depths=depths,
        edges=edges,
        total_tokens=10_000,
        half_width=4,
    )


def test_build_bfs_depths():
    counts = significant_counts([("r", "a"), ("r", "b"), ("a", "c")])
    net = build_network("r", counts, max_order=2)
    assert net.depths == {"r": 0, "a": 1, "b": 1, "c": 2}
    assert set(net.edges) == {("a", "r"), ("b", "r"), ("a", "c")}


def test_build_depth_zero_is_root_only():
    counts = significant_counts([("r", "a")])
    net = build_network("r", counts, max_order=0)
    assert net.depths == {"r": 0}
    assert net.edges == {}


def test_build_respects_order_bound():
    counts = significant_counts([("r", "a"), ("a", "b"), ("b", "c")])
    net = build_network("r", counts, max_order=2)
    assert "c" not in net.depths
    assert net.depths["b"] == 2


def test_build_excludes_insignificant_edges():
    counts = significant_counts([("r", "a")])
    counts.pairs[("b", "r")] = 1  # t ~ 0.2, below threshold
    counts.freq.setdefault("b", 50)
    counts._adjacency = None
    net = build_network("r", counts, max_order=2)
    assert "b" not in net.depths


def test_build_keeps_lateral_and_cross_edges():
    counts = significant_counts([("r", "a"), ("r", "b"), ("a", "b"), ("a", "c"), ("b", "c")])
    net = build_network("r", counts, max_order=2)
    assert net.depths == {"r": 0, "a": 1, "b": 1, "c": 2}
    assert ("a", "b") in net.edges  # lateral, stored though unused by paths
    assert ("a", "c") in net.edges and ("b", "c") in net.edges


def test_build_unknown_root():
    counts = significant_counts([("r", "a")])
    with pytest.raises(InvalidRootError):
        build_network("missing", counts)


def test_build_stopped_root():
    counts = significant_counts([("r", "a")], extra_freq={"busy": 5000})
    with pytest.raises(InvalidRootError):
        build_network("busy", counts)


def test_build_word_enters_at_first_depth_reached():
    # c reachable at depth 1 from r and also via a; depth must be 1
    counts = significant_counts([("r", "a"), ("r", "c"), ("a", "c")])
    net = build_network("r", counts, max_order=3)
    assert net.depths["c"] == 1


def test_node_cap_admits_strongest_first():
    counts = significant_counts([("r", "a"), ("r", "b"), ("r", "c")])
    counts.pairs[("b", "r")] = 30  # strongest neighbor
    net = build_network("r", counts, caps=NetworkCaps(max_nodes=2, max_edges=100), max_order=2)
    assert set(net.depths) == {"r", "b"}
    assert net.truncated == "nodes"


def test_edge_cap_drops_weakest_keeps_parents():
    counts = significant_counts([("r", "a"), ("r", "b"), ("a", "b")])
    counts.pairs[("a", "r")] = 30
    counts.pairs[("b", "r")] = 25
    net = build_network("r", counts, caps=NetworkCaps(max_nodes=10, max_edges=2), max_order=2)
    assert set(net.edges) == {("a", "r"), ("b", "r")}  # lateral a-b dropped
    assert net.truncated == "edges"
    assert set(net.depths) == {"r", "a", "b"}


def test_edge_cap_tighter_than_parent_edges_trims_nodes():
    counts = significant_counts([("r", "a"), ("r", "b")])
    counts.pairs[("a", "r")] = 30
    net = build_network("r", counts, caps=NetworkCaps(max_nodes=10, max_edges=1), max_order=1)
    assert set(net.depths) == {"r", "a"}  # weakest parent edge's node trimmed
    assert set(net.edges) == {("a", "r")}
    assert net.truncated == "edges"


def test_node_cap_at_layer_boundary_still_flags():
    # cap exactly filled after depth 1; the depth-2 candidate is cut
    counts = significant_counts([("r", "a"), ("a", "b")])
    net = build_network("r", counts, max_order=2, caps=NetworkCaps(max_nodes=2, max_edges=100))
    assert net.depths == {"r": 0, "a": 1}
    assert net.truncated == "nodes"


def test_untruncated_build_has_no_flag():
    counts = significant_counts([("r", "a")])
    net = build_network("r", counts, max_order=1)
    assert net.truncated is None


@pytest.mark.parametrize("seed", range(10))
def test_depths_match_independent_bfs(seed):
    rng = random.Random(seed)
    words = [f"v{i}" for i in range(rng.randint(3, 12))]
    edges = []
    for a in words:
        for b in words:
            if a < b and rng.random() < 0.3:
                edges.append((a, b))
    if not any("v0" in e for e in edges):
        edges.append(("v0", words[1]))
    counts = significant_counts(edges)
    max_order = rng.randint(0, 4)
    net = build_network("v0", counts, max_order=max_order)

    adjacency: dict[str, set[str]] = {}
    for a, b in edges:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    expected = bfs_depths("v0", adjacency, max_order)
    assert net.depths == expected


def test_unique_path_returned():
    net = chain_network([2.0, 2.56])
    path = max_sig_shortest_path(net, "n2")
    assert path.words == ("r", "n1", "n2")
    assert path.order == 2


def test_path_prefers_higher_discounted_sum():
    # r-a-c scores 2 + 2/2 = 3.0; r-b-c scores 3 + 1/2 = 3.5
    net = CoocNetwork(
        root="r",
        max_order=2,
        depths={"r": 0, "a": 1, "b": 1, "c": 2},
        edges={
            pair_key("r", "a"): 2.0,
            pair_key("a", "c"): 2.0,
            pair_key("r", "b"): 3.0,
            pair_key("b", "c"): 1.0,
        },
        total_tokens=10_000,
        half_width=4,
    )
    assert max_sig_shortest_path(net, "c").words == ("r", "b", "c")
    assert significance(net, "c").value == pytest.approx(3.5 / 8)


def test_path_tie_breaks_lexicographically():
    net = CoocNetwork(
        root="r",
        max_order=2,
        depths={"r": 0, "a": 1, "b": 1, "c": 2},
        edges={
            pair_key("r", "a"): 2.0,
            pair_key("a", "c"): 1.0,
            pair_key("r", "b"): 2.0,
            pair_key("b", "c"): 1.0,
        },
        total_tokens=10_000,
        half_width=4,
    )
    assert max_sig_shortest_path(net, "c").words == ("r", "a", "c")


def test_path_for_missing_word_raises():
    net = chain_network([2.0])
    with pytest.raises(WordNotInNetworkError):
        max_sig_shortest_path(net, "ghost")


def test_path_to_root_is_trivial():
    net = chain_network([2.0])
    assert max_sig_shortest_path(net, "r").words == ("r",)


@pytest.mark.parametrize("seed", range(30))
def test_dp_matches_exhaustive_enumeration(seed):
    rng = random.Random(1000 + seed)
    net = random_layered_network(rng)
    for word in sorted(net.depths):
        if word == net.root:
            continue
        best_score, _ = max(enumerate_shortest_path_scores(net, word))
        d = net.depths[word]
        assert significance(net, word).value == best_score / d**3


def test_significance_depth1_equals_edge_t_exactly():
    net = chain_network([3.917213])
    score = significance(net, "n1")
    assert score.value == 3.917213  # bitwise, not approximate
    assert score.order == 1


def test_significance_worked_two_hop_chain():
    net = chain_network([2.00, 2.56])
    score = significance(net, "n2")
    assert score.value == pytest.approx(0.41, abs=1e-9)
    assert score.order == 2


def test_significance_unreachable_and_root_are_zero():
    net = chain_network([2.0])
    assert significance(net, "ghost") == (0.0, None)
    assert significance(net, "r") == (0.0, 0)


def test_order_penalty_strictly_decreasing():
    c = 3.0
    net = chain_network([c] * 5)
    values = [significance(net, f"n{d}").value for d in range(1, 6)]
    exact = [
        Fraction(3) * sum(Fraction(1, i) for i in range(1, d + 1)) / d**3
        for d in range(1, 6)
    ]
    for got, want in zip(values, exact):
        assert got == pytest.approx(float(want), rel=1e-12)
    assert all(a > b for a, b in zip(exact, exact[1:]))
    assert all(a > b for a, b in zip(values, values[1:]))


def test_lateral_edges_do_not_affect_paths():
    base = {
        pair_key("r", "a"): 2.0,
        pair_key("r", "b"): 2.5,
        pair_key("a", "c"): 3.0,
    }
    plain = CoocNetwork("r", 2, {"r": 0, "a": 1, "b": 1, "c": 2}, dict(base), 10_000, 4)
    lateral = dict(base)
    lateral[pair_key("a", "b")] = 9.9
    with_lateral = CoocNetwork("r", 2, {"r": 0, "a": 1, "b": 1, "c": 2}, lateral, 10_000, 4)
    assert significance(plain, "c") == significance(with_lateral, "c")
    assert max_sig_shortest_path(plain, "c") == max_sig_shortest_path(with_lateral, "c")


def test_network_validation_rejects_broken_structures():
    with pytest.raises(ValueError):
        CoocNetwork("r", 1, {"r": 1}, {}, 10, 4)  # root not at depth 0
    with pytest.raises(ValueError):
        CoocNetwork("r", 1, {"r": 0, "a": 1}, {}, 10, 4)  # a has no parent edge
    with pytest.raises(ValueError):
        CoocNetwork(
            "r", 2, {"r": 0, "a": 2}, {pair_key("r", "a"): 1.0}, 10, 4
        )  # edge spans two layers
    with pytest.raises(ValueError):
        CoocNetwork("r", 1, {"r": 0, "a": 1}, {pair_key("r", "a"): -1.0}, 10, 4)


def test_serialization_roundtrip(tmp_path):
    counts = significant_counts([("r", "a"), ("r", "b"), ("a", "c"), ("a", "b")])
    net = build_network("r", counts, SignificanceThresholds(2.0, 2.0), max_order=2)
    path = tmp_path / "r.net"
    write_network(net, path)
    again = read_network(path)
    assert again == net


def test_serialization_roundtrip_random(tmp_path):
    rng = random.Random(5)
    for i in range(10):
        net = random_layered_network(rng)
        path = tmp_path / f"net{i}.net"
        write_network(net, path)
        assert read_network(path) == net


def test_serialization_deterministic_and_ordered(tmp_path):
    counts = significant_counts([("r", "b"), ("r", "a"), ("a", "c")])
    net = build_network("r", counts, max_order=2)
    write_network(net, tmp_path / "one.net")
    write_network(net, tmp_path / "two.net")
    assert (tmp_path / "one.net").read_bytes() == (tmp_path / "two.net").read_bytes()
    lines = (tmp_path / "one.net").read_text().splitlines()
    node_lines = [l for l in lines if l.startswith("NODE")]
    assert node_lines == ["NODE r 0", "NODE a 1", "NODE b 1", "NODE c 2"]
    edge_lines = [l for l in lines if l.startswith("EDGE")]
    assert edge_lines == sorted(edge_lines)


def test_serialized_header_fields(tmp_path):
    counts = significant_counts([("r", "a")])
    net = build_network("r", counts, max_order=1)
    write_network(net, tmp_path / "r.net")
    lines = (tmp_path / "r.net").read_text().splitlines()
    assert lines[0] == "ROOT r"
    assert lines[1] == "ORDER 1"
    assert lines[2] == "N 10000"
    assert lines[3] == "K 4"


def test_truncation_flag_survives_roundtrip(tmp_path):
    counts = significant_counts([("r", "a"), ("r", "b"), ("r", "c")])
    net = build_network("r", counts, caps=NetworkCaps(max_nodes=2, max_edges=10), max_order=1)
    write_network(net, tmp_path / "r.net")
    assert "TRUNCATED nodes" in (tmp_path / "r.net").read_text()
    assert read_network(tmp_path / "r.net").truncated == "nodes"


def test_build_weights_match_t_scores():
    counts = significant_counts([("r", "a")])
    net = build_network("r", counts, max_order=1)
    # f=20, marginals 50/50, N=10000, k=4: t = (20 - 2) / sqrt(20)
    expected = round((20 - 2.0) / math.sqrt(20), 6)
    assert net.edges[pair_key("r", "a")] == expected
