import numpy as np
import pytest

from netjack.graph import Graph
from netjack.patterns import (
    Pattern,
    brute_force_counts,
    copy_counts,
    induced_counts,
    parse_pattern,
)

from conftest import complete_graph, cycle_graph, er_graph, star_graph


# -- pattern structure -----------------------------------------------------------


def test_builtin_iso_counts():
    assert Pattern.edge().iso_count == 1
    assert Pattern.two_star().iso_count == 3
    assert Pattern.triangle().iso_count == 1
    assert Pattern.cycle(4).iso_count == 3       # (4-1)!/2
    assert Pattern.cycle(5).iso_count == 12      # (5-1)!/2
    assert Pattern.path(3).iso_count == 12       # 4!/2
    assert Pattern.path(4).iso_count == 60       # 5!/2
    assert Pattern.star(3).iso_count == 4        # choice of center
    assert Pattern.star(4).iso_count == 5


def test_vertex_and_edge_counts():
    assert (Pattern.edge().p, Pattern.edge().e) == (2, 1)
    assert (Pattern.two_star().p, Pattern.two_star().e) == (3, 2)
    assert (Pattern.cycle(5).p, Pattern.cycle(5).e) == (5, 5)
    assert (Pattern.path(4).p, Pattern.path(4).e) == (5, 4)
    assert (Pattern.star(4).p, Pattern.star(4).e) == (5, 4)


def test_pattern_size_cap():
    with pytest.raises(ValueError):
        Pattern.cycle(6)
    with pytest.raises(ValueError):
        Pattern.path(5)


def test_parse_pattern_names():
    assert parse_pattern("edge") == Pattern.edge()
    assert parse_pattern("two-star") == Pattern.two_star()
    assert parse_pattern("cycle4") == Pattern.cycle(4)
    assert parse_pattern("cycle-4") == Pattern.cycle(4)
    assert parse_pattern("path_3") == Pattern.path(3)
    with pytest.raises(ValueError):
        parse_pattern("heptagon")


# -- counters on hand-checkable graphs --------------------------------------------


def test_counts_on_k4():
    g = complete_graph(4)
    assert copy_counts(g, Pattern.edge())[0] == 6
    assert copy_counts(g, Pattern.two_star())[0] == 12
    assert copy_counts(g, Pattern.triangle())[0] == 4
    assert copy_counts(g, Pattern.cycle(4))[0] == 3
    assert copy_counts(g, Pattern.path(3))[0] == 12  # 4!/2 labeled paths
    # K4 induces no two-star and no plain 4-cycle
    assert induced_counts(g, Pattern.two_star())[0] == 0
    assert induced_counts(g, Pattern.cycle(4))[0] == 0


def test_counts_on_cycle5():
    g = cycle_graph(5)
    assert copy_counts(g, Pattern.cycle(5))[0] == 1
    assert induced_counts(g, Pattern.cycle(5))[0] == 1
    assert copy_counts(g, Pattern.triangle())[0] == 0
    total, per_node = copy_counts(g, Pattern.path(2))
    assert total == 5
    assert per_node.tolist() == [3, 3, 3, 3, 3]


def test_counts_on_star():
    g = star_graph(4)  # center 0 with 4 leaves
    total, per_node = copy_counts(g, Pattern.star(3))
    assert total == 4  # C(4,3)
    assert per_node[0] == 4
    assert per_node[1:].tolist() == [3, 3, 3, 3]


@pytest.mark.parametrize(
    "pattern",
    [
        Pattern.edge(),
        Pattern.two_star(),
        Pattern.triangle(),
        Pattern.path(3),
        Pattern.star(3),
        Pattern.cycle(4),
    ],
)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_copy_counts_match_subset_oracle(pattern, seed):
    g = er_graph(24, 0.35, seed=seed)
    total, per_node = copy_counts(g, pattern)
    oracle_total, oracle_node = brute_force_counts(g, pattern, induced=False)
    assert total == oracle_total
    assert np.array_equal(per_node, oracle_node)
    # each copy spans p vertices
    assert per_node.sum() == pattern.p * total


@pytest.mark.parametrize(
    "pattern",
    [
        Pattern.edge(),
        Pattern.two_star(),
        Pattern.triangle(),
        Pattern.path(3),
        Pattern.star(3),
        Pattern.cycle(4),
    ],
)
@pytest.mark.parametrize("seed", [3, 4])
def test_induced_counts_match_subset_oracle(pattern, seed):
    g = er_graph(22, 0.4, seed=seed)
    total, per_node = induced_counts(g, pattern)
    oracle_total, oracle_node = brute_force_counts(g, pattern, induced=True)
    assert total == oracle_total
    assert np.array_equal(per_node, oracle_node)


@pytest.mark.parametrize("pattern", [Pattern.path(4), Pattern.star(4), Pattern.cycle(5)])
def test_five_vertex_patterns_match_oracle(pattern):
    g = er_graph(14, 0.45, seed=8)
    for induced in (False, True):
        production = (induced_counts if induced else copy_counts)(g, pattern)
        oracle = brute_force_counts(g, pattern, induced=induced)
        assert production[0] == oracle[0]
        assert np.array_equal(production[1], oracle[1])


def test_induced_never_exceeds_containment():
    for seed in range(5):
        g = er_graph(18, 0.4, seed=100 + seed)
        for pattern in (Pattern.two_star(), Pattern.cycle(4), Pattern.path(3)):
            assert induced_counts(g, pattern)[0] <= copy_counts(g, pattern)[0]


def test_oracle_gated_to_small_graphs():
    g = er_graph(61, 0.05, seed=0)
    with pytest.raises(ValueError, match="gated"):
        brute_force_counts(g, Pattern.edge())


def test_empty_graph_counts():
    g = Graph.from_edges(6, [])
    for pattern in (Pattern.triangle(), Pattern.cycle(4), Pattern.two_star()):
        total, per_node = copy_counts(g, pattern)
        assert total == 0 and not per_node.any()
