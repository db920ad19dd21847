import numpy as np
import pytest

from netjack.errors import DegenerateGraphError, UndefinedStatisticError
from netjack.functionals import parse_statistic, statistic_value
from netjack.graph import Graph, induced_subgraph, leave_one_out, relabel
from netjack.models import absdiff_model, kernel_model, benchmark_sbm_model, sample_graph
from netjack.resampling import (
    efron_stein_check,
    jackknife,
    jackknife_alternative,
    subsample_variance,
)

from conftest import complete_graph, er_graph, path_graph


EDGE = parse_statistic("edge-density", rho=1.0)
TRI = parse_statistic("triangle-density", rho=1.0)


# -- jackknife ---------------------------------------------------------------


def test_jackknife_path_edge_density_hand_value():
    est = jackknife(path_graph(3), EDGE)
    assert est.loo.values.tolist() == [1.0, 0.0, 1.0]
    assert est.var_hat == pytest.approx(2 / 3, rel=1e-15)
    assert est.scaled_var == pytest.approx(2.0, rel=1e-15)


def test_jackknife_k4_triangle_zero_variance():
    est = jackknife(complete_graph(4), TRI)
    assert est.var_hat == 0.0


def test_jackknife_matches_brute_force_loo_oracle():
    g = er_graph(50, 0.25, seed=7)
    for name in ("edge-density", "triangle-density", "twostar-density"):
        stat = parse_statistic(name, rho=0.25)
        est = jackknife(g, stat)
        recounted = np.array(
            [
                statistic_value(induced_subgraph(g, leave_one_out(g, i)), stat)
                for i in range(g.n)
            ]
        )
        oracle = float(np.sum((recounted - recounted.mean()) ** 2))
        assert est.var_hat == oracle


def test_jackknife_nonnegative_and_permutation_invariant():
    g = er_graph(30, 0.3, seed=11)
    est = jackknife(g, TRI)
    assert est.var_hat >= 0.0
    h = relabel(g, np.random.default_rng(3).permutation(30))
    assert jackknife(h, TRI).var_hat == pytest.approx(est.var_hat, rel=1e-12)


# -- alternative estimator ------------------------------------------------------


def test_alternative_k4_triangle_zero():
    assert jackknife_alternative(complete_graph(4), TRI).var_hat == 0.0


def test_alternative_path_edge_density_hand_value():
    est = jackknife_alternative(path_graph(3), EDGE)
    # deviations of [1, 0, 1] about the full-graph value 2/3
    assert est.var_hat == pytest.approx(1 / 9 + 4 / 9 + 1 / 9, rel=1e-12)


def test_alternative_dominates_standard():
    for seed in range(10):
        g = er_graph(25, 0.35, seed=200 + seed)
        for name in ("edge-density", "triangle-density", "transitivity"):
            stat = parse_statistic(name, rho=0.35)
            assert (
                jackknife_alternative(g, stat).var_hat
                >= jackknife(g, stat).var_hat - 1e-12
            )


# -- subsampling ------------------------------------------------------------------


def test_subsample_full_size_has_zero_variance():
    g = er_graph(20, 0.4, seed=3)
    est = subsample_variance(g, EDGE, b=20, B=10, seed=1)
    assert est.var_hat == 0.0


def test_subsample_constant_statistic_has_zero_variance():
    # every induced subgraph of a complete graph is complete
    est = subsample_variance(complete_graph(15), EDGE, b=6, B=50, seed=2)
    assert est.var_hat == 0.0
    assert est.dropped == 0


def test_subsample_within_factor_two_of_jackknife_at_large_b():
    g = sample_graph(benchmark_sbm_model(), 500, seed=4242).graph
    jk = jackknife(g, EDGE).var_hat
    sub = subsample_variance(g, EDGE, b=100, B=1000, seed=77).var_hat
    assert 0.5 * jk <= sub <= 2.0 * jk


def test_subsample_deterministic():
    g = er_graph(40, 0.3, seed=5)
    a = subsample_variance(g, TRI, b=15, B=30, seed=9)
    b = subsample_variance(g, TRI, b=15, B=30, seed=9)
    assert np.array_equal(a.replicate_values, b.replicate_values)
    assert a.var_hat == b.var_hat


def test_subsample_preconditions():
    g = er_graph(20, 0.3, seed=6)
    with pytest.raises(DegenerateGraphError):
        subsample_variance(g, TRI, b=3, B=10, seed=1)  # b must exceed pattern size
    with pytest.raises(DegenerateGraphError):
        subsample_variance(g, TRI, b=21, B=10, seed=1)
    with pytest.raises(ValueError):
        subsample_variance(g, TRI, b=10, B=1, seed=1)


def test_subsample_drops_undefined_replicates():
    # K6 plus isolated nodes: 4-node subsets with fewer than 3 clique vertices
    # carry no two-star, so transitivity is undefined there
    g = Graph.from_edges(9, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    stat = parse_statistic("transitivity", rho=1.0)
    est = subsample_variance(
        g, stat, b=4, B=60, seed=3, max_dropped_fraction=1.0
    )
    assert est.dropped > 0
    assert est.replicate_values.size == 60 - est.dropped
    with pytest.raises(UndefinedStatisticError, match="undefined on"):
        subsample_variance(g, stat, b=4, B=60, seed=3)


def test_subsample_all_dropped_is_an_error_even_when_tolerated():
    g = Graph.from_edges(30, [(0, 1)])
    stat = parse_statistic("transitivity", rho=1.0)
    with pytest.raises(UndefinedStatisticError):
        subsample_variance(g, stat, b=4, B=20, seed=3, max_dropped_fraction=1.0)


# -- conservativeness check ---------------------------------------------------------


def test_efron_stein_constant_statistic():
    model = kernel_model(lambda u, v: np.ones_like(u), lambda n: 1.0)
    report = efron_stein_check(model, 30, EDGE, reps=30, master_seed=0)
    assert report.mean_jk == 0.0
    assert report.emp_var == 0.0
    assert report.conservative


def test_efron_stein_sbm_edge_density():
    report = efron_stein_check(benchmark_sbm_model(), 60, EDGE, reps=60, master_seed=1)
    assert report.conservative
    assert report.mean_jk > 0


def test_efron_stein_gr2_triangle_density():
    model = absdiff_model(-1 / 3)
    stat = parse_statistic("triangle-density")  # rho resolved from the model inside
    report = efron_stein_check(model, 60, stat, reps=60, master_seed=2)
    assert report.conservative


def test_efron_stein_needs_enough_reps():
    with pytest.raises(ValueError):
        efron_stein_check(benchmark_sbm_model(), 30, EDGE, reps=10, master_seed=0)
