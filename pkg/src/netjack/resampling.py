"""Leave-node-out jackknife variance estimation and the node-subsampling baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGraphError, UndefinedStatisticError
from .functionals import LooVector, Statistic, loo_vector, resolve_rho, statistic_value
from .graph import Graph, NodeSubset, induced_subgraph
from .models import GraphonModel, replicate_seed, rho_n, sample_graph


@dataclass(frozen=True)
class JackknifeEstimate:
    """Jackknife variance of a graph statistic.

    var_hat is the raw sum of squared deviations of the leave-one-out values
    about their mean, with no (n-1)/n prefactor; scaled_var = n * var_hat.
    """

    loo: LooVector
    var_hat: float
    scaled_var: float
    stat: Statistic
    n: int


@dataclass(frozen=True)
class SubsampleEstimate:
    """Node-subsampling variance estimate with the sqrt(n)-rate correction.

    var_hat = (b/n) * mean((Z_b - mean Z_b)^2) over the kept replicates;
    ``dropped`` counts replicates where the statistic was undefined.
    """

    b: int
    B: int
    replicate_values: np.ndarray
    var_hat: float
    seed: int
    stat: Statistic
    n: int
    dropped: int = 0

    @property
    def scaled_var(self) -> float:
        return self.n * self.var_hat


def jackknife(g: Graph, stat: Statistic, rho: float | None = None) -> JackknifeEstimate:
    """Sum of squared deviations of the n leave-one-out values about their mean."""
    loo = loo_vector(g, stat, rho)
    centered = loo.values - loo.values.mean()
    var_hat = float(np.sum(centered**2))
    return JackknifeEstimate(
        loo=loo, var_hat=var_hat, scaled_var=g.n * var_hat, stat=stat, n=g.n
    )


def jackknife_alternative(g: Graph, stat: Statistic, rho: float | None = None) -> JackknifeEstimate:
    """Deviations about the full-graph value instead of the leave-one-out mean.

    Always at least as large as the standard estimate; often not sharp, but
    it needs no permutation invariance.
    """
    loo = loo_vector(g, stat, rho)
    var_hat = float(np.sum((loo.full_value - loo.values) ** 2))
    return JackknifeEstimate(
        loo=loo, var_hat=var_hat, scaled_var=g.n * var_hat, stat=stat, n=g.n
    )


def subsample_variance(
    g: Graph,
    stat: Statistic,
    b: int,
    B: int,
    seed: int,
    rho: float | None = None,
    max_dropped_fraction: float = 0.1,
) -> SubsampleEstimate:
    """Variance estimate from B uniform b-node induced subgraphs.

    Each replicate reuses the full-graph rho for comparability with the
    jackknife.  Replicates where the statistic is undefined are dropped (and
    counted); more than ``max_dropped_fraction`` dropped is an error.
    """
    n = g.n
    if stat.kind != "eigenvalue":
        rho = resolve_rho(g, stat, rho)
    min_b = stat.min_nodes
    if b <= min_b:
        raise DegenerateGraphError(f"subsample size {b} too small for '{stat.name}'")
    if b > n:
        raise DegenerateGraphError(f"subsample size {b} exceeds n={n}")
    if B < 2:
        raise ValueError("need at least 2 subsample replicates")

    values = []
    dropped = 0
    all_nodes = np.arange(n, dtype=np.int64)
    for j in range(B):
        rng = np.random.Generator(np.random.Philox(key=replicate_seed(seed, j)))
        kept = np.sort(rng.choice(all_nodes, size=b, replace=False))
        sub = induced_subgraph(g, NodeSubset(kept))
        try:
            values.append(statistic_value(sub, stat, rho))
        except UndefinedStatisticError:
            dropped += 1
    if dropped > max_dropped_fraction * B or dropped == B:
        raise UndefinedStatisticError(
            f"statistic undefined on {dropped}/{B} subsample replicates"
        )
    values = np.asarray(values)
    var_hat = float((b / n) * np.mean((values - values.mean()) ** 2))
    return SubsampleEstimate(
        b=b, B=B, replicate_values=values, var_hat=var_hat, seed=int(seed),
        stat=stat, n=n, dropped=dropped,
    )


@dataclass(frozen=True)
class EfronSteinReport:
    """Monte Carlo check that the jackknife is conservative in expectation."""

    mean_jk: float
    emp_var: float
    mcse: float
    conservative: bool
    reps: int


def efron_stein_check(
    model: GraphonModel, n: int, stat: Statistic, reps: int, master_seed: int
) -> EfronSteinReport:
    """Compare mean jackknife variance at size n against the empirical
    variance of the statistic on (n-1)-node subgraphs (last node dropped).

    conservative = mean_jk >= emp_var - 2 * mcse, where mcse is the standard
    error of mean_jk across replicates.
    """
    if reps < 30:
        raise ValueError("need at least 30 replicates for a meaningful check")
    rho = rho_n(model, n)
    jk_vars = np.empty(reps)
    dropped_values = np.empty(reps)
    for r in range(reps):
        sampled = sample_graph(model, n, replicate_seed(master_seed, r))
        est = jackknife(sampled.graph, stat, rho=rho)
        jk_vars[r] = est.var_hat
        # loo entry n-1 is exactly the statistic on the graph without the last node
        dropped_values[r] = est.loo.values[n - 1]
    mean_jk = float(jk_vars.mean())
    emp_var = float(np.var(dropped_values, ddof=1))
    mcse = float(jk_vars.std(ddof=1) / np.sqrt(reps))
    return EfronSteinReport(
        mean_jk=mean_jk,
        emp_var=emp_var,
        mcse=mcse,
        conservative=bool(mean_jk >= emp_var - 2 * mcse),
        reps=reps,
    )
