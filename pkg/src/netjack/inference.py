"""Confidence intervals from jackknife variances, node splits, and two-sample verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy.special import ndtri

from .errors import DegenerateGraphError
from .functionals import Statistic
from .graph import Graph, NodeSubset, induced_subgraph
from .resampling import JackknifeEstimate, jackknife


@dataclass(frozen=True)
class ConfidenceInterval:
    center: float
    half_width: float
    level: float

    @property
    def lower(self) -> float:
        return self.center - self.half_width

    @property
    def upper(self) -> float:
        return self.center + self.half_width


def _check_ci_args(var_hat: float, level: float) -> None:
    if var_hat < 0:
        raise ValueError("variance estimate must be nonnegative")
    if not 0.0 < level < 1.0:
        raise ValueError("coverage level must lie in (0, 1)")


def normal_ci(center: float, var_hat: float, level: float) -> ConfidenceInterval:
    """Two-sided normal-approximation interval: center +- z_{(1+level)/2} * sqrt(var_hat)."""
    _check_ci_args(var_hat, level)
    z = float(ndtri((1.0 + level) / 2.0))
    return ConfidenceInterval(center=float(center), half_width=z * sqrt(var_hat), level=level)


def chebyshev_ci(center: float, var_hat: float, level: float) -> ConfidenceInterval:
    """Distribution-free interval via Chebyshev's inequality; conservative."""
    _check_ci_args(var_hat, level)
    return ConfidenceInterval(
        center=float(center), half_width=sqrt(var_hat / (1.0 - level)), level=level
    )


def split_train_test(g: Graph, seed: int) -> tuple[Graph, Graph]:
    """Uniform random node split into ceil(n/2) train and floor(n/2) test halves.

    Cross-partition edges are dropped (induced-subgraph convention).
    Deterministic given the seed.
    """
    n = g.n
    if n < 4:
        raise DegenerateGraphError("train/test split needs at least 4 nodes")
    rng = np.random.Generator(np.random.Philox(key=int(seed) % (1 << 64)))
    perm = rng.permutation(n)
    half = (n + 1) // 2
    train = NodeSubset(np.sort(perm[:half]))
    test = NodeSubset(np.sort(perm[half:]))
    return induced_subgraph(g, train), induced_subgraph(g, test)


@dataclass(frozen=True)
class ComparisonVerdict:
    """Two per-graph intervals plus the disjointness verdict.

    Disjoint level-q intervals reject equality at level 2*(1-q).  The
    underlying jackknife estimates ride along for reporting.
    """

    ci_a: ConfidenceInterval
    ci_b: ConfidenceInterval
    disjoint: bool
    implied_test_level: float
    est_a: JackknifeEstimate | None = None
    est_b: JackknifeEstimate | None = None


def two_sample_compare(
    g1: Graph,
    g2: Graph,
    stat: Statistic,
    level: float,
    method: str = "normal",
) -> ComparisonVerdict:
    """Jackknife CI on each graph (each with its own plug-in rho unless the
    statistic fixes one), then compare for overlap."""
    if method not in ("normal", "chebyshev"):
        raise ValueError("interval method must be 'normal' or 'chebyshev'")
    build = normal_ci if method == "normal" else chebyshev_ci
    est_a = jackknife(g1, stat)
    est_b = jackknife(g2, stat)
    ci_a = build(est_a.loo.full_value, est_a.var_hat, level)
    ci_b = build(est_b.loo.full_value, est_b.var_hat, level)
    disjoint = ci_a.upper < ci_b.lower or ci_b.upper < ci_a.lower
    return ComparisonVerdict(
        ci_a=ci_a,
        ci_b=ci_b,
        disjoint=bool(disjoint),
        implied_test_level=2.0 * (1.0 - level),
        est_a=est_a,
        est_b=est_b,
    )
