"""Sparse graphon samplers: stochastic block models, the |u-v| kernel, and
user-supplied kernels, with counter-based reproducible randomness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import Graph

_PI_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class GraphonModel:
    """Generative spec: edge (i, j) appears with probability min(rho_n * w(xi_i, xi_j), 1).

    kind 'sbm' uses a piecewise-constant block kernel with rho_n fixed at 1
    (sparsity lives inside B); kind 'absdiff' uses w(u, v) = |u - v| with
    rho_n = n**exponent; kind 'kernel' takes an arbitrary symmetric kernel
    plus a sparsity schedule n -> rho_n.
    """

    kind: str
    B: np.ndarray | None = None
    pi: np.ndarray | None = None
    exponent: float | None = None
    w: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    rho_schedule: Callable[[int], float] | None = None


def sbm_model(B, pi) -> GraphonModel:
    """Stochastic block model with link matrix B and block weights pi."""
    B = np.asarray(B, dtype=np.float64)
    pi = np.asarray(pi, dtype=np.float64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError("B must be a square matrix")
    if not np.array_equal(B, B.T):
        raise ValueError("B must be symmetric")
    if np.any(B < 0) or np.any(B > 1):
        raise ValueError("B entries must lie in [0, 1]")
    if pi.ndim != 1 or pi.shape[0] != B.shape[0]:
        raise ValueError("pi must be a vector matching B")
    if np.any(pi < 0) or abs(pi.sum() - 1.0) > _PI_TOLERANCE:
        raise ValueError("pi must be a probability vector (sum 1 within 1e-12)")
    return GraphonModel(kind="sbm", B=B, pi=pi)


def absdiff_model(exponent: float) -> GraphonModel:
    """|u - v| kernel with sparsity nu_n = n**exponent (exponent <= 0)."""
    if exponent > 0:
        raise ValueError("sparsity exponent must be <= 0")
    return GraphonModel(kind="absdiff", exponent=float(exponent))


def kernel_model(w: Callable, rho_schedule: Callable[[int], float]) -> GraphonModel:
    """Arbitrary symmetric nonnegative kernel on [0,1]^2 with rho schedule."""
    if not callable(w) or not callable(rho_schedule):
        raise ValueError("kernel model needs callable w and rho_schedule")
    return GraphonModel(kind="kernel", w=w, rho_schedule=rho_schedule)


def benchmark_sbm_model() -> GraphonModel:
    """The 3-block benchmark model used throughout the simulation studies."""
    B = [[0.4, 0.1, 0.1], [0.1, 0.5, 0.1], [0.1, 0.1, 0.7]]
    return sbm_model(B, [0.3, 0.3, 0.4])


def rho_n(model: GraphonModel, n: int) -> float:
    """Sparsity level the model applies at size n."""
    if model.kind == "sbm":
        return 1.0
    if model.kind == "absdiff":
        return float(n) ** model.exponent
    rho = float(model.rho_schedule(n))
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho schedule returned {rho}, outside [0, 1]")
    return rho


@dataclass(frozen=True, eq=False)
class SampledGraph:
    """A sampled graph together with the latent positions that generated it."""

    graph: Graph
    latents: np.ndarray
    rho: float
    seed: int


def _edge_probabilities(model: GraphonModel, xi: np.ndarray, rho: float) -> np.ndarray:
    if model.kind == "sbm":
        blocks = np.minimum(
            np.searchsorted(np.cumsum(model.pi), xi, side="right"), len(model.pi) - 1
        )
        probs = model.B[blocks[:, None], blocks[None, :]]
    elif model.kind == "absdiff":
        probs = rho * np.abs(xi[:, None] - xi[None, :])
    else:
        values = model.w(xi[:, None], xi[None, :])
        values = np.broadcast_to(np.asarray(values, dtype=np.float64), (xi.size, xi.size))
        if np.any(values < 0):
            raise ValueError("kernel returned negative values")
        probs = rho * values
    return np.minimum(probs, 1.0)


def sample_graph(model: GraphonModel, n: int, seed: int) -> SampledGraph:
    """Draw one graph: latents uniform on [0,1], edges independent Bernoulli.

    Deterministic given (model, n, seed); the Philox counter-based generator
    makes per-replicate streams independent of evaluation order.
    """
    if n < 1:
        raise ValueError("need at least one node")
    rng = np.random.Generator(np.random.Philox(key=int(seed) % (1 << 64)))
    xi = rng.random(n)
    rho = 1.0 if model.kind == "sbm" else rho_n(model, n)
    probs = _edge_probabilities(model, xi, rho)
    uniforms = rng.random((n, n))
    upper = np.triu(uniforms < probs, k=1)
    ii, jj = np.nonzero(upper)
    graph = Graph.from_edges(n, np.column_stack([ii, jj]))
    return SampledGraph(graph=graph, latents=xi, rho=rho, seed=int(seed))


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def replicate_seed(master_seed: int, replicate_index: int) -> int:
    """Collision-resistant 64-bit seed for one replicate of a seeded run.

    SplitMix64 finalizer over the master seed advanced by the replicate
    index; deterministic and cheap, so replicate k's stream can be rebuilt
    in isolation.
    """
    out = _replicate_seed_array(
        int(master_seed) % (1 << 64), int(replicate_index) % (1 << 64)
    )
    return int(out[0])


def _replicate_seed_array(master, index) -> np.ndarray:
    """Vectorized SplitMix64 mix over uint64 arrays (wrapping arithmetic)."""
    m = np.atleast_1d(np.asarray(master, dtype=np.uint64))
    i = np.atleast_1d(np.asarray(index, dtype=np.uint64))
    z = m + _GOLDEN * (i + np.uint64(1))
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))
