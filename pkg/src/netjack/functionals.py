"""Graph statistics: count densities, normalized pattern frequencies,
leave-one-out vectors, and principal eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.sparse.linalg

from . import patterns
from .errors import DegenerateGraphError, NumericalError, UndefinedStatisticError
from .graph import Graph, induced_subgraph, leave_one_out
from .patterns import Pattern, parse_pattern

STATISTIC_KINDS = (
    "edge-density",
    "triangle-density",
    "twostar-density",
    "transitivity",
    "pattern-p",
    "pattern-q",
    "eigenvalue",
)

_COUNT_KINDS = ("edge-density", "triangle-density", "twostar-density", "pattern-p", "pattern-q")


@dataclass(frozen=True)
class Statistic:
    """A named graph functional plus its sparsity-normalization mode.

    ``rho=None`` means plug-in (observed edge density); a fixed value in
    (0, 1] means the sparsity level is known, as in simulations.
    """

    kind: str
    pattern: Pattern | None = None
    eigen_index: int = 1
    rho: float | None = None

    def __post_init__(self):
        if self.kind not in STATISTIC_KINDS:
            raise ValueError(f"unknown statistic kind '{self.kind}'")
        if self.kind in ("pattern-p", "pattern-q") and self.pattern is None:
            raise ValueError(f"statistic '{self.kind}' needs a pattern")
        if self.kind == "eigenvalue" and self.eigen_index < 1:
            raise ValueError("eigenvalue index must be >= 1")
        if self.rho is not None and not 0.0 < self.rho <= 1.0:
            raise ValueError("known rho must lie in (0, 1]")

    @property
    def name(self) -> str:
        if self.kind in ("pattern-p", "pattern-q"):
            return f"{self.kind}:{self.pattern.name}"
        if self.kind == "eigenvalue":
            return f"eigenvalue:{self.eigen_index}"
        return self.kind

    @property
    def min_nodes(self) -> int:
        """Smallest graph the full-graph statistic is defined on."""
        if self.kind == "edge-density":
            return 2
        if self.kind in ("triangle-density", "twostar-density", "transitivity"):
            return 3
        if self.kind == "eigenvalue":
            return self.eigen_index
        return self.pattern.p

    def __str__(self) -> str:
        return self.name


def parse_statistic(text: str, rho: float | None = None) -> Statistic:
    """Parse CLI names: edge-density, triangle-density, twostar-density,
    transitivity, pattern-p:<pattern>, pattern-q:<pattern>, eigenvalue:<k>."""
    token = text.strip().lower()
    if token in ("edge-density", "triangle-density", "transitivity"):
        return Statistic(token, rho=rho)
    if token in ("twostar-density", "two-star-density"):
        return Statistic("twostar-density", rho=rho)
    if token.startswith(("pattern-p:", "pattern-q:")):
        kind, _, patname = token.partition(":")
        return Statistic(kind, pattern=parse_pattern(patname), rho=rho)
    if token.startswith("eigenvalue:"):
        idx = token.split(":", 1)[1]
        if not idx.isdigit():
            raise ValueError(f"bad eigenvalue index in '{text}'")
        return Statistic("eigenvalue", eigen_index=int(idx), rho=rho)
    raise ValueError(f"unknown statistic '{text}'")


@dataclass(frozen=True)
class LooVector:
    """Leave-one-out statistic values, the full-graph value, and the rho used.

    For count statistics, mean(values) equals full_value exactly (up to float
    rounding): removing a node removes exactly the copies through it.
    """

    values: np.ndarray
    full_value: float
    rho_used: float


def plug_in_rho(g: Graph) -> float:
    """Observed edge density 2m / n(n-1), the plug-in sparsity estimate."""
    if g.n < 2:
        raise DegenerateGraphError("plug-in rho needs at least 2 nodes")
    if g.m == 0:
        raise UndefinedStatisticError("plug-in rho undefined on an empty graph")
    return 2.0 * g.m / (g.n * (g.n - 1))


def resolve_rho(g: Graph, stat: Statistic, rho: float | None = None) -> float:
    """Explicit rho argument wins, then the statistic's fixed rho, then plug-in."""
    if rho is not None:
        if not 0.0 < rho <= 1.0:
            raise ValueError("rho must lie in (0, 1]")
        return float(rho)
    if stat.rho is not None:
        return stat.rho
    return plug_in_rho(g)


# -- the explicit densities ---------------------------------------------------


def _check_rho(rho: float) -> float:
    if rho <= 0:
        raise ValueError("rho must be positive")
    return float(rho)


def edge_density(g: Graph, rho: float) -> float:
    """Edge count over C(n,2) * rho."""
    rho = _check_rho(rho)
    if g.n < 2:
        raise DegenerateGraphError("edge density needs at least 2 nodes")
    return _normalized_count(g.m, g.n, 2, rho, 1)


def triangle_density(g: Graph, rho: float) -> float:
    """Triangle count over C(n,3) * rho^3."""
    rho = _check_rho(rho)
    if g.n < 3:
        raise DegenerateGraphError("triangle density needs at least 3 nodes")
    total, _ = patterns.copy_counts(g, Pattern.triangle())
    return _normalized_count(total, g.n, 3, rho, 3)


def two_star_density(g: Graph, rho: float) -> float:
    """Two-star (path of length 2) count over C(n,3) * rho^2."""
    rho = _check_rho(rho)
    if g.n < 3:
        raise DegenerateGraphError("two-star density needs at least 3 nodes")
    total, _ = patterns.copy_counts(g, Pattern.two_star())
    return _normalized_count(total, g.n, 3, rho, 2)


def normalized_transitivity(g: Graph, rho: float) -> float:
    """Triangle density over two-star density; algebraically T / (W * rho)."""
    rho = _check_rho(rho)
    if g.n < 3:
        raise DegenerateGraphError("transitivity needs at least 3 nodes")
    t_total, _ = patterns.copy_counts(g, Pattern.triangle())
    w_total, _ = patterns.copy_counts(g, Pattern.two_star())
    if w_total == 0:
        raise UndefinedStatisticError("transitivity undefined: no two-stars")
    return t_total / (w_total * rho)


def _normalized_count(count: int, n: int, p: int, rho: float, e: int) -> float:
    return count / (comb(n, p) * rho**e)


def _pattern_normalized(count: int, n: int, pattern: Pattern, rho: float) -> float:
    return count / (comb(n, pattern.p) * pattern.iso_count * rho**pattern.e)


def pattern_count_Q(g: Graph, r: Pattern, rho: float) -> float:
    """Normalized containment frequency: copies of r over C(n,p)*|Iso(r)|*rho^e."""
    rho = _check_rho(rho)
    if g.n < r.p:
        raise DegenerateGraphError(f"pattern '{r.name}' needs at least {r.p} nodes")
    total, _ = patterns.copy_counts(g, r)
    return _pattern_normalized(total, g.n, r, rho)


def pattern_count_P(g: Graph, r: Pattern, rho: float) -> float:
    """Normalized induced-occurrence frequency of r; always <= pattern_count_Q."""
    rho = _check_rho(rho)
    if g.n < r.p:
        raise DegenerateGraphError(f"pattern '{r.name}' needs at least {r.p} nodes")
    total, _ = patterns.induced_counts(g, r)
    return _pattern_normalized(total, g.n, r, rho)


# -- eigenvalues ---------------------------------------------------------------

_DENSE_EIG_LIMIT = 32


def top_eigenvalues(g: Graph, k: int, tol: float = 1e-10, max_iter: int | None = None) -> np.ndarray:
    """The k largest-magnitude adjacency eigenvalues, descending by magnitude.

    Iterative Lanczos solve (ARPACK) with an explicit residual check
    ||A v - lambda v|| <= tol * max(1, |lambda|); tiny or near-full requests
    fall back to a dense solve.  Raises NumericalError (carrying the
    residual) when the iteration fails to reach tolerance.
    """
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter is None:
        max_iter = 10 * n
    if g.m == 0:
        return np.zeros(k)
    if n <= _DENSE_EIG_LIMIT or k > n - 1:
        vals = np.linalg.eigvalsh(g.dense().astype(np.float64))
        return _order_by_magnitude(vals)[:k]

    a = g.csr().astype(np.float64)
    v0 = np.random.Generator(np.random.Philox(key=0x5EED)).standard_normal(n)
    try:
        vals, vecs = scipy.sparse.linalg.eigsh(
            a, k=k, which="LM", tol=tol, maxiter=max_iter, v0=v0
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        residual = None
        if exc.eigenvalues is not None and len(exc.eigenvalues):
            partial = a @ exc.eigenvectors - exc.eigenvectors * exc.eigenvalues
            residual = float(np.linalg.norm(partial, axis=0).max())
        raise NumericalError(
            f"eigensolver did not converge within {max_iter} iterations", residual=residual
        ) from exc
    order = np.lexsort((-vals, -np.abs(vals)))
    vals, vecs = vals[order], vecs[:, order]
    residuals = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    norms = np.linalg.norm(vecs, axis=0)
    bounds = tol * norms * np.maximum(1.0, np.abs(vals))
    if np.any(residuals > bounds):
        worst = float(residuals.max())
        raise NumericalError(f"eigenpair residual {worst:.3e} above tolerance", residual=worst)
    return vals


def _order_by_magnitude(vals: np.ndarray) -> np.ndarray:
    return vals[np.lexsort((-vals, -np.abs(vals)))]


# -- full-graph evaluation and leave-one-out vectors ---------------------------


def statistic_value(g: Graph, stat: Statistic, rho: float | None = None) -> float:
    """Evaluate the statistic on the whole graph."""
    if stat.kind == "eigenvalue":
        if g.n < stat.eigen_index:
            raise DegenerateGraphError("graph smaller than requested eigenvalue index")
        return float(top_eigenvalues(g, stat.eigen_index)[stat.eigen_index - 1])
    rho = resolve_rho(g, stat, rho)
    if stat.kind == "edge-density":
        return edge_density(g, rho)
    if stat.kind == "triangle-density":
        return triangle_density(g, rho)
    if stat.kind == "twostar-density":
        return two_star_density(g, rho)
    if stat.kind == "transitivity":
        return normalized_transitivity(g, rho)
    if stat.kind == "pattern-q":
        return pattern_count_Q(g, stat.pattern, rho)
    return pattern_count_P(g, stat.pattern, rho)


def _count_profile(g: Graph, stat: Statistic) -> tuple[int, np.ndarray, int, int, int]:
    """(total, per_node, p, e, iso) for a count statistic; iso=1 for densities."""
    if stat.kind == "edge-density":
        total, per_node = g.m, g.degrees
        return total, per_node, 2, 1, 1
    if stat.kind == "triangle-density":
        total, per_node = patterns.copy_counts(g, Pattern.triangle())
        return total, per_node, 3, 3, 1
    if stat.kind == "twostar-density":
        total, per_node = patterns.copy_counts(g, Pattern.two_star())
        return total, per_node, 3, 2, 1
    pat = stat.pattern
    if stat.kind == "pattern-q":
        total, per_node = patterns.copy_counts(g, pat)
    else:
        total, per_node = patterns.induced_counts(g, pat)
    return total, per_node, pat.p, pat.e, pat.iso_count


def loo_vector(g: Graph, stat: Statistic, rho: float | None = None) -> LooVector:
    """Statistic on every node-deleted subgraph, normalized at size n-1.

    Count statistics are computed incrementally (total minus the copies
    through the deleted node) and reuse the full-graph rho; transitivity is
    assembled from the incremental triangle/two-star pairs; eigenvalues are
    recomputed on each leave-one-out graph.
    """
    n = g.n
    if stat.kind == "eigenvalue":
        k = stat.eigen_index
        if n < k + 1:
            raise DegenerateGraphError("leave-one-out eigenvalue needs n > index")
        values = np.empty(n)
        for i in range(n):
            sub = induced_subgraph(g, leave_one_out(g, i))
            values[i] = top_eigenvalues(sub, k)[k - 1]
        full = float(top_eigenvalues(g, k)[k - 1])
        return LooVector(values=values, full_value=full, rho_used=float("nan"))

    rho = resolve_rho(g, stat, rho)

    if stat.kind == "transitivity":
        if n < 4:
            raise DegenerateGraphError("leave-one-out transitivity needs n >= 4")
        t_total, t_node = patterns.copy_counts(g, Pattern.triangle())
        w_total, w_node = patterns.copy_counts(g, Pattern.two_star())
        if w_total == 0:
            raise UndefinedStatisticError("transitivity undefined: no two-stars")
        w_rest = w_total - w_node
        if np.any(w_rest == 0):
            raise UndefinedStatisticError(
                "transitivity undefined on some leave-one-out subgraph (no two-stars)"
            )
        values = (t_total - t_node) / (w_rest * rho)
        full = t_total / (w_total * rho)
        return LooVector(values=values, full_value=float(full), rho_used=rho)

    total, per_node, p, e, iso = _count_profile(g, stat)
    if n < p + 1:
        raise DegenerateGraphError(f"leave-one-out '{stat.name}' needs at least {p + 1} nodes")
    denom = comb(n - 1, p) * iso * rho**e
    values = (total - per_node) / denom
    full = total / (comb(n, p) * iso * rho**e)
    return LooVector(values=values.astype(np.float64), full_value=float(full), rho_used=rho)
