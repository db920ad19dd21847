"""Small connected subgraph patterns and exact copy counting.

Counting comes in two flavors: containment copies (the pattern's edges are
present, extra edges allowed) and induced occurrences (a vertex subset whose
induced subgraph is isomorphic to the pattern).  Every counter returns both
the total and the per-node membership counts, which is what makes
incremental leave-one-out evaluation possible downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import factorial

import numpy as np

from .graph import Graph

MAX_PATTERN_VERTICES = 5

_FIXED_KINDS = ("edge", "twostar", "triangle")
_PARAM_KINDS = ("path", "star", "cycle")


@dataclass(frozen=True)
class Pattern:
    """A connected pattern graph on at most 5 vertices.

    kind: 'edge' | 'twostar' | 'triangle' | 'path' | 'star' | 'cycle'
    param: edge count for paths, leaf count for stars, vertex count for cycles.
    """

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind in _FIXED_KINDS:
            if self.param is not None:
                raise ValueError(f"pattern '{self.kind}' takes no parameter")
        elif self.kind in _PARAM_KINDS:
            if self.param is None or self.param < 1:
                raise ValueError(f"pattern '{self.kind}' needs a positive parameter")
            if self.kind == "cycle" and self.param < 3:
                raise ValueError("cycles need at least 3 vertices")
        else:
            raise ValueError(f"unknown pattern kind '{self.kind}'")
        if self.p > MAX_PATTERN_VERTICES:
            raise ValueError(f"patterns are limited to {MAX_PATTERN_VERTICES} vertices")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def edge() -> "Pattern":
        return Pattern("edge")

    @staticmethod
    def two_star() -> "Pattern":
        return Pattern("twostar")

    @staticmethod
    def triangle() -> "Pattern":
        return Pattern("triangle")

    @staticmethod
    def path(k_edges: int) -> "Pattern":
        return Pattern("path", k_edges)

    @staticmethod
    def star(k_leaves: int) -> "Pattern":
        return Pattern("star", k_leaves)

    @staticmethod
    def cycle(p_vertices: int) -> "Pattern":
        return Pattern("cycle", p_vertices)

    # -- structure -----------------------------------------------------------

    @property
    def name(self) -> str:
        return self.kind if self.param is None else f"{self.kind}{self.param}"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Canonical edge list on vertices 0..p-1."""
        if self.kind == "edge":
            return ((0, 1),)
        if self.kind == "twostar":
            return ((0, 1), (0, 2))
        if self.kind == "triangle":
            return ((0, 1), (0, 2), (1, 2))
        if self.kind == "path":
            return tuple((t, t + 1) for t in range(self.param))
        if self.kind == "star":
            return tuple((0, t) for t in range(1, self.param + 1))
        c = self.param
        return tuple(tuple(sorted((t, (t + 1) % c))) for t in range(c))

    @property
    def p(self) -> int:
        """Vertex count."""
        if self.kind == "edge":
            return 2
        if self.kind in ("twostar", "triangle"):
            return 3
        if self.kind == "cycle":
            return self.param
        return self.param + 1

    @property
    def e(self) -> int:
        """Edge count."""
        return len(self.edges)

    @cached_property
    def labeled_isomorphs(self) -> tuple[frozenset[tuple[int, int]], ...]:
        """All distinct labeled edge sets on 0..p-1 isomorphic to this pattern."""
        base = self.edges
        seen = set()
        for perm in itertools.permutations(range(self.p)):
            seen.add(frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in base))
        return tuple(sorted(seen, key=sorted))

    @property
    def iso_count(self) -> int:
        return len(self.labeled_isomorphs)

    @property
    def automorphism_count(self) -> int:
        return factorial(self.p) // self.iso_count

    def __str__(self) -> str:
        return self.name


def parse_pattern(text: str) -> Pattern:
    """Parse names like 'edge', 'two-star', 'cycle4', 'path-3', 'star_4'."""
    token = text.strip().lower().replace("-", "").replace("_", "")
    if token == "edge":
        return Pattern.edge()
    if token in ("twostar", "2star"):
        return Pattern.two_star()
    if token == "triangle":
        return Pattern.triangle()
    for kind in _PARAM_KINDS:
        if token.startswith(kind) and token[len(kind) :].isdigit():
            return Pattern(kind, int(token[len(kind) :]))
    raise ValueError(f"unknown pattern name '{text}'")


# -- exact counters ----------------------------------------------------------


def copy_counts(g: Graph, pattern: Pattern) -> tuple[int, np.ndarray]:
    """Containment copies of the pattern: (total, per-node membership counts).

    Degree formulas cover edges, two-stars and general stars; triangles and
    4-cycles go through one dense matrix product; remaining patterns fall
    back to embedding enumeration (exact, but only meant for moderate n).
    """
    kind, q = pattern.kind, pattern.param
    if kind == "edge" or (kind in ("path", "star") and q == 1):
        return g.m, g.degrees.copy()
    if kind == "twostar" or (kind in ("path", "star") and q == 2):
        return _twostar_counts(g)
    if kind == "star":
        return _star_counts(g, q)
    if kind == "triangle" or (kind == "cycle" and q == 3):
        return _triangle_counts(g)
    if kind == "cycle" and q == 4:
        return _cycle4_counts(g)
    return _embedding_counts(g, pattern, induced=False)


def induced_counts(g: Graph, pattern: Pattern) -> tuple[int, np.ndarray]:
    """Induced occurrences of the pattern: (total, per-node membership counts)."""
    kind, q = pattern.kind, pattern.param
    if kind == "edge" or (kind in ("path", "star") and q == 1):
        return g.m, g.degrees.copy()
    if kind == "triangle" or (kind == "cycle" and q == 3):
        return _triangle_counts(g)
    if kind == "twostar" or (kind in ("path", "star") and q == 2):
        # a triple carrying a two-star is induced unless it closes a triangle
        w_total, w_node = _twostar_counts(g)
        t_total, t_node = _triangle_counts(g)
        return w_total - 3 * t_total, w_node - 3 * t_node
    return _embedding_counts(g, pattern, induced=True)


def _binom_int(values: np.ndarray, k: int) -> np.ndarray:
    """Exact C(values, k) in int64 for small k."""
    values = values.astype(np.int64)
    out = np.ones_like(values)
    for t in range(k):
        out *= np.maximum(values - t, 0)
    return out // factorial(k)


def _twostar_counts(g: Graph) -> tuple[int, np.ndarray]:
    d = g.degrees
    centered = _binom_int(d, 2)
    neighbor_deg_sum = g.csr().dot(d)
    per_node = centered + neighbor_deg_sum - d
    return int(centered.sum()), per_node


def _star_counts(g: Graph, k: int) -> tuple[int, np.ndarray]:
    d = g.degrees
    centered = _binom_int(d, k)
    as_leaf = g.csr().dot(_binom_int(d - 1, k - 1))
    return int(centered.sum()), centered + as_leaf


_DENSE_COUNT_LIMIT = 4096  # float32 products stay exactly integral below this


def _common_neighbor_matrix(g: Graph) -> np.ndarray:
    if g.n > _DENSE_COUNT_LIMIT:
        raise ValueError(f"dense count path limited to n <= {_DENSE_COUNT_LIMIT}")
    a = g.dense()
    return a @ a


def _triangle_counts(g: Graph) -> tuple[int, np.ndarray]:
    if g.m == 0:
        return 0, np.zeros(g.n, dtype=np.int64)
    c = _common_neighbor_matrix(g)
    twice = np.einsum("ij,ij->i", g.dense(), c)
    per_node = np.round(twice / 2.0).astype(np.int64)
    total = int(per_node.sum()) // 3
    return total, per_node


def _cycle4_counts(g: Graph) -> tuple[int, np.ndarray]:
    if g.m == 0:
        return 0, np.zeros(g.n, dtype=np.int64)
    c = _common_neighbor_matrix(g).astype(np.int64)
    np.fill_diagonal(c, 0)
    # every 4-cycle through i is seen once via its opposite vertex
    per_node = (c * (c - 1) // 2).sum(axis=1)
    total = int(per_node.sum()) // 4
    return total, per_node


def _bfs_order(pattern: Pattern) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Vertex visit order plus, per step, earlier neighbors / non-neighbors."""
    p = pattern.p
    adj = [set() for _ in range(p)]
    for a, b in pattern.edges:
        adj[a].add(b)
        adj[b].add(a)
    order = [0]
    seen = {0}
    queue = [0]
    while queue:
        u = queue.pop(0)
        for v in sorted(adj[u]):
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
    prev_adj, prev_nonadj = [], []
    for t, v in enumerate(order):
        earlier = order[:t]
        prev_adj.append([s for s, u in enumerate(earlier) if u in adj[v]])
        prev_nonadj.append([s for s, u in enumerate(earlier) if u not in adj[v]])
    return order, prev_adj, prev_nonadj


def _embedding_counts(g: Graph, pattern: Pattern, induced: bool) -> tuple[int, np.ndarray]:
    """Backtracking enumeration of injective embeddings; exact for any pattern.

    Cost grows like m * max_degree**(p-2), so this is the small/medium-graph
    path; closed-form counters handle the statistics used at scale.
    """
    n, p = g.n, pattern.p
    per_node = np.zeros(n, dtype=np.int64)
    if n < p:
        return 0, per_node
    nbrs = [frozenset(g.neighbors(i).tolist()) for i in range(n)]
    _, prev_adj, prev_nonadj = _bfs_order(pattern)

    total = 0
    image = [0] * p

    def extend(depth: int):
        nonlocal total
        if depth == p:
            total += 1
            for v in image:
                per_node[v] += 1
            return
        anchors = prev_adj[depth]
        cand = set(nbrs[image[anchors[0]]])
        for s in anchors[1:]:
            cand &= nbrs[image[s]]
        cand -= set(image[:depth])
        if induced:
            for s in prev_nonadj[depth]:
                cand -= nbrs[image[s]]
        for v in cand:
            image[depth] = v
            extend(depth + 1)

    for start in range(n):
        image[0] = start
        extend(1)

    aut = pattern.automorphism_count
    if total % aut or np.any(per_node % aut):
        raise AssertionError("embedding count not divisible by automorphism count")
    return total // aut, per_node // aut


def brute_force_counts(
    g: Graph, pattern: Pattern, induced: bool = False, max_nodes: int = 60
) -> tuple[int, np.ndarray]:
    """Testing oracle: exhaustive enumeration over all C(n, p) vertex subsets.

    Independent of the production counters (no degree formulas, no matrix
    products, no embedding search).  Gated to small graphs.
    """
    n, p = g.n, pattern.p
    if n > max_nodes:
        raise ValueError(f"brute-force oracle gated to n <= {max_nodes}")
    per_node = np.zeros(n, dtype=np.int64)
    if n < p:
        return 0, per_node

    pair_slots = list(itertools.combinations(range(p), 2))
    weights = 1 << np.arange(len(pair_slots), dtype=np.int64)
    iso_codes = []
    iso_masks = []
    for iso in pattern.labeled_isomorphs:
        mask = np.array([tuple(sorted(pair)) in iso for pair in pair_slots])
        iso_masks.append(mask)
        iso_codes.append(int(weights[mask].sum()))
    iso_codes = np.array(sorted(iso_codes), dtype=np.int64)

    a = g.dense()
    total = 0
    combos = itertools.combinations(range(n), p)
    while True:
        chunk = np.array(list(itertools.islice(combos, 200_000)), dtype=np.int64)
        if chunk.size == 0:
            break
        bits = np.stack(
            [a[chunk[:, s], chunk[:, t]] > 0 for s, t in pair_slots], axis=1
        )
        if induced:
            codes = bits @ weights
            hit = np.isin(codes, iso_codes)
            total += int(hit.sum())
            per_node += np.bincount(chunk[hit].ravel(), minlength=n)
        else:
            for mask in iso_masks:
                hit = bits[:, mask].all(axis=1)
                total += int(hit.sum())
                per_node += np.bincount(chunk[hit].ravel(), minlength=n)
    return total, per_node
