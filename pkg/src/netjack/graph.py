"""Undirected simple graph container, edge-list ingestion, and node-subset views."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np
import scipy.sparse

from .errors import DataError, DegenerateGraphError

_NODES_HEADER = re.compile(r"#\s*nodes\s*=\s*(\d+)\s*$")


class Graph:
    """Immutable undirected simple graph with sorted CSR adjacency.

    Nodes are labeled 0..n-1.  Both directions of every edge are stored, so
    ``indices[indptr[i]:indptr[i+1]]`` is the strictly increasing neighbor
    list of node i.  Instances are safe to share across threads; nothing
    mutates them after construction.
    """

    __slots__ = ("indptr", "indices", "degrees", "_dense", "_csr")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, *, _validated: bool = False):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.degrees = np.diff(self.indptr)
        self._dense = None
        self._csr = None
        if not _validated:
            self.validate()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: np.ndarray | Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on nodes 0..n-1 from an iterable of (i, j) pairs.

        Self-loops and duplicate edges (in either direction) are collapsed
        silently; use :func:`load_edge_list` when the number of dropped lines
        matters.
        """
        n = int(n)
        if n < 0:
            raise ValueError("node count must be nonnegative")
        edges = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if edges.size == 0:
            edges = edges.reshape(0, 2)
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise ValueError("edges must be a (k, 2) array")
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint out of range")
        uniq, _ = _normalize_edges(n, edges)
        return cls(*_csr_from_unique_edges(n, uniq), _validated=True)

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "Graph":
        """Build a graph from a symmetric 0/1 adjacency matrix (diagonal ignored)."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        ii, jj = np.nonzero(np.triu(a, k=1))
        return cls.from_edges(a.shape[0], np.column_stack([ii, jj]))

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids of node i (a view, do not mutate)."""
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nbrs = self.neighbors(i)
        pos = np.searchsorted(nbrs, j)
        return bool(pos < nbrs.size and nbrs[pos] == j)

    def edge_array(self) -> np.ndarray:
        """All edges as a (m, 2) array with i < j."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    def dense(self) -> np.ndarray:
        """Dense float32 adjacency matrix; cached, treat as read-only."""
        if self._dense is None:
            a = np.zeros((self.n, self.n), dtype=np.float32)
            rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
            a[rows, self.indices] = 1.0
            self._dense = a
        return self._dense

    def csr(self) -> scipy.sparse.csr_matrix:
        """scipy CSR view with unit weights; cached, treat as read-only."""
        if self._csr is None:
            data = np.ones(self.indices.size, dtype=np.int64)
            self._csr = scipy.sparse.csr_matrix(
                (data, self.indices, self.indptr), shape=(self.n, self.n)
            )
        return self._csr

    def validate(self) -> None:
        """Check symmetry and simplicity invariants; raises ValueError on violation."""
        n = self.n
        if self.indptr[0] != 0 or self.indptr[-1] != self.indices.size:
            raise ValueError("corrupt indptr")
        if np.any(np.diff(self.indptr) < 0):
            raise ValueError("indptr not monotone")
        if self.indices.size:
            if self.indices.min() < 0 or self.indices.max() >= n:
                raise ValueError("neighbor id out of range")
        rows = np.repeat(np.arange(n, dtype=np.int64), self.degrees)
        if np.any(rows == self.indices):
            raise ValueError("self-loop present")
        # strictly increasing within each row <=> increasing except at row starts
        if self.indices.size > 1:
            inner = np.ones(self.indices.size, dtype=bool)
            starts = self.indptr[1:-1]
            inner[starts[starts < self.indices.size]] = False
            if np.any(np.diff(self.indices)[inner[1:]] <= 0):
                raise ValueError("neighbor lists not strictly increasing")
        fwd = rows * n + self.indices
        rev = self.indices * n + rows
        if not np.array_equal(np.sort(fwd), np.sort(rev)):
            raise ValueError("adjacency not symmetric")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NodeSubset:
    """An order-preserving view onto a subset of a graph's nodes.

    ``kept`` is sorted; old id ``kept[t]`` maps to new id ``t``.
    """

    kept: np.ndarray

    def __post_init__(self):
        kept = np.ascontiguousarray(self.kept, dtype=np.int64)
        if kept.size and (np.any(np.diff(kept) <= 0) or kept[0] < 0):
            raise ValueError("kept node ids must be sorted, unique, and nonnegative")
        object.__setattr__(self, "kept", kept)

    @property
    def size(self) -> int:
        return int(self.kept.size)

    @property
    def mapping(self) -> dict[int, int]:
        return {int(old): new for new, old in enumerate(self.kept)}


def _normalize_edges(n: int, edges: np.ndarray) -> tuple[np.ndarray, int]:
    """Canonicalize (i<j), drop self-loops, dedup.  Returns (unique, n_dropped)."""
    if edges.size == 0:
        return edges.reshape(0, 2), 0
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    proper = lo != hi
    codes = lo[proper] * np.int64(n) + hi[proper]
    uniq_codes = np.unique(codes)
    uniq = np.column_stack([uniq_codes // n, uniq_codes % n])
    return uniq, int(edges.shape[0] - uniq.shape[0])


def _csr_from_unique_edges(n: int, uniq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays from deduplicated canonical (i<j) edges."""
    both_src = np.concatenate([uniq[:, 0], uniq[:, 1]])
    both_dst = np.concatenate([uniq[:, 1], uniq[:, 0]])
    order = np.lexsort((both_dst, both_src))
    indices = both_dst[order]
    counts = np.bincount(both_src, minlength=n)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return indptr, indices


def load_edge_list(
    source: str | Path | IO[str],
    one_indexed: bool = False,
    nodes: int | None = None,
) -> tuple[Graph, int]:
    """Parse a whitespace-separated edge-list text stream into a Graph.

    Format: one edge per line as two integer tokens; blank lines and lines
    starting with ``#`` are ignored, except that a ``# nodes=K`` header sets
    the node universe (useful when high-id nodes are isolated).  The
    ``nodes`` argument overrides any header.  With ``one_indexed`` every id
    is shifted down by one.

    Returns ``(graph, dropped)`` where ``dropped`` counts duplicate-edge and
    self-loop lines that were discarded.

    Raises DataError on malformed tokens (with the line number), on ids that
    are negative after index normalization, and on a node universe smaller
    than the largest id seen.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh, one_indexed=one_indexed, nodes=nodes)

    header_nodes = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _NODES_HEADER.match(line)
            if match:
                header_nodes = int(match.group(1))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise DataError(f"line {lineno}: expected two integer tokens, got {len(tokens)}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise DataError(f"line {lineno}: malformed integer token") from None
        if one_indexed:
            i, j = i - 1, j - 1
        if i < 0 or j < 0:
            raise DataError(f"line {lineno}: negative node id after index normalization")
        pairs.append((i, j))

    universe = nodes if nodes is not None else header_nodes
    max_id = max((max(i, j) for i, j in pairs), default=-1)
    if universe is None:
        n = max_id + 1
    else:
        if universe < max_id + 1:
            raise DataError(f"node universe {universe} smaller than max id {max_id}")
        n = int(universe)

    edges = np.asarray(pairs, dtype=np.int64).reshape(len(pairs), 2)
    uniq, dropped = _normalize_edges(n, edges)
    graph = Graph(*_csr_from_unique_edges(n, uniq), _validated=True)
    return graph, dropped


def common_neighbor_count(g: Graph, i: int, j: int) -> int:
    """Number of shared neighbors of two distinct nodes (sorted-array merge)."""
    n = g.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"node id out of range for n={n}")
    if i == j:
        raise ValueError("common neighbors require two distinct nodes")
    a, b = g.neighbors(i), g.neighbors(j)
    if a.size > b.size:
        a, b = b, a
    pos = np.searchsorted(b, a)
    inside = pos < b.size
    return int(np.count_nonzero(b[pos[inside]] == a[inside]))


def leave_one_out(g: Graph, i: int) -> NodeSubset:
    """Subset view keeping every node except i."""
    if g.n < 2:
        raise DegenerateGraphError("leave-one-out requires at least 2 nodes")
    if not 0 <= i < g.n:
        raise ValueError(f"node id {i} out of range for n={g.n}")
    return NodeSubset(np.delete(np.arange(g.n, dtype=np.int64), i))


def induced_subgraph(g: Graph, subset: NodeSubset) -> Graph:
    """Relabeled graph with exactly the edges internal to the subset."""
    kept = subset.kept
    if kept.size and kept[-1] >= g.n:
        raise ValueError("subset contains out-of-range node ids")
    mask = np.zeros(g.n, dtype=bool)
    mask[kept] = True
    new_id = np.cumsum(mask) - 1
    if kept.size * 4 < g.n:
        # small subsets: touch only the kept rows, not all m edges
        parts = [g.indices[g.indptr[i] : g.indptr[i + 1]] for i in kept]
        cols = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        rows_new = np.repeat(
            np.arange(kept.size, dtype=np.int64),
            np.array([p.size for p in parts], dtype=np.int64),
        )
        sel = mask[cols]
        new_rows = rows_new[sel]
        new_cols = new_id[cols[sel]]
    else:
        rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
        sel = mask[rows] & mask[g.indices]
        new_rows = new_id[rows[sel]]
        new_cols = new_id[g.indices[sel]]
    counts = np.bincount(new_rows, minlength=kept.size)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    # relabeling is monotone, so per-row sortedness carries over
    return Graph(indptr, new_cols, _validated=True)


def relabel(g: Graph, perm: np.ndarray) -> Graph:
    """Graph with node i renamed to perm[i]; perm must be a permutation of 0..n-1."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    edges = g.edge_array()
    return Graph.from_edges(g.n, np.column_stack([perm[edges[:, 0]], perm[edges[:, 1]]]))


def write_edge_list(g: Graph, target: str | Path | IO[str]) -> None:
    """Write a ``# nodes=K`` header plus one ``i j`` line per edge."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            write_edge_list(g, fh)
        return
    target.write(f"# nodes={g.n}\n")
    for i, j in g.edge_array():
        target.write(f"{i} {j}\n")
