"""Finite simple graphs and uniform hypergraphs with exact solvers.

Vertices are always the integers ``0..n-1`` with no gaps. Graphs are
immutable; adjacency is stored as one bitmask per vertex, which keeps the
exact clique and independence routines usable up to the 64-vertex design
limit. All functions here are pure and safe to call from concurrent workers.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InputError

__all__ = [
    "Graph",
    "Hypergraph",
    "clique_number",
    "independence_number",
    "induced_subgraph",
    "hyper_girth",
    "hyper_alpha",
    "bits",
]

INFINITE = math.inf  # girth of a circuit-free hypergraph


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no multi-edges, labels 0..n-1."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise InputError("adjacency table length must equal vertex count")
        full = (1 << self.n) - 1 if self.n else 0
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InputError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise InputError(f"vertex {v} has a self-loop")
        for v, row in enumerate(self.adj):
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise InputError(f"adjacency is not symmetric at ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    # -- basic accessors ---------------------------------------------------

    def edges(self) -> list[tuple[int, int]]:
        """Edge list as sorted pairs in lexicographic order."""
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for d in bits(row):
                out.append((u, u + 1 + d))
        return out

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple((full & ~row) & ~(1 << v) for v, row in enumerate(self.adj)))

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise InputError(f"edge ({u}, {v}) not present")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    # -- fixtures ----------------------------------------------------------

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph.from_edges(n, combinations(range(n), 2))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise InputError("a cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def petersen() -> "Graph":
        """Petersen graph; vertices 0..4 are the outer 5-cycle, 5..9 the inner star."""
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(i, i + 5) for i in range(5)]
        edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, edges)

    @staticmethod
    def disjoint_union(parts: Iterable["Graph"]) -> "Graph":
        offset = 0
        edges: list[tuple[int, int]] = []
        for g in parts:
            edges += [(u + offset, v + offset) for u, v in g.edges()]
            offset += g.n
        return Graph.from_edges(offset, edges)


# -- exact clique / independence -------------------------------------------


def _colour_sort(adj: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of the vertices in ``cand``; returns (order, bounds).

    Vertices appear grouped by colour class; ``bounds[i]`` is the number of
    classes used up to and including ``order[i]``, an upper bound on the size
    of any clique within ``order[:i+1]``.
    """
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    left = cand
    while left:
        colour += 1
        q = left
        while q:
            b = q & -q
            v = b.bit_length() - 1
            q &= ~adj[v]
            q ^= b
            left ^= b
            order.append(v)
            bounds.append(colour)
    return order, bounds


def clique_number(g: Graph) -> int:
    """Largest c such that ``g`` contains the complete graph on c vertices.

    Exact branch-and-bound with greedy colouring bounds; intended for
    n up to 64. Returns 0 for the graph on zero vertices.
    """
    if g.n == 0:
        return 0
    adj = g.adj
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, bounds = _colour_sort(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            if size + 1 > best:
                best = size + 1
            nc = cand & adj[v]
            if nc:
                expand(size + 1, nc)
            cand ^= 1 << v

    expand(0, (1 << g.n) - 1)
    return best


def independence_number(g: Graph) -> int:
    """Largest independent set size, computed as the clique number of the complement."""
    return clique_number(g.complement())


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled 0..k-1 in ascending label order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(vs)}
    edges = [
        (index[u], index[v]) for u, v in combinations(vs, 2) if g.has_edge(u, v)
    ]
    return Graph.from_edges(len(vs), edges)


# -- hypergraphs -------------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    """u-uniform hypergraph on vertices 0..n-1 with distinct edges."""

    n: int
    u: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        if self.u < 2:
            raise InputError("uniformity must be at least 2")
        seen = set()
        for e in self.edges:
            if len(e) != self.u or len(set(e)) != self.u:
                raise InputError(f"edge {e} is not a {self.u}-element set")
            if tuple(e) != tuple(sorted(e)):
                raise InputError(f"edge {e} is not sorted")
            if any(not 0 <= v < self.n for v in e):
                raise InputError(f"edge {e} out of range for n={self.n}")
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)

    @classmethod
    def from_edges(cls, n: int, u: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        normalized = sorted({tuple(sorted(e)) for e in edges})
        return cls(n, u, tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def _shortest_circuit(h: Hypergraph) -> tuple[int, tuple[int, ...]] | None:
    """Shortest circuit as (length, participating edge indices), or None.

    A circuit of length s alternates s distinct edges and s distinct vertices,
    consecutive edges sharing the vertex between them and the last edge
    sharing a vertex with the first; two edges meeting in two or more
    vertices already form a circuit of length 2. Equivalently, circuits of
    length s are the cycles of length 2s in the bipartite incidence graph,
    which is searched here breadth-first once per incidence link.
    """
    n, m = h.n, len(h.edges)
    if m == 0:
        return None
    # incidence graph: nodes 0..n-1 are vertices, n..n+m-1 are edges
    nbr: list[list[int]] = [[] for _ in range(n + m)]
    for i, e in enumerate(h.edges):
        for v in e:
            nbr[v].append(n + i)
            nbr[n + i].append(v)
    best_len: float = math.inf
    best_path: list[int] | None = None
    for i, e in enumerate(h.edges):
        enode = n + i
        for v in e:
            # shortest cycle through the link (v, enode): remove it, BFS v -> enode
            dist = [-1] * (n + m)
            parent = [-1] * (n + m)
            dist[v] = 0
            q = deque([v])
            found = False
            while q and not found:
                x = q.popleft()
                if dist[x] + 1 >= best_len:
                    break
                for y in nbr[x]:
                    if (x == v and y == enode) or (x == enode and y == v):
                        continue
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        if y == enode:
                            found = True
                            break
                        q.append(y)
            if found and dist[enode] + 1 < best_len:
                best_len = dist[enode] + 1
                path = [enode]
                while path[-1] != v:
                    path.append(parent[path[-1]])
                best_path = path
    if best_path is None:
        return None
    circuit_edges = tuple(sorted(x - n for x in best_path if x >= n))
    return int(best_len) // 2, circuit_edges


def hyper_girth(h: Hypergraph) -> int | float:
    """Length of the shortest circuit of ``h``, or ``math.inf`` when none exists."""
    found = _shortest_circuit(h)
    return INFINITE if found is None else found[0]


def hyper_alpha(h: Hypergraph) -> int:
    """Largest size of a vertex set containing no hyperedge entirely.

    Computed exactly as n minus the minimum transversal, by branch and bound
    over which vertex of the first unhit edge joins the transversal.
    """
    masks = []
    for e in h.edges:
        mask = 0
        for v in e:
            mask |= 1 << v
        masks.append(mask)
    if not masks:
        return h.n

    # greedy upper bound for pruning: repeatedly hit the most-covering vertex
    def greedy() -> int:
        left = list(masks)
        count = 0
        while left:
            cover = [0] * h.n
            for mask in left:
                for v in bits(mask):
                    cover[v] += 1
            v = max(range(h.n), key=lambda x: cover[x])
            left = [mask for mask in left if not (mask >> v) & 1]
            count += 1
        return count

    best = greedy()

    def rec(chosen: int, count: int) -> None:
        nonlocal best
        if count >= best:
            return
        for mask in masks:
            if not mask & chosen:
                for v in bits(mask):
                    rec(chosen | (1 << v), count + 1)
                return
        best = count

    rec(0, 0)
    return h.n - best
