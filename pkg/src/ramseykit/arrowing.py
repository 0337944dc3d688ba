"""Exact two-colour arrowing decisions with symmetry-broken exhaustive search.

Determinism contract: the search assigns edges in sorted-pair (lexicographic)
order, trying red before blue, and the first complete colouring containing no
monochromatic target is the canonical witness. When both targets are equal the
first edge is fixed red (colour-swap symmetry), which never changes the
verdict and never changes the canonical witness. Budgets produce an explicit
UNDECIDED outcome, never a guess. Parallel mode splits the tree on a colour
prefix and reduces subtree results in lexicographic order, so it returns the
same verdict and the same witness as the single-worker search.
"""
from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil
from typing import Iterator, Mapping, Optional

from .errors import FormatError, InputError
from .graphs import Graph, bits, induced_subgraph
from .patterns import (
    Arbitrary,
    Clique,
    CliquePendant,
    CliquePlusCliques,
    Colour,
    TargetPattern,
    largest_component_size,
    pattern_num_edges,
    pattern_num_vertices,
)

__all__ = [
    "EdgeColouring",
    "Outcome",
    "ArrowingVerdict",
    "SearchOptions",
    "find_mono",
    "find_pattern",
    "arrows",
    "epsilon_arrows",
    "EpsilonReport",
    "ramsey_number",
    "RamseyNumberReport",
    "write_colouring",
    "read_colouring",
    "automorphisms",
]


@lru_cache(maxsize=1024)
def _edge_index(g: Graph) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(g.edges())}


@dataclass(frozen=True)
class EdgeColouring:
    """Total red/blue assignment on a graph's edge set.

    ``colours[i]`` is the colour of the i-th edge in sorted-pair order.
    """

    graph: Graph
    colours: tuple[Colour, ...]

    def __post_init__(self):
        if len(self.colours) != self.graph.num_edges:
            raise InputError("colouring must cover the edge set exactly")

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: Mapping[tuple[int, int], Colour]) -> "EdgeColouring":
        idx = _edge_index(graph)
        norm: dict[tuple[int, int], Colour] = {}
        for (u, v), col in mapping.items():
            key = (u, v) if u < v else (v, u)
            if key not in idx:
                raise InputError(f"({u}, {v}) is not an edge of the graph")
            norm[key] = col
        if len(norm) != len(idx):
            raise InputError("colouring must cover the edge set exactly")
        return cls(graph, tuple(norm[e] for e in graph.edges()))

    @classmethod
    def constant(cls, graph: Graph, colour: Colour) -> "EdgeColouring":
        return cls(graph, (colour,) * graph.num_edges)

    def colour_of(self, u: int, v: int) -> Colour:
        key = (u, v) if u < v else (v, u)
        return self.colours[_edge_index(self.graph)[key]]

    def class_adj(self, colour: Colour) -> tuple[int, ...]:
        adj = [0] * self.graph.n
        for (u, v), col in zip(self.graph.edges(), self.colours):
            if col is colour:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return tuple(adj)

    def subgraph(self, colour: Colour) -> Graph:
        return Graph(self.graph.n, self.class_adj(colour))

    def swapped(self) -> "EdgeColouring":
        return EdgeColouring(self.graph, tuple(c.swapped for c in self.colours))


# -- witness text format ------------------------------------------------------


def write_colouring(c: EdgeColouring) -> str:
    lines = [f"n {c.graph.n}"]
    lines += [f"{u} {v} {col.letter}" for (u, v), col in zip(c.graph.edges(), c.colours)]
    return "\n".join(lines) + "\n"


def read_colouring(text: str) -> EdgeColouring:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise FormatError("colouring must start with a 'n <count>' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError(f"bad header line: {lines[0]!r}") from None
    edges = []
    colours = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad colouring line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        key = (u, v) if u < v else (v, u)
        colours[key] = Colour.from_letter(parts[2])
    g = Graph.from_edges(n, edges)
    return EdgeColouring.from_mapping(g, colours)


# -- embedding primitives (bitmask adjacency) ---------------------------------


def _has_clique_within(adj: tuple[int, ...], mask: int, size: int) -> bool:
    if size <= 0:
        return True
    if mask.bit_count() < size:
        return False
    while mask:
        b = mask & -mask
        v = b.bit_length() - 1
        mask ^= b
        if _has_clique_within(adj, mask & adj[v], size - 1):
            return True
        if mask.bit_count() < size:
            return False
    return False


def _cliques_within(adj, mask: int, size: int, prefix: tuple = ()) -> Iterator[tuple[int, ...]]:
    """All cliques of the given size inside ``mask`` as ascending vertex tuples,
    in lexicographic order."""
    if size == 0:
        yield prefix
        return
    while mask:
        if mask.bit_count() < size:
            return
        b = mask & -mask
        v = b.bit_length() - 1
        mask ^= b
        yield from _cliques_within(adj, mask & adj[v], size - 1, prefix + (v,))


def _find_clique_within(adj, mask: int, size: int) -> tuple[int, ...] | None:
    for tpl in _cliques_within(adj, mask, size):
        return tpl
    return None


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _pack_cliques(adj, n: int, used: int, count: int, t: int, lo: int = -1) -> tuple | None:
    """Lexicographically least packing of ``count`` disjoint t-cliques avoiding
    ``used``, as a tuple of vertex tuples, or None. Successive cliques are
    ordered by their minimum vertex, which must exceed ``lo``."""
    if count == 0:
        return ()
    avail = ((1 << n) - 1) & ~used
    if lo >= 0:
        avail &= ~((1 << (lo + 1)) - 1)
    if t == 1:
        picked = []
        for v in bits(avail):
            picked.append((v,))
            if len(picked) == count:
                return tuple(picked)
        return None
    for tpl in _cliques_within(adj, avail, t):
        rest = _pack_cliques(adj, n, used | _mask_of(tpl), count - 1, t, tpl[0])
        if rest is not None:
            return (tpl,) + rest
    return None


def _kclique_then_pack(adj, n: int, used: int, k: int, count: int, t: int) -> tuple | None:
    avail = ((1 << n) - 1) & ~used
    for tpl in _cliques_within(adj, avail, k):
        rest = _pack_cliques(adj, n, used | _mask_of(tpl), count, t)
        if rest is not None:
            return (tpl, rest)
    return None


def _extend_embedding(adj, n: int, pat: Graph, partial: dict[int, int]) -> dict | None:
    """Complete a partial pattern-vertex to host-vertex monomorphism, or None."""
    used = _mask_of(partial.values())
    order = [a for a in range(pat.n) if a not in partial]

    def rec(assigned: dict, used: int, todo: list[int]) -> dict | None:
        if not todo:
            return dict(assigned)
        best_i = 0
        best_cnt = -1
        for i, a in enumerate(todo):
            cnt = sum(1 for b in bits(pat.adj[a]) if b in assigned)
            if cnt > best_cnt:
                best_cnt, best_i = cnt, i
        a = todo[best_i]
        rest = todo[:best_i] + todo[best_i + 1:]
        cand = ~used & ((1 << n) - 1)
        for b in bits(pat.adj[a]):
            if b in assigned:
                cand &= adj[assigned[b]]
        for x in bits(cand):
            assigned[a] = x
            res = rec(assigned, used | (1 << x), rest)
            if res is not None:
                return res
            del assigned[a]
        return None

    return rec(dict(partial), used, order)


# -- through-edge completion checks -------------------------------------------


def _through_edge_checker(p: TargetPattern):
    """Build ``check(adj, u, v) -> bool``: does the colour class whose adjacency
    is ``adj`` (edge (u,v) already included) contain a copy of ``p`` that uses
    the edge (u,v)?"""
    if isinstance(p, Clique):
        k = p.k
        if k == 1:
            return lambda adj, u, v: False

        def check_clique(adj, u, v):
            return _has_clique_within(adj, adj[u] & adj[v], k - 2)

        return check_clique

    if isinstance(p, CliquePendant):
        k = p.k

        def check_pendant(adj, u, v):
            if _has_clique_within(adj, adj[u] & ~(1 << v), k - 1):
                return True
            if _has_clique_within(adj, adj[v] & ~(1 << u), k - 1):
                return True
            if k >= 2:
                uv = (1 << u) | (1 << v)
                for tpl in _cliques_within(adj, adj[u] & adj[v], k - 2):
                    smask = uv | _mask_of(tpl)
                    for s in bits(smask):
                        if adj[s] & ~smask:
                            return True
            return False

        return check_pendant

    if isinstance(p, CliquePlusCliques):
        k, f, t = p.k, p.f, p.t

        def check_plus(adj, u, v):
            n = len(adj)
            uv = (1 << u) | (1 << v)
            if k >= 2:
                for tpl in _cliques_within(adj, adj[u] & adj[v], k - 2):
                    if _pack_cliques(adj, n, uv | _mask_of(tpl), f, t) is not None:
                        return True
            if f >= 1 and t >= 2:
                for tpl in _cliques_within(adj, adj[u] & adj[v], t - 2):
                    if _kclique_then_pack(adj, n, uv | _mask_of(tpl), k, f - 1, t) is not None:
                        return True
            return False

        return check_plus

    if not isinstance(p, Arbitrary):
        raise InputError(f"unknown pattern type {type(p).__name__}")
    pat = p.graph
    pedges = pat.edges()

    def check_arbitrary(adj, u, v):
        n = len(adj)
        for a, b in pedges:
            for x, y in ((u, v), (v, u)):
                if _extend_embedding(adj, n, pat, {a: x, b: y}) is not None:
                    return True
        return False

    return check_arbitrary


# -- global pattern search -----------------------------------------------------


def _search_pattern(adj: tuple[int, ...], n: int, p: TargetPattern):
    """Lexicographically least embedding of ``p`` into the graph given by
    bitmask adjacency ``adj``, or None.

    Embedding shapes: Clique -> vertex tuple; CliquePendant -> (clique tuple,
    attach vertex, pendant vertex); CliquePlusCliques -> (clique tuple, tuple
    of t-clique tuples); Arbitrary -> tuple, image of pattern vertex i.
    """
    full = (1 << n) - 1
    if isinstance(p, Clique):
        return _find_clique_within(adj, full, p.k) if p.k <= n else None
    if isinstance(p, CliquePendant):
        for tpl in _cliques_within(adj, full, p.k):
            smask = _mask_of(tpl)
            for s in tpl:
                ext = adj[s] & ~smask
                if ext:
                    w = (ext & -ext).bit_length() - 1
                    return (tpl, s, w)
        return None
    if isinstance(p, CliquePlusCliques):
        for tpl in _cliques_within(adj, full, p.k):
            rest = _pack_cliques(adj, n, _mask_of(tpl), p.f, p.t)
            if rest is not None:
                return (tpl, rest)
        return None
    if not isinstance(p, Arbitrary):
        raise InputError(f"unknown pattern type {type(p).__name__}")
    res = _extend_embedding(adj, n, p.graph, {})
    if res is None:
        return None
    return tuple(res[a] for a in range(p.graph.n))


def find_pattern(g: Graph, p: TargetPattern):
    """Embedding of ``p`` as a subgraph of ``g`` (colour-blind), or None."""
    return _search_pattern(g.adj, g.n, p)


def find_mono(c: EdgeColouring, p: TargetPattern, colour: Colour):
    """Embedding of ``p`` into the given colour class of ``c``, or None."""
    return _search_pattern(c.class_adj(colour), c.graph.n, p)


def embedding_vertices(p: TargetPattern, emb) -> set[int]:
    """All host vertices used by an embedding returned from find_mono."""
    if isinstance(p, Clique):
        return set(emb)
    if isinstance(p, CliquePendant):
        tpl, _s, w = emb
        return set(tpl) | {w}
    if isinstance(p, CliquePlusCliques):
        tpl, rest = emb
        out = set(tpl)
        for t in rest:
            out |= set(t)
        return out
    return set(emb)


# -- the arrowing search --------------------------------------------------------


class Outcome(enum.Enum):
    ARROW = "arrow"
    NOT_ARROW = "not-arrow"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ArrowingVerdict:
    outcome: Outcome
    witness: Optional[EdgeColouring]
    nodes: int
    seconds: float

    def __post_init__(self):
        if (self.outcome is Outcome.NOT_ARROW) != (self.witness is not None):
            raise InputError("witness present exactly for NOT_ARROW verdicts")


@dataclass(frozen=True)
class SearchOptions:
    max_nodes: int | None = None
    max_seconds: float | None = None
    workers: int = 1
    orbit_pruning: bool = False


_FOUND, _EXHAUSTED, _BUDGET = 0, 1, 2


def _edgeless_arrow(g: Graph, p: TargetPattern) -> bool:
    """True when every colouring trivially contains ``p`` because the pattern
    has no edges and enough vertices exist."""
    return pattern_num_edges(p) == 0 and pattern_num_vertices(p) <= g.n


def _dfs_search(
    g: Graph,
    red: TargetPattern,
    blue: TargetPattern,
    opts: SearchOptions,
    prefix: tuple[Colour, ...] = (),
) -> tuple[int, tuple[Colour, ...] | None, int]:
    """Core sequential search under a fixed colour prefix.

    Returns (status, witness colour tuple or None, nodes explored).
    """
    edges = g.edges()
    m = len(edges)
    n = g.n
    radj = [0] * n
    badj = [0] * n
    red_chk = _through_edge_checker(red)
    blue_chk = _through_edge_checker(blue)
    sym = red == blue
    colours: list[Colour | None] = [None] * m
    auts = None
    eidx = None
    if opts.orbit_pruning:
        auts = [p for p in automorphisms(g) if any(p[i] != i for i in range(n))]
        eidx = _edge_index(g)

    deadline = time.monotonic() + opts.max_seconds if opts.max_seconds is not None else None
    nodes = 0

    def place(i: int, col: Colour) -> bool:
        u, v = edges[i]
        if col is Colour.RED:
            radj[u] |= 1 << v
            radj[v] |= 1 << u
            ok = not red_chk(radj, u, v)
        else:
            badj[u] |= 1 << v
            badj[v] |= 1 << u
            ok = not blue_chk(badj, u, v)
        colours[i] = col
        return ok

    def unplace(i: int) -> None:
        u, v = edges[i]
        if colours[i] is Colour.RED:
            radj[u] &= ~(1 << v)
            radj[v] &= ~(1 << u)
        else:
            badj[u] &= ~(1 << v)
            badj[v] &= ~(1 << u)
        colours[i] = None

    def dominated(i: int) -> bool:
        # lex-leader pruning: some automorphism maps the assigned prefix to a
        # strictly smaller colour string, so no completion of it is canonical
        for perm in auts:
            for pos in range(i + 1):
                a, b = edges[pos]
                x, y = perm[a], perm[b]
                key = (x, y) if x < y else (y, x)
                midx = eidx[key]
                if midx > i:
                    break
                mc = colours[midx]
                c = colours[pos]
                if mc is c:
                    continue
                if mc is Colour.RED:  # mapped string smaller at first difference
                    return True
                break
        return False

    for i, col in enumerate(prefix):
        if not place(i, col):
            return _EXHAUSTED, None, 0

    witness: tuple[Colour, ...] | None = None

    def dfs(i: int) -> int:
        nonlocal nodes, witness
        if i == m:
            witness = tuple(colours)  # canonical: first leaf in lex order
            return _FOUND
        cols = (Colour.RED,) if (i == 0 and sym) else (Colour.RED, Colour.BLUE)
        for col in cols:
            nodes += 1
            if opts.max_nodes is not None and nodes > opts.max_nodes:
                return _BUDGET
            if deadline is not None and (nodes & 2047) == 0 and time.monotonic() > deadline:
                return _BUDGET
            ok = place(i, col)
            if ok and auts and dominated(i):
                ok = False
            if ok:
                r = dfs(i + 1)
                if r != _EXHAUSTED:
                    unplace(i)
                    return r
            unplace(i)
        return _EXHAUSTED

    status = dfs(len(prefix))
    return status, witness, nodes


def _search_task(args):
    g, red, blue, opts, prefix = args
    return _dfs_search(g, red, blue, opts, prefix)


def _prefixes(depth: int, sym: bool) -> list[tuple[Colour, ...]]:
    out: list[tuple[Colour, ...]] = [()]
    for level in range(depth):
        nxt = []
        for p in out:
            cols = (Colour.RED,) if (level == 0 and sym) else (Colour.RED, Colour.BLUE)
            for c in cols:
                nxt.append(p + (c,))
        out = nxt
    return out


def arrows(
    g: Graph,
    red: TargetPattern,
    blue: TargetPattern,
    opts: SearchOptions | None = None,
) -> ArrowingVerdict:
    """Decide whether every red/blue colouring of E(g) contains a red copy of
    ``red`` or a blue copy of ``blue``.

    NOT_ARROW verdicts carry the canonical witness colouring; exceeding the
    node or time budget yields UNDECIDED.
    """
    opts = opts or SearchOptions()
    start = time.monotonic()

    if _edgeless_arrow(g, red) or _edgeless_arrow(g, blue):
        return ArrowingVerdict(Outcome.ARROW, None, 0, time.monotonic() - start)

    m = g.num_edges
    if opts.workers > 1 and m >= 4:
        depth = min(m, max(1, (4 * opts.workers - 1).bit_length()))
        tasks = [(g, red, blue, replace(opts, workers=1), p) for p in _prefixes(depth, red == blue)]
        nodes = 0
        with ProcessPoolExecutor(max_workers=opts.workers) as pool:
            futures = [pool.submit(_search_task, t) for t in tasks]
            try:
                for fut in futures:
                    status, wit, task_nodes = fut.result()
                    nodes += task_nodes
                    if status == _FOUND:
                        witness = EdgeColouring(g, wit)
                        return ArrowingVerdict(
                            Outcome.NOT_ARROW, witness, nodes, time.monotonic() - start
                        )
                    if status == _BUDGET:
                        return ArrowingVerdict(
                            Outcome.UNDECIDED, None, nodes, time.monotonic() - start
                        )
            finally:
                pool.shutdown(wait=False, cancel_futures=True)
        return ArrowingVerdict(Outcome.ARROW, None, nodes, time.monotonic() - start)

    status, wit, nodes = _dfs_search(g, red, blue, opts)
    elapsed = time.monotonic() - start
    if status == _FOUND:
        return ArrowingVerdict(Outcome.NOT_ARROW, EdgeColouring(g, wit), nodes, elapsed)
    if status == _BUDGET:
        return ArrowingVerdict(Outcome.UNDECIDED, None, nodes, elapsed)
    return ArrowingVerdict(Outcome.ARROW, None, nodes, elapsed)


# -- epsilon arrowing -----------------------------------------------------------


@dataclass(frozen=True)
class EpsilonReport:
    holds: bool | None  # None when undecided within budget
    subset_size: int
    failing_subset: tuple[int, ...] | None
    subsets_checked: int


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def epsilon_arrows(
    f: Graph,
    p: TargetPattern,
    eps,
    opts: SearchOptions | None = None,
) -> EpsilonReport:
    """Check that every induced subgraph on ceil(eps * n) vertices arrows ``p``
    in both colours. Supersets inherit arrowing by monotonicity, so only the
    minimum subset size is tested. ``eps`` must lie in (0, 1]."""
    eps = _to_fraction(eps)
    if not 0 < eps <= 1:
        raise InputError("eps must lie in (0, 1]")
    size = ceil(eps * f.n)
    deadline = None
    if opts is not None and opts.max_seconds is not None:
        deadline = time.monotonic() + opts.max_seconds
    checked = 0
    for subset in combinations(range(f.n), size):
        if deadline is not None and time.monotonic() > deadline:
            return EpsilonReport(None, size, None, checked)
        sub = induced_subgraph(f, subset)
        verdict = arrows(sub, p, p, opts)
        checked += 1
        if verdict.outcome is Outcome.UNDECIDED:
            return EpsilonReport(None, size, None, checked)
        if verdict.outcome is Outcome.NOT_ARROW:
            return EpsilonReport(False, size, subset, checked)
    return EpsilonReport(True, size, None, checked)


# -- Ramsey numbers --------------------------------------------------------------


@dataclass(frozen=True)
class RamseyNumberReport:
    n: int | None  # the Ramsey number, when decided
    decided: bool
    checked_up_to: int  # largest n with a resolved verdict
    nodes: int


def ramsey_number(
    red: TargetPattern,
    blue: TargetPattern,
    opts: SearchOptions | None = None,
) -> RamseyNumberReport:
    """Smallest n such that the complete graph on n vertices arrows the pair.

    Increments n starting from the largest component size of either pattern;
    on budget exhaustion reports the last resolved order."""
    opts = opts or SearchOptions()
    deadline = time.monotonic() + opts.max_seconds if opts.max_seconds is not None else None
    n = max(1, largest_component_size(red), largest_component_size(blue))
    nodes = 0
    resolved = n - 1
    while True:
        sub_opts = opts
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return RamseyNumberReport(None, False, resolved, nodes)
            sub_opts = replace(opts, max_seconds=remaining)
        verdict = arrows(Graph.complete(n), red, blue, sub_opts)
        nodes += verdict.nodes
        if verdict.outcome is Outcome.UNDECIDED:
            return RamseyNumberReport(None, False, resolved, nodes)
        resolved = n
        if verdict.outcome is Outcome.ARROW:
            return RamseyNumberReport(n, True, resolved, nodes)
        n += 1


# -- automorphisms (for optional orbit pruning) -----------------------------------


def automorphisms(g: Graph, limit: int = 2000) -> list[tuple[int, ...]]:
    """Vertex automorphisms of ``g`` as permutation tuples, found by
    degree-refinement backtracking; at most ``limit`` are returned."""
    n = g.n
    if n == 0:
        return [()]
    colour = list(g.degrees())
    while True:
        sig = [
            (colour[v], tuple(sorted(colour[u] for u in bits(g.adj[v]))))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colour:
            break
        colour = new

    out: list[tuple[int, ...]] = []
    perm: list[int] = [-1] * n
    used = [False] * n

    def rec(v: int) -> None:
        if len(out) >= limit:
            return
        if v == n:
            out.append(tuple(perm))
            return
        for w in range(n):
            if used[w] or colour[w] != colour[v]:
                continue
            ok = True
            for u in range(v):
                if g.has_edge(u, v) != g.has_edge(perm[u], w):
                    ok = False
                    break
            if ok:
                perm[v] = w
                used[w] = True
                rec(v + 1)
                used[w] = False
                perm[v] = -1

    rec(0)
    return out
