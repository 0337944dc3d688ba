"""Ramsey-minimality checks, minimalization, degree surveys, and
Ramsey-equivalence refutation by distinguishing witnesses.

Graph enumeration is built in for up to 8 vertices: graphs are grown one
vertex at a time and deduplicated by canonical form, defined as the
lexicographically least column-major upper-triangle adjacency bitstring over
all vertex permutations. Survey results only ever bound the smallest minimum
degree from above within the searched order range; no claim is made beyond it.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .arrowing import Outcome, SearchOptions, arrows, find_pattern
from .errors import InputError, Undecided
from .formats import graph6_encode
from .graphs import Graph, bits, induced_subgraph
from .patterns import TargetPattern, pattern_graph, pattern_num_edges, pattern_text

__all__ = [
    "MinimalityReport",
    "is_minimal",
    "minimalize",
    "DegreeSurvey",
    "degree_survey",
    "DistinguishReport",
    "distinguish",
    "canonical_key",
    "canonical_graph",
    "enumerate_graphs",
]

_ENUM_LIMIT = 8  # built-in generation bound; larger orders need external streams


# -- canonical forms and enumeration ------------------------------------------


def _refinement(g: Graph) -> list[int]:
    """Stable vertex classes under iterated degree refinement.

    Class ids are ranks of the class signatures, so isomorphic graphs assign
    identical id multisets and corresponding vertices get equal ids.
    """
    colour = list(g.degrees())
    while True:
        sig = [
            (colour[v], tuple(sorted(colour[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colour:
            return colour
        colour = new


def _canonical_columns(g: Graph) -> list[int]:
    """Minimum column-major adjacency bitstring over the orderings that list
    vertices grouped by ascending refinement class.

    Restricting to class-grouped orderings keeps the form isomorphism
    invariant (the classes are) while collapsing most tie branching. Column j
    holds the adjacency of the vertex placed at position j toward positions
    0..j-1, position 0 being the highest bit. Backtracking branches inside a
    class only, prunes against the best completed string, and skips
    interchangeable twin candidates.
    """
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    colour = _refinement(g)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colour):
        cells.setdefault(c, []).append(v)
    pos_cell: list[list[int]] = []
    for c in sorted(cells):
        pos_cell.extend([cells[c]] * len(cells[c]))

    best: list[int] | None = None
    placed: list[int] = []

    def column(v: int) -> int:
        col = 0
        row = adj[v]
        for u in placed:
            col = (col << 1) | ((row >> u) & 1)
        return col

    def rec(cols: list[int], used: int, tight: bool) -> None:
        nonlocal best
        j = len(placed)
        if j == n:
            if best is None or (not tight and cols < best):
                best = list(cols)
            return
        options: dict[int, list[int]] = {}
        for v in pos_cell[j]:
            if (used >> v) & 1:
                continue
            options.setdefault(column(v), []).append(v)
        for value in sorted(options):
            now_tight = tight
            if tight and best is not None:
                if value > best[j]:
                    break
                now_tight = value == best[j]
            reps: list[int] = []
            for v in options[value]:
                twin = any(
                    (adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in reps
                )
                if not twin:
                    reps.append(v)
            for v in reps:
                placed.append(v)
                cols.append(value)
                rec(cols, used | (1 << v), now_tight)
                cols.pop()
                placed.pop()

    rec([], 0, tight=False)
    assert best is not None
    return best


def canonical_key(g: Graph) -> tuple[int, int]:
    """Hashable canonical invariant (n, packed bitstring); equal iff isomorphic."""
    cols = _canonical_columns(g)
    key = 0
    for j, col in enumerate(cols):
        key = (key << j) | col
    return g.n, key


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``g``."""
    cols = _canonical_columns(g)
    edges = []
    for j, col in enumerate(cols):
        for i in range(j):
            if (col >> (j - 1 - i)) & 1:
                edges.append((i, j))
    return Graph.from_edges(g.n, edges)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return ()
    if n == 1:
        return (Graph.empty(1),)
    out: dict[tuple[int, int], Graph] = {}
    for parent in _classes(n - 1):
        for subset in range(1 << (n - 1)):
            adj = [row | (((subset >> v) & 1) << (n - 1)) for v, row in enumerate(parent.adj)]
            adj.append(subset)
            child = Graph(n, tuple(adj))
            key = canonical_key(child)
            if key not in out:
                out[key] = canonical_graph(child)
    return tuple(g for _k, g in sorted(out.items(), key=lambda kv: kv[0]))


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = g.adj[v] & ~seen
        seen |= fresh
        stack.extend(bits(fresh))
    return seen == (1 << g.n) - 1


def enumerate_graphs(n_max: int, connected_only: bool = False, min_n: int = 1) -> Iterator[Graph]:
    """All non-isomorphic graphs with min_n..n_max vertices, canonical
    representatives, ordered by vertex count and then canonical form."""
    if n_max > _ENUM_LIMIT:
        raise InputError(
            f"built-in enumeration is limited to {_ENUM_LIMIT} vertices; "
            "pass an external graph stream for larger orders"
        )
    for n in range(min_n, n_max + 1):
        for g in _classes(n):
            if connected_only and not _is_connected(g):
                continue
            yield g


# -- minimality ---------------------------------------------------------------


@dataclass(frozen=True)
class MinimalityReport:
    graph: Graph
    pattern: TargetPattern
    decided: bool
    is_ramsey: bool
    is_minimal: bool
    failing_edge: Optional[tuple[int, int]]  # first edge whose deletion still arrows
    isolated_vertices: tuple[int, ...]


def is_minimal(g: Graph, p: TargetPattern, opts: SearchOptions | None = None) -> MinimalityReport:
    """Check that ``g`` arrows ``p`` while no proper subgraph does.

    Edge deletions suffice by monotonicity; isolated vertices violate
    vertex-minimality on their own.
    """
    isolated = tuple(v for v in range(g.n) if g.degree(v) == 0)
    verdict = arrows(g, p, p, opts)
    if verdict.outcome is Outcome.UNDECIDED:
        return MinimalityReport(g, p, False, False, False, None, isolated)
    if verdict.outcome is Outcome.NOT_ARROW:
        return MinimalityReport(g, p, True, False, False, None, isolated)
    failing = None
    for u, v in g.edges():
        sub = arrows(g.without_edge(u, v), p, p, opts)
        if sub.outcome is Outcome.UNDECIDED:
            return MinimalityReport(g, p, False, True, False, None, isolated)
        if sub.outcome is Outcome.ARROW:
            failing = (u, v)
            break
    minimal = failing is None and not isolated
    return MinimalityReport(g, p, True, True, minimal, failing, isolated)


def minimalize(g: Graph, p: TargetPattern, opts: SearchOptions | None = None) -> Graph:
    """Greedy minimal Ramsey subgraph: delete edges in lexicographic order
    whenever arrowing survives, then drop isolated vertices.

    One pass suffices: an edge whose deletion broke arrowing once can never
    become deletable after further deletions (monotonicity)."""
    verdict = arrows(g, p, p, opts)
    if verdict.outcome is Outcome.UNDECIDED:
        raise Undecided("arrowing of the input graph undecided within budget")
    if verdict.outcome is Outcome.NOT_ARROW:
        raise InputError("minimalize requires a graph that arrows the pattern")
    cur = g
    for u, v in g.edges():
        if not cur.has_edge(u, v):
            continue
        sub = arrows(cur.without_edge(u, v), p, p, opts)
        if sub.outcome is Outcome.UNDECIDED:
            raise Undecided(f"deletion of edge ({u}, {v}) undecided within budget")
        if sub.outcome is Outcome.ARROW:
            cur = cur.without_edge(u, v)
    keep = [v for v in range(cur.n) if cur.degree(v) > 0]
    return induced_subgraph(cur, keep) if len(keep) < cur.n else cur


# -- degree survey --------------------------------------------------------------

_SURVEY_CAVEAT = (
    "min_delta only bounds the smallest minimum degree from above within the "
    "searched order range; smaller values may exist at larger orders"
)


@dataclass
class DegreeSurvey:
    pattern: TargetPattern
    n_max: int
    records: list[dict] = field(default_factory=list)
    min_delta: Optional[int] = None
    lower_bound: Optional[int] = None  # 2*delta(H) - 1
    upper_bound: Optional[int] = None  # r(H) - 1 when supplied
    complete: bool = True
    graphs_checked: int = 0
    caveat: str = _SURVEY_CAVEAT

    def iter_json_lines(self) -> Iterator[str]:
        for rec in self.records:
            yield json.dumps(rec, sort_keys=True)
        summary = {
            "summary": True,
            "pattern": pattern_text(self.pattern),
            "n_max": self.n_max,
            "minimal_graphs": len(self.records),
            "min_delta": self.min_delta,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "complete": self.complete,
            "graphs_checked": self.graphs_checked,
            "caveat": self.caveat,
        }
        yield json.dumps(summary, sort_keys=True)


def degree_survey(
    p: TargetPattern,
    n_max: int,
    *,
    max_seconds: float | None = None,
    opts: SearchOptions | None = None,
    graphs: Iterable[Graph] | None = None,
    r_value: int | None = None,
) -> DegreeSurvey:
    """Survey all candidate graphs up to ``n_max`` vertices for minimal Ramsey
    graphs of ``p`` and report the smallest minimum degree seen.

    ``graphs`` overrides the built-in enumeration (for externally generated
    graph6 streams). ``r_value``, when supplied, records the upper bound
    r(H) - 1 next to the always-available lower bound 2*delta(H) - 1.
    """
    hgraph = pattern_graph(p)
    delta_h = min(hgraph.degrees()) if hgraph.n else 0
    survey = DegreeSurvey(
        p,
        n_max,
        lower_bound=2 * delta_h - 1,
        upper_bound=None if r_value is None else r_value - 1,
    )
    deadline = time.monotonic() + max_seconds if max_seconds is not None else None
    min_edges = 2 * pattern_num_edges(p) - 1
    source = graphs if graphs is not None else enumerate_graphs(n_max)
    for g in source:
        if deadline is not None and time.monotonic() > deadline:
            survey.complete = False
            break
        if g.n > n_max:
            continue
        survey.graphs_checked += 1
        if any(g.degree(v) == 0 for v in range(g.n)):
            continue  # isolated vertices can never be minimal
        if g.num_edges < min_edges:
            continue  # a colouring can halve the edges, so arrowing is impossible
        if find_pattern(g, p) is None:
            continue  # the all-red colouring would already be a witness
        report = is_minimal(g, p, opts)
        if not report.decided:
            survey.complete = False
            continue
        if report.is_minimal:
            delta = min(g.degrees())
            survey.records.append(
                {
                    "graph6": graph6_encode(g),
                    "n": g.n,
                    "m": g.num_edges,
                    "delta": delta,
                }
            )
            if survey.min_delta is None or delta < survey.min_delta:
                survey.min_delta = delta
    if survey.min_delta is not None and survey.min_delta < survey.lower_bound:
        raise RuntimeError(
            f"survey found min degree {survey.min_delta} below the lower bound "
            f"{survey.lower_bound}; the arrowing engine is inconsistent"
        )
    return survey


# -- Ramsey-equivalence refutation ------------------------------------------------


@dataclass(frozen=True)
class DistinguishReport:
    graph: Optional[Graph]  # arrows h1 but not h2
    complete: bool
    graphs_checked: int


def distinguish(
    h1: TargetPattern,
    h2: TargetPattern,
    n_max: int,
    *,
    max_seconds: float | None = None,
    opts: SearchOptions | None = None,
    graphs: Iterable[Graph] | None = None,
) -> DistinguishReport:
    """Search for a graph that arrows ``h1`` but not ``h2``.

    A returned graph refutes Ramsey-equivalence of the two patterns; absence
    within the searched range proves nothing.
    """
    if h1 == h2:
        return DistinguishReport(None, True, 0)
    deadline = time.monotonic() + max_seconds if max_seconds is not None else None
    checked = 0
    complete = True
    source = graphs if graphs is not None else enumerate_graphs(n_max)
    for g in source:
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            break
        if g.n > n_max:
            continue
        checked += 1
        v1 = arrows(g, h1, h1, opts)
        if v1.outcome is Outcome.UNDECIDED:
            complete = False
            continue
        if v1.outcome is not Outcome.ARROW:
            continue
        v2 = arrows(g, h2, h2, opts)
        if v2.outcome is Outcome.UNDECIDED:
            complete = False
            continue
        if v2.outcome is Outcome.NOT_ARROW:
            return DistinguishReport(g, complete, checked)
    return DistinguishReport(None, complete, checked)
