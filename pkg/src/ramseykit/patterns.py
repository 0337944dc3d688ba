"""Monochromatic target patterns and the two-colour vocabulary.

The pattern mini-language used across the CLI and file formats:

* ``K5``      complete graph on 5 vertices
* ``K5.K2``   K5 with one pendant edge (6 vertices)
* ``K4+2K3``  disjoint union of one K4 and two copies of K3
* ``file:<path.g6>``  arbitrary graph read from a graph6 file
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .errors import InputError
from .graphs import Graph

__all__ = [
    "Colour",
    "Clique",
    "CliquePendant",
    "CliquePlusCliques",
    "Arbitrary",
    "TargetPattern",
    "parse_pattern",
    "pattern_text",
    "pattern_graph",
]


class Colour(enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def letter(self) -> str:
        return self.value[0]

    @property
    def swapped(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED

    @staticmethod
    def from_letter(letter: str) -> "Colour":
        if letter == "r":
            return Colour.RED
        if letter == "b":
            return Colour.BLUE
        raise InputError(f"unknown colour letter {letter!r}")


# tie-break key: red sorts before blue
COLOUR_KEY = {Colour.RED: 0, Colour.BLUE: 1}


@dataclass(frozen=True)
class Clique:
    """Complete graph on k vertices."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("clique size must be at least 1")


@dataclass(frozen=True)
class CliquePendant:
    """Complete graph on k vertices with one pendant edge (k+1 vertices)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("clique size must be at least 1")


@dataclass(frozen=True)
class CliquePlusCliques:
    """Disjoint union of one K_k and f copies of K_t."""

    k: int
    f: int
    t: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("clique size must be at least 1")
        if self.f < 0:
            raise InputError("copy count must be non-negative")
        if self.t < 1:
            raise InputError("small clique size must be at least 1")


@dataclass(frozen=True)
class Arbitrary:
    """Any concrete non-empty graph used as the target."""

    graph: Graph

    def __post_init__(self):
        if self.graph.n == 0:
            raise InputError("arbitrary pattern graph must be non-empty")


TargetPattern = Union[Clique, CliquePendant, CliquePlusCliques, Arbitrary]

_RE_CLIQUE = re.compile(r"^K(\d+)$")
_RE_PENDANT = re.compile(r"^K(\d+)\.K2$")
_RE_PLUS = re.compile(r"^K(\d+)\+(\d+)K(\d+)$")


def parse_pattern(text: str, read_graph6=None) -> TargetPattern:
    """Parse the pattern mini-language; ``file:`` needs a graph6 reader callback."""
    text = text.strip()
    if m := _RE_CLIQUE.match(text):
        return Clique(int(m.group(1)))
    if m := _RE_PENDANT.match(text):
        return CliquePendant(int(m.group(1)))
    if m := _RE_PLUS.match(text):
        return CliquePlusCliques(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    if text.startswith("file:"):
        if read_graph6 is None:
            raise InputError("file: patterns need a graph reader")
        return Arbitrary(read_graph6(text[5:]))
    raise InputError(f"cannot parse pattern {text!r}")


def pattern_text(p: TargetPattern) -> str:
    if isinstance(p, Clique):
        return f"K{p.k}"
    if isinstance(p, CliquePendant):
        return f"K{p.k}.K2"
    if isinstance(p, CliquePlusCliques):
        return f"K{p.k}+{p.f}K{p.t}"
    return f"graph:{p.graph.n}v{p.graph.num_edges}e"


def pattern_graph(p: TargetPattern) -> Graph:
    """Concrete graph realizing the pattern.

    Canonical labelling: clique vertices first in order, then (for the
    pendant) the pendant vertex attached to vertex 0, then (for disjoint
    unions) the K_t copies one after another.
    """
    if isinstance(p, Clique):
        return Graph.complete(p.k)
    if isinstance(p, CliquePendant):
        edges = list(combinations(range(p.k), 2)) + [(0, p.k)]
        return Graph.from_edges(p.k + 1, edges)
    if isinstance(p, CliquePlusCliques):
        parts = [Graph.complete(p.k)] + [Graph.complete(p.t)] * p.f
        return Graph.disjoint_union(parts)
    return p.graph


def pattern_num_vertices(p: TargetPattern) -> int:
    if isinstance(p, Clique):
        return p.k
    if isinstance(p, CliquePendant):
        return p.k + 1
    if isinstance(p, CliquePlusCliques):
        return p.k + p.f * p.t
    return p.graph.n


def pattern_num_edges(p: TargetPattern) -> int:
    if isinstance(p, Clique):
        return p.k * (p.k - 1) // 2
    if isinstance(p, CliquePendant):
        return p.k * (p.k - 1) // 2 + 1
    if isinstance(p, CliquePlusCliques):
        return p.k * (p.k - 1) // 2 + p.f * (p.t * (p.t - 1) // 2)
    return p.graph.num_edges


def largest_component_size(p: TargetPattern) -> int:
    if isinstance(p, Clique):
        return p.k
    if isinstance(p, CliquePendant):
        return p.k + 1
    if isinstance(p, CliquePlusCliques):
        return max(p.k, p.t if p.f else 0)
    g = p.graph
    seen: set[int] = set()
    best = 0
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in range(g.n):
                if g.has_edge(x, y) and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        best = max(best, len(comp))
    return best
