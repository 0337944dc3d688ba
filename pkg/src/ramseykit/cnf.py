"""CNF export of arrowing instances and a small embedded SAT solver.

Variable i corresponds to the i-th edge of the graph in sorted-pair order
(1-based in DIMACS); a true variable means the edge is red. For every copy of
the red target the clause forbids the all-red assignment of its edges, and for
every copy of the blue target the clause demands at least one red edge, so the
formula is satisfiable exactly when some colouring avoids both targets.

Clause order is canonical: all red-target clauses first, then all blue-target
clauses, copies enumerated in lexicographic order (cliques by vertex tuple;
pendant copies by clique tuple, then attach vertex, then pendant vertex).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arrowing import EdgeColouring, _cliques_within, _edge_index
from .errors import InputError
from .graphs import Graph, bits
from .patterns import Clique, CliquePendant, Colour, TargetPattern

__all__ = ["CnfInstance", "to_cnf", "decode_model", "to_dimacs", "solve_cnf"]


@dataclass(frozen=True)
class CnfInstance:
    graph: Graph
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]  # edges[i] is the edge of variable i+1

    def __post_init__(self):
        if self.num_vars != len(self.edges):
            raise InputError("one variable per edge required")


def _copies_edge_sets(g: Graph, p: TargetPattern) -> list[list[tuple[int, int]]]:
    """Edge sets of all copies of ``p`` in ``g``, in canonical order."""
    full = (1 << g.n) - 1
    out: list[list[tuple[int, int]]] = []
    if isinstance(p, Clique):
        for tpl in _cliques_within(g.adj, full, p.k):
            out.append(list(combinations(tpl, 2)))
        return out
    if isinstance(p, CliquePendant):
        for tpl in _cliques_within(g.adj, full, p.k):
            smask = 0
            for v in tpl:
                smask |= 1 << v
            base = list(combinations(tpl, 2))
            for s in tpl:
                for w in bits(g.adj[s] & ~smask):
                    e = (s, w) if s < w else (w, s)
                    out.append(base + [e])
        return out
    raise InputError(
        "CNF export supports Clique and CliquePendant targets only"
    )


def to_cnf(g: Graph, red: TargetPattern, blue: TargetPattern) -> CnfInstance:
    """CNF instance satisfiable iff some colouring of ``g`` avoids both targets."""
    edges = tuple(g.edges())
    idx = _edge_index(g)
    clauses: list[tuple[int, ...]] = []
    for copy in _copies_edge_sets(g, red):
        clauses.append(tuple(-(idx[e] + 1) for e in copy))
    for copy in _copies_edge_sets(g, blue):
        clauses.append(tuple(idx[e] + 1 for e in copy))
    return CnfInstance(g, len(edges), tuple(clauses), edges)


def decode_model(inst: CnfInstance, assignment) -> EdgeColouring:
    """Turn a total variable assignment into the witness colouring it encodes.

    ``assignment`` maps variable numbers (1-based) to booleans; true is red.
    """
    colours = []
    for i in range(1, inst.num_vars + 1):
        if i not in assignment:
            raise InputError(f"assignment is partial: variable {i} missing")
        colours.append(Colour.RED if assignment[i] else Colour.BLUE)
    return EdgeColouring(inst.graph, tuple(colours))


def to_dimacs(inst: CnfInstance) -> str:
    lines = [f"p cnf {inst.num_vars} {len(inst.clauses)}"]
    for clause in inst.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def solve_cnf(inst: CnfInstance) -> dict[int, bool] | None:
    """DPLL with unit propagation; returns a total assignment or None.

    Deterministic: branches on the lowest-numbered unassigned variable,
    trying true (red) first.
    """
    clauses = [list(c) for c in inst.clauses]
    nvars = inst.num_vars
    assign: dict[int, bool] = {}

    def propagate(trail: list[int]) -> bool:
        # returns False on conflict; appends implied literals to trail
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = None
                satisfied = False
                count = 0
                for lit in clause:
                    var = abs(lit)
                    if var in assign:
                        if assign[var] == (lit > 0):
                            satisfied = True
                            break
                    else:
                        unassigned = lit
                        count += 1
                if satisfied:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    var = abs(unassigned)
                    assign[var] = unassigned > 0
                    trail.append(var)
                    changed = True
        return True

    def dpll() -> bool:
        trail: list[int] = []
        if not propagate(trail):
            for var in trail:
                del assign[var]
            return False
        var = next((i for i in range(1, nvars + 1) if i not in assign), None)
        if var is None:
            return True
        for value in (True, False):
            assign[var] = value
            if dpll():
                return True
            del assign[var]
        for v in trail:
            del assign[v]
        return False

    if not dpll():
        return None
    for i in range(1, nvars + 1):
        assign.setdefault(i, True)
    return assign
