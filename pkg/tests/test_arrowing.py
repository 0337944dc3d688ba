import random
from fractions import Fraction
from itertools import combinations

import pytest

from ramseykit.arrowing import (
    EdgeColouring,
    Outcome,
    SearchOptions,
    arrows,
    automorphisms,
    embedding_vertices,
    epsilon_arrows,
    find_mono,
    find_pattern,
    ramsey_number,
)
from ramseykit.errors import InputError
from ramseykit.graphs import Graph
from ramseykit.patterns import (
    Arbitrary,
    Clique,
    CliquePendant,
    CliquePlusCliques,
    Colour,
    parse_pattern,
)

from oracles import naive_arrows


def two_five_cycles() -> EdgeColouring:
    """K5 split into the red outer cycle and the blue pentagram."""
    g = Graph.complete(5)
    red = {(i, (i + 1) % 5) for i in range(5)}
    mapping = {}
    for u, v in g.edges():
        mapping[(u, v)] = Colour.RED if ((u, v) in red or (v, u) in red) else Colour.BLUE
    return EdgeColouring.from_mapping(g, mapping)


class TestFindMono:
    def test_all_red_triangle(self):
        chi = EdgeColouring.constant(Graph.complete(3), Colour.RED)
        assert find_mono(chi, Clique(3), Colour.RED) == (0, 1, 2)
        assert find_mono(chi, Clique(3), Colour.BLUE) is None

    def test_two_cycles_have_no_triangle(self):
        chi = two_five_cycles()
        assert find_mono(chi, Clique(3), Colour.RED) is None
        assert find_mono(chi, Clique(3), Colour.BLUE) is None

    def test_pendant_in_all_red_k4(self):
        chi = EdgeColouring.constant(Graph.complete(4), Colour.RED)
        clique, attach, pendant = find_mono(chi, CliquePendant(3), Colour.RED)
        assert clique == (0, 1, 2) and attach == 0 and pendant == 3

    def test_disjoint_union_demands_disjoint_vertices(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        chi = EdgeColouring.constant(g, Colour.RED)
        # the two triangles share vertex 2, so K3 + K3 cannot embed
        assert find_mono(chi, CliquePlusCliques(3, 1, 3), Colour.RED) is None

    def test_disjoint_union_found_in_k6(self):
        chi = EdgeColouring.constant(Graph.complete(6), Colour.RED)
        emb = find_mono(chi, CliquePlusCliques(3, 1, 3), Colour.RED)
        assert emb == ((0, 1, 2), ((3, 4, 5),))
        assert len(embedding_vertices(CliquePlusCliques(3, 1, 3), emb)) == 6

    def test_arbitrary_pattern(self):
        chi = two_five_cycles()
        path3 = Arbitrary(Graph.path(3))
        emb = find_mono(chi, path3, Colour.RED)
        assert emb is not None
        a, b, c = emb
        assert chi.colour_of(a, b) is Colour.RED
        assert chi.colour_of(b, c) is Colour.RED

    def test_colour_swap_symmetry(self):
        rng = random.Random(23)
        g = Graph.complete(5)
        for _ in range(20):
            colours = tuple(
                Colour.RED if rng.random() < 0.5 else Colour.BLUE
                for _ in range(g.num_edges)
            )
            chi = EdgeColouring(g, colours)
            for p in (Clique(3), CliquePendant(3)):
                a = find_mono(chi.swapped(), p, Colour.RED)
                b = find_mono(chi, p, Colour.BLUE)
                assert a == b


class TestArrows:
    def test_k6_arrows_triangles(self):
        assert arrows(Graph.complete(6), Clique(3), Clique(3)).outcome is Outcome.ARROW

    def test_k5_does_not_arrow_triangles(self):
        verdict = arrows(Graph.complete(5), Clique(3), Clique(3))
        assert verdict.outcome is Outcome.NOT_ARROW
        wit = verdict.witness
        assert find_mono(wit, Clique(3), Colour.RED) is None
        assert find_mono(wit, Clique(3), Colour.BLUE) is None

    def test_single_edge(self):
        assert arrows(Graph.complete(2), Clique(2), Clique(2)).outcome is Outcome.ARROW

    def test_edgeless_pattern(self):
        assert arrows(Graph.empty(1), Clique(1), Clique(1)).outcome is Outcome.ARROW

    def test_asymmetric_targets(self):
        # smallest complete graph forcing a red K2 or a blue K3 is K3
        assert arrows(Graph.complete(3), Clique(2), Clique(3)).outcome is Outcome.ARROW
        v = arrows(Graph.complete(2), Clique(2), Clique(3))
        assert v.outcome is Outcome.NOT_ARROW
        assert v.witness.colours == (Colour.BLUE,)

    def test_matchings_avoid_paths(self):
        verdict = arrows(Graph.cycle(4), Arbitrary(Graph.path(3)), Arbitrary(Graph.path(3)))
        assert verdict.outcome is Outcome.NOT_ARROW

    def test_disjoint_union_target(self):
        # two disjoint edges: K_4 escapes (triangle vs star), K_5 cannot
        pair = CliquePlusCliques(2, 1, 2)
        v4 = arrows(Graph.complete(4), pair, pair)
        assert v4.outcome is Outcome.NOT_ARROW
        red = v4.witness.subgraph(Colour.RED)
        blue = v4.witness.subgraph(Colour.BLUE)
        for side in (red, blue):
            matching = max(
                (1 if not (set(e) & set(f)) else 0)
                for e in side.edges()
                for f in side.edges()
            ) if side.num_edges else 0
            assert matching == 0  # no two disjoint same-coloured edges
        assert arrows(Graph.complete(5), pair, pair).outcome is Outcome.ARROW

    def test_budget_gives_undecided(self):
        verdict = arrows(
            Graph.complete(6), Clique(3), Clique(3), SearchOptions(max_nodes=5)
        )
        assert verdict.outcome is Outcome.UNDECIDED
        assert verdict.witness is None

    def test_canonical_witness_is_deterministic(self):
        a = arrows(Graph.complete(5), Clique(3), Clique(3))
        b = arrows(Graph.complete(5), Clique(3), Clique(3))
        assert a.witness == b.witness

    def test_swapped_witness_stays_valid(self):
        rng = random.Random(47)
        for _ in range(10):
            pairs = [e for e in combinations(range(6), 2) if rng.random() < 0.7]
            g = Graph.from_edges(6, pairs)
            verdict = arrows(g, Clique(3), Clique(3))
            if verdict.outcome is Outcome.NOT_ARROW:
                swapped = verdict.witness.swapped()
                assert find_mono(swapped, Clique(3), Colour.RED) is None
                assert find_mono(swapped, Clique(3), Colour.BLUE) is None

    def test_monotone_in_supergraph(self):
        rng = random.Random(31)
        for _ in range(15):
            pairs = list(combinations(range(5), 2))
            sub = [e for e in pairs if rng.random() < 0.6]
            g = Graph.from_edges(5, sub)
            g2 = Graph.from_edges(5, sub + [e for e in pairs if e not in sub and rng.random() < 0.5])
            if arrows(g, Clique(3), Clique(3)).outcome is Outcome.ARROW:
                assert arrows(g2, Clique(3), Clique(3)).outcome is Outcome.ARROW

    def test_monotone_in_pattern(self):
        for g in (Graph.complete(6), Graph.complete(7)):
            if arrows(g, Clique(3), Clique(3)).outcome is Outcome.ARROW:
                assert arrows(g, Clique(2), Clique(2)).outcome is Outcome.ARROW
        # a pendant target contains its clique, so arrowing it implies arrowing the clique
        g7 = Graph.complete(7)
        if arrows(g7, CliquePendant(3), CliquePendant(3)).outcome is Outcome.ARROW:
            assert arrows(g7, Clique(3), Clique(3)).outcome is Outcome.ARROW


class TestOracleEquivalence:
    def corpus(self):
        rng = random.Random(41)
        graphs = [
            Graph.complete(4),
            Graph.complete(5),
            Graph.cycle(5),
            Graph.path(5),
            Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]),
        ]
        for _ in range(6):
            n = rng.randint(4, 6)
            pairs = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
            if pairs and len(pairs) <= 12:
                graphs.append(Graph.from_edges(n, pairs))
        return graphs

    def test_search_matches_naive_enumeration(self):
        # the small targets make both verdicts reachable: every graph with an
        # edge arrows K2, and odd cycles arrow the 3-vertex path
        patterns = (Clique(2), CliquePendant(2), Clique(3), CliquePendant(3))
        for g in self.corpus():
            for p in patterns:
                expected = naive_arrows(g, p, p)
                got = arrows(g, p, p).outcome
                assert (got is Outcome.ARROW) == expected, (g.edges(), p)

    def test_naive_oracle_sees_both_verdicts(self):
        assert naive_arrows(Graph.cycle(5), CliquePendant(2), CliquePendant(2))
        assert not naive_arrows(Graph.cycle(4), CliquePendant(2), CliquePendant(2))


class TestSearchModes:
    def test_parallel_agrees_with_sequential(self):
        for g in (Graph.complete(5), Graph.complete(6)):
            seq = arrows(g, Clique(3), Clique(3))
            par = arrows(g, Clique(3), Clique(3), SearchOptions(workers=2))
            assert par.outcome is seq.outcome
            assert par.witness == seq.witness

    def test_orbit_pruning_agrees(self):
        for g in (Graph.complete(5), Graph.cycle(5), Graph.complete(6)):
            plain = arrows(g, Clique(3), Clique(3))
            pruned = arrows(g, Clique(3), Clique(3), SearchOptions(orbit_pruning=True))
            assert plain.outcome is pruned.outcome
            assert plain.witness == pruned.witness
            assert pruned.nodes <= plain.nodes

    def test_automorphism_count(self):
        assert len(automorphisms(Graph.complete(4))) == 24
        assert len(automorphisms(Graph.cycle(5))) == 10
        assert len(automorphisms(Graph.path(3))) == 2


class TestEpsilonArrows:
    def test_half_of_c5(self):
        rep = epsilon_arrows(Graph.cycle(5), Clique(2), Fraction(1, 2))
        assert rep.holds is True and rep.subset_size == 3

    def test_two_fifths_of_c5(self):
        rep = epsilon_arrows(Graph.cycle(5), Clique(2), Fraction(2, 5))
        assert rep.holds is False and rep.subset_size == 2
        assert rep.failing_subset == (0, 2)

    def test_whole_triangle_fails(self):
        rep = epsilon_arrows(Graph.complete(3), Clique(3), 1)
        assert rep.holds is False

    def test_eps_out_of_range(self):
        with pytest.raises(InputError):
            epsilon_arrows(Graph.cycle(5), Clique(2), 0)


class TestRamseyNumber:
    def test_triangles(self):
        assert ramsey_number(Clique(3), Clique(3)).n == 6

    def test_pair_of_edges(self):
        assert ramsey_number(Clique(2), Clique(2)).n == 2

    def test_paths(self):
        assert ramsey_number(CliquePendant(1), CliquePendant(1)).n == 2

    def test_budget(self):
        rep = ramsey_number(Clique(4), Clique(4), SearchOptions(max_seconds=0.5))
        assert not rep.decided
        assert rep.n is None
        assert rep.checked_up_to >= 4


class TestPatternParsing:
    def test_mini_language(self):
        assert parse_pattern("K5") == Clique(5)
        assert parse_pattern("K5.K2") == CliquePendant(5)
        assert parse_pattern("K4+2K3") == CliquePlusCliques(4, 2, 3)

    def test_reject_garbage(self):
        with pytest.raises(InputError):
            parse_pattern("W5")

    def test_pattern_finding_in_plain_graph(self):
        assert find_pattern(Graph.complete(4), CliquePendant(3)) is not None
        assert find_pattern(Graph.cycle(5), Clique(3)) is None
