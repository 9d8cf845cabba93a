from dataclasses import replace
from fractions import Fraction

import pytest
from conftest import correspondence_inputs

from twisted_hurwitz.chambers import Wall, chamber_signature
from twisted_hurwitz.combinatorics import Partition
from twisted_hurwitz.exceptions import (CapExceededError, NotInChamberError,
                                        QuotientGenusError)
from twisted_hurwitz.oracle import (HurwitzInput,
                                    classical_double_hurwitz_bruteforce,
                                    twisted_hurwitz_bruteforce)
from twisted_hurwitz.tropical import (automorphism_order,
                                      classical_double_hurwitz_tropical,
                                      classical_weight, count_vertex_orderings,
                                      cover_multiplicity,
                                      enumerate_classical_covers,
                                      enumerate_twisted_covers,
                                      forget_two_valent,
                                      invariant_violations, iter_automorphisms,
                                      polynomial_value, quotient,
                                      restricted_sum_delta_adjacent,
                                      symbolic_edge_splits,
                                      twisted_hurwitz_tropical,
                                      twisted_single_hurwitz_tropical)
from twisted_hurwitz.tropical.export import (classical_to_dot,
                                             classical_to_json, cover_to_dot,
                                             cover_to_json, export_dot_files)

SMALL_INPUTS = [(0, (1,), (1,)), (0, (2,), (2,)), (0, (2,), (1, 1)),
                (0, (1, 1), (2,)), (1, (2,), (2,)), (0, (3,), (2, 1)),
                (0, (3,), (1, 1, 1)), (1, (3,), (3,)), (0, (2, 1), (2, 1))]


# Flagship example
def test_flagship_graphs(flagship_contributions):
    multiplicities = sorted(c.multiplicity for c in flagship_contributions)
    assert len(flagship_contributions) == 8
    assert multiplicities == sorted([72, 4, 4, 24, 16, 4, 12, 24])
    assert sum(multiplicities) == 160


def test_flagship_top_left_graph(flagship_contributions):
    top = [c for c in flagship_contributions if c.multiplicity == 72]
    assert len(top) == 1
    assert top[0].aut_order == 16


def test_flagship_value():
    assert twisted_hurwitz_tropical(1, (4,), (2, 2)) == 160


def test_flagship_orderings(flagship_contributions):
    assert all(count_vertex_orderings(c.cover) == 1
               for c in flagship_contributions)


def test_flagship_with_workers():
    assert twisted_hurwitz_tropical(1, (4,), (2, 2), workers=2) == 160


# Values
@pytest.mark.parametrize("g, mu, nu, expected", [
    (0, (2,), (2,), Fraction(1, 2)),
    (1, (3,), (3,), 10),
    (0, (1,), (1,), 0),
    (0, (2,), (1, 1), 1),
])
def test_tropical_values(g, mu, nu, expected):
    assert twisted_hurwitz_tropical(g, mu, nu) == expected


def test_weight_one_cover_has_multiplicity_zero():
    covers = enumerate_twisted_covers(0, (1,), (1,))
    assert len(covers) == 1
    assert covers[0].four_valent_vertices == [0]
    assert cover_multiplicity(covers[0]) == 0
    assert enumerate_twisted_covers(0, (1,), (1,), prune_zero=True) == []


def test_three_graphs_in_genus_zero():
    assert len(enumerate_twisted_covers(0, (4,), (3, 1), prune_zero=False)) == 3  # noqa E501


@pytest.mark.parametrize("mu", range(1, 9))
def test_genus_one_single_part(mu):
    expected = Fraction(2, 3) * mu ** 3 - mu ** 2 + Fraction(1, 3) * mu
    assert twisted_hurwitz_tropical(1, (mu,), (mu,)) == expected


@pytest.mark.parametrize("mu, nu", [(2, (1, 1)), (4, (3, 1)), (5, (3, 2)),
                                    (5, (4, 1)), (6, (3, 3))])
def test_genus_zero_two_outputs(mu, nu):
    expected = mu * (mu - 1) + nu[0] * (nu[0] - 1) + nu[1] * (nu[1] - 1)
    assert polynomial_value(0, (mu,), nu) == expected


def test_labeled_value_multiplies_automorphisms():
    mu, nu = (2, 2), (3, 1)
    unlabeled = twisted_hurwitz_tropical(0, mu, nu)
    assert polynomial_value(0, mu, nu) == 2 * unlabeled
    assert polynomial_value(0, (2, 2), (1, 3)) == polynomial_value(0, mu, nu)


def test_single_hurwitz():
    assert twisted_single_hurwitz_tropical(0, (2,)) == 1


def test_prune_zero_keeps_value():
    for g, mu, nu in SMALL_INPUTS:
        assert (twisted_hurwitz_tropical(g, mu, nu, prune_zero=False)
                == twisted_hurwitz_tropical(g, mu, nu, prune_zero=True))


# Correspondence with the brute force
@pytest.mark.parametrize("g, mu, nu", SMALL_INPUTS)
def test_tropical_matches_bruteforce(g, mu, nu):
    inp = HurwitzInput(g, Partition(mu), Partition(nu))
    assert twisted_hurwitz_tropical(g, mu, nu) == twisted_hurwitz_bruteforce(inp)  # noqa E501


@pytest.mark.slow
@pytest.mark.parametrize("g, mu, nu", correspondence_inputs())
def test_correspondence_grid(g, mu, nu):
    inp = HurwitzInput(g, Partition(mu), Partition(nu))
    assert twisted_hurwitz_tropical(g, mu, nu) == twisted_hurwitz_bruteforce(inp)  # noqa E501


# Structure of the covers
@pytest.mark.parametrize("g, mu, nu", SMALL_INPUTS + [(1, (4,), (2, 2))])
def test_covers_are_well_formed(g, mu, nu):
    for labeled in [False, True]:
        for cover in enumerate_twisted_covers(g, mu, nu, labeled=labeled):
            assert invariant_violations(cover) == []


@pytest.mark.slow
@pytest.mark.parametrize("g, mu, nu", correspondence_inputs() + [(1, (4,), (2, 2))])  # noqa E501
def test_grid_covers_are_well_formed(g, mu, nu):
    for labeled in [False, True]:
        for cover in enumerate_twisted_covers(g, mu, nu, labeled=labeled):
            c = len(cover.four_valent_vertices)
            aut = automorphism_order(cover)
            assert c <= g + 1 and (g - c + 1) % 2 == 0
            assert aut & (aut - 1) == 0
            assert invariant_violations(cover) == []


def test_four_valent_count_is_checked():
    cover = enumerate_twisted_covers(0, (2,), (2,))[0]
    assert invariant_violations(cover) == []
    problems = invariant_violations(replace(cover, g=1))
    assert "g-c+1 = 1 is odd" in problems
    assert "genus 1 cover with 1 4-valent vertices" in problems
    problems = invariant_violations(replace(cover, g=-1))
    assert "1 4-valent vertices exceed g+1 = 0" in problems


@pytest.mark.parametrize("g, mu, nu", [(1, (4,), (2, 2)), (0, (2,), (2,)),
                                       (0, (3,), (1, 1, 1)), (1, (2,), (1, 1))])  # noqa E501
def test_automorphism_formula_matches_backtracking(g, mu, nu):
    for cover in enumerate_twisted_covers(g, mu, nu):
        assert automorphism_order(cover) == len(list(iter_automorphisms(cover)))  # noqa E501


def test_genus_zero_labeled_automorphisms():
    covers = enumerate_twisted_covers(0, (5,), (3, 2), labeled=True)
    assert covers
    assert all(automorphism_order(c) == 4 for c in covers)


def test_vertex_orderings():
    covers = enumerate_twisted_covers(0, (4,), (1, 1, 1, 1))
    assert max(count_vertex_orderings(c) for c in covers) >= 2


@pytest.mark.parametrize("g, mu, nu", [(1, (4,), (2, 2)), (0, (3,), (2, 1)),
                                       (1, (3,), (3,))])
def test_quotient_genus(g, mu, nu):
    for cover in enumerate_twisted_covers(g, mu, nu):
        c = len(cover.four_valent_vertices)
        graph_quotient = quotient(cover)
        assert 2 * graph_quotient.genus == g - c + 1
        assert len(graph_quotient.two_valent_vertices) == c


def test_genus_zero_quotient_has_one_two_valent_vertex():
    for cover in enumerate_twisted_covers(0, (3, 1), (2, 2), labeled=True):
        graph_quotient = quotient(cover)
        assert graph_quotient.genus == 0
        assert len(graph_quotient.two_valent_vertices) == 1


@pytest.mark.parametrize("mu, nu", [((4,), (3, 1)), ((3, 1), (2, 2)),
                                    ((5,), (2, 2, 1)), ((2,), (2,))])
def test_genus_zero_weight_lemma(mu, nu):
    for cover in enumerate_twisted_covers(0, mu, nu, labeled=True, prune_zero=True):  # noqa E501
        weight = cover.vertex_weight(cover.four_valent_vertices[0])
        forgotten = forget_two_valent(quotient(cover))
        expected = (Fraction(2) ** (cover.b - 2) * weight * (weight - 1)
                    * classical_weight(forgotten))
        assert cover_multiplicity(cover) == expected


def test_symbolic_edge_splits():
    mu, nu = (3, 1), (2, 2)
    for cover in enumerate_twisted_covers(0, mu, nu, labeled=True):
        graph_quotient = quotient(cover)
        for split in symbolic_edge_splits(cover):
            assert 0 in split.I
            value = sum(mu[i] for i in split.I) - sum(nu[j] for j in split.J)
            assert split.sign * value == graph_quotient.edges[split.edge].weight  # noqa E501


def test_symbolic_edge_splits_need_labels_and_genus_zero():
    cover = enumerate_twisted_covers(0, (3,), (2, 1))[0]
    with pytest.raises(QuotientGenusError):
        symbolic_edge_splits(cover)
    for cover in enumerate_twisted_covers(1, (4,), (2, 2), labeled=True):
        if not cover.four_valent_vertices:
            with pytest.raises(QuotientGenusError):
                symbolic_edge_splits(cover)


def test_branch_cap():
    with pytest.raises(CapExceededError):
        enumerate_twisted_covers(1, (4,), (2, 2), max_branch=2)


# Classical covers
@pytest.mark.parametrize("g, mu, nu, expected", [
    (0, (2,), (1, 1), Fraction(1, 2)),
    (0, (3,), (1, 1, 1), 1),
    (0, (1,), (1,), 1),
    (0, (3,), (2, 1), 1),
    (0, (2,), (2,), Fraction(1, 2)),
])
def test_classical_tropical(g, mu, nu, expected):
    assert classical_double_hurwitz_tropical(g, mu, nu) == expected


@pytest.mark.parametrize("g, mu, nu", [(0, (3,), (2, 1)), (0, (2, 2), (3, 1)),
                                       (1, (2,), (2,)), (0, (4,), (2, 1, 1)),
                                       (1, (3,), (2, 1))])
def test_classical_tropical_matches_bruteforce(g, mu, nu):
    assert (classical_double_hurwitz_tropical(g, mu, nu)
            == classical_double_hurwitz_bruteforce(g, Partition(mu), Partition(nu)))  # noqa E501
    assert (classical_double_hurwitz_tropical(g, mu, nu, labeled=True)
            == classical_double_hurwitz_bruteforce(g, Partition(mu), Partition(nu), labeled=True))  # noqa E501


# Restricted sums
def test_restricted_sum_is_part_of_the_total():
    mu, nu = (3, 1), (2, 2)
    wall = Wall((0,), (0,))
    value = restricted_sum_delta_adjacent(mu, nu, wall, chamber_signature(mu, nu))  # noqa E501
    assert 0 <= value <= polynomial_value(0, mu, nu)


def test_restricted_sum_checks_the_chamber():
    wall = Wall((0,), (0,))
    other = chamber_signature((2, 2), (3, 1))
    with pytest.raises(NotInChamberError):
        restricted_sum_delta_adjacent((3, 1), (2, 2), wall, other)


# Export
def test_cover_json(flagship_contributions):
    contribution = flagship_contributions[0]
    data = cover_to_json(contribution.cover, contribution.aut_order,
                         contribution.multiplicity)
    assert data["b"] == 3
    assert data["ends_in"] == [4, 4]
    assert data["ends_out"] == [2, 2, 2, 2]
    assert len(data["vertices"]) == len(contribution.cover.vertices)
    ends = [e for e in data["edges"] if e["src"] == "IN" or e["dst"] == "OUT"]
    assert len(ends) == 6
    assert data["multiplicity"] == str(contribution.multiplicity)


def test_dot_export(tmp_path, flagship_contributions):
    sources = [cover_to_dot(c.cover) for c in flagship_contributions]
    assert all(s.startswith('digraph "cover"') for s in sources)
    paths = export_dot_files(sources, tmp_path / "graphs")
    assert [p.name for p in paths][:2] == ["graph_001.gv", "graph_002.gv"]
    assert paths[0].read_text() == sources[0]


def test_classical_export():
    graph = enumerate_classical_covers(0, (3,), (2, 1))[0]
    data = classical_to_json(graph, classical_weight(graph))
    assert data["r"] == 1
    assert data["weight"] == "1"
    assert "rank = same" in classical_to_dot(graph)
