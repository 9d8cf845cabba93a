from fractions import Fraction

import pytest
from conftest import correspondence_inputs

from twisted_hurwitz.combinatorics import (Partition, hyperoctahedral_element,
                                           make_tau)
from twisted_hurwitz.exceptions import CapExceededError, InvalidPartitionError
from twisted_hurwitz.oracle import (HurwitzInput, TwistedFactorization,
                                    admissible_transpositions, branch_count,
                                    classical_double_hurwitz_bruteforce,
                                    count_classical_tuples,
                                    count_twisted_tuples,
                                    count_twisted_tuples_scan,
                                    is_valid_tuple,
                                    iter_twisted_factorizations,
                                    one_hurwitz_number, tally_twisted_tuples,
                                    twisted_hurwitz_bruteforce,
                                    twisted_single_hurwitz)


def hurwitz(g, mu, nu, connected=True):
    return HurwitzInput(g, Partition(mu), Partition(nu), connected)


SMALL_INPUTS = [(0, (1,), (1,)), (0, (2,), (2,)), (0, (2,), (1, 1)),
                (0, (1, 1), (2,)), (1, (2,), (2,)), (0, (3,), (2, 1)),
                (0, (2, 1), (3,)), (0, (3,), (1, 1, 1)), (1, (3,), (3,)),
                (0, (2, 1), (2, 1))]


@pytest.mark.parametrize("g, mu, nu, expected", [
    (1, (4,), (2, 2), 3), (0, (1,), (1,), 1), (0, (5,), (3, 2), 2)])
def test_branch_count(g, mu, nu, expected):
    assert branch_count(g, Partition(mu), Partition(nu)) == expected


def test_input_sizes_must_match():
    with pytest.raises(InvalidPartitionError):
        hurwitz(0, (2,), (1,))


def test_admissible_transpositions():
    assert len(admissible_transpositions(4)) == 24
    tau = make_tau(2)
    assert all(j != tau(i) for i, j in admissible_transpositions(2))


@pytest.mark.parametrize("g, mu, nu, expected", [
    (0, (2,), (2,), 4), (0, (1,), (1,), 0), (0, (2,), (1, 1), 8)])
def test_count_twisted_tuples(g, mu, nu, expected):
    assert count_twisted_tuples(hurwitz(g, mu, nu)) == expected


@pytest.mark.parametrize("g, mu, nu", SMALL_INPUTS)
def test_aggregated_count_matches_literal_scan(g, mu, nu):
    for connected in [True, False]:
        inp = hurwitz(g, mu, nu, connected)
        assert count_twisted_tuples(inp) == count_twisted_tuples_scan(inp)


def test_aggregated_count_with_workers():
    inp = hurwitz(0, (2, 1), (2, 1))
    assert count_twisted_tuples(inp, workers=2) == count_twisted_tuples(inp)


@pytest.mark.parametrize("g, mu, nu, expected", [
    (0, (2,), (2,), Fraction(1, 2)), (0, (2,), (1, 1), 1), (0, (1,), (1,), 0)])
def test_twisted_hurwitz_bruteforce(g, mu, nu, expected):
    assert twisted_hurwitz_bruteforce(hurwitz(g, mu, nu)) == expected


def test_labeled_count_multiplies_automorphisms():
    assert twisted_hurwitz_bruteforce(hurwitz(0, (2,), (1, 1)), labeled=True) == 2  # noqa E501


@pytest.mark.parametrize("g, mu, nu", SMALL_INPUTS)
def test_connected_below_disconnected(g, mu, nu):
    connected = twisted_hurwitz_bruteforce(hurwitz(g, mu, nu))
    disconnected = twisted_hurwitz_bruteforce(hurwitz(g, mu, nu, False))
    assert connected <= disconnected


@pytest.mark.slow
@pytest.mark.parametrize("g, mu, nu", correspondence_inputs())
def test_connected_below_disconnected_on_the_grid(g, mu, nu):
    connected = twisted_hurwitz_bruteforce(hurwitz(g, mu, nu))
    disconnected = twisted_hurwitz_bruteforce(hurwitz(g, mu, nu, False))
    assert 0 <= connected <= disconnected


@pytest.mark.parametrize("g, mu, nu", SMALL_INPUTS)
def test_profiles_can_be_exchanged(g, mu, nu):
    assert (twisted_hurwitz_bruteforce(hurwitz(g, mu, nu))
            == twisted_hurwitz_bruteforce(hurwitz(g, nu, mu)))


def test_one_hurwitz_number():
    inp = hurwitz(0, (2,), (2,))
    disconnected = twisted_hurwitz_bruteforce(hurwitz(0, (2,), (2,), False))
    assert one_hurwitz_number(inp) == disconnected / 2
    assert one_hurwitz_number(hurwitz(0, (1,), (1,))) == 0


def test_single_hurwitz_is_the_ones_case():
    lam = Partition((2,))
    assert twisted_single_hurwitz(0, lam) == twisted_hurwitz_bruteforce(
        hurwitz(0, (2,), (1, 1)))


def test_every_tuple_is_valid():
    inp = hurwitz(0, (2,), (1, 1))
    factorizations = [f for f in iter_twisted_factorizations(inp)
                      if f.is_transitive()]
    assert len(factorizations) == 8
    for f in factorizations:
        assert is_valid_tuple(f.sigma1, f.etas, f.sigma2, inp)


def test_relabeling_by_the_centralizer_keeps_tuples_valid():
    inp = hurwitz(0, (2, 1), (3,))
    h = hyperoctahedral_element([1, 2, 0], [True, False, True])
    factorizations = [f for f in iter_twisted_factorizations(inp)
                      if f.is_transitive()]
    assert factorizations
    for f in factorizations:
        relabeled = TwistedFactorization(f.sigma1.conjugate(h),
                                         tuple(eta.conjugate(h) for eta in f.etas))  # noqa E501
        assert relabeled.sigma2 == f.sigma2.conjugate(h)
        assert is_valid_tuple(relabeled.sigma1, relabeled.etas,
                              relabeled.sigma2, inp)


def test_invalid_tuple_rejected():
    inp = hurwitz(0, (2,), (1, 1))
    f = next(iter_twisted_factorizations(inp))
    assert not is_valid_tuple(f.sigma1, f.etas + f.etas, f.sigma2, inp)
    assert not is_valid_tuple(f.sigma2, f.etas, f.sigma2, inp)


def test_tally_counts_match():
    inp = hurwitz(0, (2, 1), (2, 1))
    tally = tally_twisted_tuples(inp)
    assert tally.count == count_twisted_tuples(inp)
    assert tally.sigma2_outside_b_tilde >= 0


def test_factorization_json():
    inp = hurwitz(0, (2,), (2,))
    data = next(iter_twisted_factorizations(inp)).to_json()
    assert set(data) == {"sigma1", "etas", "sigma2", "transitive"}
    assert len(data["etas"]) == 1


def test_caps():
    with pytest.raises(CapExceededError):
        count_twisted_tuples(hurwitz(1, (4,), (2, 2)), max_points=6)
    with pytest.raises(CapExceededError):
        count_twisted_tuples(hurwitz(1, (4,), (2, 2)), max_branch=2)


@pytest.mark.slow
def test_flagship_bruteforce():
    inp = hurwitz(1, (4,), (2, 2))
    assert count_twisted_tuples(inp) == 61440
    assert twisted_hurwitz_bruteforce(inp) == 160


# Classical numbers
@pytest.mark.parametrize("g, mu, nu, expected, labeled", [
    (0, (2,), (1, 1), Fraction(1, 2), 1),
    (0, (3,), (1, 1, 1), 1, 6),
    (0, (1,), (1,), 1, 1),
    (0, (3,), (2, 1), 1, 1),
])
def test_classical_bruteforce(g, mu, nu, expected, labeled):
    mu, nu = Partition(mu), Partition(nu)
    assert classical_double_hurwitz_bruteforce(g, mu, nu) == expected
    assert classical_double_hurwitz_bruteforce(g, mu, nu, labeled=True) == labeled  # noqa E501


def test_classical_tuple_count():
    assert count_classical_tuples(0, Partition((3,)), Partition((1, 1, 1))) == 6  # noqa E501
