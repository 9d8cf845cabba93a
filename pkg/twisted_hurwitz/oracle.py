"""Brute-force counts of twisted factorizations in S_2n.

Two counting strategies give the same integers:

- a literal scan over (sigma1, eta_1, ..., eta_b), maintaining the product
  eta_k...eta_1 sigma1 (tau eta_1 tau)...(tau eta_k tau) incrementally and
  checking transitivity with a union-find,
- an aggregated scan that merges tuples reaching the same (product, orbit
  blocks) state after each transposition, which is what the engines use.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .combinatorics import (DEFAULT_MAX_POINTS, Partition, Permutation,
                            check_cap, cycle_classification, double_factorial,
                            enumerate_b_tilde, enumerate_conjugacy_class,
                            is_in_b_tilde, is_twisted_symmetric, make_tau,
                            transposition)
from .exceptions import (CapExceededError, InvalidBranchCountError,
                         InvalidDegreeError, InvalidPartitionError)

logger = logging.getLogger(__name__)

DEFAULT_MAX_BRANCH = 8

# (i, j, ti, tj): eta = (i j) acts on the left, (ti tj) on the right
Move = Tuple[int, int, Optional[int], Optional[int]]
State = Tuple[Tuple[int, ...], Tuple[int, ...]]


# Input data
@dataclass(frozen=True)
class HurwitzInput:
    "Genus and ramification profiles of a twisted double Hurwitz number"
    g: int
    mu: Partition
    nu: Partition
    connected: bool = True

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 0:
            raise InvalidDegreeError(f"Genus must be a non-negative integer, got {self.g!r}")  # noqa E501
        if self.mu.size != self.nu.size:
            raise InvalidPartitionError(
                f"{self.mu} and {self.nu} are partitions of different integers"
            )
        if self.mu.size < 1:
            raise InvalidDegreeError("Degree must be at least 1")

    @property
    def n(self) -> int:
        return self.mu.size

    @property
    def b(self) -> int:
        return branch_count(self.g, self.mu, self.nu)

    def __str__(self):
        return f"g={self.g}, mu={self.mu}, nu={self.nu}"


def branch_count(g: int, mu: Partition, nu: Partition) -> int:
    "Number of branch points b = g - 1 + l(mu) + l(nu) of a twisted count"
    b = g - 1 + mu.length + nu.length
    if b <= 0:
        raise InvalidBranchCountError(f"b={b}: no branch points, the number is undefined")  # noqa E501
    return b


def classical_branch_count(g: int, mu: Partition, nu: Partition) -> int:
    "Number of simple branch points r = 2g - 2 + l(mu) + l(nu) of a classical count"  # noqa E501
    r = 2 * g - 2 + mu.length + nu.length
    if r < 0:
        raise InvalidBranchCountError(f"r={r}: negative number of branch points")  # noqa E501
    return r


def doubled(lam: Partition) -> Partition:
    "The cycle type 2*lambda, every part twice"
    return Partition.from_parts(list(lam.parts) * 2)


def admissible_transpositions(n: int) -> List[Tuple[int, int]]:
    "0-based transpositions (i j) of {0..2n-1} with (i j) != tau (i j) tau"
    tau = make_tau(n).images
    return [(i, j) for i, j in combinations(range(2 * n), 2) if j != tau[i]]


def _check_branch_cap(b: int, max_branch: int):
    if b > max_branch:
        raise CapExceededError(f"{b} branch points exceed the cap of {max_branch}")  # noqa E501


# Twisted factorizations
@dataclass(frozen=True)
class TwistedFactorization:
    "Tuple (sigma1, eta_1, ..., eta_b) with its derived sigma2"
    sigma1: Permutation
    etas: Tuple[Permutation, ...]

    @property
    def n(self) -> int:
        return self.sigma1.degree // 2

    @property
    def sigma2(self) -> Permutation:
        "eta_b...eta_1 sigma1 (tau eta_1 tau)...(tau eta_b tau)"
        tau = make_tau(self.n)
        result = self.sigma1
        for eta in self.etas:
            result = eta * result * eta.conjugate(tau)
        return result

    def is_transitive(self) -> bool:
        "Transitivity of <sigma1, eta_i, tau eta_i tau, sigma2> on all 2n points"  # noqa E501
        tau = make_tau(self.n)
        generators = [self.sigma1, self.sigma2]
        for eta in self.etas:
            generators.extend([eta, eta.conjugate(tau)])
        blocks = UnionFind(range(self.sigma1.degree))
        for generator in generators:
            for i, j in enumerate(generator.images):
                blocks.union(i, j)
        return len(list(blocks.to_sets())) == 1

    def to_json(self) -> Dict:
        return {"sigma1": str(self.sigma1),
                "etas": [str(eta) for eta in self.etas],
                "sigma2": str(self.sigma2),
                "transitive": self.is_transitive()}


def is_valid_tuple(sigma1: Permutation, etas: Sequence[Permutation],
                   sigma2: Permutation, hurwitz_input: HurwitzInput) -> bool:
    "Check every condition of a twisted factorization of the given type"
    n = hurwitz_input.n
    tau = make_tau(n)
    if len(etas) != hurwitz_input.b:
        return False
    if sigma1.degree != 2 * n or sigma2.degree != 2 * n:
        return False
    if sigma1.cycle_type() != doubled(hurwitz_input.mu):
        return False
    if not is_in_b_tilde(sigma1, hurwitz_input.mu, n):
        return False
    if sigma2.cycle_type() != doubled(hurwitz_input.nu):
        return False
    for eta in etas:
        if eta.degree != 2 * n or not eta.is_transposition():
            return False
        if eta == eta.conjugate(tau):
            return False
    factorization = TwistedFactorization(sigma1, tuple(etas))
    if factorization.sigma2 != sigma2:
        return False
    if hurwitz_input.connected and not factorization.is_transitive():
        return False
    return True


def iter_twisted_factorizations(hurwitz_input: HurwitzInput,
                                max_points: int = DEFAULT_MAX_POINTS,
                                max_branch: int = DEFAULT_MAX_BRANCH,
                                ) -> Iterator[TwistedFactorization]:
    """Literal scan over all tuples of the given type.

    Yields every tuple satisfying the cycle type and product conditions,
    transitive or not; callers filter on is_transitive when needed.
    """
    n, b = hurwitz_input.n, hurwitz_input.b
    check_cap(2 * n, max_points)
    _check_branch_cap(b, max_branch)
    tau = make_tau(n)
    target = doubled(hurwitz_input.nu)
    etas = [transposition(i, j, 2 * n) for i, j in admissible_transpositions(n)]  # noqa E501
    twisted = [eta.conjugate(tau) for eta in etas]
    for sigma1 in enumerate_b_tilde(hurwitz_input.mu, max_points=max_points):
        for choice in product(range(len(etas)), repeat=b):
            current = sigma1
            for k in choice:
                current = etas[k] * current * twisted[k]
            if current.cycle_type() != target:
                continue
            assert is_twisted_symmetric(current, tau)
            yield TwistedFactorization(sigma1, tuple(etas[k] for k in choice))  # noqa E501


def count_twisted_tuples_scan(hurwitz_input: HurwitzInput, **kwargs) -> int:
    "Count tuples with the literal scan"
    count = 0
    for factorization in iter_twisted_factorizations(hurwitz_input, **kwargs):  # noqa E501
        if not hurwitz_input.connected or factorization.is_transitive():
            count += 1
    return count


# Aggregated scan
def _relabel(labels: Sequence[int]) -> Tuple[int, ...]:
    "Rename block labels in order of first appearance"
    names = {}
    return tuple(names.setdefault(label, len(names)) for label in labels)


def _initial_blocks(images: Sequence[int]) -> Tuple[int, ...]:
    labels = [-1] * len(images)
    block = 0
    for start in range(len(images)):
        if labels[start] >= 0:
            continue
        point = start
        while labels[point] < 0:
            labels[point] = block
            point = images[point]
        block += 1
    return tuple(labels)


def _merge(labels: Tuple[int, ...], a: int, b: int) -> Tuple[int, ...]:
    la, lb = labels[a], labels[b]
    if la == lb:
        return labels
    low, high = min(la, lb), max(la, lb)
    return _relabel([low if label == high else label for label in labels])


def _apply_move(images: Tuple[int, ...], move: Move) -> Tuple[int, ...]:
    "Left multiply by (i j), then right multiply by (ti tj) if given"
    i, j, ti, tj = move
    new = list(images)
    if ti is not None:
        new[ti], new[tj] = new[tj], new[ti]
    for k, value in enumerate(new):
        if value == i:
            new[k] = j
        elif value == j:
            new[k] = i
    return tuple(new)


def _cycle_lengths(images: Sequence[int]) -> Tuple[int, ...]:
    seen = [False] * len(images)
    lengths = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length, point = 0, start
        while not seen[point]:
            seen[point] = True
            point = images[point]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _aggregate_roots(args) -> Counter:
    """Count products reached from the given roots after all moves.

    Returns a Counter mapping each final product (as 0-based images) to the
    number of tuples reaching it with the right cycle type and, if requested,
    a single orbit.
    """
    roots, moves, steps, target, connected = args
    states: Dict[State, int] = Counter()
    for root in roots:
        labels = _initial_blocks(root) if connected else ()
        states[(root, labels)] += 1
    for _ in range(steps):
        following: Dict[State, int] = Counter()
        for (images, labels), count in states.items():
            for move in moves:
                new_labels = labels
                if connected:
                    new_labels = _merge(new_labels, move[0], move[1])
                    if move[2] is not None:
                        new_labels = _merge(new_labels, move[2], move[3])
                following[(_apply_move(images, move), new_labels)] += count
        states = following
    finals = Counter()
    for (images, labels), count in states.items():
        if _cycle_lengths(images) != target:
            continue
        if connected and any(labels):
            continue
        finals[images] += count
    return finals


def _aggregate(roots: List[Tuple[int, ...]], moves: List[Move], steps: int,
               target: Partition, connected: bool, workers: int = 1) -> Counter:
    "Run the aggregated scan, splitting the roots across workers"
    target = tuple(target.parts)
    if workers <= 1 or len(roots) < 2:
        return _aggregate_roots((roots, moves, steps, target, connected))
    chunks = [roots[k::workers] for k in range(workers)]
    tasks = [(chunk, moves, steps, target, connected) for chunk in chunks if chunk]  # noqa E501
    finals = Counter()
    with Pool(processes=workers) as pool:
        for partial in pool.map(_aggregate_roots, tasks):
            finals.update(partial)
    return finals


@dataclass(frozen=True)
class TupleTally:
    "Result of a brute-force count"
    count: int
    sigma2_outside_b_tilde: int = 0


def tally_twisted_tuples(hurwitz_input: HurwitzInput,
                         max_points: int = DEFAULT_MAX_POINTS,
                         max_branch: int = DEFAULT_MAX_BRANCH,
                         workers: int = 1) -> TupleTally:
    """Count tuples of the given type with the aggregated scan.

    Also counts the tuples whose sigma2 has a self-symmetric cycle, hence
    lies outside B~_nu although it has cycle type 2*nu.
    """
    n, b = hurwitz_input.n, hurwitz_input.b
    check_cap(2 * n, max_points)
    _check_branch_cap(b, max_branch)
    tau = make_tau(n)
    moves = [(i, j, tau(i), tau(j)) for i, j in admissible_transpositions(n)]  # noqa E501
    roots = [sigma.images for sigma in enumerate_b_tilde(hurwitz_input.mu, max_points=max_points)]  # noqa E501
    logger.info("Scanning %d roots x %d^%d transpositions for %s",
                len(roots), len(moves), b, hurwitz_input)
    finals = _aggregate(roots, moves, b, doubled(hurwitz_input.nu),
                        hurwitz_input.connected, workers=workers)
    outside = 0
    for images, count in finals.items():
        classification = cycle_classification(Permutation(images), n)
        if classification.self_symmetric:
            outside += count
    if outside:
        logger.warning("%d tuples for %s have sigma2 outside B~_nu",
                       outside, hurwitz_input)
    return TupleTally(sum(finals.values()), outside)


def count_twisted_tuples(hurwitz_input: HurwitzInput, **kwargs) -> int:
    "|C_g(mu, nu)|, transitivity dropped when the input is disconnected"
    return tally_twisted_tuples(hurwitz_input, **kwargs).count


def twisted_hurwitz_bruteforce(hurwitz_input: HurwitzInput,
                               labeled: bool = False, **kwargs) -> Fraction:
    """h~_g(mu, nu) = |C_g(mu, nu)| / (2n)!!

    With labeled=True the value is multiplied by |Aut(mu)|*|Aut(nu)|, the
    count with labelled ends.
    """
    count = count_twisted_tuples(hurwitz_input, **kwargs)
    value = Fraction(count, double_factorial(2 * hurwitz_input.n))
    if labeled:
        value *= hurwitz_input.mu.aut_order * hurwitz_input.nu.aut_order
    return value


def one_hurwitz_number(hurwitz_input: HurwitzInput, **kwargs) -> Fraction:
    "h^1_g(mu, nu) = 2^-b times the disconnected twisted count"
    disconnected = HurwitzInput(hurwitz_input.g, hurwitz_input.mu,
                                hurwitz_input.nu, connected=False)
    value = twisted_hurwitz_bruteforce(disconnected, **kwargs)
    return value / 2 ** hurwitz_input.b


def twisted_single_hurwitz(g: int, lam: Partition, **kwargs) -> Fraction:
    "Twisted single Hurwitz number, the case nu = (1,...,1)"
    hurwitz_input = HurwitzInput(g, lam, Partition.ones(lam.size))
    return twisted_hurwitz_bruteforce(hurwitz_input, **kwargs)


# Classical double Hurwitz numbers
def count_classical_tuples(g: int, mu: Partition, nu: Partition,
                           max_points: int = DEFAULT_MAX_POINTS,
                           max_branch: int = DEFAULT_MAX_BRANCH,
                           workers: int = 1) -> int:
    "Transitive tuples sigma2 = t_r...t_1 sigma1 in S_n of types mu and nu"
    if mu.size != nu.size or mu.size < 1:
        raise InvalidPartitionError(f"{mu} and {nu} must be partitions of the same n >= 1")  # noqa E501
    n = mu.size
    r = classical_branch_count(g, mu, nu)
    check_cap(n, max_points)
    _check_branch_cap(r, max_branch)
    moves = [(i, j, None, None) for i, j in combinations(range(n), 2)]
    roots = [sigma.images for sigma in enumerate_conjugacy_class(mu, max_points=max_points)]  # noqa E501
    finals = _aggregate(roots, moves, r, nu, True, workers=workers)
    return sum(finals.values())


def classical_double_hurwitz_bruteforce(g: int, mu: Partition, nu: Partition,
                                        labeled: bool = False,
                                        **kwargs) -> Fraction:
    "Connected classical double Hurwitz number, the tuple count over n!"
    count = count_classical_tuples(g, mu, nu, **kwargs)
    value = Fraction(count, math.factorial(mu.size))
    if labeled:
        value *= mu.aut_order * nu.aut_order
    return value
