"Permutations of {1..2n}, the involution tau and the sets B~_lambda"
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterator, List, Sequence, Tuple

from .exceptions import (CapExceededError, InvalidDegreeError,
                         InvalidPartitionError, NotTwistedSymmetricError,
                         OddDoubleFactorialError)

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 12

Cycle = Tuple[int, ...]


# Partitions
@dataclass(frozen=True)
class Partition:
    "Weakly decreasing tuple of positive integers"
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidPartitionError(f"Parts must be positive integers: {parts}")  # noqa E501
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartitionError(f"Parts must be weakly decreasing: {parts}")  # noqa E501

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        "Build a partition from parts given in any order"
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def ones(cls, n: int) -> "Partition":
        "The partition (1,...,1) of n"
        return cls((1,) * n)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def aut_order(self) -> int:
        "Order of Aut(lambda), the product of the factorials of multiplicities"
        return math.prod(math.factorial(k) for k in self.multiplicities.values())  # noqa E501

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_list(self) -> List[int]:
        return list(self.parts)


def partitions_of(n: int) -> Iterator[Partition]:
    "All partitions of n, largest first part first"
    def _gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in _gen(remaining - first, first):
                yield (first,) + rest
    for parts in _gen(n, n):
        yield Partition(parts)


# Permutations
@dataclass(frozen=True)
class Permutation:
    """Bijection of a finite set of points.

    Images are stored 0-based, point i is sent to images[i]. Every external
    format (cycle strings, JSON lists) is 1-based. Composition is right to
    left: (s * t)(i) = s(t(i)).
    """
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"Not a bijection: {images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":  # noqa E501
        "Build a permutation from 1-based cycles, unlisted points are fixed"
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point - 1] = cycle[(i + 1) % len(cycle)] - 1
        return cls(tuple(images))

    @classmethod
    def from_cycle_string(cls, text: str, degree: int) -> "Permutation":
        "Parse a 1-based cycle string such as '(1 4)(2 5)(3 6)'"
        cycles = [[int(p) for p in c.replace(",", " ").split()]
                  for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles([c for c in cycles if c], degree)

    @classmethod
    def from_list(cls, images: Sequence[int]) -> "Permutation":
        "Build a permutation from its 1-based images"
        return cls(tuple(i - 1 for i in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def conjugate(self, other: "Permutation") -> "Permutation":
        "Return other * self * other^-1"
        return other * self * other.inverse()

    def cycles(self) -> List[Cycle]:
        "0-based cycles ordered by smallest element, each starting there"
        seen = [False] * self.degree
        cycles = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            cycles.append(tuple(cycle))
        return cycles

    def cycle_type(self) -> Partition:
        return Partition.from_parts([len(c) for c in self.cycles()])

    def is_transposition(self) -> bool:
        return sum(1 for i, j in enumerate(self.images) if i != j) == 2

    def to_list(self) -> List[int]:
        "1-based images"
        return [i + 1 for i in self.images]

    def __str__(self):
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")"
                       for c in self.cycles())


def transposition(i: int, j: int, degree: int) -> Permutation:
    "Transposition of the 0-based points i and j"
    images = list(range(degree))
    images[i], images[j] = j, i
    return Permutation(tuple(images))


# The involution tau
def make_tau(n: int) -> Permutation:
    "The fixed-point-free involution (1 n+1)(2 n+2)...(n 2n)"
    if not isinstance(n, int) or n < 1:
        raise InvalidDegreeError(f"Degree must be a positive integer, got {n!r}")  # noqa E501
    return Permutation(tuple(range(n, 2 * n)) + tuple(range(n)))


def hyperoctahedral_element(order: Sequence[int], flips: Sequence[bool]) -> Permutation:  # noqa E501
    """Element of the centralizer of tau in S_2n.

    order is a 0-based permutation of {0..n-1} and flips[i] tells whether
    the pair {i, i+n} is swapped before being moved to order[i].
    """
    n = len(order)
    images = [0] * (2 * n)
    for i, target in enumerate(order):
        low, high = (target + n, target) if flips[i] else (target, target + n)
        images[i], images[i + n] = low, high
    return Permutation(tuple(images))


def is_twisted_symmetric(sigma: Permutation, tau: Permutation) -> bool:
    "Test tau sigma tau = sigma^-1, membership in C~(tau)"
    images = sigma.images
    return all(images[tau.images[images[tau.images[i]]]] == i
               for i in range(sigma.degree))


@dataclass(frozen=True)
class CycleClassification:
    "Cycles of a twisted-symmetric permutation split by their tau behaviour"
    pairs: Tuple[Tuple[Cycle, Cycle], ...]
    self_symmetric: Tuple[Cycle, ...]

    @property
    def pair_lengths(self) -> Partition:
        return Partition.from_parts([len(c) for c, _ in self.pairs])


def _check_degree(sigma: Permutation, n: int):
    if not isinstance(n, int) or n < 1:
        raise InvalidDegreeError(f"Degree must be a positive integer, got {n!r}")  # noqa E501
    if sigma.degree != 2 * n:
        raise InvalidDegreeError(
            f"Permutation acts on {sigma.degree} points, expected {2 * n}"
        )


def cycle_classification(sigma: Permutation, n: int) -> CycleClassification:
    "Split the cycles of sigma into tau-symmetric pairs and self-symmetric ones"
    _check_degree(sigma, n)
    tau = make_tau(n)
    if not is_twisted_symmetric(sigma, tau):
        raise NotTwistedSymmetricError(f"tau sigma tau != sigma^-1 for {sigma}")  # noqa E501
    cycles = sigma.cycles()
    owner = {point: k for k, cycle in enumerate(cycles) for point in cycle}
    pairs, self_symmetric = [], []
    for k, cycle in enumerate(cycles):
        partner = owner[tau(cycle[0])]
        if partner == k:
            self_symmetric.append(cycle)
        elif k < partner:
            pairs.append((cycle, cycles[partner]))
    return CycleClassification(tuple(pairs), tuple(self_symmetric))


def is_in_b_tilde(sigma: Permutation, lam: Partition, n: int) -> bool:
    "Test whether sigma belongs to B~_lambda"
    if lam.size != n:
        raise InvalidPartitionError(f"{lam} is not a partition of {n}")
    try:
        classification = cycle_classification(sigma, n)
    except NotTwistedSymmetricError:
        return False
    if classification.self_symmetric:
        return False
    return classification.pair_lengths == lam


# B~_lambda
def double_factorial(k: int) -> int:
    "2*4*...*k for an even k >= 0"
    if k < 0 or k % 2:
        raise OddDoubleFactorialError(f"Expected a non-negative even integer, got {k}")  # noqa E501
    return math.prod(range(2, k + 1, 2))


def b_tilde_cardinality(lam: Partition) -> int:
    "Closed formula (2n)!! / (2^l * prod(lambda) * |Aut(lambda)|)"
    denominator = 2 ** lam.length * math.prod(lam.parts) * lam.aut_order
    numerator = double_factorial(2 * lam.size)
    assert numerator % denominator == 0
    return numerator // denominator


def check_cap(n_points: int, max_points: int):
    if n_points > max_points:
        raise CapExceededError(
            f"{n_points} points exceed the enumeration cap of {max_points}"
        )


def enumerate_b_tilde(lam: Partition, max_points: int = DEFAULT_MAX_POINTS) -> List[Permutation]:  # noqa E501
    """All elements of B~_lambda, each exactly once.

    The cycle through the smallest unused point is filled with unused points
    that are pairwise not tau-related, which forces its partner cycle. The
    set of used points therefore stays tau-closed.
    """
    n = lam.size
    check_cap(2 * n, max_points)
    tau = make_tau(n).images
    images = [-1] * (2 * n)
    result = []

    def fill(remaining: Counter):
        free = [i for i in range(2 * n) if images[i] < 0]
        if not free:
            result.append(Permutation(tuple(images)))
            return
        p = free[0]
        candidates = [q for q in free[1:] if q != tau[p]]
        for length in sorted(remaining, reverse=True):
            if remaining[length] == 0:
                continue
            for rest in permutations(candidates, length - 1):
                if len({min(q, tau[q]) for q in rest}) < len(rest):
                    continue
                cycle = (p,) + rest
                for i in range(length):
                    a, b = cycle[i], cycle[(i + 1) % length]
                    images[a] = b
                    images[tau[b]] = tau[a]
                remaining[length] -= 1
                fill(remaining)
                remaining[length] += 1
                for a in cycle:
                    images[a] = images[tau[a]] = -1

    fill(Counter(lam.parts))
    logger.debug("Enumerated %d elements of B~_%s", len(result), lam)
    return result


# Conjugacy classes of S_n
def enumerate_conjugacy_class(lam: Partition, max_points: int = DEFAULT_MAX_POINTS) -> List[Permutation]:  # noqa E501
    "All permutations of S_n with cycle type lambda, n = |lambda|"
    n = lam.size
    check_cap(n, max_points)
    images = [-1] * n
    result = []

    def fill(remaining: Counter):
        free = [i for i in range(n) if images[i] < 0]
        if not free:
            result.append(Permutation(tuple(images)))
            return
        p = free[0]
        for length in sorted(remaining, reverse=True):
            if remaining[length] == 0:
                continue
            for rest in permutations(free[1:], length - 1):
                cycle = (p,) + rest
                for i in range(length):
                    images[cycle[i]] = cycle[(i + 1) % length]
                remaining[length] -= 1
                fill(remaining)
                remaining[length] += 1
                for a in cycle:
                    images[a] = -1

    fill(Counter(lam.parts))
    return result


def conjugacy_class_size(lam: Partition) -> int:
    "n! / z_lambda"
    z = math.prod(lam.parts) * lam.aut_order
    return math.factorial(lam.size) // z
