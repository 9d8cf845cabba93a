"""Walls sum(mu_I) = sum(nu_J) of the resonance arrangement and its chambers.

Indices are 0-based internally and 1-based when printed. A wall and its
complement (I^c, J^c) define the same hyperplane on sum(mu) = sum(nu), the
stored representative is the one with the first part of mu in I.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Sequence, Tuple

from .exceptions import (ChamberEmptyError, InvalidPartitionError,
                         OnWallError)

logger = logging.getLogger(__name__)

Point = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True, order=True)
class Wall:
    "Hyperplane sum_{i in I} mu_i = sum_{j in J} nu_j"
    I: Tuple[int, ...]
    J: Tuple[int, ...]

    def form(self, mu: Sequence[int], nu: Sequence[int]) -> int:
        "delta = sum(mu_I) - sum(nu_J)"
        return sum(mu[i] for i in self.I) - sum(nu[j] for j in self.J)

    def complement(self, m: int, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:  # noqa E501
        return (tuple(i for i in range(m) if i not in self.I),
                tuple(j for j in range(n) if j not in self.J))

    def __str__(self):
        return ("I=" + ",".join(str(i + 1) for i in self.I)
                + ":J=" + ",".join(str(j + 1) for j in self.J))

    @classmethod
    def parse(cls, text: str, m: int, n: int) -> "Wall":
        "Read a wall written as I=1,2:J=1 with 1-based indices"
        try:
            fields = dict(part.split("=") for part in text.split(":"))
            I = [int(i) - 1 for i in fields["I"].split(",") if i]
            J = [int(j) - 1 for j in fields["J"].split(",") if j]
        except (KeyError, ValueError):
            raise InvalidPartitionError(f"Cannot read the wall {text!r}")
        if not all(0 <= i < m for i in I) or not all(0 <= j < n for j in J):
            raise InvalidPartitionError(f"Wall {text!r} does not fit shape ({m},{n})")  # noqa E501
        if not 1 <= len(I) <= m - 1 or not 1 <= len(J) <= n - 1:
            raise InvalidPartitionError(f"Wall {text!r} uses an empty or full subset")  # noqa E501
        if 0 not in I:
            I = [i for i in range(m) if i not in I]
            J = [j for j in range(n) if j not in J]
        return cls(tuple(sorted(I)), tuple(sorted(J)))


def wall_list(m: int, n: int) -> List[Wall]:
    "All walls for l(mu) = m, l(nu) = n up to complement"
    walls = []
    for size_i in range(1, m):
        for I in combinations(range(m), size_i):
            if 0 not in I:
                continue
            for size_j in range(1, n):
                for J in combinations(range(n), size_j):
                    walls.append(Wall(I, J))
    return walls


@dataclass(frozen=True)
class ChamberSignature:
    "Sign of every wall form on a chamber"
    m: int
    n: int
    signs: Tuple[int, ...]

    @property
    def walls(self) -> List[Wall]:
        return wall_list(self.m, self.n)

    def __str__(self):
        return ",".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def parse(cls, text: str, m: int, n: int) -> "ChamberSignature":
        "Read a signature written as +,-,..."
        signs = tuple(1 if s.strip() == "+" else -1
                      for s in text.split(",") if s.strip())
        if len(signs) != len(wall_list(m, n)):
            raise InvalidPartitionError(
                f"Signature {text!r} needs {len(wall_list(m, n))} signs"
            )
        return cls(m, n, signs)

    def crossed(self, wall: Wall) -> "ChamberSignature":
        "Signature of the neighbouring chamber across a wall"
        index = self.walls.index(wall)
        signs = list(self.signs)
        signs[index] = -signs[index]
        return ChamberSignature(self.m, self.n, tuple(signs))


def chamber_signature(mu: Sequence[int], nu: Sequence[int]) -> ChamberSignature:  # noqa E501
    "Signs of all wall forms at a point off the walls"
    m, n = len(mu), len(nu)
    signs = []
    for wall in wall_list(m, n):
        delta = wall.form(mu, nu)
        if delta == 0:
            raise OnWallError(f"{tuple(mu)}, {tuple(nu)} lies on the wall {wall}")  # noqa E501
        signs.append(1 if delta > 0 else -1)
    return ChamberSignature(m, n, tuple(signs))


def _compositions(total: int, parts: int, bound: int) -> Iterator[Tuple[int, ...]]:  # noqa E501
    "Compositions of total into positive parts <= bound, lexicographic"
    if parts == 1:
        if 1 <= total <= bound:
            yield (total,)
        return
    for first in range(1, min(bound, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


def lattice_points(m: int, n: int, bound: int) -> Iterator[Point]:
    "Positive points with sum(mu) = sum(nu), by total then lexicographic"
    for total in range(max(m, n), min(m, n) * bound + 1):
        for mu in _compositions(total, m, bound):
            for nu in _compositions(total, n, bound):
                yield mu, nu


def iter_chamber_points(signature: ChamberSignature, bound: int) -> Iterator[Point]:  # noqa E501
    "Lattice points of a chamber in scan order"
    for mu, nu in lattice_points(signature.m, signature.n, bound):
        try:
            if chamber_signature(mu, nu) == signature:
                yield mu, nu
        except OnWallError:
            continue


def chamber_sample(signature: ChamberSignature, count: int, bound: int) -> List[Point]:  # noqa E501
    "The first count lattice points of a chamber with coordinates <= bound"
    points = []
    for point in iter_chamber_points(signature, bound):
        points.append(point)
        if len(points) == count:
            return points
    raise ChamberEmptyError(
        f"Only {len(points)} points found in chamber {signature} within bound {bound}"  # noqa E501
    )


def realized_chambers(m: int, n: int, bound: int) -> List[ChamberSignature]:
    "Signatures met by the lattice scan, in order of first appearance"
    seen = []
    possible = 2 ** len(wall_list(m, n))
    for mu, nu in lattice_points(m, n, bound):
        try:
            signature = chamber_signature(mu, nu)
        except OnWallError:
            continue
        if signature not in seen:
            seen.append(signature)
            if len(seen) == possible:
                break
    return seen


def adjacent_pairs(m: int, n: int, wall: Wall, bound: int) -> List[Tuple[ChamberSignature, ChamberSignature]]:  # noqa E501
    "Realized chamber pairs across a wall, the first one on the positive side"
    index = wall_list(m, n).index(wall)
    chambers = realized_chambers(m, n, bound)
    pairs = []
    for chamber in chambers:
        other = chamber.crossed(wall)
        if chamber.signs[index] > 0 and other in chambers:
            pairs.append((chamber, other))
    return pairs
