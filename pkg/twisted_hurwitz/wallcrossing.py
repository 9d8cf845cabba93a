"""Genus 0 wall crossing for twisted double Hurwitz numbers.

The jump P1 - P2 of the chamber polynomials across a wall
delta = sum(mu_I) - sum(nu_J) is compared pointwise with a sum of products
of smaller twisted and classical numbers plus the correction
h^{C1,delta} - h^{C2,delta}, the covers whose delta edge meets the
2-valent vertex of the quotient graph.

All counts here use labelled ends. In the product terms the delta end gets
the last label of its side, and the twisted factor leaves out the covers
whose 4-valent vertex sits on the delta end: those are the ones already
counted by the correction term. literal=True keeps them, which only agrees
with the left hand side when delta = 1.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .chambers import (ChamberSignature, Wall, adjacent_pairs, chamber_sample,
                       chamber_signature, iter_chamber_points, wall_list)
from .exceptions import (NoWallError, NonAdjacentChambersError,
                         NotInChamberError, OnWallError)
from .helpers import format_rational
from .polynomials import (RationalPoly, binomial, interpolate_chamber,
                          interpolate_function)
from .tropical import (classical_double_hurwitz_tropical,
                       restricted_sum_delta_adjacent, twisted_hurwitz_tropical)

logger = logging.getLogger(__name__)


def check_adjacent(wall: Wall, c1: ChamberSignature, c2: ChamberSignature):
    "Make sure two chambers only differ in the sign of the given wall"
    walls = wall_list(c1.m, c1.n)
    if not walls:
        raise NoWallError(f"Shape ({c1.m},{c1.n}) has no wall")
    if (c1.m, c1.n) != (c2.m, c2.n) or wall not in walls:
        raise NonAdjacentChambersError(f"{wall} does not separate {c1} and {c2}")  # noqa E501
    index = walls.index(wall)
    differing = [k for k, (a, b) in enumerate(zip(c1.signs, c2.signs)) if a != b]  # noqa E501
    if differing != [index]:
        raise NonAdjacentChambersError(
            f"Chambers {c1} and {c2} are not adjacent across {wall}"
        )


def wall_crossing_lhs(wall: Wall, c1: ChamberSignature, c2: ChamberSignature,
                      bound: int = 40, **kwargs) -> RationalPoly:
    "WC_delta = P1 - P2 for the genus 0 chamber polynomials"
    check_adjacent(wall, c1, c2)
    p1 = interpolate_chamber(0, c1.m, c1.n, c1, bound=bound, **kwargs)
    p2 = interpolate_chamber(0, c2.m, c2.n, c2, bound=bound, **kwargs)
    return p1 - p2


class _RestrictedSum:
    "Picklable restricted sum on a fixed wall"

    def __init__(self, wall: Wall):
        self.wall = wall

    def __call__(self, mu, nu) -> Fraction:
        return restricted_sum_delta_adjacent(mu, nu, self.wall)


@lru_cache(maxsize=None)
def restricted_sum_polynomial(wall: Wall, chamber: ChamberSignature,
                              bound: int = 40) -> RationalPoly:
    "Polynomial extension of h^{C,delta} from the chamber C"
    m, n = chamber.m, chamber.n
    return interpolate_function(_RestrictedSum(wall), m, n, m + n - 1,
                                iter_chamber_points(chamber, bound))


@dataclass
class WallCrossingTerms:
    "Both sides of the wall crossing identity at one point"
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    delta: int
    h_c1: Fraction
    h_c2: Fraction
    products: Fraction
    lhs: Fraction = None
    pieces: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def rhs(self) -> Fraction:
        return self.h_c1 - self.h_c2 + self.delta * self.products

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> Dict:
        return {"mu": list(self.mu), "nu": list(self.nu), "delta": self.delta,
                "lhs": None if self.lhs is None else format_rational(self.lhs),
                "rhs": format_rational(self.rhs),
                "h_c1": format_rational(self.h_c1),
                "h_c2": format_rational(self.h_c2),
                "pieces": {k: format_rational(v) for k, v in self.pieces.items()},  # noqa E501
                "ok": self.ok}


def wall_crossing_terms(wall: Wall, c1: ChamberSignature, c2: ChamberSignature,
                        mu: Sequence[int], nu: Sequence[int],
                        literal: bool = False, bound: int = 40) -> WallCrossingTerms:  # noqa E501
    "Evaluate every term of the right hand side at a point of C1"
    check_adjacent(wall, c1, c2)
    mu, nu = tuple(mu), tuple(nu)
    if chamber_signature(mu, nu) != c1:
        raise NotInChamberError(f"{mu}, {nu} is not in chamber {c1}")
    m, n = len(mu), len(nu)
    delta = wall.form(mu, nu)
    if delta == 0:
        raise OnWallError(f"{mu}, {nu} lies on {wall}")
    I, J = wall.I, wall.J
    if delta < 0:
        I, J = wall.complement(m, n)
        delta = -delta
    Ic, Jc = (tuple(i for i in range(m) if i not in I),
              tuple(j for j in range(n) if j not in J))
    mu_i, nu_j = [mu[i] for i in I], [nu[j] for j in J]
    mu_ic, nu_jc = [mu[i] for i in Ic], [nu[j] for j in Jc]
    length = m + n - 1

    h_c1 = restricted_sum_delta_adjacent(mu, nu, wall, c1)
    h_c2 = restricted_sum_polynomial(wall, c2, bound)(mu, nu)

    # delta is the last out-end of the first piece, the last in-end of the second  # noqa E501
    exclude_out = None if literal else ("out", len(nu_j))
    exclude_in = None if literal else ("in", len(mu_ic))
    twisted_first = twisted_hurwitz_tropical(0, mu_i, nu_j + [delta], labeled=True,  # noqa E501
                                             exclude_adjacent=exclude_out)
    classical_first = classical_double_hurwitz_tropical(0, mu_ic + [delta], nu_jc, labeled=True)  # noqa E501
    classical_second = classical_double_hurwitz_tropical(0, mu_i, nu_j + [delta], labeled=True)  # noqa E501
    twisted_second = twisted_hurwitz_tropical(0, mu_ic + [delta], nu_jc, labeled=True,  # noqa E501
                                              exclude_adjacent=exclude_in)
    first = (2 ** (len(Ic) + len(Jc) - 1) * binomial(length, len(I) + len(J))
             * twisted_first * classical_first)
    second = (2 ** (len(I) + len(J) - 1) * binomial(length, len(I) + len(J) - 1)
              * classical_second * twisted_second)
    pieces = {"twisted_first": twisted_first,
              "classical_first": classical_first,
              "classical_second": classical_second,
              "twisted_second": twisted_second}
    return WallCrossingTerms(mu, nu, delta, h_c1, h_c2,
                             Fraction(first + second), pieces=pieces)


def wall_crossing_rhs(wall: Wall, c1: ChamberSignature, c2: ChamberSignature,
                      mu: Sequence[int], nu: Sequence[int],
                      literal: bool = False, bound: int = 40) -> Fraction:
    "Right hand side of the genus 0 wall crossing identity at a point of C1"
    return wall_crossing_terms(wall, c1, c2, mu, nu, literal, bound).rhs


def check_wall(m: int, n: int, wall: Wall, points: int = 3,
               literal: bool = False, bound: int = 40,
               **kwargs) -> List[WallCrossingTerms]:
    """Compare both sides of the identity at points around a wall.

    Every realized pair (C+, C-) across the wall gives two sides: points of
    C+ are evaluated with (C+, C-) and points of C- with (C-, C+). The
    points are dealt to the sides in turn.
    """
    if not wall_list(m, n):
        raise NoWallError(f"Shape ({m},{n}) has no wall")
    sides = []
    for positive, negative in adjacent_pairs(m, n, wall, bound):
        sides.extend([(positive, negative), (negative, positive)])
    if not sides:
        raise NonAdjacentChambersError(f"No realized chambers on both sides of {wall}")  # noqa E501
    counts = [len(range(k, points, len(sides))) for k in range(len(sides))]
    results = []
    for (c1, c2), count in zip(sides, counts):
        if count == 0:
            continue
        lhs = wall_crossing_lhs(wall, c1, c2, bound=bound, **kwargs)
        for mu, nu in chamber_sample(c1, count, bound):
            terms = wall_crossing_terms(wall, c1, c2, mu, nu, literal, bound)
            terms.lhs = lhs(mu, nu)
            if not terms.ok:
                logger.warning("Wall crossing mismatch at %s, %s: %s != %s",
                               mu, nu, terms.lhs, terms.rhs)
            results.append(terms)
    return results
