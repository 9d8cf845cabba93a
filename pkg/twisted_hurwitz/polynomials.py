"""Exact multivariate polynomials and interpolation on chambers.

Polynomials live on the hyperplane sum(mu) = sum(nu). The canonical
representative is written in mu1..mum, nu1..nu{n-1}, the last nu variable
being eliminated through nu_n = sum(mu) - nu_1 - ... - nu_{n-1}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ, Poly, Rational, symbols
from sympy.polys.matrices import DomainMatrix

from .chambers import ChamberSignature, Point, iter_chamber_points
from .exceptions import ChamberEmptyError, DegreeBoundViolation
from .helpers import format_rational, parse_rational
from .tropical import polynomial_value

logger = logging.getLogger(__name__)


def variable_names(m: int, n: int) -> List[str]:
    "Names of the canonical variables"
    return [f"mu{i + 1}" for i in range(m)] + [f"nu{j + 1}" for j in range(n - 1)]  # noqa E501


def canonical_coordinates(mu: Sequence[int], nu: Sequence[int]) -> Tuple[int, ...]:  # noqa E501
    "Point in the canonical variables, dropping the last entry of nu"
    return tuple(mu) + tuple(nu[:-1])


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class RationalPoly:
    "Polynomial with exact rational coefficients in the canonical variables"
    m: int
    n: int
    poly: Poly

    @property
    def names(self) -> List[str]:
        return variable_names(self.m, self.n)

    @classmethod
    def zero(cls, m: int, n: int) -> "RationalPoly":
        return cls.from_terms({}, m, n)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, ...], Fraction], m: int, n: int) -> "RationalPoly":  # noqa E501
        "Build a polynomial from exponent vectors and coefficients"
        gens = symbols(variable_names(m, n))
        data = {exp: Rational(c.numerator, c.denominator)
                for exp, c in terms.items() if c != 0}
        if not data:
            data = {(0,) * len(gens): Rational(0)}
        return cls(m, n, Poly.from_dict(data, *gens, domain=QQ))

    @classmethod
    def from_expression(cls, expression, m: int, n: int) -> "RationalPoly":
        """Canonical representative of a sympy expression in mu_i, nu_j.

        The expression may use the last nu variable, it is eliminated.
        """
        gens = symbols(variable_names(m, n))
        mus, nus = gens[:m], list(gens[m:])
        last = sympy.Symbol(f"nu{n}")
        expression = sympy.sympify(expression).subs(last, sum(mus) - sum(nus))  # noqa E501
        return cls(m, n, Poly(sympy.expand(expression), *gens, domain=QQ))

    def terms(self) -> Dict[Tuple[int, ...], Fraction]:
        "Non-zero coefficients by exponent vector"
        return {exp: _to_fraction(c) for exp, c in self.poly.terms() if c != 0}  # noqa E501

    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def total_degree(self) -> int:
        "Total degree, -1 for the zero polynomial"
        if self.is_zero():
            return -1
        return max(sum(exp) for exp in self.terms())

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.m, self.n, self.poly - other.poly)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.m, self.n, self.poly + other.poly)

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.terms() == other.terms()  # noqa E501

    def __hash__(self):
        return hash((self.m, self.n, tuple(sorted(self.terms().items()))))

    def __call__(self, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
        "Evaluate at a point of the hyperplane"
        if sum(mu) != sum(nu):
            raise ValueError(f"{tuple(mu)} and {tuple(nu)} have different sizes")  # noqa E501
        point = canonical_coordinates(mu, nu)
        value = self.poly.eval(dict(zip(self.poly.gens, point)))
        value = Rational(value)
        return Fraction(int(value.p), int(value.q))

    def homogeneous_parts(self) -> Dict[int, "RationalPoly"]:
        "Components by total degree, zero components omitted"
        parts: Dict[int, Dict] = {}
        for exp, coefficient in self.terms().items():
            parts.setdefault(sum(exp), {})[exp] = coefficient
        return {d: RationalPoly.from_terms(parts[d], self.m, self.n)
                for d in sorted(parts, reverse=True)}

    def degrees(self) -> List[int]:
        "Degrees of the non-zero homogeneous parts, largest first"
        return list(self.homogeneous_parts())

    def sorted_terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        "Terms by decreasing degree, then lexicographically decreasing"
        return sorted(self.terms().items(),
                      key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_json(self) -> Dict:
        return {"vars": self.names,
                "terms": [{"exp": list(exp), "coef": format_rational(c)}
                          for exp, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Dict, m: int, n: int) -> "RationalPoly":
        return cls.from_terms({tuple(t["exp"]): parse_rational(t["coef"])
                               for t in data["terms"]}, m, n)

    def __str__(self):
        "Human readable form such as 2/3*mu1^3 - mu1^2 + 1/3*mu1"
        terms = self.sorted_terms()
        if not terms:
            return "0"
        text = ""
        for k, (exp, coefficient) in enumerate(terms):
            monomial = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.names, exp) if e
            )
            magnitude = abs(coefficient)
            if not monomial:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{format_rational(magnitude)}*{monomial}"
            if k == 0:
                text = ("-" if coefficient < 0 else "") + body
            else:
                text += (" - " if coefficient < 0 else " + ") + body
        return text


def homogeneous_parts(polynomial: RationalPoly) -> Dict[int, RationalPoly]:
    "Split a canonical polynomial by total degree"
    return polynomial.homogeneous_parts()


# Interpolation
def monomial_exponents(n_vars: int, degree: int) -> List[Tuple[int, ...]]:
    "Exponent vectors of total degree <= degree, graded"
    exponents = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n_vars), d):
            exp = [0] * n_vars
            for i in combo:
                exp[i] += 1
            exponents.append(tuple(exp))
    return exponents


def _row(point: Tuple[int, ...], exponents) -> List[int]:
    row = []
    for exp in exponents:
        value = 1
        for x, e in zip(point, exp):
            value *= x ** e
        row.append(value)
    return row


def _domain_matrix(rows: List[List]) -> DomainMatrix:
    return DomainMatrix([[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row]  # noqa E501
                         for row in rows], (len(rows), len(rows[0])), QQ)


def select_nodes(points: Iterable[Point], exponents) -> Tuple[List[Point], Iterable[Point]]:  # noqa E501
    """Greedily pick points raising the rank of the monomial matrix.

    Returns the nodes and the iterator positioned after the last node.
    """
    points = iter(points)
    nodes, rows = [], []
    for point in points:
        row = _row(canonical_coordinates(*point), exponents)
        if _domain_matrix(rows + [row]).rank() > len(rows):
            nodes.append(point)
            rows.append(row)
            if len(nodes) == len(exponents):
                return nodes, points
    raise ChamberEmptyError(
        f"Found {len(nodes)} unisolvent nodes, {len(exponents)} needed"
    )


def _evaluate_all(function, points: List[Point], workers: int) -> List[Fraction]:  # noqa E501
    if workers <= 1 or len(points) < 2:
        return [Fraction(function(mu, nu)) for mu, nu in points]
    with Pool(processes=workers) as pool:
        return [Fraction(v) for v in pool.starmap(function, points)]


def interpolate_function(function: Callable[[Tuple, Tuple], Fraction],
                         m: int, n: int, degree: int,
                         points: Iterable[Point], held_out: Optional[int] = None,  # noqa E501
                         workers: int = 1) -> RationalPoly:
    """Exact interpolant of total degree <= degree through scanned points.

    held_out extra points following the nodes are checked afterwards, a
    mismatch raises DegreeBoundViolation. With workers > 1 the function must
    be picklable.
    """
    n_vars = m + n - 1
    if held_out is None or held_out == 0:
        held_out = n_vars
    exponents = monomial_exponents(n_vars, degree)
    nodes, remaining = select_nodes(points, exponents)
    extra = []
    for point in remaining:
        extra.append(point)
        if len(extra) == held_out:
            break
    if len(extra) < held_out:
        raise ChamberEmptyError(f"Only {len(extra)} held-out points available")  # noqa E501
    logger.info("Interpolating on %d nodes, %d held-out points",
                len(nodes), len(extra))
    values = _evaluate_all(function, nodes + extra, workers)
    matrix = _domain_matrix([_row(canonical_coordinates(*p), exponents) for p in nodes])  # noqa E501
    rhs = _domain_matrix([[v] for v in values[:len(nodes)]])
    solution = matrix.lu_solve(rhs).to_Matrix()
    coefficients = {exp: Fraction(int(solution[k, 0].p), int(solution[k, 0].q))  # noqa E501
                    for k, exp in enumerate(exponents)}
    polynomial = RationalPoly.from_terms(coefficients, m, n)
    for (mu, nu), value in zip(extra, values[len(nodes):]):
        if polynomial(mu, nu) != value:
            raise DegreeBoundViolation(
                f"Interpolant of degree {degree} gives {polynomial(mu, nu)} "
                f"instead of {value} at {mu}, {nu}"
            )
    return polynomial


def expected_degree(g: int, m: int, n: int) -> int:
    "Degree bound l(mu) + l(nu) - 1 + 2g of the chamber polynomials"
    return m + n - 1 + 2 * g


class ChamberFunction:
    "Picklable labelled twisted count in genus g"

    def __init__(self, g: int, cache=None):
        self.g = g
        self.cache = cache

    def __call__(self, mu, nu) -> Fraction:
        if self.cache is None:
            return polynomial_value(self.g, mu, nu)
        return self.cache.cached("labeled_tropical", self.g, mu, nu,
                                 lambda: polynomial_value(self.g, mu, nu),
                                 labeled=True)


def interpolate_chamber(g: int, m: int, n: int,
                        signature: Optional[ChamberSignature] = None,
                        bound: int = 40, held_out: Optional[int] = None,
                        workers: int = 1, cache=None) -> RationalPoly:
    """Chamber polynomial of the labelled twisted count in genus g.

    Without a signature the shape must have no walls.
    """
    if signature is None:
        signature = ChamberSignature(m, n, ())
    function = ChamberFunction(g, cache if workers <= 1 else None)
    degree = expected_degree(g, m, n)
    return interpolate_function(function, m, n, degree,
                                iter_chamber_points(signature, bound),
                                held_out=held_out, workers=workers)


def binomial(top: int, bottom: int) -> int:
    return comb(top, bottom) if 0 <= bottom <= top else 0
