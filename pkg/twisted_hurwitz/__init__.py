"Twisted double Hurwitz numbers: brute-force and tropical engines, chamber polynomials and wall crossing"  # noqa E501
from .combinatorics import Partition, Permutation  # noqa F401
from .oracle import HurwitzInput, twisted_hurwitz_bruteforce  # noqa F401
from .tropical import twisted_hurwitz_tropical  # noqa F401
