"Tropical covers: twisted and classical monodromy graphs and their counts"
from .covers import (Edge, EdgeSplit, MonodromyGraph, QuotientGraph,  # noqa F401
                     TwistedCover, Vertex, automorphism_order, canonical_form,
                     canonicalize, classical_automorphism_order,
                     classical_weight, count_vertex_orderings,
                     cover_multiplicity, forget_two_valent,
                     invariant_violations, iter_automorphisms, quotient,
                     symbolic_edge_splits)
from .enumeration import (GraphContribution, classical_double_hurwitz_tropical,  # noqa F401
                          enumerate_classical_covers, enumerate_twisted_covers,
                          graph_contributions, has_delta_edge_at_two_valent,
                          polynomial_value, restricted_sum_delta_adjacent,
                          twisted_hurwitz_tropical,
                          twisted_single_hurwitz_tropical)
