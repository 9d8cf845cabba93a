"""Enumeration of twisted and classical monodromy graphs.

Graphs are built left to right, one branch point at a time. For twisted
covers the live ends are grouped in pairs exchanged by the involution and
every branch point applies one of three moves:

- twin join: two pairs merge through two 3-valent vertices,
- twin cut: one pair splits through two 3-valent vertices,
- 4-valent: one pair passes through a single vertex fixed by the involution.

Sequences giving isomorphic leveled graphs are merged by canonical form.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from multiprocessing import Pool
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from ..chambers import chamber_signature
from ..exceptions import (CapExceededError, InvalidBranchCountError,
                          InvalidPartitionError, NotInChamberError)
from .covers import (Edge, MonodromyGraph, TwistedCover, Vertex,
                     automorphism_order, canonical_numbering, canonicalize,
                     classical_canonicalize, classical_weight,
                     cover_multiplicity, quotient, symbolic_edge_splits)

logger = logging.getLogger(__name__)

DEFAULT_MAX_BRANCH = 8


def as_parts(parts: Sequence[int]) -> Tuple[int, ...]:
    "Validate a sequence of parts, keeping its order"
    parts = tuple(parts)
    if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
        raise InvalidPartitionError(f"Parts must be positive integers: {parts}")  # noqa E501
    return parts


def _check_profiles(mu, nu) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    mu, nu = as_parts(mu), as_parts(nu)
    if sum(mu) != sum(nu):
        raise InvalidPartitionError(f"{mu} and {nu} have different sizes")
    return mu, nu


def _label_assignments(weights: Sequence[int], parts: Sequence[int]):
    "All bijections from slots to part indices matching weights"
    slots, indices = defaultdict(list), defaultdict(list)
    for k, w in enumerate(weights):
        slots[w].append(k)
    for i, w in enumerate(parts):
        indices[w].append(i)
    groups = sorted(slots)
    for choice in product(*(permutations(indices[w]) for w in groups)):
        labels = [0] * len(weights)
        for w, chosen in zip(groups, choice):
            for slot, index in zip(slots[w], chosen):
                labels[slot] = index
        yield labels


# Twisted covers
class _TwistedState(NamedTuple):
    vertices: Tuple[Vertex, ...]
    vertex_involution: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    edge_involution: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class _Search:
    "Parameters shared by every branch of a twisted search"
    g: int
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    labeled: bool
    prune_zero: bool
    exclude_adjacent: Optional[Tuple[str, int]]

    @property
    def b(self) -> int:
        return self.g - 1 + len(self.mu) + len(self.nu)


def _initial_twisted_state(mu, labeled) -> _TwistedState:
    edges, involution, pairs = [], [], []
    for i, w in enumerate(mu):
        k = len(edges)
        label = i if labeled else None
        edges.extend([Edge(None, None, w, label)] * 2)
        involution.extend([k + 1, k])
        pairs.append((k, k + 1))
    return _TwistedState((), (), tuple(edges), tuple(involution), tuple(pairs))  # noqa E501


def _grow(state: _TwistedState, level: int, consumed: Sequence[int],
          new_vertices: Sequence[int], outgoing: Sequence[Tuple[int, int]],
          attach: Dict[int, int]) -> _TwistedState:
    """Apply a move.

    consumed: pair indices that end at this level
    new_vertices: valences of the new vertices, exchanged when there are two
    attach: live edge -> offset of the new vertex it ends at
    outgoing: for each new pair, (offset of the source vertex, weight); the
    partner edge leaves the exchanged vertex
    """
    first = len(state.vertices)
    vertices = state.vertices + tuple(Vertex(level, v) for v in new_vertices)
    if len(new_vertices) == 2:
        vertex_involution = state.vertex_involution + (first + 1, first)
    else:
        vertex_involution = state.vertex_involution + (first,)
    edges = list(state.edges)
    for k, offset in attach.items():
        edges[k] = edges[k]._replace(dst=first + offset)
    involution = list(state.edge_involution)
    pairs = [p for i, p in enumerate(state.pairs) if i not in consumed]
    for offset, weight in outgoing:
        k = len(edges)
        src = first + offset
        edges.append(Edge(src, None, weight))
        edges.append(Edge(vertex_involution[src], None, weight))
        involution.extend([k + 1, k])
        pairs.append((k, k + 1))
    return _TwistedState(vertices, vertex_involution, tuple(edges),
                         tuple(involution), tuple(pairs))


def _twisted_successors(state: _TwistedState, level: int, prune_zero: bool):
    weight = [e.weight for e in state.edges]
    pairs = state.pairs
    # Twin join
    for p, q in combinations(range(len(pairs)), 2):
        (a, a2), (c, c2) = pairs[p], pairs[q]
        total = weight[a] + weight[c]
        for first, second in ((c, c2), (c2, c)):
            yield _grow(state, level, (p, q), (3, 3), [(0, total)],
                        {a: 0, first: 0, a2: 1, second: 1})
    # Twin cut
    for p, (a, a2) in enumerate(pairs):
        w = weight[a]
        for c in range(1, w // 2 + 1):
            yield _grow(state, level, (p,), (3, 3), [(0, c), (0, w - c)],
                        {a: 0, a2: 1})
    # 4-valent vertex
    for p, (a, a2) in enumerate(pairs):
        w = weight[a]
        if prune_zero and w == 1:
            continue
        yield _grow(state, level, (p,), (4,), [(0, w)], {a: 0, a2: 0})


def _touches_excluded_end(cover: TwistedCover, exclude: Tuple[str, int]) -> bool:  # noqa E501
    "Whether a 4-valent vertex is adjacent to the given end"
    side, label = exclude
    for v in cover.four_valent_vertices:
        for edge in cover.edges:
            if edge.label != label:
                continue
            if side == "in" and edge.is_in_end and edge.dst == v:
                return True
            if side == "out" and edge.is_out_end and edge.src == v:
                return True
    return False


def _finish_twisted(state: _TwistedState, search: _Search):
    "Close the live pairs into out-ends and yield the connected covers"
    weights = [state.edges[a].weight for a, _ in state.pairs]
    if sorted(weights) != sorted(search.nu):
        return
    if any(state.edges[a].src is None for a, _ in state.pairs):
        return
    if search.labeled:
        assignments = _label_assignments(weights, search.nu)
    else:
        assignments = [[None] * len(weights)]
    for labels in assignments:
        edges = list(state.edges)
        for (a, a2), label in zip(state.pairs, labels):
            edges[a] = edges[a]._replace(label=label)
            edges[a2] = edges[a2]._replace(label=label)
        cover = TwistedCover(search.g, search.mu, search.nu, state.vertices,
                             tuple(edges), state.edge_involution,
                             state.vertex_involution, search.labeled)
        if not cover.is_connected():
            continue
        if search.exclude_adjacent and _touches_excluded_end(cover, search.exclude_adjacent):  # noqa E501
            continue
        yield cover


def _search_twisted(args) -> Dict[Tuple, TwistedCover]:
    "Depth first search from a list of states at a given level"
    roots, level, search = args
    b, target = search.b, len(search.nu)
    found = {}
    stack = [(state, level) for state in reversed(roots)]
    while stack:
        state, level = stack.pop()
        if level == b:
            for cover in _finish_twisted(state, search):
                key, _ = canonical_numbering(cover)
                if key not in found:
                    found[key] = canonicalize(cover)
            continue
        remaining = b - level - 1
        for child in _twisted_successors(state, level, search.prune_zero):
            if abs(len(child.pairs) - target) <= remaining:
                stack.append((child, level + 1))
    return found


def enumerate_twisted_covers(g: int, mu: Sequence[int], nu: Sequence[int],
                             labeled: bool = False, prune_zero: bool = False,
                             exclude_adjacent: Optional[Tuple[str, int]] = None,  # noqa E501
                             workers: int = 1,
                             max_branch: int = DEFAULT_MAX_BRANCH,
                             ) -> List[TwistedCover]:
    """Every leveled twisted monodromy graph of type (g, mu, nu), once.

    With labeled=True the ends carry the index of the part they realize and
    mu, nu are taken in the given order. prune_zero skips 4-valent vertices
    of weight 1, whose covers have multiplicity 0. exclude_adjacent=(side,
    label) drops covers with a 4-valent vertex next to that end.
    """
    mu, nu = _check_profiles(mu, nu)
    if not labeled:
        mu, nu = tuple(sorted(mu, reverse=True)), tuple(sorted(nu, reverse=True))  # noqa E501
    search = _Search(g, mu, nu, labeled, prune_zero, exclude_adjacent)
    if search.b <= 0:
        raise InvalidBranchCountError(f"b={search.b}: no branch points, the number is undefined")  # noqa E501
    if search.b > max_branch:
        raise CapExceededError(f"{search.b} branch points exceed the cap of {max_branch}")  # noqa E501
    root = _initial_twisted_state(mu, labeled)
    if workers <= 1:
        found = _search_twisted(([root], 0, search))
    else:
        children = list(_twisted_successors(root, 0, prune_zero))
        tasks = [(children[k::workers], 1, search) for k in range(workers)]
        found = {}
        with Pool(processes=workers) as pool:
            for partial in pool.map(_search_twisted, tasks):
                found.update(partial)
    covers = [found[key] for key in sorted(found)]
    logger.debug("%d twisted covers of type (%d, %s, %s)", len(covers), g, mu, nu)  # noqa E501
    return covers


@dataclass(frozen=True)
class GraphContribution:
    "A cover with its automorphism order and multiplicity"
    cover: TwistedCover
    aut_order: int
    multiplicity: Fraction


def graph_contributions(g: int, mu: Sequence[int], nu: Sequence[int],
                        **kwargs) -> List[GraphContribution]:
    "Covers of type (g, mu, nu) with their contributions"
    return [GraphContribution(c, automorphism_order(c), cover_multiplicity(c))
            for c in enumerate_twisted_covers(g, mu, nu, **kwargs)]


def twisted_hurwitz_tropical(g: int, mu: Sequence[int], nu: Sequence[int],
                             labeled: bool = False, **kwargs) -> Fraction:
    "Weighted count of twisted monodromy graphs of type (g, mu, nu)"
    kwargs.setdefault("prune_zero", True)
    covers = enumerate_twisted_covers(g, mu, nu, labeled=labeled, **kwargs)
    return sum((cover_multiplicity(c) for c in covers), Fraction(0))


def polynomial_value(g: int, mu: Sequence[int], nu: Sequence[int],
                     **kwargs) -> Fraction:
    "Twisted count with labelled ends, the value of the chamber polynomial"
    return twisted_hurwitz_tropical(g, mu, nu, labeled=True, **kwargs)


def twisted_single_hurwitz_tropical(g: int, lam: Sequence[int], **kwargs) -> Fraction:  # noqa E501
    "Twisted single Hurwitz number, nu = (1,...,1)"
    return twisted_hurwitz_tropical(g, lam, (1,) * sum(lam), **kwargs)


# Classical covers
class _ClassicalState(NamedTuple):
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    strands: Tuple[int, ...]


def _classical_successors(state: _ClassicalState, level: int):
    weight = [e.weight for e in state.edges]
    v = len(state.vertices)
    vertices = state.vertices + (Vertex(level, 3),)
    strands = state.strands
    for p, q in combinations(range(len(strands)), 2):
        edges = list(state.edges)
        a, c = strands[p], strands[q]
        edges[a] = edges[a]._replace(dst=v)
        edges[c] = edges[c]._replace(dst=v)
        edges.append(Edge(v, None, weight[a] + weight[c]))
        rest = tuple(s for i, s in enumerate(strands) if i not in (p, q))
        yield _ClassicalState(vertices, tuple(edges), rest + (len(edges) - 1,))  # noqa E501
    for p, a in enumerate(strands):
        w = weight[a]
        for c in range(1, w // 2 + 1):
            edges = list(state.edges)
            edges[a] = edges[a]._replace(dst=v)
            edges.extend([Edge(v, None, c), Edge(v, None, w - c)])
            rest = tuple(s for i, s in enumerate(strands) if i != p)
            k = len(edges)
            yield _ClassicalState(vertices, tuple(edges), rest + (k - 2, k - 1))  # noqa E501


def enumerate_classical_covers(g: int, mu: Sequence[int], nu: Sequence[int],
                               labeled: bool = False,
                               max_branch: int = DEFAULT_MAX_BRANCH,
                               ) -> List[MonodromyGraph]:
    "Every leveled 3-valent monodromy graph of type (g, mu, nu), once"
    mu, nu = _check_profiles(mu, nu)
    if not labeled:
        mu, nu = tuple(sorted(mu, reverse=True)), tuple(sorted(nu, reverse=True))  # noqa E501
    r = 2 * g - 2 + len(mu) + len(nu)
    if r < 0:
        raise InvalidBranchCountError(f"r={r}: negative number of branch points")  # noqa E501
    if r > max_branch:
        raise CapExceededError(f"{r} branch points exceed the cap of {max_branch}")  # noqa E501
    label = 0 if labeled else None
    if r == 0:
        if len(mu) == 1 and mu == nu:
            edge = Edge(None, None, mu[0], label)
            return [MonodromyGraph(g, mu, nu, (), (edge,), labeled)]
        return []
    edges = tuple(Edge(None, None, w, i if labeled else None)
                  for i, w in enumerate(mu))
    stack = [(_ClassicalState((), edges, tuple(range(len(mu)))), 0)]
    found = {}
    while stack:
        state, level = stack.pop()
        if level < r:
            remaining = r - level - 1
            for child in _classical_successors(state, level):
                if abs(len(child.strands) - len(nu)) <= remaining:
                    stack.append((child, level + 1))
            continue
        weights = [state.edges[s].weight for s in state.strands]
        if sorted(weights) != sorted(nu):
            continue
        if any(state.edges[s].src is None for s in state.strands):
            continue
        assignments = _label_assignments(weights, nu) if labeled else [[None] * len(weights)]  # noqa E501
        for labels in assignments:
            edges = list(state.edges)
            for s, out_label in zip(state.strands, labels):
                edges[s] = edges[s]._replace(label=out_label)
            graph = MonodromyGraph(g, mu, nu, state.vertices, tuple(edges), labeled)  # noqa E501
            if not nx.is_connected(graph.to_networkx()) or graph.betti_number() != g:  # noqa E501
                continue
            graph = classical_canonicalize(graph)
            found.setdefault(graph.edges, graph)
    return [found[key] for key in sorted(found, key=_edges_sort_key)]


def _edges_sort_key(edges: Tuple[Edge, ...]):
    return tuple((-1 if e.src is None else e.src, -1 if e.dst is None else e.dst,  # noqa E501
                  e.weight, -1 if e.label is None else e.label) for e in edges)


def classical_double_hurwitz_tropical(g: int, mu: Sequence[int],
                                      nu: Sequence[int], labeled: bool = False,
                                      **kwargs) -> Fraction:
    "Classical double Hurwitz number as a weighted count of monodromy graphs"
    graphs = enumerate_classical_covers(g, mu, nu, labeled=labeled, **kwargs)
    return sum((classical_weight(graph) for graph in graphs), Fraction(0))


# Restricted sums for wall crossing
def has_delta_edge_at_two_valent(cover: TwistedCover, wall) -> bool:
    "Whether the quotient has an edge of split wall next to the 2-valent vertex"
    graph_quotient = quotient(cover)
    two_valent = set(graph_quotient.two_valent_vertices)
    for split in symbolic_edge_splits(cover):
        if (split.I, split.J) != (wall.I, wall.J):
            continue
        edge = graph_quotient.edges[split.edge]
        if edge.src in two_valent or edge.dst in two_valent:
            return True
    return False


def restricted_sum_delta_adjacent(mu: Sequence[int], nu: Sequence[int], wall,
                                  chamber=None, **kwargs) -> Fraction:
    """Genus 0 labelled contributions whose delta edge meets the 2-valent vertex.

    delta is the wall form sum(mu_I) - sum(nu_J). When a chamber signature is
    given, the point must lie in that chamber.
    """
    mu, nu = _check_profiles(mu, nu)
    if chamber is not None and chamber_signature(mu, nu) != chamber:
        raise NotInChamberError(f"{mu}, {nu} is not in chamber {chamber}")
    covers = enumerate_twisted_covers(0, mu, nu, labeled=True,
                                      prune_zero=True, **kwargs)
    return sum((cover_multiplicity(c) for c in covers
                if has_delta_edge_at_two_valent(c, wall)), Fraction(0))
