"""Leveled monodromy graphs of twisted and classical tropical covers.

A twisted cover lives over b ordered branch points. Each level carries
either two 3-valent vertices exchanged by the involution or a single
4-valent vertex fixed by it. Vertices are numbered in level order and
within a level the two exchanged vertices are adjacent in the numbering.
Ends are edges without a source (in-ends) or without a target (out-ends).
"""
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

import networkx as nx

from ..exceptions import QuotientGenusError

EdgeKey = Tuple[int, int, int, int]


class Vertex(NamedTuple):
    level: int
    valence: int


class Edge(NamedTuple):
    src: Optional[int]  # None for an in-end
    dst: Optional[int]  # None for an out-end
    weight: int
    label: Optional[int] = None  # index of the realized part for labelled ends

    @property
    def is_in_end(self) -> bool:
        return self.src is None

    @property
    def is_out_end(self) -> bool:
        return self.dst is None

    @property
    def is_internal(self) -> bool:
        return self.src is not None and self.dst is not None


def _edge_key(edge: Edge, numbering, n_vertices: int) -> EdgeKey:
    "Sortable encoding of an edge under a vertex numbering"
    src = -1 if edge.src is None else numbering[edge.src]
    dst = n_vertices if edge.dst is None else numbering[edge.dst]
    label = -1 if edge.label is None else edge.label
    return (src, dst, edge.weight, label)


def _to_networkx(vertices, edges) -> nx.MultiGraph:
    "Undirected multigraph with one leaf node per end"
    graph = nx.MultiGraph()
    graph.add_nodes_from(("v", i) for i in range(len(vertices)))
    for k, edge in enumerate(edges):
        src = ("in", k) if edge.src is None else ("v", edge.src)
        dst = ("out", k) if edge.dst is None else ("v", edge.dst)
        graph.add_edge(src, dst, key=k, weight=edge.weight)
    return graph


def _betti_number(graph: nx.MultiGraph) -> int:
    return (graph.number_of_edges() - graph.number_of_nodes()
            + nx.number_connected_components(graph))


def _level_groups(vertices) -> List[List[int]]:
    groups = defaultdict(list)
    for i, vertex in enumerate(vertices):
        groups[vertex.level].append(i)
    return [groups[level] for level in sorted(groups)]


def count_vertex_orderings(cover) -> int:
    """Number of orderings of the levels compatible with edge directions.

    Levels are moved as blocks, so the two 3-valent vertices exchanged by
    the involution always share a branch point.
    """
    groups = _level_groups(cover.vertices)
    unit_of = {v: k for k, group in enumerate(groups) for v in group}
    predecessors = [0] * len(groups)
    for edge in cover.edges:
        if edge.is_internal:
            predecessors[unit_of[edge.dst]] |= 1 << unit_of[edge.src]
    orderings = Counter({0: 1})
    for mask in range(1 << len(groups)):
        if not orderings[mask]:
            continue
        for unit in range(len(groups)):
            bit = 1 << unit
            if mask & bit or predecessors[unit] & ~mask:
                continue
            orderings[mask | bit] += orderings[mask]
    return orderings[(1 << len(groups)) - 1]


# Twisted covers
@dataclass(frozen=True)
class TwistedCover:
    "Twisted monodromy graph of type (g, mu, nu)"
    g: int
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    edge_involution: Tuple[int, ...]
    vertex_involution: Tuple[int, ...]
    labeled: bool = False

    @property
    def b(self) -> int:
        return self.g - 1 + len(self.mu) + len(self.nu)

    @property
    def level_vertices(self) -> List[List[int]]:
        return _level_groups(self.vertices)

    @property
    def four_valent_vertices(self) -> List[int]:
        return [i for i, v in enumerate(self.vertices) if v.valence == 4]

    def incident_edges(self, vertex: int) -> Tuple[List[int], List[int]]:
        "Indices of the incoming and outgoing edges of a vertex"
        incoming = [k for k, e in enumerate(self.edges) if e.dst == vertex]
        outgoing = [k for k, e in enumerate(self.edges) if e.src == vertex]
        return incoming, outgoing

    def vertex_weight(self, vertex: int) -> int:
        "Weight omega_V of the edges at a 4-valent vertex"
        incoming, _ = self.incident_edges(vertex)
        return self.edges[incoming[0]].weight

    def to_networkx(self) -> nx.MultiGraph:
        return _to_networkx(self.vertices, self.edges)

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def betti_number(self) -> int:
        return _betti_number(self.to_networkx())


def canonical_numbering(cover: TwistedCover) -> Tuple[Tuple, Dict[int, int]]:
    """Smallest edge encoding over all orders of the exchanged vertex pairs.

    Returns the canonical key and the vertex numbering realizing it.
    """
    groups = cover.level_vertices
    pair_levels = [k for k, group in enumerate(groups) if len(group) == 2]
    n_vertices = len(cover.vertices)
    best, best_numbering = None, None
    for choice in product((False, True), repeat=len(pair_levels)):
        swapped = {level for level, s in zip(pair_levels, choice) if s}
        order = []
        for level, group in enumerate(groups):
            order.extend(reversed(group) if level in swapped else group)
        numbering = {v: i for i, v in enumerate(order)}
        key = tuple(sorted(_edge_key(e, numbering, n_vertices) for e in cover.edges))  # noqa E501
        if best is None or key < best:
            best, best_numbering = key, numbering
    valences = tuple(len(group) for group in groups)
    return (valences, best), best_numbering


def canonical_form(cover: TwistedCover) -> Tuple:
    "Key identifying the isomorphism class of a leveled twisted cover"
    return canonical_numbering(cover)[0]


def _pair_involution(keys: List[EdgeKey], vertex_partner: Dict[int, int],
                     n_vertices: int) -> List[int]:
    "Rebuild the edge involution from sorted edge keys"
    def partner_key(key):
        src, dst, weight, label = key
        src = vertex_partner.get(src, src)
        dst = vertex_partner.get(dst, dst)
        return (src, dst, weight, label)

    positions = defaultdict(list)
    for k, key in enumerate(keys):
        positions[key].append(k)
    involution = [-1] * len(keys)
    for key, indices in positions.items():
        other = partner_key(key)
        if other == key:
            for a, b in zip(indices[::2], indices[1::2]):
                involution[a], involution[b] = b, a
        elif key < other:
            for a, b in zip(indices, positions[other]):
                involution[a], involution[b] = b, a
    return involution


def canonicalize(cover: TwistedCover) -> TwistedCover:
    "Renumber the vertices and sort the edges in canonical order"
    (valences, keys), numbering = canonical_numbering(cover)
    n_vertices = len(cover.vertices)
    inverse = {i: v for v, i in numbering.items()}
    vertices = tuple(cover.vertices[inverse[i]] for i in range(n_vertices))
    vertex_involution = tuple(numbering[cover.vertex_involution[inverse[i]]]
                              for i in range(n_vertices))
    vertex_partner = {i: j for i, j in enumerate(vertex_involution)}
    edges = tuple(Edge(None if src < 0 else src,
                       None if dst == n_vertices else dst,
                       weight, None if label < 0 else label)
                  for src, dst, weight, label in keys)
    edge_involution = tuple(_pair_involution(list(keys), vertex_partner, n_vertices))  # noqa E501
    return TwistedCover(cover.g, cover.mu, cover.nu, vertices, edges,
                        edge_involution, vertex_involution, cover.labeled)


def _vertex_maps(cover: TwistedCover) -> Iterator[Dict[int, int]]:
    "Level preserving vertex bijections, one swap choice per paired level"
    pairs = [group for group in cover.level_vertices if len(group) == 2]
    for choice in product((False, True), repeat=len(pairs)):
        mapping = {v: v for v in range(len(cover.vertices))}
        for (u, w), swap in zip(pairs, choice):
            if swap:
                mapping[u], mapping[w] = w, u
        yield mapping


def _edge_classes(cover: TwistedCover) -> Dict[EdgeKey, List[int]]:
    identity = {v: v for v in range(len(cover.vertices))}
    classes = defaultdict(list)
    for k, edge in enumerate(cover.edges):
        classes[_edge_key(edge, identity, len(cover.vertices))].append(k)
    return classes


def _mapped_key(key: EdgeKey, mapping: Dict[int, int]) -> EdgeKey:
    src, dst, weight, label = key
    return (mapping.get(src, src), mapping.get(dst, dst), weight, label)


def automorphism_order(cover: TwistedCover) -> int:
    """Order of the automorphism group of a cover.

    Automorphisms preserve levels, weights and end labels and commute with
    the involution. For each admissible vertex map the number of compatible
    edge bijections is a product over edge classes: |K|! for a class
    exchanged with another one, 2^m m! for a class of size 2m mapped to
    itself by the involution.
    """
    classes = _edge_classes(cover)
    sizes = {key: len(edges) for key, edges in classes.items()}
    partner = {v: w for v, w in enumerate(cover.vertex_involution)}
    total = 0
    for mapping in _vertex_maps(cover):
        if any(sizes.get(_mapped_key(key, mapping)) != size
               for key, size in sizes.items()):
            continue
        factor = 1
        for key, size in sizes.items():
            other = _mapped_key(key, partner)
            if other == key:
                factor *= 2 ** (size // 2) * math.factorial(size // 2)
            elif key < other:
                factor *= math.factorial(size)
        total += factor
    return total


def iter_automorphisms(cover: TwistedCover) -> Iterator[Tuple[Dict[int, int], Tuple[int, ...]]]:  # noqa E501
    "Exhaustive backtracking over vertex maps and class-preserving edge maps"
    classes = _edge_classes(cover)
    involution = cover.edge_involution
    for mapping in _vertex_maps(cover):
        targets = []
        for key, edges in classes.items():
            image = classes.get(_mapped_key(key, mapping))
            if image is None or len(image) != len(edges):
                break
            targets.append((edges, image))
        else:
            for choice in product(*(permutations(image) for _, image in targets)):  # noqa E501
                edge_map = [0] * len(cover.edges)
                for (edges, _), image in zip(targets, choice):
                    for e, f in zip(edges, image):
                        edge_map[e] = f
                if all(edge_map[involution[e]] == involution[edge_map[e]]
                       for e in range(len(edge_map))):
                    yield mapping, tuple(edge_map)


def quotient_edge_product(cover: TwistedCover) -> int:
    "Product of the weights of the internal edges of the quotient graph"
    return math.prod(e.weight for k, e in enumerate(cover.edges)
                     if e.is_internal and k < cover.edge_involution[k])


def cover_multiplicity(cover: TwistedCover) -> Fraction:
    "2^b prod_V (omega_V - 1) prod_e omega(e) / |Aut|"
    value = Fraction(2 ** cover.b)
    for vertex in cover.four_valent_vertices:
        value *= cover.vertex_weight(vertex) - 1
    value *= quotient_edge_product(cover)
    return value / automorphism_order(cover)


def invariant_violations(cover: TwistedCover) -> List[str]:
    "List the structural conditions a twisted monodromy graph fails"
    problems = []
    edges, involution = cover.edges, cover.edge_involution
    for v, vertex in enumerate(cover.vertices):
        incoming, outgoing = cover.incident_edges(v)
        if not incoming or not outgoing:
            problems.append(f"vertex {v} is a sink or a source")
        if len(incoming) + len(outgoing) != vertex.valence:
            problems.append(f"vertex {v} has the wrong valence")
        w_in = sum(edges[k].weight for k in incoming)
        w_out = sum(edges[k].weight for k in outgoing)
        if w_in != w_out:
            problems.append(f"vertex {v} is not balanced")
        partner = cover.vertex_involution[v]
        if (vertex.valence == 4) != (partner == v):
            problems.append(f"vertex {v} breaks the fixed locus condition")
        if cover.vertices[partner].level != vertex.level:
            problems.append(f"vertex {v} is paired across levels")
        if vertex.valence == 4:
            if len({edges[k].weight for k in incoming + outgoing}) != 1:
                problems.append(f"4-valent vertex {v} has unequal weights")
    for group in cover.level_vertices:
        valences = sorted(cover.vertices[v].valence for v in group)
        if valences not in ([3, 3], [4]):
            problems.append(f"level {cover.vertices[group[0]].level} is malformed")  # noqa E501
    for k, edge in enumerate(edges):
        j = involution[k]
        if j == k or involution[j] != k:
            problems.append(f"edge {k} is not paired by the involution")
            continue
        other = edges[j]
        image_src = None if edge.src is None else cover.vertex_involution[edge.src]  # noqa E501
        image_dst = None if edge.dst is None else cover.vertex_involution[edge.dst]  # noqa E501
        if (other.src, other.dst, other.weight, other.label) != (image_src, image_dst, edge.weight, edge.label):  # noqa E501
            problems.append(f"involution does not respect edge {k}")
        if edge.is_internal and cover.vertices[edge.src].level >= cover.vertices[edge.dst].level:  # noqa E501
            problems.append(f"edge {k} does not go forward")
    in_weights = sorted(e.weight for e in edges if e.is_in_end)
    out_weights = sorted(e.weight for e in edges if e.is_out_end)
    if in_weights != sorted(list(cover.mu) * 2):
        problems.append("in-ends do not realize 2 mu")
    if out_weights != sorted(list(cover.nu) * 2):
        problems.append("out-ends do not realize 2 nu")
    graph = cover.to_networkx()
    if not nx.is_connected(graph):
        problems.append("graph is not connected")
    elif _betti_number(graph) != cover.g:
        problems.append("first Betti number differs from the genus")
    # 4-valent vertices: at most g+1 and g-c+1 even
    c = len(cover.four_valent_vertices)
    if c > cover.g + 1:
        problems.append(f"{c} 4-valent vertices exceed g+1 = {cover.g + 1}")
    if (cover.g - c + 1) % 2:
        problems.append(f"g-c+1 = {cover.g - c + 1} is odd")
    if cover.g == 0 and c != 1:
        problems.append(f"genus 0 cover with {c} 4-valent vertices")
    if cover.g == 1 and c not in (0, 2):
        problems.append(f"genus 1 cover with {c} 4-valent vertices")
    aut = automorphism_order(cover)
    if aut & (aut - 1):
        problems.append(f"|Aut| = {aut} is not a power of 2")
    return problems


# Quotient graph
@dataclass(frozen=True)
class QuotientGraph:
    "Graph of involution orbits, 4-valent vertices become 2-valent"
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    edge_orbits: Tuple[Tuple[int, int], ...]
    labeled: bool = False

    @property
    def two_valent_vertices(self) -> List[int]:
        return [i for i, v in enumerate(self.vertices) if v.valence == 2]

    def to_networkx(self) -> nx.MultiGraph:
        return _to_networkx(self.vertices, self.edges)

    @property
    def genus(self) -> int:
        return _betti_number(self.to_networkx())


def quotient(cover: TwistedCover) -> QuotientGraph:
    "Collapse the orbits of the involution"
    orbit_of = {}
    vertices = []
    for group in cover.level_vertices:
        for v in group:
            orbit_of[v] = len(vertices)
        valence = 2 if len(group) == 1 else 3
        vertices.append(Vertex(cover.vertices[group[0]].level, valence))
    edges, orbits = [], []
    for k, edge in enumerate(cover.edges):
        j = cover.edge_involution[k]
        if k > j:
            continue
        src = None if edge.src is None else orbit_of[edge.src]
        dst = None if edge.dst is None else orbit_of[edge.dst]
        edges.append(Edge(src, dst, edge.weight, edge.label))
        orbits.append((k, j))
    return QuotientGraph(cover.mu, cover.nu, tuple(vertices), tuple(edges),
                         tuple(orbits), cover.labeled)


class EdgeSplit(NamedTuple):
    """Signed end subsets of an internal quotient edge.

    The edge weight is sign * (sum of mu over I - sum of nu over J), with
    0-based indices and the first in-end always in I.
    """
    edge: int
    I: Tuple[int, ...]
    J: Tuple[int, ...]
    sign: int


def normalize_split(I, J, m: int, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...], int]:  # noqa E501
    "Representative of (I, J) ~ (I^c, J^c) containing the first in-end"
    I, J = tuple(sorted(I)), tuple(sorted(J))
    if 0 in I:
        return I, J, 1
    complement_i = tuple(i for i in range(m) if i not in I)
    complement_j = tuple(j for j in range(n) if j not in J)
    return complement_i, complement_j, -1


def symbolic_edge_splits(cover: TwistedCover) -> List[EdgeSplit]:
    "Express every internal quotient edge weight through the end weights"
    if not cover.labeled:
        raise QuotientGenusError("Symbolic edge weights need labelled ends")
    graph_quotient = quotient(cover)
    if graph_quotient.genus != 0:
        raise QuotientGenusError(
            f"Quotient graph has genus {graph_quotient.genus}, expected 0"
        )
    graph = graph_quotient.to_networkx()
    splits = []
    for k, edge in enumerate(graph_quotient.edges):
        if not edge.is_internal:
            continue
        src, dst = ("v", edge.src), ("v", edge.dst)
        graph.remove_edge(src, dst, key=k)
        side = nx.node_connected_component(graph, src)
        graph.add_edge(src, dst, key=k, weight=edge.weight)
        I = [graph_quotient.edges[j].label for kind, j in side if kind == "in"]  # noqa E501
        J = [graph_quotient.edges[j].label for kind, j in side if kind == "out"]  # noqa E501
        I, J, sign = normalize_split(I, J, len(cover.mu), len(cover.nu))
        value = sum(cover.mu[i] for i in I) - sum(cover.nu[j] for j in J)
        assert sign * value == edge.weight
        splits.append(EdgeSplit(k, I, J, sign))
    return splits


# Classical covers
@dataclass(frozen=True)
class MonodromyGraph:
    "Classical monodromy graph, one 3-valent vertex per branch point"
    g: int
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    labeled: bool = False

    @property
    def r(self) -> int:
        return len(self.vertices)

    def to_networkx(self) -> nx.MultiGraph:
        return _to_networkx(self.vertices, self.edges)

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def betti_number(self) -> int:
        return _betti_number(self.to_networkx())


def classical_canonicalize(graph: MonodromyGraph) -> MonodromyGraph:
    "Vertices already follow the levels, sort the edges"
    n_vertices = len(graph.vertices)
    identity = {v: v for v in range(n_vertices)}
    keys = sorted(_edge_key(e, identity, n_vertices) for e in graph.edges)
    edges = tuple(Edge(None if src < 0 else src,
                       None if dst == n_vertices else dst,
                       weight, None if label < 0 else label)
                  for src, dst, weight, label in keys)
    return MonodromyGraph(graph.g, graph.mu, graph.nu, graph.vertices, edges,
                          graph.labeled)


def classical_automorphism_order(graph: MonodromyGraph) -> int:
    "Edges with equal endpoints, weight and label can be permuted"
    n_vertices = len(graph.vertices)
    identity = {v: v for v in range(n_vertices)}
    classes = Counter(_edge_key(e, identity, n_vertices) for e in graph.edges)
    return math.prod(math.factorial(size) for size in classes.values())


def classical_weight(graph: MonodromyGraph) -> Fraction:
    "prod of internal edge weights / |Aut|, 1/k for the trivial cylinder"
    if not graph.vertices:
        return Fraction(1, graph.edges[0].weight)
    value = Fraction(math.prod(e.weight for e in graph.edges if e.is_internal))  # noqa E501
    return value / classical_automorphism_order(graph)


def forget_two_valent(graph_quotient: QuotientGraph, g: int = 0) -> MonodromyGraph:  # noqa E501
    "Merge the two edges at every 2-valent vertex of a quotient graph"
    edges = list(graph_quotient.edges)
    alive = [True] * len(edges)
    for v in graph_quotient.two_valent_vertices:
        k_in = next(k for k, e in enumerate(edges) if alive[k] and e.dst == v)  # noqa E501
        k_out = next(k for k, e in enumerate(edges) if alive[k] and e.src == v)  # noqa E501
        e_in, e_out = edges[k_in], edges[k_out]
        label = e_in.label if e_in.is_in_end else e_out.label
        edges[k_in] = Edge(e_in.src, e_out.dst, e_in.weight, label)
        alive[k_out] = False
    kept = [v for v in range(len(graph_quotient.vertices))
            if v not in graph_quotient.two_valent_vertices]
    renumber = {v: i for i, v in enumerate(kept)}
    vertices = tuple(Vertex(i, 3) for i in range(len(kept)))
    new_edges = tuple(Edge(None if e.src is None else renumber[e.src],
                           None if e.dst is None else renumber[e.dst],
                           e.weight, e.label)
                      for k, e in enumerate(edges) if alive[k])
    return classical_canonicalize(MonodromyGraph(
        g, graph_quotient.mu, graph_quotient.nu, vertices, new_edges,
        graph_quotient.labeled))
