"""Export monodromy graphs to JSON and to graphviz' dot.

The dot files group the vertices of a branch point with rank = same, so
after writing cover.gv the picture is obtained with

    dot -Tpng -O cover.gv
"""
from pathlib import Path
from typing import Dict, List, Optional

from ..helpers import format_rational, mkdirs
from .covers import MonodromyGraph, TwistedCover


def _end_name(value, end: str):
    return end if value is None else value


def _edges_json(edges) -> List[Dict]:
    result = []
    for edge in edges:
        item = {"src": _end_name(edge.src, "IN"),
                "dst": _end_name(edge.dst, "OUT"),
                "weight": edge.weight}
        if edge.label is not None:
            item["label"] = edge.label + 1
        result.append(item)
    return result


def cover_to_json(cover: TwistedCover, aut_order: Optional[int] = None,
                  multiplicity=None) -> Dict:
    "JSON description of a twisted cover, end labels 1-based"
    data = {
        "b": cover.b,
        "ends_in": sorted((e.weight for e in cover.edges if e.is_in_end), reverse=True),  # noqa E501
        "ends_out": sorted((e.weight for e in cover.edges if e.is_out_end), reverse=True),  # noqa E501
        "vertices": [{"level": v.level, "valence": v.valence} for v in cover.vertices],  # noqa E501
        "edges": _edges_json(cover.edges),
        "involution_edges": [[k, j] for k, j in enumerate(cover.edge_involution) if k < j],  # noqa E501
        "involution_vertices": [[v, w] for v, w in enumerate(cover.vertex_involution) if v <= w],  # noqa E501
    }
    if aut_order is not None:
        data["aut_order"] = aut_order
    if multiplicity is not None:
        data["multiplicity"] = format_rational(multiplicity)
    return data


def classical_to_json(graph: MonodromyGraph, weight=None) -> Dict:
    "JSON description of a classical monodromy graph"
    data = {
        "r": graph.r,
        "ends_in": sorted((e.weight for e in graph.edges if e.is_in_end), reverse=True),  # noqa E501
        "ends_out": sorted((e.weight for e in graph.edges if e.is_out_end), reverse=True),  # noqa E501
        "vertices": [{"level": v.level, "valence": v.valence} for v in graph.vertices],  # noqa E501
        "edges": _edges_json(graph.edges),
    }
    if weight is not None:
        data["weight"] = format_rational(weight)
    return data


def _dot_lines(vertices, edges, title: str, four_valent=()) -> List[str]:
    lines = [f'digraph "{title}" {{', "\trankdir = LR;",
             "\tnode [shape = circle, label = \"\"];"]
    levels = {}
    for i, vertex in enumerate(vertices):
        levels.setdefault(vertex.level, []).append(i)
    for level in sorted(levels):
        names = " ".join(f'"v{i}";' for i in levels[level])
        lines.append(f"\t{{ rank = same; {names} }}")
    for i in four_valent:
        lines.append(f'\t"v{i}" [shape = doublecircle, style = filled, fillcolor = grey];')  # noqa E501
    for k, edge in enumerate(edges):
        src, dst = f'"v{edge.src}"', f'"v{edge.dst}"'
        if edge.is_in_end:
            src = f'"in{k}"'
            lines.append(f"\t{src} [shape = point];")
        if edge.is_out_end:
            dst = f'"out{k}"'
            lines.append(f"\t{dst} [shape = point];")
        label = str(edge.weight)
        if edge.label is not None:
            label += f" ({edge.label + 1})"
        lines.append(f'\t{src} -> {dst} [label = "{label}"];')
    return lines


def cover_to_dot(cover: TwistedCover, title: str = "cover") -> str:
    "Dot source of a twisted cover, 4-valent vertices filled"
    lines = _dot_lines(cover.vertices, cover.edges, title,
                       cover.four_valent_vertices)
    # Involution on the 3-valent vertices
    for v, w in enumerate(cover.vertex_involution):
        if v < w:
            lines.append(f'\t"v{v}" -> "v{w}" [style = dotted, dir = none, constraint = false];')  # noqa E501
    lines.append("}")
    return "\n".join(lines) + "\n"


def classical_to_dot(graph: MonodromyGraph, title: str = "graph") -> str:
    "Dot source of a classical monodromy graph"
    return "\n".join(_dot_lines(graph.vertices, graph.edges, title) + ["}"]) + "\n"  # noqa E501


def export_dot_files(sources: List[str], folder) -> List[Path]:
    "Write one .gv file per dot source in a folder"
    folder = Path(folder).expanduser()
    mkdirs(folder)
    paths = []
    for k, source in enumerate(sources):
        path = folder.joinpath(f"graph_{k + 1:03d}.gv")
        with path.open("w") as f:
            f.write(source)
        paths.append(path)
    return paths
