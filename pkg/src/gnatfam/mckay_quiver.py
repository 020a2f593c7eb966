"""McKay quivers of abelian groups: arrows, components, DOT export.

For abelian G every irreducible is a character, so the quiver has the
characters as vertices and n arrows out of each vertex: the arrow
(chi, x_k) goes from chi to chi * rho(x_k)^{-1} and acts on families by
multiplication with the coordinate x_k.  Arrows are identified by
(tail, coordinate) because distinct coordinates may share a weight and
heads therefore collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .group_characters import Character, GroupData, character_group, rho


@dataclass(frozen=True)
class Arrow:
    tail: Character
    coord: int  # 1-based coordinate index k; the arrow multiplies by x_k

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(self.tail))
        object.__setattr__(self, "coord", int(self.coord))


@dataclass(frozen=True)
class McKayQuiver:
    group: GroupData
    vertices: tuple
    arrows: tuple

    def head(self, arrow: Arrow) -> Character:
        g = self.group
        unit = tuple(1 if j == arrow.coord - 1 else 0 for j in range(g.n))
        return g.char_mul(arrow.tail, g.char_inv(rho(g, unit)))

    def arrow_label(self, arrow: Arrow) -> str:
        return f"({self.group.character_label(arrow.tail)}, x{arrow.coord})"


def build_quiver(g: GroupData) -> McKayQuiver:
    """|G| vertices, n|G| arrows, n arrows out of (and into) each vertex."""
    vertices = tuple(character_group(g))
    arrows = tuple(Arrow(chi, k) for chi in vertices for k in range(1, g.n + 1))
    return McKayQuiver(g, vertices, arrows)


def components(q: McKayQuiver, kept: Callable[[Arrow], bool]) -> list:
    """Connected components of the undirected graph on the vertices whose
    edges are the arrows accepted by `kept`.

    Connectivity is undirected on purpose: the orthogonality criterion
    asks for path-connectedness with no direction claim.  Components are
    returned sorted by their smallest vertex, each one itself sorted.
    """
    parent = {v: v for v in q.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in q.arrows:
        if kept(a):
            ra, rb = find(a.tail), find(q.head(a))
            if ra != rb:
                parent[ra] = rb

    groups: dict = {}
    for v in q.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(sorted(vs)) for vs in groups.values()), key=lambda c: c[0])


_PALETTE = ("red", "blue", "forestgreen", "darkorange", "purple", "brown")


def export_dot(q: McKayQuiver, marks: Mapping[Arrow, str] | None = None) -> str:
    """DOT text for the quiver; marked arrows are dashed and coloured.

    `marks` sends arrows to short tags (for instance which of two fibers
    an arrow vanishes in); distinct tags get distinct colours from a
    fixed palette in sorted-tag order, so output is byte-deterministic.
    """
    marks = dict(marks or {})
    tags = sorted(set(marks.values()))
    colour = {t: _PALETTE[i % len(_PALETTE)] for i, t in enumerate(tags)}

    lines = ["digraph mckay {"]
    for v in q.vertices:
        lines.append(f"    {q.group.character_label(v)};")
    for a in sorted(q.arrows, key=lambda a: (a.tail, a.coord)):
        tail = q.group.character_label(a.tail)
        head = q.group.character_label(q.head(a))
        attrs = [f'label="x{a.coord}"']
        if a in marks:
            tag = marks[a]
            attrs.append("style=dashed")
            attrs.append(f"color={colour[tag]}")
            attrs.append(f'comment="{tag}"')
        lines.append(f"    {tail} -> {head} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
