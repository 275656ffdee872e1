"""Satake diagrams of the classical real forms and their deletions.

Vertices are numbered from 1 in Bourbaki order.  A double bond is stored as
``(long, short, 2)``.  Deletions keep the original vertex labels, so a
deleted diagram still says which simple roots survived.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .errors import MalformedDiagram, NotWhite, RankZero
from .roots import RealFormDescriptor

WHITE, BLACK = "white", "black"


@dataclass(frozen=True)
class SatakeDiagram:
    vertices: tuple  # ((index, color), ...)
    edges: tuple = ()  # ((i, j, bond), ...), bond-2 edges point long -> short
    arrows: tuple = ()  # ((i, j), ...) with i < j

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(
            (i, j, b) if b == 2 else (min(i, j), max(i, j), b) for i, j, b in self.edges)))
        object.__setattr__(self, "arrows", tuple(sorted(
            (min(i, j), max(i, j)) for i, j in self.arrows)))
        self.validate()

    def validate(self):
        colors = self.colors
        if len(colors) != len(self.vertices):
            raise MalformedDiagram("duplicate vertex index")
        if any(c not in (WHITE, BLACK) for c in colors.values()):
            raise MalformedDiagram("vertex colors must be white or black")
        for i, j, b in self.edges:
            if i not in colors or j not in colors or i == j:
                raise MalformedDiagram(f"edge ({i}, {j}) does not join two vertices")
            if b not in (1, 2, 3):
                raise MalformedDiagram(f"bond order {b} is not 1, 2 or 3")
        seen = set()
        for i, j in self.arrows:
            if i == j or colors.get(i) != WHITE or colors.get(j) != WHITE:
                raise MalformedDiagram(f"arrow ({i}, {j}) must join two distinct white vertices")
            if i in seen or j in seen:
                raise MalformedDiagram("a white vertex lies on two arrows")
            seen.update((i, j))
        if self._has_cycle():
            raise MalformedDiagram("underlying graph is not a Dynkin diagram")

    def _has_cycle(self):
        g = nx.Graph()
        g.add_nodes_from(self.colors)
        g.add_edges_from((i, j) for i, j, _ in self.edges)
        return len(g.edges) != len(g.nodes) - nx.number_connected_components(g)

    @property
    def colors(self) -> dict:
        return dict(self.vertices)

    @property
    def white(self) -> list:
        return [v for v, c in self.vertices if c == WHITE]

    @property
    def black(self) -> list:
        return [v for v, c in self.vertices if c == BLACK]

    def partner(self, v):
        for i, j in self.arrows:
            if v == i:
                return j
            if v == j:
                return i
        return None

    def to_dict(self) -> dict:
        return {"vertices": [[v, c] for v, c in self.vertices],
                "edges": [list(e) for e in self.edges],
                "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_dict(cls, data) -> "SatakeDiagram":
        try:
            return cls(tuple((int(v), str(c)) for v, c in data["vertices"]),
                       tuple((int(i), int(j), int(b)) for i, j, b in data.get("edges", [])),
                       tuple((int(i), int(j)) for i, j in data.get("arrows", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDiagram(f"cannot read diagram: {exc}") from exc


# ---------------------------------------------------------------------------
# Dynkin skeletons


def _chain(r, start=1):
    return [(start + i, start + i + 1, 1) for i in range(r - 1)]


def _dynkin_edges(kind: str, r: int, start: int = 1):
    if r <= 0:
        return []
    if kind == "A":
        return _chain(r, start)
    if kind == "B":
        return _chain(r - 1, start) + ([(start + r - 2, start + r - 1, 2)] if r >= 2 else [])
    if kind == "C":
        return _chain(r - 1, start) + ([(start + r - 1, start + r - 2, 2)] if r >= 2 else [])
    if kind == "D":
        if r == 1:
            return []
        if r == 2:
            return []
        return _chain(r - 1, start) + [(start + r - 3, start + r - 1, 1)]
    raise ValueError(kind)


def _plain(kind, r, black=()):
    verts = tuple((v, BLACK if v in black else WHITE) for v in range(1, r + 1))
    return verts, _dynkin_edges(kind, r)


def _doubled(kind, r):
    verts = tuple((v, WHITE) for v in range(1, 2 * r + 1))
    edges = _dynkin_edges(kind, r, 1) + _dynkin_edges(kind, r, r + 1)
    return SatakeDiagram(verts, tuple(edges), tuple((i, r + i) for i in range(1, r + 1)))


def _orthogonal_kind(n):
    return ("B", n // 2) if n % 2 else ("D", n // 2)


def satake_of(desc: RealFormDescriptor) -> SatakeDiagram:
    kind, fld = desc.kind, desc.field
    if kind == "linear":
        n = desc.params[0]
        if n < 2:
            raise RankZero(f"{desc.label()} has no split part")
        if fld == "R":
            return SatakeDiagram(*_plain("A", n - 1))
        if fld == "C":
            return _doubled("A", n - 1)
        r = 2 * n - 1
        return SatakeDiagram(*_plain("A", r, black=range(1, r + 1, 2)))
    if kind == "unitary":
        p, q = desc.params
        small = min(p, q)
        total = p + q
        if small == 0:
            raise RankZero(f"{desc.label()} is compact")
        if fld == "C":
            r = total - 1
            white = set(range(1, small + 1)) | set(range(total - small, total))
            verts, edges = _plain("A", r, black=set(range(1, r + 1)) - white)
            arrows = tuple((j, total - j) for j in range(1, small + 1) if j != total - j)
            return SatakeDiagram(verts, tuple(edges), arrows)
        if fld == "R":
            t, l = _orthogonal_kind(total)
            if (t, l) == ("D", 1):
                return SatakeDiagram(())  # so(1,1) is abelian
            if t == "B" or small <= l - 2:
                return SatakeDiagram(*_plain(t, l, black=range(small + 1, l + 1)))
            arrows = ((l - 1, l),) if small == l - 1 else ()
            verts, edges = _plain(t, l)
            return SatakeDiagram(verts, tuple(edges), arrows)
        r = total
        white = set(range(2, 2 * small + 1, 2))
        return SatakeDiagram(*_plain("C", r, black=set(range(1, r + 1)) - white))
    if kind == "symplectic":
        n = desc.params[0]
        if n < 1:
            raise RankZero("Sp(0) is trivial")
        return SatakeDiagram(*_plain("C", n)) if fld == "R" else _doubled("C", n)
    if kind == "complex_orthogonal":
        t, l = _orthogonal_kind(desc.params[0])
        if l == 0:
            raise RankZero(f"{desc.label()} has no split part")
        if (t, l) == ("D", 1):
            return SatakeDiagram(())
        return _doubled(t, l)
    n = desc.params[0]
    if n < 2:
        raise RankZero(f"{desc.label()} is compact")
    if n == 2:
        # D2 = A1 + A1; only one factor is noncompact
        return SatakeDiagram(((1, BLACK), (2, WHITE)))
    verts, edges = _plain("D", n)
    colors = dict(verts)
    for v in range(1, n - 1):
        colors[v] = WHITE if v % 2 == 0 else BLACK
    arrows = ()
    if n % 2 == 0:
        colors[n - 1], colors[n] = BLACK, WHITE
    else:
        colors[n - 1] = colors[n] = WHITE
        arrows = ((n - 1, n),)
    return SatakeDiagram(tuple(colors.items()), tuple(edges), arrows)


# ---------------------------------------------------------------------------
# Restriction classes and deletion


def restriction_classes(diag: SatakeDiagram) -> list:
    """White vertices grouped by arrows, ordered by smallest member."""
    classes, seen = [], set()
    for v in diag.white:
        if v in seen:
            continue
        p = diag.partner(v)
        cls = (v,) if p is None else tuple(sorted((v, p)))
        seen.update(cls)
        classes.append(cls)
    return sorted(classes)


def restrict_simple(diag: SatakeDiagram) -> dict:
    """Map each white vertex to the 1-based index of its simple restricted root."""
    out = {}
    for idx, cls in enumerate(restriction_classes(diag), start=1):
        for v in cls:
            out[v] = idx
    return out


def delete(diag: SatakeDiagram, S) -> SatakeDiagram:
    S = set(S)
    colors = diag.colors
    for v in S:
        if v not in colors:
            raise MalformedDiagram(f"vertex {v} is not in the diagram")
        if colors[v] != WHITE:
            raise NotWhite(f"vertex {v} is black; only white vertices can be deleted")
    gone = set(S)
    for v in S:
        p = diag.partner(v)
        if p is not None:
            gone.add(p)
    return SatakeDiagram(
        tuple((v, c) for v, c in diag.vertices if v not in gone),
        tuple(e for e in diag.edges if e[0] not in gone and e[1] not in gone),
        tuple(a for a in diag.arrows if a[0] not in gone and a[1] not in gone))


def delete_classes(diag: SatakeDiagram, class_indices) -> SatakeDiagram:
    classes = restriction_classes(diag)
    S = set()
    for i in class_indices:
        S.update(classes[i - 1])
    return delete(diag, S)


def drop_black_components(diag: SatakeDiagram) -> SatakeDiagram:
    """Discard connected components made only of black vertices."""
    g = _undirected(diag)
    colors = diag.colors
    keep = set()
    for comp in nx.connected_components(g):
        if any(colors[v] == WHITE for v in comp):
            keep |= comp
    return SatakeDiagram(
        tuple((v, c) for v, c in diag.vertices if v in keep),
        tuple(e for e in diag.edges if e[0] in keep),
        tuple(a for a in diag.arrows if a[0] in keep))


def _undirected(diag):
    g = nx.Graph()
    g.add_nodes_from(diag.colors)
    g.add_edges_from((i, j) for i, j, _ in diag.edges)
    g.add_edges_from(diag.arrows)
    return g


def black_positive_root_count(diag: SatakeDiagram) -> int:
    """Number of positive roots of the black subdiagram."""
    black = set(diag.black)
    g = nx.Graph()
    g.add_nodes_from(black)
    bonds = {}
    for i, j, b in diag.edges:
        if i in black and j in black:
            g.add_edge(i, j)
            bonds[frozenset((i, j))] = b
    total = 0
    for comp in nx.connected_components(g):
        k = len(comp)
        sub = g.subgraph(comp)
        if any(bonds[frozenset(e)] == 2 for e in sub.edges):
            total += k * k
        elif any(d == 3 for _, d in sub.degree):
            total += k * (k - 1)
        else:
            total += k * (k + 1) // 2
    return total


# ---------------------------------------------------------------------------
# Isomorphism


def _digraph(diag: SatakeDiagram) -> nx.DiGraph:
    g = nx.DiGraph()
    for v, c in diag.vertices:
        g.add_node(v, color=c)
    for i, j, b in diag.edges:
        if b == 1:
            g.add_edge(i, j, kind="b1")
            g.add_edge(j, i, kind="b1")
        else:
            g.add_edge(i, j, kind=f"b{b}")
    for i, j in diag.arrows:
        g.add_edge(i, j, kind="arrow")
        g.add_edge(j, i, kind="arrow")
    return g


def _invariant(g):
    return nx.weisfeiler_lehman_graph_hash(g, node_attr="color", edge_attr="kind")


def isomorphic(d1: SatakeDiagram, d2: SatakeDiagram) -> bool:
    """Isomorphism preserving colors, bond orders, bond directions and arrows."""
    g1, g2 = _digraph(d1), _digraph(d2)
    if len(g1) != len(g2) or _invariant(g1) != _invariant(g2):
        return False
    return nx.is_isomorphic(g1, g2,
                            node_match=lambda a, b: a["color"] == b["color"],
                            edge_match=lambda a, b: a["kind"] == b["kind"])


def parabolic_components(diag: SatakeDiagram) -> list:
    """Deletions over all subsets of restriction classes, up to isomorphism."""
    k = len(restriction_classes(diag))
    found = []
    for size in range(k + 1):
        for subset in itertools.combinations(range(1, k + 1), size):
            d = delete_classes(diag, subset)
            if not any(isomorphic(d, e) for e in found):
                found.append(d)
    return found


def is_component_of(small: SatakeDiagram, big: SatakeDiagram, modulo_black: bool = True) -> bool:
    if modulo_black:
        small = drop_black_components(small)
    for d in parabolic_components(big):
        if modulo_black:
            d = drop_black_components(d)
        if isomorphic(small, d):
            return True
    return False


# ---------------------------------------------------------------------------


def to_dot(diag: SatakeDiagram, name: str = "satake") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle, label=\"\"];"]
    for v, c in diag.vertices:
        style = "filled, fillcolor=black" if c == BLACK else "solid"
        lines.append(f"  v{v} [xlabel=\"{v}\", style=\"{style}\"];")
    for i, j, b in diag.edges:
        attrs = "" if b == 1 else f" [penwidth={b}, label=\"{'>' * (b - 1)}\"]"
        lines.append(f"  v{i} -- v{j}{attrs};")
    for i, j in diag.arrows:
        lines.append(f"  v{i} -- v{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_text(diag: SatakeDiagram) -> str:
    verts = " ".join(f"{v}{'o' if c == WHITE else '*'}" for v, c in diag.vertices)
    edges = " ".join(f"{i}{'-=' [b - 1] if b < 3 else '≡'}{j}" for i, j, b in diag.edges)
    arrows = " ".join(f"{i}<->{j}" for i, j in diag.arrows)
    return f"vertices: {verts or '(none)'}\nbonds: {edges or '(none)'}\narrows: {arrows or '(none)'}"
