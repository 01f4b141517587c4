"""Minor morphisms between graphs.

A minor morphism ``G -> G'`` is a total map on ``V ⊔ A ⊔ {*}``.  Edges whose
arrows go to ``*`` are deleted, edges whose arrows go to a vertex are
contracted, and the remaining edges map bijectively onto ``E(G')``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import ContractLoop, Mismatch, TooLarge, WouldDisconnect
from .graphs import Arrow, Graph, _connected, _is_forest, make_graph

ENUMERATION_EDGE_LIMIT = 12


class _Star:
    __slots__ = ()

    def __repr__(self) -> str:
        return "*"

    def __reduce__(self):
        return (_star, ())


def _star():
    return STAR


STAR = _Star()

AXIOMS = {
    1: "star maps to star",
    2: "vertices map to vertices",
    3: "each target arrow has exactly one preimage arrow",
    4: "kept arrows commute with head and tail",
    5: "contracted arrows have both endpoints at the image vertex",
    6: "each vertex fiber is a tree",
    7: "S2-equivariance",
}


@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: object

    def __str__(self) -> str:
        return f"axiom {self.axiom} ({AXIOMS[self.axiom]}) fails at {self.witness!r}"


class MinorMorphism:
    """A candidate minor morphism; call :func:`validate` to check the axioms."""

    __slots__ = ("source", "target", "mapping", "_key")

    def __init__(self, source: Graph, target: Graph, mapping: Mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self._key = None

    def __call__(self, x):
        return self.mapping[x]

    def key(self) -> frozenset:
        if self._key is None:
            self._key = frozenset(self.mapping.items())
        return self._key

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MinorMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        kept = sum(1 for e in self.source.edges if isinstance(self.mapping.get(Arrow(e, 1)), Arrow))
        return f"MinorMorphism({self.source!r} -> {self.target!r}, kept={kept})"

    # -- edge-level view ---------------------------------------------------
    def edge_fate(self, edge: str):
        """``('kept', Arrow)``, ``('contracted', vertex)`` or ``('deleted', None)``."""
        image = self.mapping[Arrow(edge, 1)]
        if image is STAR:
            return ("deleted", None)
        if isinstance(image, Arrow):
            return ("kept", image)
        return ("contracted", image)

    def deleted_edges(self) -> list[str]:
        return [e for e in self.source.edges if self.edge_fate(e)[0] == "deleted"]

    def contracted_edges(self) -> list[str]:
        return [e for e in self.source.edges if self.edge_fate(e)[0] == "contracted"]

    def to_json(self) -> dict:
        edge_map = {}
        for e in self.source.edges:
            fate, image = self.edge_fate(e)
            if fate == "deleted":
                edge_map[e] = "*"
            elif fate == "contracted":
                edge_map[e] = {"vertex": image}
            else:
                edge_map[e] = {"edge": image.edge, "orientation": image.sign}
        return {
            "vertex_map": {v: self.mapping[v] for v in self.source.vertices},
            "edge_map": edge_map,
        }


def from_edge_map(source: Graph, target: Graph, vertex_map: Mapping, edge_map: Mapping) -> MinorMorphism:
    """Build the arrow-level map from per-edge fates.

    ``edge_map[e]`` is ``"*"``, ``{"vertex": v}``, ``{"edge": f, "orientation": s}``
    or the tuple forms ``("vertex", v)`` / ``(f, s)``.  Orientation ``s`` is the
    sign of the target arrow receiving ``Arrow(e, +1)``.
    """
    mapping: dict = {STAR: STAR}
    for v in source.vertices:
        mapping[v] = vertex_map[v]
    for e in source.edges:
        fate = edge_map[e]
        if fate == "*" or fate is STAR:
            mapping[Arrow(e, 1)] = mapping[Arrow(e, -1)] = STAR
        elif isinstance(fate, dict) and "vertex" in fate:
            mapping[Arrow(e, 1)] = mapping[Arrow(e, -1)] = fate["vertex"]
        elif isinstance(fate, dict):
            s = int(fate.get("orientation", 1))
            mapping[Arrow(e, 1)] = Arrow(fate["edge"], s)
            mapping[Arrow(e, -1)] = Arrow(fate["edge"], -s)
        elif fate[0] == "vertex":
            mapping[Arrow(e, 1)] = mapping[Arrow(e, -1)] = fate[1]
        else:
            f, s = fate
            mapping[Arrow(e, 1)] = Arrow(f, s)
            mapping[Arrow(e, -1)] = Arrow(f, -s)
    return MinorMorphism(source, target, mapping)


def morphism_from_json(source: Graph, target: Graph, data: dict) -> MinorMorphism:
    return from_edge_map(source, target, data["vertex_map"], data["edge_map"])


def validate(phi: MinorMorphism) -> list[Violation]:
    """Return the list of axiom violations; an empty list means ``phi`` is a minor morphism."""
    g, h, m = phi.source, phi.target, phi.mapping
    out: list[Violation] = []
    tv, ta = set(h.vertices), set(h.arrows)

    if m.get(STAR, None) is not STAR:
        out.append(Violation(1, STAR))
    for v in g.vertices:
        if m.get(v) not in tv or isinstance(m.get(v), Arrow):
            out.append(Violation(2, v))
    images = {}
    for a in g.arrows:
        x = m.get(a, None)
        if isinstance(x, Arrow):
            if x not in ta:
                out.append(Violation(3, a))
                continue
            images.setdefault(x, []).append(a)
        elif x is not STAR and x not in tv:
            out.append(Violation(2, a))
    for b in h.arrows:
        pre = images.get(b, [])
        if len(pre) != 1:
            out.append(Violation(3, b))
    for a in g.arrows:
        x = m.get(a)
        if isinstance(x, Arrow) and x in ta:
            # Reading the commuting square as phi(h(a)) = h'(phi(a)).
            if m.get(g.head(a)) != h.head(x) or m.get(g.tail(a)) != h.tail(x):
                out.append(Violation(4, a))
        elif x in tv and not isinstance(x, Arrow):
            if m.get(g.head(a)) != x or m.get(g.tail(a)) != x:
                out.append(Violation(5, a))
        y = m.get(g.involution(a))
        expected = h.involution(x) if isinstance(x, Arrow) else x
        if y != expected:
            out.append(Violation(7, a))
    for w in h.vertices:
        fiber_vertices = [v for v in g.vertices if m.get(v) == w]
        fiber_edges = [e for e in g.edges if m.get(Arrow(e, 1)) == w and not isinstance(m.get(Arrow(e, 1)), Arrow)]
        if not _is_tree(g, fiber_vertices, fiber_edges):
            out.append(Violation(6, w))
    return out


def _is_tree(g: Graph, vertices: list[str], edges: list[str]) -> bool:
    if not vertices:
        return False
    vs = set(vertices)
    if any(not set(g.ends(e)) <= vs for e in edges):
        return False
    if len(edges) != len(vertices) - 1:
        return False
    return _connected(sorted(vs), (g.ends(e) for e in edges))


def is_valid(phi: MinorMorphism) -> bool:
    return not validate(phi)


def identity(g: Graph) -> MinorMorphism:
    mapping: dict = {STAR: STAR}
    mapping.update({v: v for v in g.vertices})
    mapping.update({a: a for a in g.arrows})
    return MinorMorphism(g, g, mapping)


def delete_edge(g: Graph, e: str) -> tuple[Graph, MinorMorphism]:
    rest = [x for x in g.edges if x != e]
    if not _connected(g.vertices, (g.ends(x) for x in rest)):
        raise WouldDisconnect(f"deleting {e} disconnects the graph")
    h = make_graph(g.vertices, [(x, *g.ends(x)) for x in rest])
    mapping: dict = {STAR: STAR}
    mapping.update({v: v for v in g.vertices})
    for a in g.arrows:
        mapping[a] = STAR if a.edge == e else a
    return h, MinorMorphism(g, h, mapping)


def contract_edge(g: Graph, e: str) -> tuple[Graph, MinorMorphism]:
    """Contract a non-loop edge; the merged vertex keeps the smaller endpoint id."""
    u, v = g.ends(e)
    if u == v:
        raise ContractLoop(f"{e} is a loop")
    keep, gone = min(u, v), max(u, v)
    ren = {x: (keep if x == gone else x) for x in g.vertices}
    rest = [x for x in g.edges if x != e]
    h = make_graph([x for x in g.vertices if x != gone], [(x, ren[g.ends(x)[0]], ren[g.ends(x)[1]]) for x in rest])
    mapping: dict = {STAR: STAR}
    mapping.update(ren)
    for a in g.arrows:
        mapping[a] = keep if a.edge == e else a
    return h, MinorMorphism(g, h, mapping)


def compose(phi: MinorMorphism, psi: MinorMorphism) -> MinorMorphism:
    """The composite ``psi ∘ phi`` of ``phi: G -> G'`` followed by ``psi: G' -> G''``."""
    if phi.target != psi.source:
        raise Mismatch("target of the first morphism differs from source of the second")
    mapping = {x: (STAR if y is STAR else psi.mapping[y]) for x, y in phi.mapping.items()}
    return MinorMorphism(phi.source, psi.target, mapping)


def edge_injection(phi: MinorMorphism) -> dict[str, str]:
    """The injection ``phi^*: E(G') -> E(G)`` sending a target edge to its unique preimage."""
    out = {}
    for e in phi.source.edges:
        image = phi.mapping[Arrow(e, 1)]
        if isinstance(image, Arrow):
            out[image.edge] = e
    return {f: out[f] for f in sorted(out)}


def _components(g: Graph, forest) -> list[list[str]]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in forest:
        a, b = (find(x) for x in g.ends(e))
        parent[a] = b
    groups: dict[str, list[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def iter_minor_morphisms(g: Graph, h: Graph) -> Iterator[MinorMorphism]:
    """Generate ``Hom(g, h)`` without duplicates in a deterministic order.

    Contracted edges form a forest whose components biject with ``V(h)``; the
    kept edges then realize ``h`` on the quotient and the rest are deleted.
    """
    k = g.num_vertices() - h.num_vertices()
    if k < 0 or g.num_edges() < h.num_edges() + k:
        return
    nonloops = [e for e in g.edges if not g.is_loop(e)]
    target_edges = list(h.edges)
    seen = set()
    for forest in itertools.combinations(nonloops, k):
        if not _is_forest(g, forest):
            continue
        comps = _components(g, forest)
        fset = set(forest)
        rest = [e for e in g.edges if e not in fset]
        for perm in itertools.permutations(h.vertices):
            vmap = {v: perm[i] for i, comp in enumerate(comps) for v in comp}
            for assignment in _assign(g, h, vmap, rest, target_edges):
                mapping: dict = {STAR: STAR}
                mapping.update(vmap)
                for e in forest:
                    mapping[Arrow(e, 1)] = mapping[Arrow(e, -1)] = vmap[g.ends(e)[0]]
                for e in rest:
                    mapping[Arrow(e, 1)] = mapping[Arrow(e, -1)] = STAR
                for e, (f, s) in assignment.items():
                    mapping[Arrow(e, 1)] = Arrow(f, s)
                    mapping[Arrow(e, -1)] = Arrow(f, -s)
                phi = MinorMorphism(g, h, mapping)
                if phi.key() not in seen:
                    seen.add(phi.key())
                    yield phi


def _assign(g, h, vmap, rest, target_edges, i=0, used=None):
    if used is None:
        used = {}
    if i == len(target_edges):
        yield dict(used)
        return
    f = target_edges[i]
    x, y = h.ends(f)
    for e in rest:
        if e in used:
            continue
        a, b = (vmap[z] for z in g.ends(e))
        if x == y:
            signs = (1, -1) if a == b == x else ()
        elif (a, b) == (x, y):
            signs = (1,)
        elif (a, b) == (y, x):
            signs = (-1,)
        else:
            signs = ()
        for s in signs:
            used[e] = (f, s)
            yield from _assign(g, h, vmap, rest, target_edges, i + 1, used)
            del used[e]


def enumerate_minor_morphisms(g: Graph, h: Graph, limit: int = ENUMERATION_EDGE_LIMIT) -> list[MinorMorphism]:
    if g.num_edges() > limit:
        raise TooLarge(f"{g.num_edges()} edges exceeds enumeration limit {limit}")
    return list(iter_minor_morphisms(g, h))


def count_minor_morphisms(g: Graph, h: Graph, limit: int = ENUMERATION_EDGE_LIMIT) -> int:
    if g.num_edges() > limit:
        raise TooLarge(f"{g.num_edges()} edges exceeds enumeration limit {limit}")
    return sum(1 for _ in iter_minor_morphisms(g, h))
