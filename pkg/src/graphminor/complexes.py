"""Simplicial complexes on the edge set of a graph.

Faces are frozensets of ground labels.  A simplex is oriented by increasing
position in ``ground``.  The void complex (no faces at all) and the complex
``{∅}`` are different values: ``SimplicialComplex(ground, [])`` versus
``SimplicialComplex(ground, [()])``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from .errors import NotFunctorial, NotMonotone, NotSubset
from .graphs import Graph
from .minors import MinorMorphism, edge_injection

VOID_DIMENSION = float("-inf")


def _maximal(sets: Iterable[frozenset]) -> frozenset:
    ordered = sorted(set(sets), key=len, reverse=True)
    keep: list[frozenset] = []
    for s in ordered:
        if not any(s <= t for t in keep):
            keep.append(s)
    return frozenset(keep)


@dataclass(frozen=True)
class SimplicialComplex:
    ground: tuple
    facets: frozenset = field(default_factory=frozenset)

    def __init__(self, ground: Sequence, facets: Iterable[Iterable] = ()):
        object.__setattr__(self, "ground", tuple(ground))
        fs = [frozenset(f) for f in facets]
        gs = set(self.ground)
        for f in fs:
            if not f <= gs:
                raise NotSubset(f"facet {sorted(f)} not contained in ground set")
        object.__setattr__(self, "facets", _maximal(fs))

    @cached_property
    def _position(self) -> dict:
        return {x: i for i, x in enumerate(self.ground)}

    def sort_face(self, face: Iterable) -> tuple:
        return tuple(sorted(face, key=self._position.__getitem__))

    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self):
        if not self.facets:
            return VOID_DIMENSION
        return max(len(f) for f in self.facets) - 1

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self, k: int) -> list[tuple]:
        """Sorted list of k-dimensional faces, each a tuple in ground order."""
        return self._faces_by_dim.get(k, [])

    @cached_property
    def _faces_by_dim(self) -> dict[int, list[tuple]]:
        by_dim: dict[int, set[tuple]] = {}
        for f in self.facets:
            t = self.sort_face(f)
            for r in range(len(t) + 1):
                by_dim.setdefault(r - 1, set()).update(itertools.combinations(t, r))
        key = lambda face: tuple(self._position[x] for x in face)  # noqa: E731
        return {k: sorted(v, key=key) for k, v in by_dim.items()}

    def face_index(self, k: int) -> dict[tuple, int]:
        return {f: i for i, f in enumerate(self.faces(k))}

    def all_faces(self) -> list[tuple]:
        return [f for k in sorted(self._faces_by_dim) for f in self._faces_by_dim[k]]

    def f_vector(self) -> list[int]:
        """Face counts ``f_{-1}, f_0, ..., f_dim``."""
        if self.is_void():
            return []
        return [len(self.faces(k)) for k in range(-1, self.dimension + 1)]

    def euler_characteristic(self, reduced: bool = True) -> int:
        start = -1 if reduced else 0
        if self.is_void():
            return 0
        return sum((-1) ** k * len(self.faces(k)) for k in range(start, self.dimension + 1))

    def vertices_used(self) -> list:
        return [x for x in self.ground if any(x in f for f in self.facets)]

    def sorted_facets(self) -> list[tuple]:
        return sorted((self.sort_face(f) for f in self.facets), key=lambda t: (len(t), [self._position[x] for x in t]))

    def to_json(self) -> dict:
        return {"ground": list(self.ground), "facets": [list(f) for f in self.sorted_facets()]}

    def __repr__(self) -> str:
        return f"SimplicialComplex(|ground|={len(self.ground)}, facets={len(self.facets)}, dim={self.dimension})"


def complex_from_json(data: dict | str) -> SimplicialComplex:
    if isinstance(data, str):
        data = json.loads(data)
    return SimplicialComplex(data["ground"], data["facets"])


def full_simplex(ground: Sequence) -> SimplicialComplex:
    return SimplicialComplex(ground, [ground])


def _complex_from_predicate(ground: Sequence, ok: Callable[[frozenset], bool], check: bool) -> SimplicialComplex:
    """Collect every subset satisfying ``ok`` by growing faces in ground order.

    With ``check`` each rejected extension is verified against all supersets so
    that a non-monotone predicate is reported instead of silently truncated.
    """
    ground = tuple(ground)
    faces = []

    def grow(face: frozenset, start: int):
        faces.append(face)
        for j in range(start, len(ground)):
            bigger = face | {ground[j]}
            if ok(bigger):
                grow(bigger, j + 1)

    if not ok(frozenset()):
        raise NotMonotone(frozenset(), frozenset())
    grow(frozenset(), 0)
    if check:
        found = set(faces)
        for r in range(len(ground) + 1):
            for combo in itertools.combinations(ground, r):
                s = frozenset(combo)
                if s not in found and ok(s):
                    for x in combo:
                        if (s - {x}) not in found:
                            raise NotMonotone(s - {x}, s)
    return SimplicialComplex(ground, faces)


def _incidence(g: Graph, edges: Iterable[str]) -> dict[str, int]:
    """Number of edges incident to each vertex (a loop counts once)."""
    count: dict[str, int] = {}
    for e in edges:
        for v in g.edge_vertices(e):
            count[v] = count.get(v, 0) + 1
    return count


def is_d_matching(g: Graph, edges: Iterable[str], d: int = 1) -> bool:
    return all(c <= d for c in _incidence(g, edges).values())


def matching_complex(g: Graph) -> SimplicialComplex:
    return d_matching_complex(g, 1)


@lru_cache(maxsize=4096)
def d_matching_complex(g: Graph, d: int) -> SimplicialComplex:
    if d < 1:
        raise ValueError("d must be >= 1")
    return _complex_from_predicate(g.edges, lambda s: is_d_matching(g, s, d), check=False)


def monotone_property_complex(g: Graph, prop: Callable[[Graph, frozenset], bool]) -> SimplicialComplex:
    """Complex of edge subsets ``S`` with ``prop(g, S)``; raises NotMonotone on a witness pair."""
    return _complex_from_predicate(g.edges, lambda s: prop(g, s), check=True)


@lru_cache(maxsize=4096)
def flag_complex_of_line_graph(g: Graph) -> SimplicialComplex:
    """Edge subsets whose members pairwise share a vertex (cliques of the line graph)."""
    return _complex_from_predicate(
        g.edges,
        lambda s: all(g.share_vertex(e, f) for e, f in itertools.combinations(s, 2)),
        check=False,
    )


def restrict(delta: SimplicialComplex, sigma: Iterable) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if not sigma <= set(delta.ground):
        raise NotSubset(f"{sorted(sigma - set(delta.ground))} not in ground set")
    ground = [x for x in delta.ground if x in sigma]
    if delta.is_void():
        return SimplicialComplex(ground, [])
    return SimplicialComplex(ground, [f & sigma for f in delta.facets])


# -- builders and induced maps ---------------------------------------------------


@dataclass(frozen=True)
class Builder:
    """A named graph-to-complex construction, e.g. ``Builder.matching()``."""

    name: str
    build: Callable[[Graph], SimplicialComplex]

    def __call__(self, g: Graph) -> SimplicialComplex:
        return self.build(g)

    @classmethod
    def matching(cls) -> "Builder":
        return cls("matching", matching_complex)

    @classmethod
    def d_matching(cls, d: int) -> "Builder":
        return cls(f"dmatching{d}", lambda g: d_matching_complex(g, d))

    @classmethod
    def flag(cls) -> "Builder":
        return cls("flag", flag_complex_of_line_graph)

    @classmethod
    def from_kind(cls, kind: str, d: int = 1) -> "Builder":
        if kind == "matching":
            return cls.matching()
        if kind == "dmatching":
            return cls.d_matching(d)
        if kind == "flag":
            return cls.flag()
        raise ValueError(f"unknown complex kind {kind!r}")


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: dict

    def image(self, face: Iterable) -> tuple:
        return self.target.sort_face(self.vertex_map[x] for x in face)

    def signed_image(self, face: tuple) -> tuple[int, tuple]:
        """Image of an oriented face with the sign of the sorting permutation."""
        pos = self.target._position
        keys = [pos[self.vertex_map[x]] for x in face]
        inversions = sum(1 for i, j in itertools.combinations(range(len(keys)), 2) if keys[i] > keys[j])
        return (-1) ** inversions, self.image(face)


def induced_simplicial_map(phi: MinorMorphism, builder: Callable[[Graph], SimplicialComplex]) -> SimplicialMap:
    """The map ``builder(G') -> builder(G)`` given on vertices by ``phi^*``."""
    source = builder(phi.target)
    target = builder(phi.source)
    vmap = edge_injection(phi)
    for facet in source.facets:
        image = frozenset(vmap[x] for x in facet)
        if image not in target:
            raise NotFunctorial(f"face {sorted(facet)} maps to non-face {sorted(image)}")
    return SimplicialMap(source, target, vmap)


@dataclass
class MonotonicityReport:
    checked_morphisms: int = 0
    checked_faces: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def check_gop_monotone(prop: Callable[[Graph, frozenset], bool], morphisms: Iterable[MinorMorphism], max_witnesses: int = 20) -> MonotonicityReport:
    """Test whether pulling faces back along ``phi^*`` preserves the property.

    Every subset of ``E(G')`` satisfying ``prop`` is checked, so non-monotone
    properties are reported rather than rejected.
    """
    report = MonotonicityReport()
    for phi in morphisms:
        report.checked_morphisms += 1
        inj = edge_injection(phi)
        edges = phi.target.edges
        for r in range(len(edges) + 1):
            for face in itertools.combinations(edges, r):
                if not prop(phi.target, frozenset(face)):
                    continue
                report.checked_faces += 1
                image = frozenset(inj[x] for x in face)
                if not prop(phi.source, image) and len(report.counterexamples) < max_witnesses:
                    report.counterexamples.append(
                        {
                            "source": phi.source.to_json(),
                            "target": phi.target.to_json(),
                            "morphism": phi.to_json(),
                            "face": sorted(face),
                            "image": sorted(image),
                        }
                    )
    return report


# Common properties for monotone_property_complex.


def prop_matching(g: Graph, s: frozenset) -> bool:
    return is_d_matching(g, s, 1)


def prop_d_matching(d: int):
    return lambda g, s: is_d_matching(g, s, d)


def prop_forest(g: Graph, s: frozenset) -> bool:
    from .graphs import _is_forest

    return all(not g.is_loop(e) for e in s) and _is_forest(g, s)


def prop_at_most(k: int):
    return lambda g, s: len(s) <= k


def prop_spans_vertices(g: Graph, s: frozenset) -> bool:
    """Every vertex of ``g`` is covered by ``s``; not closed under deletion."""
    covered = set()
    for e in s:
        covered |= g.edge_vertices(e)
    return covered == set(g.vertices)
