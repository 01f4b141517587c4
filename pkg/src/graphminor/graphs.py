"""Graphs as quintuples (V, A, h, t, sigma), standard constructors and invariants.

A :class:`Graph` is a connected finite multigraph.  Every edge spec
``(id, u, v)`` materializes two arrows ``Arrow(id, +1)`` (tail ``u``, head
``v``) and ``Arrow(id, -1)`` (tail ``v``, head ``u``); the involution swaps
them.  Loops (``u == v``) and parallel edges are allowed.

:class:`SimpleGraph` is the loopless, multi-edge-free graph type used for line
graphs, their complements and chromatic polynomials.  It need not be connected.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    Disconnected,
    DuplicateEdgeId,
    InvalidGraph,
    InvalidSize,
    TooLarge,
    UnknownVertex,
)

AUTOMORPHISM_VERTEX_LIMIT = 10


class Arrow(NamedTuple):
    """One orientation of an edge; ``sign=+1`` runs from ``ends[0]`` to ``ends[1]``."""

    edge: str
    sign: int

    def reversed(self) -> "Arrow":
        return Arrow(self.edge, -self.sign)

    def __repr__(self) -> str:
        return f"{self.edge}{'+' if self.sign > 0 else '-'}"


class Graph:
    """Immutable connected multigraph with stable string ids for vertices and edges."""

    __slots__ = ("_vertices", "_ends", "_edges", "_hash")

    def __init__(self, vertices: Iterable[str], ends: Mapping[str, tuple[str, str]]):
        # Use make_graph for validated construction; this trusts its inputs.
        self._vertices = tuple(sorted(vertices))
        self._ends = {e: (u, v) for e, (u, v) in sorted(ends.items())}
        self._edges = tuple(self._ends)
        self._hash = None

    # -- quintuple -------------------------------------------------------
    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[str, ...]:
        return self._edges

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return tuple(Arrow(e, s) for e in self._edges for s in (1, -1))

    def ends(self, edge: str) -> tuple[str, str]:
        return self._ends[edge]

    def tail(self, a: Arrow) -> str:
        u, v = self._ends[a.edge]
        return u if a.sign > 0 else v

    def head(self, a: Arrow) -> str:
        u, v = self._ends[a.edge]
        return v if a.sign > 0 else u

    @staticmethod
    def involution(a: Arrow) -> Arrow:
        return a.reversed()

    # -- derived data ------------------------------------------------------
    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def genus(self) -> int:
        """First Betti number ``e - v + 1``."""
        return len(self._edges) - len(self._vertices) + 1

    def is_loop(self, edge: str) -> bool:
        u, v = self._ends[edge]
        return u == v

    def incident_edges(self, vertex: str) -> list[str]:
        return [e for e in self._edges if vertex in self._ends[e]]

    def edge_vertices(self, edge: str) -> frozenset[str]:
        return frozenset(self._ends[edge])

    def share_vertex(self, e: str, f: str) -> bool:
        return bool(self.edge_vertices(e) & self.edge_vertices(f))

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self._ends.values():
            key = frozenset((u, v))
            if u == v or key in seen:
                return False
            seen.add(key)
        return True

    def check_invariants(self) -> None:
        for a in self.arrows:
            b = self.involution(a)
            if b == a or self.involution(b) != a:
                raise InvalidGraph(f"involution fails at {a!r}")
            if self.head(a) != self.tail(b):
                raise InvalidGraph(f"h != t o sigma at {a!r}")
        if not _connected(self._vertices, self._ends.values()):
            raise Disconnected("graph is not connected")

    # -- value semantics -----------------------------------------------------
    def _key(self):
        return (self._vertices, tuple(self._ends.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    def to_json(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [{"id": e, "ends": list(self._ends[e])} for e in self._edges],
        }


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple
    edges: frozenset  # of 2-element frozensets

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= vs:
                raise InvalidGraph(f"bad simple edge {sorted(e)}")

    @classmethod
    def from_pairs(cls, vertices: Iterable, pairs: Iterable[tuple]) -> "SimpleGraph":
        return cls(tuple(sorted(vertices)), frozenset(frozenset(p) for p in pairs))

    def num_edges(self) -> int:
        return len(self.edges)

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v) -> list:
        return sorted(next(iter(e - {v})) for e in self.edges if v in e)

    def sorted_edges(self) -> list[tuple]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def components(self) -> list[list]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = (find(x) for x in e)
            if a != b:
                parent[a] = b
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    def complement(self) -> "SimpleGraph":
        pairs = [p for p in itertools.combinations(self.vertices, 2) if frozenset(p) not in self.edges]
        return SimpleGraph.from_pairs(self.vertices, pairs)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(p) for p in self.sorted_edges()]}


def _connected(vertices: Sequence[str], pairs: Iterable[tuple[str, str]]) -> bool:
    if not vertices:
        return False
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(vertices)


def make_graph(vertex_ids: Sequence, edge_specs: Sequence[tuple]) -> Graph:
    """Build a connected graph from vertex ids and ``(edge_id, end, end)`` triples."""
    vertices = [str(v) for v in vertex_ids]
    vset = set(vertices)
    if len(vset) != len(vertices):
        raise InvalidGraph("duplicate vertex id")
    ends: dict[str, tuple[str, str]] = {}
    for spec in edge_specs:
        eid, u, v = (str(x) for x in spec)
        if eid in ends:
            raise DuplicateEdgeId(eid)
        for x in (u, v):
            if x not in vset:
                raise UnknownVertex(x)
        ends[eid] = (u, v)
    if not _connected(vertices, ends.values()):
        raise Disconnected("graph is not connected")
    g = Graph(vertices, ends)
    g.check_invariants()
    return g


def point() -> Graph:
    """The graph with one vertex and no edges."""
    return make_graph(["v"], [])


def standard_graph(kind: str, *params: int) -> Graph:
    """Named families.

    ``complete n``, ``complete_bipartite m n``, ``path n`` (n edges),
    ``cycle n`` (n edges; ``cycle 1`` is a single loop), ``star n`` (n leaves),
    ``loop_bouquet n`` (the wedge ``L_n`` of n digons), and
    ``two_star_tree a b`` (adjacent centers with a and b extra leaves).
    """
    arity = {
        "complete": 1,
        "complete_bipartite": 2,
        "path": 1,
        "cycle": 1,
        "star": 1,
        "loop_bouquet": 1,
        "two_star_tree": 2,
    }
    if kind not in arity:
        raise InvalidSize(f"unknown graph kind {kind!r}")
    if len(params) != arity[kind] or any(int(p) < 1 for p in params):
        raise InvalidSize(f"{kind} needs {arity[kind]} size parameter(s) >= 1, got {params}")
    params = tuple(int(p) for p in params)

    if kind == "complete":
        (n,) = params
        vs = [f"v{i}" for i in range(1, n + 1)]
        specs = [(f"e{i}_{j}", f"v{i}", f"v{j}") for i, j in itertools.combinations(range(1, n + 1), 2)]
    elif kind == "complete_bipartite":
        m, n = params
        vs = [f"a{i}" for i in range(1, m + 1)] + [f"b{j}" for j in range(1, n + 1)]
        specs = [(f"e{i}_{j}", f"a{i}", f"b{j}") for i in range(1, m + 1) for j in range(1, n + 1)]
    elif kind == "path":
        (n,) = params
        vs = [f"v{i}" for i in range(n + 1)]
        specs = [(f"e{i}", f"v{i - 1}", f"v{i}") for i in range(1, n + 1)]
    elif kind == "cycle":
        (n,) = params
        vs = [f"v{i}" for i in range(n)]
        specs = [(f"e{i + 1}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    elif kind == "star":
        (n,) = params
        vs = ["c"] + [f"x{i}" for i in range(1, n + 1)]
        specs = [(f"e{i}", "c", f"x{i}") for i in range(1, n + 1)]
    elif kind == "loop_bouquet":
        (n,) = params
        vs = [f"v{i}" for i in range(1, n + 2)]
        hub = f"v{n + 1}"
        specs = [(f"{x}{i}", f"v{i}", hub) for i in range(1, n + 1) for x in "ef"]
    else:  # two_star_tree
        a, b = params
        vs = ["u", "w"] + [f"x{i}" for i in range(1, a + 1)] + [f"y{j}" for j in range(1, b + 1)]
        specs = [("c", "u", "w")]
        specs += [(f"f{i}", "u", f"x{i}") for i in range(1, a + 1)]
        specs += [(f"g{j}", "w", f"y{j}") for j in range(1, b + 1)]
    return make_graph(vs, specs)


# -- line graphs -----------------------------------------------------------------


def line_graph(g: Graph) -> SimpleGraph:
    pairs = [(e, f) for e, f in itertools.combinations(g.edges, 2) if g.share_vertex(e, f)]
    return SimpleGraph.from_pairs(g.edges, pairs)


def complement_line_graph(g: Graph) -> SimpleGraph:
    pairs = [(e, f) for e, f in itertools.combinations(g.edges, 2) if not g.share_vertex(e, f)]
    return SimpleGraph.from_pairs(g.edges, pairs)


# -- spanning trees ------------------------------------------------------------


def _det(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees via the matrix-tree theorem (loops ignored)."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    lap = [[0] * n for _ in range(n)]
    for e in g.edges:
        u, v = g.ends(e)
        if u == v:
            continue
        i, j = idx[u], idx[v]
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    return _det([row[1:] for row in lap[1:]])


def spanning_trees(g: Graph) -> list[frozenset[str]]:
    """All spanning trees as edge sets, in lexicographic order of sorted edge tuples."""
    k = g.num_vertices() - 1
    candidates = [e for e in g.edges if not g.is_loop(e)]
    trees = []
    for combo in itertools.combinations(candidates, k):
        if _is_forest(g, combo):
            trees.append(frozenset(combo))
    return trees


def _is_forest(g: Graph, edges: Iterable[str]) -> bool:
    parent: dict[str, str] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for e in edges:
        u, v = g.ends(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# -- automorphisms -------------------------------------------------------------


def automorphisms(g: Graph, limit: int = AUTOMORPHISM_VERTEX_LIMIT) -> list[tuple[dict, dict]]:
    """All automorphisms as ``(vertex_map, arrow_map)`` pairs commuting with h, t, sigma.

    Reversing a loop counts as a nontrivial automorphism.
    """
    if g.num_vertices() > limit:
        raise TooLarge(f"{g.num_vertices()} vertices exceeds automorphism limit {limit}")
    bucket: dict[tuple[str, str], list[str]] = {}
    for e in g.edges:
        u, v = g.ends(e)
        bucket.setdefault(tuple(sorted((u, v))), []).append(e)
    degree = Counter()
    for e in g.edges:
        u, v = g.ends(e)
        degree[u] += 1
        degree[v] += 1

    result = []
    vs = g.vertices
    for perm in itertools.permutations(vs):
        vmap = dict(zip(vs, perm))
        if any(degree[v] != degree[vmap[v]] for v in vs):
            continue
        ok = all(
            len(es) == len(bucket.get(tuple(sorted((vmap[p[0]], vmap[p[1]]))), ()))
            for p, es in bucket.items()
        )
        if not ok:
            continue
        # Per endpoint pair: bijections between parallel classes, times loop flips.
        choices = []
        for p, es in sorted(bucket.items()):
            target = bucket[tuple(sorted((vmap[p[0]], vmap[p[1]])))]
            options = []
            for image in itertools.permutations(target):
                if p[0] == p[1]:
                    for flips in itertools.product((1, -1), repeat=len(es)):
                        options.append([(e, f, s) for e, f, s in zip(es, image, flips)])
                else:
                    options.append([(e, f, None) for e, f in zip(es, image)])
            choices.append(options)
        for combo in itertools.product(*choices):
            amap = {}
            for part in combo:
                for e, f, s in part:
                    if s is None:
                        # orientation forced by the vertex map
                        s = 1 if g.ends(f)[0] == vmap[g.ends(e)[0]] else -1
                    amap[Arrow(e, 1)] = Arrow(f, s)
                    amap[Arrow(e, -1)] = Arrow(f, -s)
            result.append((vmap, amap))
    return result


def automorphism_group_order(g: Graph, limit: int = AUTOMORPHISM_VERTEX_LIMIT) -> int:
    return len(automorphisms(g, limit))


# -- canonical form ------------------------------------------------------------


def _multigraph_data(vertices: Sequence, pairs: Iterable[tuple]) -> tuple[dict, list[Counter]]:
    idx = {v: i for i, v in enumerate(vertices)}
    adj = [Counter() for _ in vertices]
    for u, v in pairs:
        i, j = idx[u], idx[v]
        adj[i][j] += 1
        if i != j:
            adj[j][i] += 1
    return idx, adj


def _rank(keys: list) -> list[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors: list[int], adj: list[Counter]) -> list[int]:
    while True:
        sig = [
            (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v].items())))
            for v in range(len(colors))
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _canonical_edges(n: int, adj: list[Counter]) -> tuple:
    """Minimal relabeled edge list over an individualization-refinement search tree."""
    best = None

    def certificate(colors):
        edges = []
        for i in range(n):
            for j, m in adj[i].items():
                a, b = colors[i], colors[j]
                if a <= b:
                    edges.extend([(a, b)] * m)
        return tuple(sorted(edges))

    def search(colors):
        nonlocal best
        colors = _refine(colors, adj)
        counts = Counter(colors)
        if len(counts) == n:
            cert = certificate(colors)
            if best is None or cert < best:
                best = cert
            return
        target = min((c for c, k in counts.items() if k > 1), key=lambda c: (counts[c], c))
        for v in range(n):
            if colors[v] == target:
                search(_rank([(c, 0 if w == v else 1) for w, c in enumerate(colors)]))

    initial = _rank([(adj[v][v], sum(adj[v].values()) + adj[v][v]) for v in range(n)])
    search(initial)
    return best


def canonical_form(g: Graph) -> tuple:
    """Isomorphism invariant ``(n, sorted edge pairs)`` for a multigraph with loops."""
    _, adj = _multigraph_data(g.vertices, (g.ends(e) for e in g.edges))
    return (g.num_vertices(), _canonical_edges(g.num_vertices(), adj))


def simple_canonical_form(h: SimpleGraph) -> tuple:
    _, adj = _multigraph_data(h.vertices, (tuple(e) for e in h.edges))
    return (len(h.vertices), _canonical_edges(len(h.vertices), adj))


def graph_from_canonical(form: tuple) -> Graph:
    n, pairs = form
    vs = [f"v{i}" for i in range(n)]
    width = len(str(max(len(pairs), 1)))
    specs = [(f"e{k:0{width}d}", f"v{a}", f"v{b}") for k, (a, b) in enumerate(pairs, start=1)]
    return make_graph(vs, specs)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


# -- JSON ----------------------------------------------------------------------


def graph_from_json(data: dict | str) -> Graph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        vertices = data["vertices"]
        specs = [(e["id"], e["ends"][0], e["ends"][1]) for e in data["edges"]]
    except (KeyError, IndexError, TypeError) as exc:
        raise InvalidGraph(f"malformed graph JSON: {exc}") from exc
    return make_graph(vertices, specs)


def graph_to_json(g: Graph) -> dict:
    return g.to_json()


def edges_from_text(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines (``#`` comments) into a graph.

    Edge ids are assigned ``e1, e2, ...`` in file order; a line ``u u`` is a loop.
    """
    vertices: list[str] = []
    specs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            u = parts[0]
            if u not in vertices:
                vertices.append(u)
            continue
        if len(parts) != 2:
            raise InvalidGraph(f"cannot parse edge line {line!r}")
        u, v = parts
        for x in (u, v):
            if x not in vertices:
                vertices.append(x)
        specs.append((f"e{len(specs) + 1}", u, v))
    return make_graph(vertices, specs)


def iter_edge_subsets(g: Graph) -> Iterator[frozenset[str]]:
    for k in range(g.num_edges() + 1):
        for combo in itertools.combinations(g.edges, k):
            yield frozenset(combo)
