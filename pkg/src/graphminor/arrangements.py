"""Cohomology ranks of configuration spaces attached to complement line graphs.

For a graph G let H be its complement line graph.  The space in question is
the complement of the subspaces ``x_e = x_f`` in ``(K^d)^{E(G)}`` for every
edge ``ef`` of H.  Its Poincare polynomial is read off the chromatic
polynomial of H; independently, an explicit graded-commutative presentation
(one generator per edge of H, one relation per cycle of H) is built and its
graded ranks are computed by linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import TooLarge
from .graphs import (
    Graph,
    SimpleGraph,
    _canonical_edges,
    _multigraph_data,
    complement_line_graph,
    simple_canonical_form,
)
from .linalg import Echelon, Field
from .minors import MinorMorphism, edge_injection

CHROMATIC_EDGE_LIMIT = 45
CYCLE_LIMIT = 20000

# -- polynomials as coefficient lists (index = power of k) --------------------------


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _sub(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def evaluate(p: list[int], k) -> int:
    return sum(c * k**i for i, c in enumerate(p))


# -- chromatic polynomial ------------------------------------------------------------

_memo: dict = {}


def _key(n: int, edges: frozenset) -> tuple:
    _, adj = _multigraph_data(range(n), edges)
    return (n, _canonical_edges(n, adj))


def _chromatic(n: int, edges: frozenset) -> list[int]:
    if not edges:
        return [0] * n + [1]
    adj: dict[int, set] = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    # Isolated vertices and leaves peel off as factors k and (k - 1).
    for v in range(n):
        if len(adj[v]) <= 1:
            factor = [0, 1] if not adj[v] else [-1, 1]
            return _mul(factor, _chromatic(*_drop(n, edges, v)))
    if len(edges) == n * (n - 1) // 2:
        out = [1]
        for j in range(n):
            out = _mul(out, [-j, 1])
        return out
    key = _key(n, edges)
    if key in _memo:
        return _memo[key]
    # Delete / contract the edge at the highest-degree vertex.
    v = max(range(n), key=lambda x: len(adj[x]))
    w = max(adj[v])
    e = (min(v, w), max(v, w))
    deleted = edges - {e}
    merged = set()
    for a, b in deleted:
        a, b = (v if a == w else a), (v if b == w else b)
        if a != b:
            merged.add((min(a, b), max(a, b)))
    result = _sub(_chromatic(n, deleted), _chromatic(*_drop(n, frozenset(merged), w)))
    _memo[key] = result
    return result


def _drop(n: int, edges: frozenset, v: int) -> tuple[int, frozenset]:
    """Remove vertex ``v`` (and its edges) and relabel to ``0..n-2``."""
    shift = lambda x: x - 1 if x > v else x  # noqa: E731
    return n - 1, frozenset((shift(a), shift(b)) for a, b in edges if v not in (a, b))


def chromatic_polynomial(h: SimpleGraph, limit: int = CHROMATIC_EDGE_LIMIT) -> list[int]:
    """Coefficients ``[c_0, c_1, ...]`` with ``P(k) = sum c_i k^i``."""
    if h.num_edges() > limit:
        raise TooLarge(f"chromatic polynomial limited to {limit} edges")
    idx = {v: i for i, v in enumerate(h.vertices)}
    edges = frozenset(tuple(sorted((idx[a], idx[b]))) for a, b in (tuple(e) for e in h.edges))
    return _chromatic(len(h.vertices), edges)


def clear_chromatic_cache() -> None:
    _memo.clear()


# -- Poincare vector -----------------------------------------------------------------


@dataclass(frozen=True)
class PoincareVector:
    ranks: dict  # cohomological degree -> rank (nonzero only)
    generator_degree: int

    def rank(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def by_algebra_degree(self) -> list[int]:
        top = max(self.ranks) // self.generator_degree if self.ranks else -1
        return [self.rank(j * self.generator_degree) for j in range(top + 1)]

    def total(self) -> int:
        return sum(self.ranks.values())

    def to_json(self, max_degree: int | None = None) -> dict:
        ranks = {d: r for d, r in sorted(self.ranks.items()) if max_degree is None or d <= max_degree}
        return {"generator_degree": self.generator_degree, "ranks": {str(d): r for d, r in ranks.items()}}


def generator_degree(d: int, field: str = "C") -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return 2 * d - 1 if field == "C" else d - 1


def conf_poincare(g: Graph, d: int) -> PoincareVector:
    """Ranks of the cohomology of the complex configuration space, from the chromatic polynomial."""
    r = generator_degree(d, "C")
    chi = chromatic_polynomial(complement_line_graph(g))
    n = g.num_edges()
    ranks = {}
    for j in range(n + 1):
        c = abs(chi[n - j]) if n - j < len(chi) else 0
        if c:
            ranks[j * r] = c
    return PoincareVector(ranks, r)


# -- presentation ---------------------------------------------------------------------


def simple_cycles(h: SimpleGraph, limit: int = CYCLE_LIMIT) -> list[list]:
    """Every simple cycle of length >= 3, as a vertex list starting at its smallest vertex."""
    pos = {v: i for i, v in enumerate(h.vertices)}
    nbrs = {v: sorted(h.neighbors(v), key=pos.__getitem__) for v in h.vertices}
    out: list[list] = []

    def walk(start, path, seen):
        for w in nbrs[path[-1]]:
            if pos[w] < pos[start]:
                continue
            if w == start and len(path) >= 3 and pos[path[1]] < pos[path[-1]]:
                out.append(list(path))
                if len(out) > limit:
                    raise TooLarge(f"more than {limit} cycles")
            elif w not in seen:
                seen.add(w)
                path.append(w)
                walk(start, path, seen)
                path.pop()
                seen.discard(w)

    for s in h.vertices:
        walk(s, [s], {s})
    return out


@dataclass
class OSPresentation:
    """Generators are edges of the complement line graph, written as pairs of edges of G."""

    generators: list[tuple]  # (e, f) with e before f in E(G)
    relations: list[dict] = field(default_factory=list)  # sorted index tuple -> sign
    cycles: list[list[int]] = field(default_factory=list)  # generator indices of each relation's support
    parity: str = "exterior"  # or "symmetric" (commuting generators with squares zero)
    generator_degree: int = 1

    def relation_text(self, k: int) -> str:
        terms = []
        for mono, s in sorted(self.relations[k].items()):
            name = "*".join(f"e[{self.generators[i][0]},{self.generators[i][1]}]" for i in mono)
            terms.append(("+ " if s > 0 else "- ") + name)
        return " ".join(terms).lstrip("+ ")

    def to_json(self) -> dict:
        return {
            "generators": [list(p) for p in self.generators],
            "generator_degree": self.generator_degree,
            "parity": self.parity,
            "relations": [
                [{"monomial": [list(self.generators[i]) for i in mono], "sign": s} for mono, s in sorted(rel.items())]
                for rel in self.relations
            ],
        }


def _generators(g: Graph) -> list[tuple]:
    return [(e, f) for e, f in itertools.combinations(g.edges, 2) if not g.share_vertex(e, f)]


def _cycle_signs(g: Graph, gens: list[tuple], cyc: list[int]) -> list[int]:
    """Signs for the commuting presentation: the orientation sign of each cycle minor.

    Each generator ``(e, f)`` is the linear form ``x_e - x_f``.  The forms on a
    cycle span a space of dimension one less than the cycle length; removing
    the i-th form leaves a basis, and its sign is the sign of the determinant
    against the basis obtained by removing the first form.
    """
    edges = sorted({x for i in cyc for x in gens[i]}, key=g.edges.index)
    col = {x: k for k, x in enumerate(edges)}
    forms = []
    for i in cyc:
        e, f = gens[i]
        v = [0] * len(edges)
        v[col[e]], v[col[f]] = 1, -1
        forms.append(v)
    ref = forms[1:]
    signs = []
    for i in range(len(forms)):
        rest = forms[:i] + forms[i + 1:]
        signs.append(_relative_sign(ref, rest))
    return signs


def _relative_sign(basis: list[list[int]], vecs: list[list[int]]) -> int:
    """Sign of the determinant expressing ``vecs`` in terms of ``basis`` (same span)."""
    rows = [[Fraction(x) for x in b] for b in basis]
    cols = _independent_columns(rows)
    m = [[rows[r][c] for c in cols] for r in range(len(rows))]
    coords = [_solve_left([Fraction(v[c]) for c in cols], m) for v in vecs]
    return 1 if _fdet(coords) > 0 else -1


def _independent_columns(rows: list[list[Fraction]]) -> list[int]:
    ech = Echelon(Field(0))
    chosen = []
    n = len(rows[0]) if rows else 0
    transposed = [{r: rows[r][c] for r in range(len(rows)) if rows[r][c]} for c in range(n)]
    for c in range(n):
        if ech.add(transposed[c]):
            chosen.append(c)
        if len(chosen) == len(rows):
            break
    return chosen


def _solve_left(target: list[Fraction], m: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients ``y`` with ``y @ m == target`` for square invertible ``m``."""
    k = len(m)
    # Solve m^T y = target by Gauss-Jordan.
    a = [[m[r][c] for r in range(k)] + [target[c]] for c in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [a[r][k] for r in range(k)]


def _fdet(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            c = m[r][col] / m[col][col]
            if c:
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return det


def os_presentation(g: Graph, d: int, field: str = "C", cycle_limit: int = CYCLE_LIMIT) -> OSPresentation:
    """Generators and cycle relations for the cohomology ring.

    Over C the generators have odd degree ``2d - 1`` and anticommute, and each
    cycle ``c_0 < ... < c_k`` contributes ``sum (-1)^i e_{C - c_i}``.  Over R
    with ``d`` odd the generators have even degree ``d - 1``, commute, square
    to zero, and the relation carries orientation signs.
    """
    r = generator_degree(d, field)
    parity = "exterior" if r % 2 == 1 else "symmetric"
    gens = _generators(g)
    h = complement_line_graph(g)
    index = {frozenset(p): k for k, p in enumerate(gens)}
    pres = OSPresentation(gens, parity=parity, generator_degree=r)
    for cyc in simple_cycles(h, cycle_limit):
        ids = sorted(index[frozenset((cyc[t], cyc[(t + 1) % len(cyc)]))] for t in range(len(cyc)))
        if parity == "exterior":
            signs = [(-1) ** i for i in range(len(ids))]
        else:
            signs = [(-1) ** i * s for i, s in enumerate(_cycle_signs(g, gens, ids))]
        rel = {tuple(ids[:i] + ids[i + 1:]): s for i, s in enumerate(signs)}
        pres.relations.append(rel)
        pres.cycles.append(ids)
    return pres


def _multiply(parity: str, t: tuple, mono: tuple) -> tuple[int, tuple] | None:
    """Product of squarefree monomials, or None when it vanishes."""
    if set(t) & set(mono):
        return None
    merged = tuple(sorted(t + mono))
    if parity == "symmetric":
        return 1, merged
    inversions = sum(1 for a in t for b in mono if a > b)
    return (-1) ** inversions, merged


def presented_ranks(pres: OSPresentation, max_j: int, field: Field | None = None) -> list[int]:
    """Rank of the degree-j part of the presented algebra for ``j <= max_j`` (algebra degree)."""
    field = field or Field(0)
    m = len(pres.generators)
    ranks = []
    for j in range(max_j + 1):
        if j > m:
            ranks.append(0)
            continue
        basis = {mono: k for k, mono in enumerate(itertools.combinations(range(m), j))}
        ech = Echelon(field)
        for rel in pres.relations:
            deg = len(next(iter(rel)))
            extra = j - deg
            if extra < 0:
                continue
            for t in itertools.combinations(range(m), extra):
                vec: dict = {}
                for mono, s in rel.items():
                    prod = _multiply(pres.parity, t, mono)
                    if prod is None:
                        continue
                    sign, merged = prod
                    k = basis[merged]
                    vec[k] = vec.get(k, 0) + sign * s
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    ech.add(vec)
        ranks.append(comb(m, j) - len(ech))
    return ranks


@dataclass
class RankCheckReport:
    graph: dict
    d: int
    chromatic: list[int]
    presented: list[int]

    @property
    def ok(self) -> bool:
        return self.chromatic == self.presented

    def to_json(self) -> dict:
        return {"graph": self.graph, "d": self.d, "chromatic": self.chromatic, "presented": self.presented, "ok": self.ok}


def os_rank_check(g: Graph, d: int, max_degree: int, field: str = "C") -> RankCheckReport:
    """Compare presentation ranks with chromatic ranks in cohomological degrees ``<= max_degree``."""
    pres = os_presentation(g, d, field)
    r = pres.generator_degree
    max_j = max_degree // r if r else max_degree
    presented = presented_ranks(pres, max_j)
    chi = chromatic_polynomial(complement_line_graph(g))
    n = g.num_edges()
    chromatic = [abs(chi[n - j]) if 0 <= n - j < len(chi) else 0 for j in range(max_j + 1)]
    return RankCheckReport(g.to_json(), d, chromatic, presented)


def relation_functoriality(phi: MinorMorphism, d: int = 1) -> list[dict]:
    """Relations of the target pulled back along ``phi^*`` must be relations of the source, up to sign."""
    src = os_presentation(phi.source, d)
    tgt = os_presentation(phi.target, d)
    inj = edge_injection(phi)
    src_index = {frozenset(p): k for k, p in enumerate(src.generators)}
    failures = []
    gen_map = {}
    for k, (e, f) in enumerate(tgt.generators):
        key = frozenset((inj[e], inj[f]))
        if key not in src_index:
            failures.append({"generator": [e, f], "reason": "image shares a vertex"})
            continue
        gen_map[k] = src_index[key]
    if failures:
        return failures
    relations = {frozenset(rel.items()) for rel in src.relations}
    for rel in tgt.relations:
        image: dict = {}
        for mono, s in rel.items():
            ids = [gen_map[i] for i in mono]
            order = sorted(range(len(ids)), key=ids.__getitem__)
            inversions = sum(1 for a, b in itertools.combinations(order, 2) if a > b)
            image[tuple(sorted(ids))] = s * (-1) ** inversions
        flipped = {k: -v for k, v in image.items()}
        if frozenset(image.items()) not in relations and frozenset(flipped.items()) not in relations:
            failures.append({"relation": tgt.relation_text(tgt.relations.index(rel)), "reason": "image is not a relation"})
    return failures


def lc_two_star_matches_bipartite(a: int, b: int) -> bool:
    """Whether the complement line graph of the two-star tree is K_{a,b} plus an isolated vertex."""
    from .graphs import standard_graph

    h = complement_line_graph(standard_graph("two_star_tree", a, b))
    left = [f"l{i}" for i in range(a)]
    right = [f"r{j}" for j in range(b)]
    model = SimpleGraph.from_pairs(left + right + ["pt"], [(x, y) for x in left for y in right])
    return simple_canonical_form(h) == simple_canonical_form(model)
