"""Finite scans over families of graphs.

Nothing here proves anything about infinite families.  Scans report what is
observed on the graphs enumerated, labeled as observations.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Callable, Iterable, Sequence

from .complexes import Builder
from .errors import NoFit, TooLarge, Unbalanced
from .graphs import (
    Graph,
    automorphism_group_order,
    canonical_form,
    graph_from_canonical,
    graph_from_json,
    make_graph,
    point,
    standard_graph,
)
from .homology import field_homology_basis, homology, induced_map_on_homology, uct_consistency
from .linalg import Echelon, Field
from .minors import MinorMorphism, compose, edge_injection, enumerate_minor_morphisms

ENUMERATION_MAX_EDGES = 8
HD_MAX = 8

# -- graph enumeration ----------------------------------------------------------


def _extensions(g: Graph, simple_only: bool) -> Iterable[Graph]:
    n = g.num_edges()
    new = f"n{n + 1}"
    vs = list(g.vertices)
    specs = [(e, *g.ends(e)) for e in g.edges]
    for v in vs:
        if not simple_only:
            yield make_graph(vs, specs + [(new, v, v)])
        leaf = f"x{len(vs)}"
        yield make_graph(vs + [leaf], specs + [(new, v, leaf)])
    for u, v in itertools.combinations(vs, 2):
        if simple_only and any(set(g.ends(e)) == {u, v} for e in g.edges):
            continue
        yield make_graph(vs, specs + [(new, u, v)])


def enumerate_graphs(max_edges: int, simple_only: bool = False, include_empty: bool = False) -> list[Graph]:
    """One connected graph per isomorphism class with ``1..max_edges`` edges.

    With ``include_empty`` the one-vertex graph is listed first.  Results are
    sorted by edge count, then by canonical form.
    """
    if max_edges > ENUMERATION_MAX_EDGES:
        raise TooLarge(f"graph enumeration limited to {ENUMERATION_MAX_EDGES} edges")
    level = {canonical_form(point()): point()}
    out: list[Graph] = [graph_from_canonical(canonical_form(point()))] if include_empty else []
    for _ in range(max_edges):
        nxt: dict = {}
        for g in level.values():
            for h in _extensions(g, simple_only):
                nxt.setdefault(canonical_form(h), h)
        level = nxt
        out.extend(graph_from_canonical(k) for k in sorted(level))
    return out


# -- module evaluators --------------------------------------------------------------


@dataclass
class ModuleEvaluator:
    """A functor on the opposite minor category, over a field.

    ``dim(G)`` is the dimension at G; ``induced(phi)`` for ``phi: G -> G'`` is
    the ``dim(G) x dim(G')`` matrix of the map from the value at G' to the value at G.
    """

    name: str
    dim: Callable[[Graph], int]
    induced: Callable[[MinorMorphism], list[list]]
    field: Field = field(default_factory=Field)


def homology_module(kind: str = "matching", i: int = 0, d: int = 1, coefficients="Q", reduced: bool = False) -> ModuleEvaluator:
    builder = Builder.from_kind(kind, d)
    f = Field(0) if coefficients in ("Q", 0) else Field(int(str(coefficients).lstrip("F")))

    def dim(g: Graph) -> int:
        return field_homology_basis(builder(g), i, f, reduced).dimension

    def induced(phi: MinorMorphism):
        return induced_map_on_homology(phi, builder, i, f, reduced)

    return ModuleEvaluator(f"{kind}-h{i}", dim, induced, f)


def edge_module() -> ModuleEvaluator:
    def induced(phi: MinorMorphism):
        inj = edge_injection(phi)
        rows = phi.source.edges
        return [[1 if inj[e2] == e else 0 for e2 in phi.target.edges] for e in rows]

    return ModuleEvaluator("edge", lambda g: g.num_edges(), induced)


def constant_module() -> ModuleEvaluator:
    return ModuleEvaluator("constant", lambda g: 1, lambda phi: [[1]])


def _sorted_homs(g: Graph, h: Graph) -> list[MinorMorphism]:
    homs = enumerate_minor_morphisms(g, h)
    return sorted(homs, key=lambda m: sorted((repr(k), repr(v)) for k, v in m.mapping.items()))


def principal_projective(g0: Graph) -> ModuleEvaluator:
    """Value at G is spanned by ``Hom(G, g0)``; ``phi`` acts by precomposition."""

    def induced(phi: MinorMorphism):
        src = _sorted_homs(phi.source, g0)
        index = {m.key(): r for r, m in enumerate(src)}
        tgt = _sorted_homs(phi.target, g0)
        rows = [[0] * len(tgt) for _ in src]
        for c, psi in enumerate(tgt):
            rows[index[compose(phi, psi).key()]][c] = 1
        return rows

    return ModuleEvaluator("projective", lambda g: len(enumerate_minor_morphisms(g, g0)), induced)


MODULES = {
    "matching-h0": lambda: homology_module("matching", 0),
    "matching-h1": lambda: homology_module("matching", 1),
    "edge": edge_module,
    "constant": constant_module,
    "projective-point": lambda: principal_projective(point()),
    "projective-edge": lambda: principal_projective(standard_graph("path", 1)),
}


def module_by_name(name: str) -> ModuleEvaluator:
    if name not in MODULES:
        raise ValueError(f"unknown module {name!r}; choose from {sorted(MODULES)}")
    return MODULES[name]()


# -- reports ------------------------------------------------------------------------


@dataclass
class ScanReport:
    kind: str
    config: dict
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "violations": self.violations,
            "note": "observed values over the scanned family only; not a proof of any bound",
        }


def _pool_map(func, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- generation scan ----------------------------------------------------------------


def generation_scan(module: ModuleEvaluator, n_max: int, max_edges: int) -> ScanReport:
    """Do images from minors with at most ``n_max`` edges span the value at each larger graph?"""
    report = ScanReport("generation", {"module": module.name, "N": n_max, "max_edges": max_edges})
    small = enumerate_graphs(n_max, include_empty=True)
    total_deficit = 0
    for g in enumerate_graphs(max_edges):
        if g.num_edges() <= n_max:
            continue
        dim = module.dim(g)
        ech = Echelon(module.field)
        for h in small:
            if h.num_edges() >= g.num_edges():
                continue
            for phi in enumerate_minor_morphisms(g, h):
                mat = module.induced(phi)
                for c in range(len(mat[0]) if mat else 0):
                    col = {r: mat[r][c] for r in range(len(mat)) if mat[r][c]}
                    if col:
                        ech.add(col)
                if len(ech) == dim:
                    break
            if len(ech) == dim:
                break
        deficit = dim - len(ech)
        total_deficit += deficit
        report.records.append({"graph": g.to_json(), "edges": g.num_edges(), "dim": dim, "span": len(ech), "deficit": deficit})
        if deficit:
            report.violations.append({"graph": g.to_json(), "deficit": deficit})
    report.summary = {"graphs": len(report.records), "total_deficit": total_deficit, "generated": total_deficit == 0}
    return report


# -- dimension bound -----------------------------------------------------------------


def hom_bound(g: Graph, h: Graph) -> int:
    e, e2 = g.num_edges(), h.num_edges()
    gap_e, gap_g = e - e2, g.genus() - h.genus()
    if e2 > e or gap_g < 0 or gap_g > gap_e:
        return 0
    return automorphism_group_order(h) * comb(e, e2) * comb(gap_e, gap_g)


def dimension_bound_check(target: Graph, max_edges: int, graphs: Iterable[Graph] | None = None) -> ScanReport:
    """Compare ``|Hom(G, target)|`` with the automorphism-binomial bound for every listed G."""
    report = ScanReport("bound", {"target": target.to_json(), "max_edges": max_edges})
    if graphs is None:
        graphs = enumerate_graphs(max_edges, include_empty=True)
    tight = 0
    for g in graphs:
        count = len(enumerate_minor_morphisms(g, target))
        bound = hom_bound(g, target)
        report.records.append({"graph": g.to_json(), "homs": count, "bound": bound})
        if count > bound:
            report.violations.append({"graph": g.to_json(), "homs": count, "bound": bound})
        tight += count == bound and count > 0
    report.summary = {"graphs": len(report.records), "violations": len(report.violations), "tight": tight}
    return report


# -- torsion scan --------------------------------------------------------------------


def _family(family: str, max_edges: int, max_n: int | None) -> list[Graph]:
    if family == "complete":
        top = max_n if max_n is not None else max_edges
        return [standard_graph("complete", n) for n in range(2, top + 1)]
    if family not in ("all", "simple"):
        raise ValueError(f"unknown family {family!r}")
    return enumerate_graphs(max_edges, simple_only=family == "simple")


def _torsion_task(args) -> dict:
    gjson, kind, i, d, primes = args
    g = graph_from_json(gjson)
    delta = Builder.from_kind(kind, d)(g)
    h = homology(delta, i, "Z", reduced=True)
    uct = {str(p): uct_consistency(delta, i, p) for p in primes}
    return {"graph": gjson, "edges": g.num_edges(), "free_rank": h.free_rank, "torsion": list(h.torsion), "uct": uct}


def torsion_scan(
    kind: str = "matching",
    i: int = 1,
    d: int = 1,
    max_edges: int = 6,
    family: str = "all",
    max_n: int | None = None,
    primes: Sequence[int] = (2, 3),
    jobs: int = 1,
) -> ScanReport:
    """Torsion of reduced ``H_i`` of the chosen complex over a family of graphs."""
    graphs = _family(family, max_edges, max_n)
    config = {"kind": kind, "i": i, "d": d, "max_edges": max_edges, "family": family, "max_n": max_n, "primes": list(primes)}
    report = ScanReport("torsion", config)
    tasks = [(g.to_json(), kind, i, d, tuple(primes)) for g in graphs]
    report.records = _pool_map(_torsion_task, tasks, jobs)
    exponent = 1
    for rec in report.records:
        for t in rec["torsion"]:
            exponent = lcm(exponent, t)
        if not all(rec["uct"].values()):
            report.violations.append({"graph": rec["graph"], "uct": rec["uct"]})
    report.summary = {
        "graphs": len(report.records),
        "observed_exponent": exponent,
        "max_invariant_factor": max((t for r in report.records for t in r["torsion"]), default=1),
        "with_torsion": sum(1 for r in report.records if r["torsion"]),
    }
    return report


def betti_degree_scan(max_edges: int, max_i: int, char=0, jobs: int = 1) -> ScanReport:
    """Largest degree with a nonzero coarse Betti number, per homological index."""
    from .commalg import max_nonzero_degree

    report = ScanReport("betti", {"max_edges": max_edges, "max_i": max_i, "char": char})
    observed = {i: -1 for i in range(max_i + 1)}
    for g in enumerate_graphs(max_edges):
        degrees = [max_nonzero_degree(g, i, char) for i in range(max_i + 1)]
        report.records.append({"graph": g.to_json(), "edges": g.num_edges(), "max_degree": degrees})
        for i, a in enumerate(degrees):
            observed[i] = max(observed[i], a)
    report.summary = {"observed_max_degree": {str(i): a for i, a in observed.items()}}
    return report


# -- growth families -----------------------------------------------------------------


def sprout(g: Graph, leaves: dict) -> Graph:
    """Attach ``leaves[v]`` new pendant edges at each listed vertex."""
    vs = list(g.vertices)
    specs = [(e, *g.ends(e)) for e in g.edges]
    for v, n in leaves.items():
        if v not in g.vertices:
            raise ValueError(f"unknown vertex {v!r}")
        for k in range(1, int(n) + 1):
            vs.append(f"{v}~{k}")
            specs.append((f"{v}~l{k}", v, f"{v}~{k}"))
    return make_graph(vs, specs)


def subdivide(g: Graph, counts: dict) -> Graph:
    """Subdivide each listed edge ``counts[e]`` times (so it becomes a path of that many plus one edges)."""
    vs = list(g.vertices)
    specs = []
    for e in g.edges:
        a, b = g.ends(e)
        m = int(counts.get(e, 0))
        chain = [a] + [f"{e}~{k}" for k in range(1, m + 1)] + [b]
        vs.extend(chain[1:-1])
        for k in range(m + 1):
            specs.append((e if k == 0 else f"{e}~s{k}", chain[k], chain[k + 1]))
    for e in counts:
        if e not in g.edges:
            raise ValueError(f"unknown edge {e!r}")
    return make_graph(vs, specs)


@dataclass
class GrowthFit:
    coefficients: list  # Fractions, constant term first
    window: tuple
    values: list
    checked: dict  # parameter -> (predicted, actual)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, n) -> Fraction:
        return sum(c * Fraction(n) ** k for k, c in enumerate(self.coefficients))

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "degree": self.degree,
            "window": list(self.window),
            "values": self.values,
            "checked": {str(k): list(v) for k, v in self.checked.items()},
        }


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients of the interpolating polynomial (Newton form expanded)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= xs[i] * poly[k]
        shifted[0] += coef[i]
        poly = shifted
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def growth_fit(
    value: Callable[[Graph], int] | ModuleEvaluator,
    base: Graph,
    direction: str,
    targets: Sequence[str],
    window: tuple[int, int],
    checks: int = 2,
) -> GrowthFit:
    """Fit the lowest-degree polynomial through the window and confirm it on ``checks`` later values.

    ``direction`` is ``"sprout"`` (targets are vertices) or ``"subdivide"``
    (targets are edges).  Raises NoFit unless the fit is over-determined within
    the window and every checked prediction is exact.
    """
    f = value.dim if isinstance(value, ModuleEvaluator) else value
    grow = {"sprout": sprout, "subdivide": subdivide}[direction]

    def at(n: int) -> int:
        return f(grow(base, {t: n for t in targets}))

    lo, hi = window
    xs = list(range(lo, hi + 1))
    ys = [at(n) for n in xs]
    poly = None
    for deg in range(len(xs) - 1):
        if deg + 2 > len(xs):
            break
        cand = _interpolate(xs[: deg + 1], ys[: deg + 1])
        if all(sum(c * Fraction(x) ** k for k, c in enumerate(cand)) == y for x, y in zip(xs, ys)):
            poly = cand
            break
    if poly is None:
        raise NoFit(f"no polynomial of degree <= {len(xs) - 2} fits window {window} with a spare point")
    fit = GrowthFit(poly, (lo, hi), ys, {})
    for n in range(hi + 1, hi + 1 + checks):
        actual = at(n)
        predicted = fit(n)
        fit.checked[n] = (str(predicted), actual)
        if predicted != actual:
            raise NoFit(f"fit predicts {predicted} at {n} but the value is {actual}")
    return fit


# -- Dyck words ----------------------------------------------------------------------


def dyck_tree(word: str) -> Graph:
    """Tree drawn by stepping up a new edge on ``(`` and back down on ``)``."""
    vs = ["t0"]
    specs = []
    stack = ["t0"]
    for ch in word:
        if ch == "(":
            v = f"t{len(vs)}"
            specs.append((f"d{len(specs) + 1}", stack[-1], v))
            vs.append(v)
            stack.append(v)
        elif ch == ")":
            if len(stack) == 1:
                raise Unbalanced(f"unmatched ')' in {word!r}")
            stack.pop()
        else:
            raise Unbalanced(f"unexpected character {ch!r}")
    if len(stack) != 1:
        raise Unbalanced(f"{len(stack) - 1} unclosed '(' in {word!r}")
    return make_graph(vs, specs)


def dyck_words(n: int) -> list[str]:
    out = []

    def go(prefix: str, opened: int, closed: int):
        if opened == closed == n:
            out.append(prefix)
            return
        if opened < n:
            go(prefix + "(", opened + 1, closed)
        if closed < opened:
            go(prefix + ")", opened, closed + 1)

    go("", 0, 0)
    return out


def hd_series(value: Callable[[Graph], int] | ModuleEvaluator, n_max: int) -> list[int]:
    """Coefficients ``t^0 .. t^n_max`` of the sum of values over trees of Dyck words."""
    if n_max > HD_MAX:
        raise TooLarge(f"series truncation limited to {HD_MAX}")
    f = value.dim if isinstance(value, ModuleEvaluator) else value
    return [sum(f(dyck_tree(w)) for w in dyck_words(n)) for n in range(n_max + 1)]
