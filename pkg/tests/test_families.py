import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphminor.errors import NoFit, TooLarge, Unbalanced
from graphminor.families import (
    constant_module,
    dimension_bound_check,
    dyck_tree,
    dyck_words,
    edge_module,
    enumerate_graphs,
    generation_scan,
    growth_fit,
    hd_series,
    homology_module,
    hom_bound,
    principal_projective,
    sprout,
    subdivide,
    torsion_scan,
    betti_degree_scan,
)
from graphminor.graphs import make_graph, point, spanning_tree_count, standard_graph
from graphminor.minors import compose, enumerate_minor_morphisms, identity

from conftest import corpus


def nx_classes(max_edges, simple_only):
    """Independent enumeration: all edge multisets on up to max_edges+1 labeled vertices, deduped by networkx."""
    reps = {}
    for n in range(1, max_edges + 2):
        pairs = [(i, j) for i in range(n) for j in range(i, n) if not (simple_only and i == j)]
        for m in range(1, max_edges + 1):
            combos = itertools.combinations(pairs, m) if simple_only else itertools.combinations_with_replacement(pairs, m)
            for edges in combos:
                g = nx.MultiGraph()
                g.add_nodes_from(range(n))
                g.add_edges_from(edges)
                if not nx.is_connected(g):
                    continue
                key = (n, m, tuple(sorted(d for _, d in g.degree())))
                bucket = reps.setdefault(key, [])
                if not any(nx.is_isomorphic(g, h) for h in bucket):
                    bucket.append(g)
    return sum(len(b) for b in reps.values())


def test_small_counts():
    assert len(enumerate_graphs(1)) == 2
    assert len(enumerate_graphs(2, simple_only=True)) == 2
    assert len(enumerate_graphs(1, include_empty=True)) == 3


@pytest.mark.parametrize("k,simple", [(3, False), (4, False), (5, True)])
def test_enumeration_matches_networkx(k, simple):
    assert len(enumerate_graphs(k, simple_only=simple)) == nx_classes(k, simple)


def test_enumeration_limit():
    with pytest.raises(TooLarge):
        enumerate_graphs(9)


def test_evaluators_are_functors(small_graphs):
    modules = [edge_module(), constant_module(), principal_projective(point()), homology_module("matching", 0)]
    graphs = [g for g in small_graphs if g.num_edges() <= 2]
    for mod in modules:
        for g in graphs:
            n = mod.dim(g)
            assert mod.induced(identity(g)) == [[int(r == c) for c in range(n)] for r in range(n)]
        for g, h, k in itertools.product(graphs, repeat=3):
            for phi in enumerate_minor_morphisms(g, h):
                for psi in enumerate_minor_morphisms(h, k):
                    a, b = mod.induced(phi), mod.induced(psi)
                    prod = [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(mod.dim(k))] for i in range(len(a))]
                    assert mod.induced(compose(phi, psi)) == prod


def test_generation_scans():
    assert generation_scan(homology_module("matching", 0), 2, 5).summary["generated"]
    assert generation_scan(edge_module(), 1, 4).summary["generated"]
    zero = generation_scan(edge_module(), 0, 3)
    assert zero.violations and zero.summary["total_deficit"] > 0


def test_dimension_bound_examples():
    k4 = standard_graph("complete", 4)
    assert len(enumerate_minor_morphisms(k4, point())) == 16
    assert hom_bound(k4, point()) == 20
    assert dimension_bound_check(standard_graph("path", 1), 4).ok
    for g in corpus(4):
        # only isomorphisms when target = source; equality since genus and edges agree
        assert len(enumerate_minor_morphisms(g, g)) == hom_bound(g, g)


def test_torsion_scan_small_simple():
    rep = torsion_scan("matching", 1, 1, 6, "simple")
    assert rep.summary["observed_exponent"] == 1 and rep.ok


def test_torsion_scan_complete_family():
    rep = torsion_scan("matching", 1, 1, 7, "complete")
    assert rep.records[-1]["torsion"] == [3]
    assert rep.summary["observed_exponent"] == 3 and rep.ok


def test_torsion_scan_parallel_is_deterministic():
    a = torsion_scan("matching", 1, 1, 4, "all", jobs=1).to_json()
    b = torsion_scan("matching", 1, 1, 4, "all", jobs=2).to_json()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_torsion_invariant_under_relabeling(seed, data):
    from graphminor.complexes import matching_complex
    from graphminor.homology import homology

    graphs = corpus(5)
    g = graphs[seed % len(graphs)]
    perm = data.draw(st.permutations(list(g.vertices)))
    rename = {v: f"w{p}" for v, p in zip(g.vertices, perm)}
    h = make_graph(list(rename.values()), [(f"q{i}", rename[g.ends(e)[0]], rename[g.ends(e)[1]]) for i, e in enumerate(g.edges)])
    for i in range(0, 3):
        assert homology(matching_complex(g), i) == homology(matching_complex(h), i)


def test_betti_degree_scan_bounded():
    rep = betti_degree_scan(4, 2)
    assert rep.summary["observed_max_degree"]["0"] == 2


def test_sprout_and_subdivide():
    base = standard_graph("path", 1)
    assert sprout(base, {"v0": 2, "v1": 3}).num_edges() == 6
    c = subdivide(standard_graph("cycle", 3), {"e1": 2})
    assert c.num_edges() == 5 and spanning_tree_count(c) == 5
    with pytest.raises(ValueError):
        sprout(base, {"nope": 1})


def test_growth_two_star_tree():
    fit = growth_fit(homology_module("matching", 1), standard_graph("path", 1), "sprout", ["v0", "v1"], (2, 5))
    assert [int(c) for c in fit.coefficients] == [1, -2, 1]
    assert fit.checked[6] == ("25", 25)


def test_growth_constant_and_cycle():
    assert growth_fit(constant_module(), standard_graph("path", 1), "sprout", ["v0"], (1, 3)).coefficients == [1]
    fit = growth_fit(principal_projective(point()), standard_graph("cycle", 3), "subdivide", ["e1"], (0, 3))
    assert fit.coefficients == [3, 1]


def test_growth_refuses_to_extrapolate():
    with pytest.raises(NoFit):
        # two points cannot confirm a line
        growth_fit(lambda g: g.num_edges() ** 2, standard_graph("path", 1), "sprout", ["v0"], (1, 2))
    with pytest.raises(NoFit):
        growth_fit(lambda g: 2 ** g.num_edges(), standard_graph("path", 1), "sprout", ["v0"], (1, 4))


def test_dyck_trees():
    y = dyck_tree("(()())")
    assert y.num_edges() == 3 and sorted(len(y.incident_edges(v)) for v in y.vertices) == [1, 1, 1, 3]
    from graphminor.graphs import is_isomorphic

    assert is_isomorphic(dyck_tree("()()()"), y)
    assert dyck_tree("").num_edges() == 0
    for w in ("(()", "())", "(a)"):
        with pytest.raises(Unbalanced):
            dyck_tree(w)


def test_catalan_series():
    assert hd_series(constant_module(), 5) == [1, 1, 2, 5, 14, 42]
    counts = [len(dyck_words(n)) for n in range(8)]
    for n in range(1, 8):
        assert counts[n] == sum(counts[k] * counts[n - 1 - k] for k in range(n))
    with pytest.raises(TooLarge):
        hd_series(constant_module(), 9)
