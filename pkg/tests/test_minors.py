import itertools
from math import comb

import pytest

from graphminor.errors import ContractLoop, Mismatch, TooLarge, WouldDisconnect
from graphminor.graphs import Arrow, automorphism_group_order, point, spanning_tree_count, standard_graph
from graphminor.minors import (
    STAR,
    compose,
    contract_edge,
    delete_edge,
    edge_injection,
    enumerate_minor_morphisms,
    from_edge_map,
    identity,
    is_valid,
    morphism_from_json,
    validate,
)

from conftest import corpus


def brute_homs(g, h):
    """Every total map built from a vertex map and per-edge fates that passes validate()."""
    found = set()
    fates_per_edge = []
    for e in g.edges:
        opts = ["*"] + [{"vertex": w} for w in h.vertices]
        opts += [{"edge": f, "orientation": s} for f in h.edges for s in (1, -1)]
        fates_per_edge.append(opts)
    for images in itertools.product(h.vertices, repeat=g.num_vertices()):
        vmap = dict(zip(g.vertices, images))
        for fates in itertools.product(*fates_per_edge):
            phi = from_edge_map(g, h, vmap, dict(zip(g.edges, fates)))
            if is_valid(phi):
                found.add(phi.key())
    return found


def test_identity_valid(small_graphs):
    for g in small_graphs:
        assert validate(identity(g)) == []


def test_enumeration_matches_brute_force():
    graphs = [g for g in corpus(3, include_empty=True) if g.num_vertices() <= 3]
    for g in graphs:
        for h in graphs:
            if h.num_edges() > g.num_edges() or (g.num_edges() == 3 and h.num_edges() > 1):
                continue
            fast = enumerate_minor_morphisms(g, h)
            assert all(is_valid(phi) for phi in fast)
            assert {phi.key() for phi in fast} == brute_homs(g, h), (g.to_json(), h.to_json())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cayley_count(n):
    assert len(enumerate_minor_morphisms(standard_graph("complete", n), point())) == n ** (n - 2)


def test_homs_to_point_are_spanning_trees():
    for g in corpus(4):
        assert len(enumerate_minor_morphisms(g, point())) == spanning_tree_count(g)


def test_endomorphisms_are_automorphisms():
    for g in corpus(4, include_empty=True):
        assert len(enumerate_minor_morphisms(g, g)) == automorphism_group_order(g)


def test_no_duplicates():
    g = standard_graph("loop_bouquet", 2)
    h = standard_graph("cycle", 1)
    homs = enumerate_minor_morphisms(g, h)
    assert len({m.key() for m in homs}) == len(homs) > 0


def test_delete_and_contract():
    g = standard_graph("cycle", 3)
    h, phi = delete_edge(g, "e1")
    assert h.num_edges() == 2 and is_valid(phi)
    with pytest.raises(WouldDisconnect):
        delete_edge(h, "e2")
    k, psi = contract_edge(g, "e1")
    assert k.num_vertices() == 2 and is_valid(psi)
    loop = standard_graph("cycle", 1)
    with pytest.raises(ContractLoop):
        contract_edge(loop, "e1")


def test_compose_and_injection():
    g = standard_graph("complete", 4)
    h, phi = contract_edge(g, "e1_2")
    k, psi = delete_edge(h, "e3_4")
    chi = compose(phi, psi)
    assert is_valid(chi)
    inj = edge_injection(chi)
    assert set(inj) == set(k.edges)
    assert all(inj[f] == edge_injection(phi)[edge_injection(psi)[f]] for f in k.edges)
    with pytest.raises(Mismatch):
        compose(psi, phi)


def test_composition_of_enumerated_is_valid(small_graphs):
    for g, h, k in itertools.product(small_graphs, repeat=3):
        if not (g.num_edges() >= h.num_edges() >= k.num_edges()) or g.num_edges() > 2:
            continue
        for phi in enumerate_minor_morphisms(g, h):
            for psi in enumerate_minor_morphisms(h, k):
                assert is_valid(compose(phi, psi))


def test_each_axiom_detected():
    g = standard_graph("path", 1)
    good = identity(g)
    bad_star = dict(good.mapping)
    bad_star[STAR] = "v0"
    assert any(v.axiom == 1 for v in validate(type(good)(g, g, bad_star)))
    swapped = dict(good.mapping)
    swapped["v0"] = "v1"  # commuting square and tree fibers fail
    axioms = {v.axiom for v in validate(type(good)(g, g, swapped))}
    assert 4 in axioms and 6 in axioms
    flip = dict(good.mapping)
    flip[Arrow("e1", -1)] = Arrow("e1", 1)  # breaks the involution and bijectivity
    axioms = {v.axiom for v in validate(type(good)(g, g, flip))}
    assert 7 in axioms and 3 in axioms


def test_json_round_trip():
    g = standard_graph("cycle", 3)
    for phi in enumerate_minor_morphisms(g, standard_graph("cycle", 1)):
        assert morphism_from_json(g, phi.target, phi.to_json()) == phi


def test_enumeration_limit():
    with pytest.raises(TooLarge):
        enumerate_minor_morphisms(standard_graph("complete", 5), point(), limit=5)


def test_bound_holds_on_small_corpus():
    for g in corpus(4, include_empty=True):
        for h in corpus(2, include_empty=True):
            count = len(enumerate_minor_morphisms(g, h))
            e, e2 = g.num_edges(), h.num_edges()
            dg = g.genus() - h.genus()
            bound = automorphism_group_order(h) * comb(e, e2) * comb(e - e2, dg) if 0 <= dg <= e - e2 and e2 <= e else 0
            assert count <= bound
