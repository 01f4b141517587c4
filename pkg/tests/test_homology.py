import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphminor.complexes import Builder, SimplicialComplex, d_matching_complex, flag_complex_of_line_graph, matching_complex
from graphminor.errors import BadDegree
from graphminor.graphs import standard_graph
from graphminor.homology import (
    HomologyGroup,
    boundary_matrix,
    cohomology_dimension,
    field_homology_basis,
    homology,
    induced_map_on_homology,
    integral_homology_basis,
    uct_consistency,
)
from graphminor.minors import compose, contract_edge, enumerate_minor_morphisms, identity

from conftest import corpus

HOLLOW = SimplicialComplex("abc", ["ab", "bc", "ac"])
RP2 = SimplicialComplex(
    "123456",
    ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"],
)


def corpus_complexes(max_edges=5):
    out = []
    for g in corpus(max_edges):
        out.append(matching_complex(g))
        out.append(d_matching_complex(g, 2))
        out.append(flag_complex_of_line_graph(g))
    return out


def matmul(a, b, cols):
    """Product of a (rows x inner) and b (inner x cols) given as row lists."""
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def test_hollow_triangle():
    assert homology(HOLLOW, 1) == HomologyGroup(1)
    assert homology(HOLLOW, 0) == HomologyGroup(0)
    assert uct_consistency(HOLLOW, 1, 2)


def test_reduced_conventions():
    empty = SimplicialComplex("a", [()])
    void = SimplicialComplex("a", [])
    assert homology(empty, -1) == HomologyGroup(1)
    assert homology(empty, -1, "Q") == HomologyGroup(1)
    assert homology(HOLLOW, -1) == HomologyGroup(0)
    for i in range(-1, 3):
        assert homology(void, i).is_zero()
    assert homology(SimplicialComplex("a", ["a"]), 0, reduced=False) == HomologyGroup(1)
    with pytest.raises(BadDegree):
        homology(HOLLOW, -2)
    with pytest.raises(BadDegree):
        homology(HOLLOW, -1, reduced=False)


def test_projective_plane():
    assert homology(RP2, 1) == HomologyGroup(0, (2,))
    assert homology(RP2, 2) == HomologyGroup(0)
    assert homology(RP2, 1, 2).free_rank == 1
    assert homology(RP2, 2, 2).free_rank == 1
    assert uct_consistency(RP2, 1, 2) and uct_consistency(RP2, 2, 2)
    assert homology(RP2, 1, "Q").free_rank == 0


def test_matching_complexes_of_complete_graphs():
    assert homology(matching_complex(standard_graph("complete", 4)), 0) == HomologyGroup(2)
    assert homology(matching_complex(standard_graph("complete", 5)), 1) == HomologyGroup(6)
    k7 = matching_complex(standard_graph("complete", 7))
    assert homology(k7, 1) == HomologyGroup(0, (3,))
    assert homology(k7, 2) == HomologyGroup(20)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_two_star_tree_ranks(n):
    delta = matching_complex(standard_graph("two_star_tree", n, n))
    assert homology(delta, 0, reduced=False).free_rank == 2
    assert homology(delta, 1, reduced=False).free_rank == n * n - 2 * n + 1


def test_boundary_squared_zero():
    for delta in corpus_complexes(5):
        if delta.is_void():
            continue
        for k in range(0, delta.dimension + 1):
            for reduced in (True, False):
                assert (boundary_matrix(delta, k, reduced) @ boundary_matrix(delta, k + 1, reduced)).is_zero()


def test_flatness_and_euler_characteristic():
    for delta in corpus_complexes(5):
        top = int(delta.dimension) if not delta.is_void() else -1
        alt = 0
        for i in range(-1, top + 1):
            z = homology(delta, i)
            q = homology(delta, i, "Q")
            assert z.free_rank == q.free_rank
            alt += (-1) ** i * q.free_rank
        assert alt == delta.euler_characteristic(reduced=True)


def test_cohomology_dims_match_homology_over_fields():
    for delta in corpus_complexes(4):
        if delta.is_void():
            continue
        for i in range(-1, delta.dimension + 1):
            for f in ("Q", 2):
                assert cohomology_dimension(delta, i, f) == homology(delta, i, f).free_rank


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(-1, 3))
def test_uct_random_prime(seed, p, i):
    complexes = corpus_complexes(5)
    delta = complexes[seed % len(complexes)]
    assert uct_consistency(delta, i, p)


def test_field_basis_coordinates():
    delta = matching_complex(standard_graph("complete", 5))
    b = field_homology_basis(delta, 1, "Q")
    assert b.dimension == 6
    for k, rep in enumerate(b.representatives):
        coords = b.coordinates(rep)
        assert coords == [Fraction(int(j == k)) for j in range(6)]


def test_integral_basis_torsion_generator():
    delta = matching_complex(standard_graph("complete", 7))
    b = integral_homology_basis(delta, 1)
    assert b.group == HomologyGroup(0, (3,))
    (order, rep), = b.torsion
    assert b.coordinates(rep) == ([], [1])
    assert b.coordinates({k: 3 * v for k, v in rep.items()}) == ([], [0])
    # the representative is a cycle
    d1 = boundary_matrix(delta, 1, True)
    image = {}
    for (r, c), v in d1.entries.items():
        image[r] = image.get(r, 0) + v * rep.get(c, 0)
    assert not any(image.values())


def test_identity_induces_identity_on_k4():
    g = standard_graph("complete", 4)
    mat = induced_map_on_homology(identity(g), Builder.matching(), 0, "Q", reduced=False)
    assert mat == [[int(i == j) for j in range(3)] for i in range(3)]


def test_contraction_sends_point_to_vertex_class():
    g = standard_graph("path", 2)
    _, phi = contract_edge(g, "e2")
    m = induced_map_on_homology(phi, Builder.matching(), 0, "Z", reduced=False)
    assert m.source_group == HomologyGroup(1) and m.target_group == HomologyGroup(2)
    basis = integral_homology_basis(matching_complex(g), 0, reduced=False)
    face_index = {f: k for k, f in enumerate(matching_complex(g).faces(0))}
    e1_class = basis.coordinates({face_index[("e1",)]: 1})[0]
    assert [row[0] for row in m.free] == e1_class


def test_functoriality_over_q(small_graphs):
    graphs = list(small_graphs)
    for builder in (Builder.matching(), Builder.d_matching(2)):
        for i in (0, 1):
            def induced(phi):
                return induced_map_on_homology(phi, builder, i, "Q", reduced=False)

            def dim(g):
                return homology(builder(g), i, "Q", reduced=False).free_rank

            for g in graphs:
                n = dim(g)
                assert induced(identity(g)) == [[int(r == c) for c in range(n)] for r in range(n)]
            for g, h, k in itertools.product(graphs, repeat=3):
                for phi in enumerate_minor_morphisms(g, h):
                    for psi in enumerate_minor_morphisms(h, k):
                        assert induced(compose(phi, psi)) == matmul(induced(phi), induced(psi), dim(k))
