"""Acceptance criteria, one test each.

Every test prints a single ``PASS`` or ``FAIL`` line (with timing) before it
asserts, so ``pytest -v tests/test_acceptance.py`` doubles as a report.
"""

import itertools
import time
from math import comb

import pytest

from graphminor.arrangements import lc_two_star_matches_bipartite, os_rank_check
from graphminor.commalg import betti_table
from graphminor.complexes import Builder, matching_complex
from graphminor.families import constant_module, enumerate_graphs, hd_series, hom_bound
from graphminor.graphs import automorphism_group_order, point, standard_graph
from graphminor.homology import boundary_matrix, homology, induced_map_on_homology, uct_consistency
from graphminor.linalg import SparseIntMatrix, determinant, smith_normal_form
from graphminor.minors import compose, enumerate_minor_morphisms, identity

from conftest import corpus


def emit(capsys, number, ok, detail, started):
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - started:.2f}s) {detail}")


def test_criterion_01_known_matching_complexes(capsys):
    t = time.perf_counter()
    m4 = matching_complex(standard_graph("complete", 4))
    h0, h1 = homology(m4, 0), homology(m4, 1)
    fast4 = time.perf_counter() - t
    t5 = time.perf_counter()
    m5 = matching_complex(standard_graph("complete", 5))
    petersen = len(m5.faces(0)) == 10 and len(m5.faces(1)) == 15 and m5.dimension == 1
    h5 = homology(m5, 1)
    fast5 = time.perf_counter() - t5
    ok = (
        (h0.free_rank, h0.torsion) == (2, ())
        and h1.is_zero()
        and petersen
        and (h5.free_rank, h5.torsion) == (6, ())
        and fast4 < 1
        and fast5 < 1
    )
    emit(capsys, 1, ok, f"M(K4): H0={h0} H1={h1}; M(K5): H1={h5}", t)
    assert ok


def test_criterion_02_torsion_in_degree_two_of_k7(capsys):
    t = time.perf_counter()
    h2 = homology(matching_complex(standard_graph("complete", 7)), 2)
    elapsed = time.perf_counter() - t
    ok = h2.torsion == (3,) and elapsed < 60
    emit(capsys, 2, ok, f"H2(M(K7);Z) = {h2}, torsion {list(h2.torsion) or 'none'}", t)
    assert ok


def test_criterion_03_connectivity(capsys):
    t = time.perf_counter()
    bad = []
    for n in range(3, 8):
        nu = (n + 1) // 3 - 1
        delta = matching_complex(standard_graph("complete", n))
        for i in range(-1, nu):
            if not homology(delta, i).is_zero():
                bad.append((n, i))
    emit(capsys, 3, not bad, f"nonzero groups below the connectivity bound: {bad}", t)
    assert not bad


def test_criterion_04_two_star_tree(capsys):
    t = time.perf_counter()
    got = {}
    for n in range(2, 6):
        delta = matching_complex(standard_graph("two_star_tree", n, n))
        got[n] = (homology(delta, 0, reduced=False).free_rank, homology(delta, 1, reduced=False).free_rank)
    ok = all(got[n] == (2, (n - 1) ** 2) for n in got)
    emit(capsys, 4, ok, f"(rank H0, rank H1) by n: {got}", t)
    assert ok


def test_criterion_05_cayley(capsys):
    t = time.perf_counter()
    got = {n: len(enumerate_minor_morphisms(standard_graph("complete", n), point())) for n in range(2, 6)}
    ok = all(got[n] == n ** (n - 2) for n in got)
    emit(capsys, 5, ok, f"|Hom(K_n, pt)|: {got}", t)
    assert ok


def test_criterion_06_dimension_bound(capsys):
    t = time.perf_counter()
    sources = corpus(5, include_empty=True)
    targets = corpus(3, include_empty=True)
    violations, pairs = [], 0
    for h in targets:
        aut = automorphism_group_order(h)
        for g in sources:
            pairs += 1
            e, e2 = g.num_edges(), h.num_edges()
            bound = aut * comb(e, e2) * comb(e - e2, g.genus() - h.genus()) if e >= e2 and g.genus() >= h.genus() else 0
            assert bound == hom_bound(g, h)
            count = len(enumerate_minor_morphisms(g, h))
            if count > bound:
                violations.append((g.to_json(), h.to_json(), count, bound))
    emit(capsys, 6, not violations, f"{pairs} pairs checked, {len(violations)} violations", t)
    assert not violations


def test_criterion_07_hochster_vs_koszul(capsys):
    t = time.perf_counter()
    mismatches, tables = [], 0
    for g in corpus(4):
        for char in (0, 2):
            hochster, koszul = betti_table(g, g.num_edges(), char, oracle=True)
            tables += 1
            if hochster.rows() != koszul.rows():
                mismatches.append((g.to_json(), char))
    elapsed = time.perf_counter() - t
    ok = not mismatches and elapsed < 300
    emit(capsys, 7, ok, f"{tables} tables compared, {len(mismatches)} mismatches", t)
    assert ok


def test_criterion_08_arrangement_ranks(capsys):
    t = time.perf_counter()
    failures, checks = [], 0
    for g in corpus(5):
        for d in (1, 2):
            rep = os_rank_check(g, d, 3 * (2 * d - 1))
            checks += 1
            if not rep.ok:
                failures.append(rep.to_json())
    bip = [(a, b) for a in range(1, 5) for b in range(1, 5) if not lc_two_star_matches_bipartite(a, b)]
    ok = not failures and not bip
    emit(capsys, 8, ok, f"{checks} rank checks, {len(failures)} failures; two-star mismatches {bip}", t)
    assert ok


def test_criterion_09_catalan(capsys):
    t = time.perf_counter()
    series = hd_series(constant_module(), 5)
    ok = series == [1, 1, 2, 5, 14, 42]
    emit(capsys, 9, ok, f"series {series}", t)
    assert ok


def _matmul(a, b, cols):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] if b else [0] * cols for row in a]


def test_criterion_10_property_suites(capsys):
    t = time.perf_counter()
    failures = []
    graphs = corpus(6, include_empty=True)
    for g in graphs:
        delta = matching_complex(g)
        top = delta.dimension
        for k in range(0, top + 2):
            for reduced in (True, False):
                d_k, d_next = boundary_matrix(delta, k, reduced), boundary_matrix(delta, k + 1, reduced)
                if not (d_k @ d_next).is_zero():
                    failures.append(("boundary", g.to_json(), k))
            a = boundary_matrix(delta, k, True)
            r = smith_normal_form(a, want_transforms=True)
            f = r.invariant_factors
            if not (
                r.U @ a @ r.V == r.diagonal(a.rows, a.cols)
                and r.U @ r.U_inv == SparseIntMatrix.identity(a.rows)
                and r.V @ r.V_inv == SparseIntMatrix.identity(a.cols)
                and all(f[j + 1] % f[j] == 0 for j in range(len(f) - 1))
            ):
                failures.append(("snf", g.to_json(), k))
            if a.rows <= 12 and a.cols <= 12:
                if abs(determinant(r.U)) != 1 or abs(determinant(r.V)) != 1:
                    failures.append(("unimodular", g.to_json(), k))
        for i in range(-1, top + 1):
            for p in (2, 3, 5, 7):
                if not uct_consistency(delta, i, p):
                    failures.append(("uct", g.to_json(), i, p))
    small = corpus(3, include_empty=True)
    functor_checks = 0
    for builder in (Builder.matching(), Builder.d_matching(2)):
        for i in (0, 1):
            def induced(phi):
                return induced_map_on_homology(phi, builder, i, "Q", reduced=False)

            def dim(g):
                return homology(builder(g), i, "Q", reduced=False).free_rank

            for g in small:
                n = dim(g)
                if induced(identity(g)) != [[int(r == c) for c in range(n)] for r in range(n)]:
                    failures.append(("identity", g.to_json(), i))
            for g, h, k in itertools.product(small, repeat=3):
                for phi in enumerate_minor_morphisms(g, h):
                    for psi in enumerate_minor_morphisms(h, k):
                        functor_checks += 1
                        if induced(compose(phi, psi)) != _matmul(induced(phi), induced(psi), dim(k)):
                            failures.append(("composition", g.to_json(), h.to_json(), k.to_json(), i))
    emit(capsys, 10, not failures, f"{len(graphs)} graphs, {functor_checks} compositions, {len(failures)} failures", t)
    assert not failures
