import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unicomplex import SimplicialComplex, build, build_K, build_X
from unicomplex.complex import graph_complex, projective_plane_6, simplex, uniform_matroid
from unicomplex.errors import PreconditionError, ResourceError
from unicomplex.lattice import gaussian_binomial
from unicomplex.tor import (
    BettiTable,
    KoszulCell,
    betti_recursion,
    betti_recursion_K,
    betti_recursion_X,
    betti_via_cohomology,
    betti_via_hochster_euler,
    betti_via_morse,
    differential,
    morse_matching,
    morse_sets,
    torsion_check,
    verify_matching,
)
from unicomplex.tor.betti import generator_count
from unicomplex.tor.koszul import all_cells, cells_for_support

TRIANGLE = graph_complex(3, [(0, 1), (1, 2), (0, 2)])
TABLE_1 = {(0, 0): 1, (1, 3): 7, (1, 4): 7, (2, 5): 42, (3, 6): 42, (4, 7): 13}


def cell(A=(), B=()):
    return KoszulCell.of(A, B)


def test_cells_for_support():
    assert len(cells_for_support(TRIANGLE, [0, 1])) == 4
    assert cells_for_support(TRIANGLE, []) == [cell()]
    cells = cells_for_support(TRIANGLE, [0, 1, 2])
    assert len(cells) == 7 and cell((), (0, 1, 2)) not in cells
    with pytest.raises(PreconditionError):
        KoszulCell(1, 1)


def test_bidegree():
    assert cell((0,), (1, 2)).bidegree == (-1, 6)


def test_differential_examples():
    assert differential(TRIANGLE, cell((), (0, 1))) == {}
    assert differential(TRIANGLE, cell((0, 1), ())) == {cell((1,), (0,)): -1, cell((0,), (1,)): 1}
    assert differential(TRIANGLE, cell((0,), (1, 2))) == {}


@pytest.mark.parametrize("K", [TRIANGLE, build_X(2, 3).base, build_K(3, 2).base, projective_plane_6()])
def test_d_squared_is_zero(K):
    for c in all_cells(K):
        total = {}
        for c1, a in differential(K, c).items():
            for c2, b in differential(K, c1).items():
                total[c2] = total.get(c2, 0) + a * b
        assert not any(total.values())


def test_morse_sets_examples():
    assert morse_sets(TRIANGLE, cell((0, 1), (2,))) == ((0,), ())
    assert morse_sets(TRIANGLE, cell((1,), (0, 2))) == ((), (0,))
    assert morse_sets(TRIANGLE, cell((0,), (1, 2))) == ((), ())


def test_critical_cells():
    assert sorted(morse_matching(TRIANGLE).critical) == [cell(), cell((0,), (1, 2))]
    assert morse_matching(simplex(2)).critical == [cell()]


@pytest.mark.parametrize("K", [TRIANGLE, simplex(2), build_X(2, 3).base, build_K(3, 2).base, build_X(3, 2).base])
def test_matching_valid(K):
    rep = verify_matching(K)
    assert rep.ok, rep.problems
    assert rep.cells == 2 * rep.matched_pairs + rep.critical


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_matching_on_uniform_matroids(m, seed):
    r = random.Random(seed).randint(0, m)
    assert verify_matching(uniform_matroid(r, m)).ok


def test_non_matroid_rejected():
    two_edges = SimplicialComplex.from_facets(4, [[0, 1], [2, 3]])
    for fn in (betti_via_morse, betti_via_hochster_euler, morse_matching, verify_matching):
        with pytest.raises(PreconditionError):
            fn(two_edges)


def test_betti_small_examples():
    X22 = build_X(2, 2).base
    assert betti_via_morse(X22).nonzero() == {(0, 0): 1, (1, 3): 1}
    assert betti_via_morse(build_X(2, 3).base).nonzero() == TABLE_1
    assert betti_via_morse(simplex(2)).nonzero() == {(0, 0): 1}
    assert betti_via_hochster_euler(X22).same_values(betti_via_morse(X22))
    assert betti_via_hochster_euler(build_K(3, 2).base).nonzero() == {(0, 0): 1, (1, 3): 4, (2, 4): 3}


def test_cohomology_oracle_examples():
    assert betti_via_cohomology(TRIANGLE).nonzero() == {(0, 0): 1, (1, 3): 1}
    two_edges = SimplicialComplex.from_facets(4, [[0, 1], [2, 3]])
    t = betti_via_cohomology(two_edges)
    assert t[(1, 2)] == 4
    # direct count: a pair is a non-edge exactly when it crosses the components
    assert t.nonzero() == {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}
    assert betti_via_cohomology(build_X(2, 3).base).nonzero() == TABLE_1
    with pytest.raises(ResourceError):
        betti_via_cohomology(simplex(16))


@pytest.mark.parametrize(
    "family,p,n", [("X", 2, 2), ("X", 2, 3), ("X", 3, 2), ("K", 2, 3), ("K", 3, 2), ("K", 5, 2), ("K", 3, 3)]
)
def test_four_methods_agree(family, p, n):
    K = build(family, p, n).base
    ref = betti_recursion(family, p, n)
    assert betti_via_morse(K).same_values(ref)
    assert betti_via_hochster_euler(K).same_values(ref)
    assert betti_via_cohomology(K).same_values(ref)


@pytest.mark.slow
def test_cohomology_oracle_on_X_2_4():
    K = build_X(2, 4).base
    assert betti_via_cohomology(K).same_values(betti_recursion_X(2, 4))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_methods_agree_on_uniform_matroids(m, seed):
    r = random.Random(seed).randint(0, m)
    K = uniform_matroid(r, m)
    a = betti_via_morse(K)
    assert a.same_values(betti_via_hochster_euler(K))
    assert a.same_values(betti_via_cohomology(K))


def test_recursion_tables():
    assert betti_recursion_X(2, 3).nonzero() == TABLE_1
    t = betti_recursion_X(2, 4)
    assert t.layout_entry(4, 10) == 163548 and t.layout_entry(2, 3) == 35
    assert betti_recursion_X(2, 4).same_values(betti_recursion_K(2, 4))


@pytest.mark.parametrize("family,p,n", [("X", 2, 4), ("X", 3, 3), ("K", 3, 4), ("X", 5, 2)])
def test_recursion_part_a(family, p, n):
    tables = {s: betti_recursion(family, p, s) for s in range(1, n + 1)}
    top = tables[n]
    for (i, j), v in top.nonzero().items():
        s = j - i
        if s < n:
            lower = tables[s][(i, j)] if s else (1 if (i, j) == (0, 0) else 0)
            assert v == gaussian_binomial(n, s, p) * lower


@pytest.mark.parametrize("family,p,n", [("X", 2, 4), ("X", 3, 3), ("K", 3, 4), ("K", 5, 3)])
def test_euler_consistency(family, p, n):
    """sum_i (-1)^i beta^{-i,2j} equals the alternating count of generators in degree 2j."""
    from unicomplex.universal import f_vector_closed

    t = betti_recursion(family, p, n)
    f = f_vector_closed(family, p, n)
    m = f[1]
    for j in range(m + 1):
        lhs = sum((-1) ** i * t[(i, j)] for i in range(j + 1))
        rhs = sum((-1) ** i * generator_count(f, m, i, j) for i in range(j + 1))
        assert lhs == rhs


def test_betti_invariants_on_recursion():
    t = betti_recursion_K(3, 3)
    assert t[(0, 0)] == 1
    assert all(j - i <= 3 and j <= 13 for (i, j) in t.nonzero())


def test_table_serialization():
    t = betti_recursion_X(2, 3)
    again = BettiTable.from_dict(t.to_dict())
    assert again.same_values(t)
    assert '"beta": "13"' in t.to_json()
    csv = t.to_csv(3, 7).splitlines()
    assert csv[0] == "l\\i,1,2,3,4,5,6,7" and csv[3] == "3,0,0,0,7,42,42,13"
    assert "13" in t.format_table(3, 7)


def test_torsion():
    assert torsion_check(build_X(2, 3).base).torsion_free
    assert torsion_check(simplex(2)).torsion_free
    rep = torsion_check(projective_plane_6())
    assert not rep.torsion_free and rep.factors() == [2]


@pytest.mark.slow
def test_torsion_X_2_4():
    assert torsion_check(build_X(2, 4).base).torsion_free


def test_large_entries():
    (ij, v) = betti_recursion_X(3, 4).max_entry()
    assert ij == (38, 42) and 0.95 <= 6e27 / v <= 1.05
    (ij, v) = betti_recursion_K(3, 4).max_entry()
    assert ij == (18, 22) and 0.95 <= 4.3e14 / v <= 1.05
    assert math.log10(v) > 14
