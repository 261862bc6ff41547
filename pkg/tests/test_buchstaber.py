import itertools

import networkx as nx
import pytest

from unicomplex.buchstaber import (
    bounds_report,
    chromatic_number,
    complex_of_graph,
    f_vector_monotone,
    find_map,
    injectivity_check,
    is_nondegenerate,
    iter_nondegenerate_maps,
    min_target_rank,
    omega,
    omega_bounds,
    s_p,
    s_p_graph_formula,
    skeleton_checks,
    theta_bounds,
)
from unicomplex.complex import SimplicialComplex, skeleton_of_simplex
from unicomplex.errors import PreconditionError
from unicomplex.universal import build, build_K, build_X

TRIANGLE = SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)])


def tetra_boundary():
    return skeleton_of_simplex(3, 2)


def test_nondegenerate_examples():
    assert is_nondegenerate(TRIANGLE, 2, 2, [(1, 0), (0, 1), (1, 1)])
    edge = SimplicialComplex.from_facets(2, [(0, 1)])
    assert not is_nondegenerate(edge, 2, 2, [(1, 0), (1, 0)])
    U = build_K(3, 2)
    assert is_nondegenerate(U.base, 3, 2, U.vectors)


def test_nondegenerate_rejects_partial_assignment():
    with pytest.raises(PreconditionError):
        is_nondegenerate(TRIANGLE, 2, 2, [(1, 0)])


def test_chromatic_numbers():
    assert chromatic_number(complex_of_graph(nx.cycle_graph(5))) == 3
    assert chromatic_number(build_K(2, 2).base) == 3
    for m in range(1, 6):
        assert chromatic_number(skeleton_of_simplex(m, 1)) == m + 1
    assert chromatic_number(complex_of_graph(nx.petersen_graph())) == 3


def test_cycles():
    assert s_p(TRIANGLE, 2).value == 1
    assert s_p(TRIANGLE, 2).r == 2
    c5 = complex_of_graph(nx.cycle_graph(5))
    assert s_p(c5, 2).value == 3


@pytest.mark.parametrize("p,want", [(2, 1), (3, 2)])
def test_complete_graph_k4(p, want):
    G = nx.complete_graph(4)
    assert s_p_graph_formula(G, p) == want
    assert s_p(complex_of_graph(G), p, use_bounds=False).value == want


def test_petersen():
    G = nx.petersen_graph()
    assert s_p_graph_formula(G, 2) == 8
    rep = s_p(complex_of_graph(G), 2, use_bounds=False)
    assert rep.value == 8 and rep.r == 2


def test_graph_formula_needs_a_graph():
    with pytest.raises(PreconditionError):
        s_p_graph_formula(tetra_boundary(), 2)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("p", [2, 3])
def test_graph_formula_agrees_on_small_graphs(p, n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1, 1 << len(pairs)):
        G = nx.Graph(e for i, e in enumerate(pairs) if bits >> i & 1)
        if G.number_of_nodes() != n or not nx.is_connected(G):
            continue
        assert s_p(complex_of_graph(G), p, use_bounds=False).value == s_p_graph_formula(G, p)


def test_tetra_boundary_bounds():
    rep = bounds_report(tetra_boundary(), 2)
    assert (rep.s_lower, rep.s_upper) == (0, 1)
    assert s_p(tetra_boundary(), 2).value in (0, 1)


def test_x_2_3_upper_bound():
    rep = bounds_report(build_X(2, 3).base, 2)
    assert rep.s_upper == 4


def test_discrete_complex():
    K = SimplicialComplex.from_facets(4, [(0,), (1,), (2,), (3,)])
    rep = bounds_report(K, 3)
    assert rep.s_lower == rep.s_upper == 3
    assert s_p(K, 3).value == 3


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_universal_complex_value(p, n):
    U = build_K(p, n)
    rep = s_p(U, p)
    assert rep.value == U.m - n
    assert is_nondegenerate(U.base, p, rep.r, rep.assignment)


def test_pure_search_on_universal_complex():
    U = build_K(2, 3)
    assert min_target_rank(U.base, 2, use_bounds=False) == 3
    assert find_map(U.base, 2, 2)[0] is None


def test_budget_exhaustion_returns_bounds():
    G = nx.petersen_graph()
    rep = s_p(complex_of_graph(G), 3, budget=5, use_bounds=False)
    assert not rep.exact and rep.value is None
    assert rep.s_lower <= rep.s_upper
    with pytest.raises(PreconditionError):
        min_target_rank(complex_of_graph(G), 3, budget=5, use_bounds=False)


def test_found_rank_respects_dimension():
    for K in [tetra_boundary(), build_X(3, 2).base, skeleton_of_simplex(4, 2)]:
        rep = s_p(K, 2)
        assert rep.r >= K.dim + 1
        assert is_nondegenerate(K, 2, rep.r, rep.assignment)


def test_injectivity_exhaustive():
    K = build_K(2, 2).base
    maps = list(iter_nondegenerate_maps(K, 3, 2))
    assert maps
    for a in maps:
        assert len(set(a)) == 3
        assert injectivity_check(2, 3, 2, 2, a)
    assert f_vector_monotone(2, 2, 3, 2)


def test_identity_is_injective():
    U = build_K(3, 2)
    assert injectivity_check(3, 3, 2, 2, U.vectors)


def test_map_decreases_invariant_by_at_most_vertex_difference():
    # the 5-cycle maps nondegenerately onto the triangle K(F_2^2) by a 3-coloring
    c5 = complex_of_graph(nx.cycle_graph(5))
    tri = build_K(2, 2).base
    coloring = [0, 1, 0, 1, 2]
    lines = build_K(2, 2).vectors
    assert is_nondegenerate(c5, 2, 2, [lines[c] for c in coloring])
    assert s_p(c5, 2).value - s_p(tri, 2).value >= c5.m - tri.m


def test_skeletons():
    for p in (2, 3):
        rep = skeleton_checks(p, 3)
        assert rep.ok, rep.failures
        for m in range(4):
            assert rep.values[(m, 0)] == m
    assert s_p(skeleton_of_simplex(3, 1), 2).value == 1
    assert s_p(skeleton_of_simplex(2, 1), 2).value == 1


def test_omega_values():
    assert omega(2, 3, 2).value == 2
    assert omega(3, 2, 2).value == 3
    for p in (2, 3):
        for n in (1, 2, 3):
            assert omega(p, p, n).value == n


def test_omega_monotone():
    for p, q in [(2, 3), (3, 2), (2, 5)]:
        vals = [omega(p, q, n).value for n in (1, 2, 3)]
        assert None not in vals
        assert vals == sorted(vals)
        for n, v in zip((1, 2, 3), vals):
            lo, hi = omega_bounds(p, q, n)
            assert lo <= v <= hi


def test_omega_too_large_is_bounds_only():
    res = omega(5, 2, 4)
    assert res.value is None and "bounds" in res.flagged
    assert res.lower <= res.upper


def test_theta_bounds():
    assert theta_bounds(2, 2) == (2, 3)
    lo, hi = theta_bounds(3, 3)
    assert lo <= hi == 13
    with pytest.raises(PreconditionError):
        theta_bounds(4, 2)


def test_non_prime_rejected():
    with pytest.raises(PreconditionError):
        s_p(TRIANGLE, 4)
    with pytest.raises(PreconditionError):
        omega(2, 6, 2)


def test_report_round_trip():
    d = s_p(build("K", 2, 2), 2).to_dict()
    assert d["value"] == 1 and d["s_p_interval"] == [1, 1]
