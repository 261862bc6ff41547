import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unicomplex import SimplicialComplex, build_X
from unicomplex.complex import (
    graph_complex,
    mask_of,
    projective_plane_6,
    reduced_cohomology,
    simplex,
    skeleton_of_simplex,
    uniform_matroid,
)
from unicomplex.errors import ConstructionError, PreconditionError

TRIANGLE = graph_complex(3, [(0, 1), (1, 2), (0, 2)])


def test_membership():
    assert simplex(2).is_simplex([0, 2])
    assert not TRIANGLE.is_simplex([0, 1, 2])
    X = build_X(2, 2)
    e1, e2 = X.index_of(X.labels[1]), X.index_of(X.labels[0])
    e12 = X.index_of(X.labels[2])
    assert X.base.is_simplex([e1, e12]) and X.base.is_simplex([e2, e12])


def test_out_of_range_vertex():
    with pytest.raises(ConstructionError):
        SimplicialComplex.from_facets(3, [[0, 3]])


def test_facets_are_maximal():
    K = SimplicialComplex.from_facets(4, [[0, 1, 2], [0, 1], [2, 3], [3]])
    assert K.facets == [(0, 1, 2), (2, 3)]


def test_full_subcomplex_and_link():
    edge = simplex(2).full_subcomplex([0, 1])
    assert edge.facets == [(0, 1)] and edge.vertex_map == (0, 1)
    lk = TRIANGLE.link([0])
    assert lk.m == 2 and lk.facets == [(0,), (1,)] and lk.vertex_map == (1, 2)
    with pytest.raises(PreconditionError):
        TRIANGLE.link([0, 1, 2])


def test_link_in_X_2_3():
    assert build_X(2, 3).base.link([0]).f_vector() == (1, 6, 12)


def test_f_vectors_and_euler():
    assert simplex(2).f_vector() == (1, 3, 3, 1)
    assert simplex(2).euler_characteristic() == 1
    assert TRIANGLE.f_vector() == (1, 3, 3)
    assert TRIANGLE.euler_characteristic() == 0 and TRIANGLE.reduced_euler() == -1
    assert build_X(3, 2).base.f_vector() == (1, 8, 24)


def test_matroid_examples():
    assert build_X(2, 3).base.is_matroid()
    assert not SimplicialComplex.from_facets(4, [[0, 1], [2, 3]]).is_matroid()
    assert uniform_matroid(2, 4).is_matroid()
    assert build_X(2, 3).base.matroid_rank() == 3
    with pytest.raises(PreconditionError):
        SimplicialComplex.from_facets(3, [[0, 1], [2]]).matroid_rank()


def test_minimal_nonsimplices_examples():
    X = build_X(2, 2)
    assert X.base.minimal_nonsimplices(2) == [(0, 1, 2)]
    assert len(build_X(3, 2).base.minimal_nonsimplices(1)) == 4
    assert all(not simplex(2).minimal_nonsimplices(j) for j in (1, 2, 3))


def test_minimal_nonsimplices_are_minimal():
    K = build_X(3, 2).base
    for j in (1, 2):
        for s in K.minimal_nonsimplices(j):
            assert not K.is_simplex(s)
            assert all(K.is_simplex([v for v in s if v != u]) for u in s)


def test_cohomology_examples():
    assert reduced_cohomology(TRIANGLE).nonzero() == {1: 1}
    assert reduced_cohomology(build_X(2, 3).base).nonzero() == {2: 13}
    H = reduced_cohomology(projective_plane_6(), "Z")
    assert {d: f for d, f in H.torsion.items() if f} == {2: [2]} and H.nonzero() == {}
    assert reduced_cohomology(projective_plane_6(), 2).nonzero() == {1: 1, 2: 1}
    assert reduced_cohomology(simplex(3), "F3").nonzero() == {}


def test_empty_complex_has_degree_minus_one_class():
    assert reduced_cohomology(SimplicialComplex(0, [])).nonzero() == {-1: 1}


def test_skeletons():
    k4 = skeleton_of_simplex(3, 1)
    assert k4.f_vector() == (1, 4, 6)
    assert skeleton_of_simplex(4, 4) == simplex(4)
    assert skeleton_of_simplex(2, 1) == TRIANGLE


def test_json_round_trip():
    X = build_X(3, 2)
    K = X.base
    again = SimplicialComplex.from_json(K.to_json())
    assert again == K and again.to_json() == K.to_json()
    with pytest.raises(ConstructionError):
        SimplicialComplex.from_dict({"version": 99, "m": 1, "facets": [[0]]})


def _random_complex(seed, m=6):
    rng = random.Random(seed)
    facets = [rng.sample(range(m), rng.randint(1, 4)) for _ in range(rng.randint(1, 6))]
    return SimplicialComplex.from_facets(m, facets)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_euler_poincare(seed):
    K = _random_complex(seed)
    f = K.f_vector()
    assert sum((-1) ** i * f[i + 1] for i in range(len(f) - 1)) == K.euler_characteristic()
    H = reduced_cohomology(K, "Q")
    assert sum((-1) ** d * r for d, r in H.ranks.items()) == K.reduced_euler()
    # torsion-free ranks over Z match Q
    assert reduced_cohomology(K, "Z").ranks == H.ranks


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 2)]), st.integers(0, 10**6))
def test_full_subcomplex_of_matroid_is_matroid(pn, seed):
    K = build_X(*pn).base
    rng = random.Random(seed)
    J = [v for v in range(K.m) if rng.random() < 0.6]
    assert K.full_subcomplex(J).is_matroid()


def test_matroid_cohomology_concentrated_on_X_2_3():
    K = build_X(2, 3).base
    for J in range(1, 1 << K.m):
        sub = K.full_subcomplex([v for v in range(K.m) if J >> v & 1])
        r = sub.matroid_rank()
        H = reduced_cohomology(sub).nonzero()
        assert set(H) <= {r - 1}
        assert H.get(r - 1, 0) == (-1) ** (r - 1) * sub.reduced_euler()


def test_mask_helper():
    assert mask_of([0, 3]) == 0b1001
