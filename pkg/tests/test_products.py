import pytest

from unicomplex.complex import simplex
from unicomplex.errors import PreconditionError
from unicomplex.lattice import FpVector, canonical_line
from unicomplex.products import (
    JoinWitness,
    cup_length,
    cup_length_lower,
    cup_length_upper,
    full_subcomplex_of,
    join_condition,
    ls_category_interval,
    smallest_nonface_size,
)
from unicomplex.universal import build, build_K, build_X


def line(p, *coords):
    return canonical_line(FpVector(p, coords))


def test_join_condition_antipodal_pairs():
    assert join_condition([[(1, 0), (2, 0)], [(0, 1), (0, 2)]], 3)


def test_join_condition_line_triples():
    p = 5
    first = [line(p, 1, 0, 0, 0), line(p, 0, 1, 0, 0), line(p, 1, 1, 0, 0)]
    second = [line(p, 0, 0, 1, 0), line(p, 0, 0, 0, 1), line(p, 0, 0, 1, 1)]
    assert join_condition([first, second], p)


def test_join_condition_dependent_spans():
    # span{e1} and span{e1+e2, e2} overlap, so 1 + 2 != 2
    assert not join_condition([[(1, 0)], [(1, 1), (0, 1)]], 2)


def test_join_condition_rejects_shared_labels():
    with pytest.raises(PreconditionError):
        join_condition([[(1, 0)], [(1, 1), (1, 0)]], 2)


def test_join_condition_rejects_bad_parts():
    with pytest.raises(PreconditionError):
        join_condition([[(1, 0)], []], 3)
    with pytest.raises(PreconditionError):
        join_condition([[(1, 0)], [(0, 1, 0)]], 3)


def test_join_full_subcomplex_is_join():
    U = build_X(3, 2)
    k, w = cup_length_lower(U, greedy=False)
    assert k == 2
    union = full_subcomplex_of(U, [v for part in w.parts for v in part])
    # two copies of S^0 joined: a square
    assert union.f_vector() == (1, 4, 4)


def test_x_3_2_witness_is_antipodal_pairs():
    U = build_X(3, 2)
    k, w = cup_length_lower(U)
    assert k == 2
    assert sorted(map(sorted, w.labels(U))) == [[[0, 1], [0, 2]], [[1, 0], [2, 0]]]
    assert w.degrees == (0, 0)
    assert w.validate(U)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_k_rank_two_has_triangle_witness(p):
    U = build_K(p, 2)
    k, w = cup_length_lower(U)
    assert k == 1 and len(w.parts[0]) == 3 and w.degrees == (1,)


def test_broken_witness_fails_validation():
    U = build_X(3, 2)
    e1, e2 = U.index_of(FpVector(3, (1, 0))), U.index_of(FpVector(3, (0, 1)))
    assert not JoinWitness(((e1, e2),), (0,)).validate(U)
    assert not JoinWitness(((e1,), (e1,)), (0, 0)).validate(U)


@pytest.mark.parametrize("family,p,n,want", [
    ("X", 3, 2, 2), ("X", 3, 3, 3), ("X", 5, 2, 2),
    ("K", 2, 2, 1), ("K", 2, 3, 1), ("K", 3, 2, 1), ("K", 2, 4, 2),
])
def test_bounds_coincide(family, p, n, want):
    rep = cup_length(build(family, p, n))
    assert rep.lower == rep.upper == want
    assert rep.coincide


def test_k_3_5_upper():
    assert cup_length_upper(build_K(3, 5)) == 2


def test_simplex_control():
    assert cup_length_upper(simplex(4)) == 0
    assert smallest_nonface_size(simplex(4)) is None


def test_x_mod_two_is_flagged():
    rep = cup_length(build_X(2, 3))
    assert rep.lower == rep.upper == 1
    assert "p = 2" in rep.to_dict()["note"]


def test_ls_interval_contains_cup_length():
    U = build_X(3, 2)
    lo, hi = ls_category_interval(U)
    assert lo == 2 and hi >= lo
