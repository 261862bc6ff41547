"""Quick invariant suite behind the ``verify`` command.

Each check returns (ok, detail). The suite is sized to finish in well under a
minute; the heavy instances live in the test suite.
"""

from __future__ import annotations

import time

import networkx as nx

from . import tables
from .buchstaber import complex_of_graph, omega, s_p, s_p_graph_formula, skeleton_checks
from .complex import projective_plane_6
from .products import cup_length
from .tor.betti import betti_recursion, betti_via_cohomology, betti_via_hochster_euler, betti_via_morse
from .tor.koszul import all_cells, differential, verify_matching
from .tor.torsion import torsion_check
from .universal import build, check_structure_maps, f_vector_closed


def check_structure_maps_small():
    bad = [(p, n) for p, n in [(2, 2), (2, 3), (3, 2)] if not check_structure_maps(p, n).ok]
    return not bad, f"failures: {bad}" if bad else "phi, xi simplicial and nondegenerate"


def check_f_vectors():
    cases = [("X", 2, 3), ("K", 2, 3), ("X", 3, 2), ("K", 3, 3), ("X", 5, 2)]
    bad = [c for c in cases if build(*c).base.f_vector() != f_vector_closed(*c)]
    return not bad, f"mismatches: {bad}" if bad else f"{len(cases)} complexes"


def check_d_squared():
    K = build("X", 2, 3).base
    for cell in all_cells(K):
        total: dict = {}
        for c1, a in differential(K, cell).items():
            for c2, b in differential(K, c1).items():
                total[c2] = total.get(c2, 0) + a * b
        if any(total.values()):
            return False, f"d^2 != 0 at {cell}"
    return True, "d^2 = 0 on every cell of R*(X(F_2^3))"


def check_matching():
    probs = []
    for fam, p, n in [("X", 2, 3), ("K", 3, 2)]:
        rep = verify_matching(build(fam, p, n).base)
        if not rep.ok:
            probs.append((fam, p, n, rep.problems[:3]))
    return not probs, str(probs) if probs else "all matching conditions hold"


def check_betti_agreement():
    bad = []
    for fam, p, n in [("X", 2, 2), ("X", 2, 3), ("K", 3, 2), ("K", 2, 3)]:
        K = build(fam, p, n).base
        tabs = [betti_via_morse(K), betti_via_hochster_euler(K), betti_via_cohomology(K), betti_recursion(fam, p, n)]
        if not all(t.same_values(tabs[0]) for t in tabs):
            bad.append((fam, p, n))
    return not bad, f"disagreement on {bad}" if bad else "four methods agree"


def check_tables():
    problems = tables.diff(3, tables.compute(3, "recursion")) + tables.diff(4, tables.compute(4, "recursion"))
    return not problems, "; ".join(problems[:5]) or "both published tables reproduced"


def check_torsion():
    free = torsion_check(build("X", 2, 3).base).torsion_free
    rp2 = torsion_check(projective_plane_6()).factors()
    return free and rp2 == [2], f"X(F_2^3) torsion-free: {free}; RP^2 factors: {rp2}"


def check_cup_length():
    bad = []
    for fam, p, n, want in [("X", 3, 2, 2), ("X", 3, 3, 3), ("K", 2, 4, 2), ("K", 3, 3, 1)]:
        r = cup_length(build(fam, p, n))
        if (r.lower, r.upper) != (want, want):
            bad.append((fam, p, n, r.lower, r.upper))
    return not bad, str(bad) if bad else "bounds coincide"


def check_buchstaber():
    bad = []
    for G in [nx.cycle_graph(5), nx.complete_graph(4), nx.petersen_graph()]:
        for p in (2, 3):
            if s_p(complex_of_graph(G), p, use_bounds=False).value != s_p_graph_formula(G, p):
                bad.append((G.number_of_nodes(), p))
    sk = skeleton_checks(2, 3)
    om = (omega(2, 3, 2).value, omega(3, 2, 2).value)
    ok = not bad and sk.ok and om == (2, 3)
    return ok, f"graph mismatches {bad}, skeleton failures {sk.failures}, omega {om}"


CHECKS = {
    "structure maps": check_structure_maps_small,
    "f-vectors": check_f_vectors,
    "d^2 = 0": check_d_squared,
    "Morse matching": check_matching,
    "Betti agreement": check_betti_agreement,
    "Betti tables": check_tables,
    "torsion": check_torsion,
    "cup length": check_cup_length,
    "Buchstaber": check_buchstaber,
}


def run_all(names=None):
    """Yield (name, ok, detail, seconds) for each selected check."""
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield name, ok, detail, time.perf_counter() - t
