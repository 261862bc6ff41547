"""Bigraded Betti numbers beta^{-i,2j} of Stanley-Reisner rings.

Four independent routes:

* ``morse``: count critical cells of the Morse matching, support by support;
* ``euler-oracle``: Hochster's formula with matroid concentration, using the
  reduced Euler characteristic and rank of every full subcomplex;
* ``cohomology-oracle``: Hochster's formula with explicit coboundary ranks;
* ``recursion``: closed recursions for X(F_p^n) and K(F_p^n).

A :class:`BettiTable` maps (i, j) to beta^{-i,2j}.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..complex import SimplicialComplex, cohomology_of_face_groups, submasks
from ..errors import ConsistencyError, PreconditionError, ResourceError
from ..lattice import gaussian_binomial, is_prime
from ..universal import f_vector_closed
from .koszul import _require_matroid, classify, extension_masks

METHODS = ("morse", "recursion", "euler-oracle", "cohomology-oracle")

DEFAULT_MORSE_CAP = 20
DEFAULT_EULER_CAP = 24
DEFAULT_COHOMOLOGY_CAP = 16


@dataclass
class BettiTable:
    method: str
    values: dict = field(default_factory=dict)  # (i, j) -> beta^{-i,2j}

    def __getitem__(self, key) -> int:
        return self.values.get(key, 0)

    def add(self, i: int, j: int, amount: int):
        if amount:
            self.values[(i, j)] = self.values.get((i, j), 0) + amount
            if self.values[(i, j)] == 0:
                del self.values[(i, j)]

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.values.items()) if v}

    def same_values(self, other: "BettiTable") -> bool:
        return self.nonzero() == other.nonzero()

    def max_entry(self) -> tuple[tuple[int, int], int]:
        key = max(self.values, key=lambda k: self.values[k])
        return key, self.values[key]

    def layout_entry(self, l: int, col: int) -> int:
        """Entry in row l, column col of the (l, i) layout, i.e. beta^{l-col, 2col}."""
        return self[(col - l, col)]

    def layout_rows(self, rows: int, cols: int) -> list[list[int]]:
        return [[self.layout_entry(l, c) for c in range(1, cols + 1)] for l in range(1, rows + 1)]

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "bidegrees": [{"i": i, "j": j, "beta": str(v)} for (i, j), v in self.nonzero().items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        t = cls(data["method"])
        for e in data["bidegrees"]:
            t.values[(int(e["i"]), int(e["j"]))] = int(e["beta"])
        return t

    def to_csv(self, rows: int, cols: int) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l\\i"] + list(range(1, cols + 1)))
        for l, row in enumerate(self.layout_rows(rows, cols), start=1):
            w.writerow([l] + row)
        return buf.getvalue()

    def format_table(self, rows: int, cols: int) -> str:
        body = self.layout_rows(rows, cols)
        width = max([len(str(x)) for r in body for x in r] + [len(str(cols))])
        lines = ["l\\i " + " ".join(str(c).rjust(width) for c in range(1, cols + 1))]
        for l, r in enumerate(body, start=1):
            lines.append(f"{l:<3} " + " ".join(str(x).rjust(width) for x in r))
        return "\n".join(lines)


def generator_count(f_vector: tuple, m: int, i: int, j: int) -> int:
    """Number of cells u_A v_B in bidegree (-i, 2j): |B| = j - i faces, |A| = i."""
    b = j - i
    if b < 0 or i < 0 or b + 1 > len(f_vector):
        return 0
    return f_vector[b] * math.comb(m - b, i) if m - b >= i else 0


# -- morse ---------------------------------------------------------------------


def betti_via_morse(K: SimplicialComplex, check: bool = True, cap: int = DEFAULT_MORSE_CAP) -> BettiTable:
    """Count critical cells, streaming over supports; no matching is stored.

    For each support M every B inside M that is a face is classified. The
    criticals of one support must all sit in one bidegree, with B maximal in K_M.
    """
    if K.m > cap:
        raise ResourceError(f"{K.m} vertices exceeds the Morse enumeration cap of {cap}")
    _require_matroid(K, check)
    faces = K.faces
    ext = extension_masks(K)
    counts: Counter = Counter()
    for M in range(1 << K.m):
        size = M.bit_count()
        crit_b = -1
        for B in submasks(M):
            if B not in faces:
                continue
            A = M ^ B
            if ext[B] & A:
                continue  # B is not maximal in K_M, so the cell is matched
            kind, _ = classify(ext, A, B)
            if kind != "critical":
                continue
            b = B.bit_count()
            if crit_b < 0:
                crit_b = b
            elif b != crit_b:
                raise ConsistencyError(f"support {M:#x} has criticals in two bidegrees")
            counts[(size - b, size)] += 1
    table = BettiTable("morse")
    for (i, j), v in counts.items():
        table.add(i, j, v)
    return table


# -- Hochster oracles ------------------------------------------------------------


def _zeta_sum(arr: np.ndarray, m: int) -> np.ndarray:
    for bit in range(m):
        view = arr.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    return arr


def _zeta_max(arr: np.ndarray, m: int) -> np.ndarray:
    for bit in range(m):
        view = arr.reshape(-1, 2, 1 << bit)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return arr


def full_subcomplex_invariants(K: SimplicialComplex) -> tuple[np.ndarray, np.ndarray]:
    """Reduced Euler characteristic and largest face size of K_J for every J.

    Both are subset transforms over all 2^m masks J: the Euler characteristic
    sums -(-1)^{|s|} over faces s inside J, the rank takes the max of |s|.
    """
    m = K.m
    size = 1 << m
    chi = np.zeros(size, dtype=np.int64)
    rank = np.zeros(size, dtype=np.int16)
    for s in K.faces:
        c = s.bit_count()
        chi[s] = -1 if c % 2 == 0 else 1
        rank[s] = c
    return _zeta_sum(chi, m), _zeta_max(rank, m)


def _popcounts(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int16)
    for bit in range(m):
        view = pc.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += 1
    return pc


def betti_via_hochster_euler(K: SimplicialComplex, check: bool = True, cap: int = DEFAULT_EULER_CAP) -> BettiTable:
    """beta^{-i,2j} = sum over |J| = j with rank(K_J) = j - i of (-1)^{j-i-1} chi~(K_J)."""
    if K.m > cap:
        raise ResourceError(f"{K.m} vertices exceeds the subset-transform cap of {cap}")
    _require_matroid(K, check)
    chi, rank = full_subcomplex_invariants(K)
    j = _popcounts(K.m).astype(np.int64)
    r = rank.astype(np.int64)
    sign = np.where((r - 1) % 2 == 0, 1, -1)
    contrib = sign * chi
    i = j - r
    key = i * (K.m + 1) + j
    sums = np.zeros((K.m + 1) ** 2, dtype=np.int64)
    np.add.at(sums, key, contrib)
    table = BettiTable("euler-oracle")
    for k in np.nonzero(sums)[0]:
        table.add(int(k // (K.m + 1)), int(k % (K.m + 1)), int(sums[k]))
    return table


def betti_via_cohomology(K: SimplicialComplex, cap: int = DEFAULT_COHOMOLOGY_CAP) -> BettiTable:
    """beta^{-i,2j} = sum over |J| = j of rank H~^{j-i-1}(K_J; Q), no matroid assumption."""
    if K.m > cap:
        raise ResourceError(f"{K.m} vertices exceeds the cohomology-oracle cap of {cap}")
    table = BettiTable("cohomology-oracle")
    for J, H in iter_full_subcomplex_cohomology(K, "Q"):
        j = J.bit_count()
        for d, r in H.ranks.items():
            if r:
                table.add(j - d - 1, j, r)
    return table


def iter_full_subcomplex_cohomology(K: SimplicialComplex, coefficients="Q"):
    """Yield (J, reduced cohomology of K_J) for every J, in increasing mask order."""
    faces = K.faces
    faces_sorted = sorted(faces)
    for J in range(1 << K.m):
        if 1 << J.bit_count() < len(faces_sorted):
            inside = [s for s in submasks(J) if s in faces]
        else:
            inside = [s for s in faces_sorted if s & ~J == 0]
        groups = [[] for _ in range(max(s.bit_count() for s in inside) + 1)]
        for s in sorted(inside):
            groups[s.bit_count()].append(s)
        yield J, cohomology_of_face_groups(groups, coefficients)


# -- recursion ----------------------------------------------------------------


def _recursion(family: str, p: int, n: int) -> list[dict]:
    """Tables for ranks 0..n of the given family, built bottom-up."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    tables: list[dict] = [{(0, 0): 1}]
    for r in range(1, n + 1):
        vertex_count = p**r - 1 if family == "X" else (p**r - 1) // (p - 1)
        f = f_vector_closed(family, p, r)
        cur: dict = {}
        for j in range(0, vertex_count + 1):
            for s in range(0, min(r, j) + 1):
                i = j - s
                if s < r:
                    v = gaussian_binomial(r, s, p) * tables[s].get((i, j), 0)
                else:
                    euler = 0
                    for k in range(0, r + 1):
                        if k <= j:
                            euler += (-1) ** (r - k) * f[k] * math.comb(vertex_count - k, j - k)
                    lower = sum((-1) ** (r - l) * cur.get((j - l, j), 0) for l in range(r))
                    v = euler - lower
                if v < 0:
                    raise ConsistencyError(f"negative Betti number at ({i}, {j}) for rank {r}")
                if v:
                    cur[(i, j)] = v
        tables.append(cur)
    return tables


def betti_recursion_X(p: int, n: int) -> BettiTable:
    return BettiTable("recursion", dict(_recursion("X", p, n)[n]))


def betti_recursion_K(p: int, n: int) -> BettiTable:
    return BettiTable("recursion", dict(_recursion("K", p, n)[n]))


def betti_recursion(family: str, p: int, n: int) -> BettiTable:
    family = family.upper()
    if family not in ("X", "K"):
        raise PreconditionError("family must be X or K")
    return BettiTable("recursion", dict(_recursion(family, p, n)[n]))


def betti(K: SimplicialComplex, method: str, **kw) -> BettiTable:
    if method == "morse":
        return betti_via_morse(K, **kw)
    if method == "euler-oracle":
        return betti_via_hochster_euler(K, **kw)
    if method == "cohomology-oracle":
        return betti_via_cohomology(K, **kw)
    raise PreconditionError(f"unknown method {method!r}; recursion needs (family, p, n)")
