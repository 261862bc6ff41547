"""Exact linear algebra over F_p and Z.

Everything here works on plain Python integers so that results are exact
regardless of size. Vectors over F_p carry their prime; integer vectors are
ordinary tuples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, InvalidVertexError, PreconditionError

IntVector = tuple  # tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, order=True)
class FpVector:
    """A coordinate vector in F_p^n with residues stored in [0, p)."""

    p: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scale(self, r: int) -> "FpVector":
        return FpVector(self.p, tuple(r * c for c in self.coords))

    def __add__(self, other: "FpVector") -> "FpVector":
        _check_compatible([self, other])
        return FpVector(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return f"FpVector(p={self.p}, {self.coords})"


@dataclass(frozen=True, order=True)
class LineLabel:
    """A line through the origin of F_p^n, named by its lex-smallest nonzero point."""

    representative: FpVector

    @property
    def p(self) -> int:
        return self.representative.p

    @property
    def n(self) -> int:
        return self.representative.n

    def points(self) -> list[FpVector]:
        return [self.representative.scale(r) for r in range(1, self.p)]

    def __contains__(self, v: FpVector) -> bool:
        return canonical_line(v) == self

    def __repr__(self):
        return f"LineLabel{self.representative.coords}"


def _check_compatible(vectors: Sequence[FpVector]) -> tuple[int, int]:
    ps = {v.p for v in vectors}
    ns = {v.n for v in vectors}
    if len(ps) > 1 or len(ns) > 1:
        raise DimensionMismatchError(f"mixed primes {sorted(ps)} or lengths {sorted(ns)}")
    return ps.pop(), ns.pop()


def _as_fp_rows(columns, p: int | None) -> tuple[list[list[int]], int]:
    columns = list(columns)
    if columns and isinstance(columns[0], FpVector):
        q, _ = _check_compatible(columns)
        if p is not None and p != q:
            raise DimensionMismatchError(f"vectors live over F_{q}, not F_{p}")
        p = q
    if p is None:
        raise PreconditionError("prime p must be given for plain coordinate tuples")
    rows = [[int(c) % p for c in v] for v in columns]
    if len({len(r) for r in rows}) > 1:
        raise DimensionMismatchError("vectors have different lengths")
    return rows, p


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of a dense integer matrix reduced mod p. `rows` is consumed."""
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], -1, p)
        prow[:] = [(x * inv) % p for x in prow]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col] % p
            if f:
                row = rows[r]
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_fp(columns: Iterable, p: int | None = None) -> int:
    """Rank over F_p of the matrix whose columns are the given vectors."""
    rows, p = _as_fp_rows(columns, p)
    if not rows:
        return 0
    # row rank of the transpose equals column rank
    return rank_mod_p(rows, p)


def is_unimodular_fp(vectors: Iterable, p: int | None = None, n: int | None = None) -> bool:
    vectors = list(vectors)
    rows, p = _as_fp_rows(vectors, p)
    if n is not None and rows and len(rows[0]) != n:
        raise DimensionMismatchError(f"expected vectors of length {n}")
    if any(not any(r) for r in rows):
        raise InvalidVertexError("the zero vector is not a vertex")
    if len({tuple(r) for r in rows}) != len(rows):
        return False
    if rows and len(rows) > len(rows[0]):
        return False
    return rank_mod_p(rows, p) == len(rows)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def minors_gcd(vectors: Sequence[Sequence[int]], short_circuit: bool = True) -> int:
    """gcd of all maximal minors of the column matrix (k columns, n rows, k <= n)."""
    k = len(vectors)
    n = len(vectors[0]) if vectors else 0
    g = 0
    for rows in itertools.combinations(range(n), k):
        minor = [[vectors[c][r] for c in range(k)] for r in rows]
        g = math.gcd(g, bareiss_det(minor))
        if short_circuit and g == 1:
            return 1
    return g


def is_unimodular_z(vectors: Iterable[Sequence[int]]) -> bool:
    vectors = [tuple(int(c) for c in v) for v in vectors]
    if not vectors:
        return True
    if len({len(v) for v in vectors}) > 1:
        raise DimensionMismatchError("vectors have different lengths")
    if len(vectors) > len(vectors[0]):
        return False
    return minors_gcd(vectors) == 1


def _reduce_column_to_pivot(a, col, top, ops):
    """Row-reduce column `col` below and at row `top` to (±d, 0, ..., 0) using T moves.

    Returns the value left at a[top][col].
    """
    n = len(a)

    def row_add(i, j, lam):
        # T(i, j; lam): row_i += lam * row_j
        if lam:
            a[i] = [x + lam * y for x, y in zip(a[i], a[j])]
            ops.append(("T", i, j, lam))

    while True:
        nz = [r for r in range(top, n) if a[r][col] != 0]
        if len(nz) <= 1:
            break
        piv = min(nz, key=lambda r: (abs(a[r][col]), r))
        for r in nz:
            if r != piv:
                row_add(r, piv, -(a[r][col] // a[piv][col]))
    nz = [r for r in range(top, n) if a[r][col] != 0]
    if nz and nz[0] != top:
        r = nz[0]
        row_add(top, r, 1)
        row_add(r, top, -1)
    return a[top][col]


def extend_to_basis_z(vectors: Iterable[Sequence[int]]) -> list[list[int]]:
    """Complete a unimodular set of integer vectors to a basis of Z^n.

    The input vectors are reduced to standard basis vectors by recorded row
    additions (T), column additions (S) and row negations; the inverse moves are
    then replayed in reverse order on the identity matrix. The first k+1 columns
    of the result are the inputs, and the determinant is ±1. The completion is
    not unique; this returns the one produced by that reduction order.
    """
    cols = [list(map(int, v)) for v in vectors]
    if not is_unimodular_z(cols):
        raise PreconditionError("vectors are not unimodular")
    n = len(cols[0])
    k = len(cols)
    a = [[cols[c][r] for c in range(k)] for r in range(n)]
    ops: list[tuple] = []
    for c in range(k):
        d = _reduce_column_to_pivot(a, c, c, ops)
        if d == -1:
            a[c] = [-x for x in a[c]]
            ops.append(("N", c))
        elif d != 1:
            raise AssertionError("pivot is not a unit for a unimodular input")
        for j in range(c + 1, k):
            lam = -a[c][j]
            if lam:
                # S(j, c; lam): col_j += lam * col_c
                for r in range(n):
                    a[r][j] += lam * a[r][c]
                ops.append(("S", j, c, lam))

    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for op in reversed(ops):
        if op[0] == "T":
            _, i, j, lam = op
            m[i] = [x - lam * y for x, y in zip(m[i], m[j])]
        elif op[0] == "S":
            _, i, j, lam = op
            for r in range(n):
                m[r][i] -= lam * m[r][j]
        else:
            m[op[1]] = [-x for x in m[op[1]]]
    return m


def q_pochhammer(p: int, k: int) -> int:
    """(p)_k = (p - 1)(p^2 - 1)...(p^k - 1), with (p)_0 = 1."""
    out = 1
    for t in range(1, k + 1):
        out *= p**t - 1
    return out


def gaussian_binomial(n: int, l: int, p: int) -> int:
    """Number of l-dimensional subspaces of F_p^n; 0 when l < 0 or l > n."""
    if l < 0 or l > n:
        return 0
    num = q_pochhammer(p, n)
    den = q_pochhammer(p, l) * q_pochhammer(p, n - l)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def canonical_line(v: FpVector) -> LineLabel:
    """The line through v, labelled by its lex-smallest nonzero element."""
    if v.is_zero():
        raise InvalidVertexError("the zero vector spans no line")
    lead = next(c for c in v.coords if c)
    return LineLabel(v.scale(pow(lead, -1, v.p)))


def enumerate_vectors(p: int, n: int) -> list[FpVector]:
    """Nonzero vectors of F_p^n in lexicographic order."""
    return [FpVector(p, c) for c in itertools.product(range(p), repeat=n) if any(c)]


def enumerate_lines(p: int, n: int) -> list[LineLabel]:
    lines = [LineLabel(v) for v in enumerate_vectors(p, n) if next(c for c in v.coords if c) == 1]
    assert len(lines) * (p - 1) == p**n - 1
    return lines


def _dense_snf(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix (consumed)."""
    factors: list[int] = []
    rows = len(a)
    cols = len(a[0]) if a else 0
    t = 0
    while t < rows and t < cols:
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // piv
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                # the pivot must divide every remaining entry
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            entries = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def sparse_invariant_factors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given as row dicts.

    Unit pivots are eliminated sparsely first; whatever is left without a ±1
    entry is handed to the dense algorithm. `rows` is consumed.
    """
    rows = [dict(r) for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    while True:
        best = None
        for i in alive:
            r = rows[i]
            for c, v in r.items():
                if v == 1 or v == -1:
                    cost = (len(r) - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, c)
                    break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pc = best
        prow = rows[pi]
        u = prow[pc]
        for i in list(col_rows[pc]):
            if i == pi:
                continue
            r = rows[i]
            f = r[pc] * u
            for c, v in prow.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    if c not in r:
                        col_rows[c].add(i)
                    r[c] = nv
                elif c in r:
                    del r[c]
                    col_rows[c].discard(i)
            if not r:
                alive.discard(i)
        for c in prow:
            col_rows[c].discard(pi)
        alive.discard(pi)
        units += 1
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [1] * units
    cols = sorted({c for r in rest for c in r})
    index = {c: j for j, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][index[c]] = v
    return [1] * units + sorted(_dense_snf(dense), key=lambda d: d)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    factors = _dense_snf(a)
    # dense reduction already yields a divisibility chain; sort defensively
    factors.sort()
    for x, y in zip(factors, factors[1:]):
        assert y % x == 0
    return factors


def sparse_rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    """Rank over F_p of a sparse integer matrix given as row dicts. `rows` is consumed."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in rows:
        r = {c: v % p for c, v in r.items() if v % p}
        while r:
            c = min(r)
            if c not in pivots:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in r.items()}
                rank += 1
                break
            prow = pivots[c]
            f = r[c]
            for k, v in prow.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank
