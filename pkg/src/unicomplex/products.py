"""Cup-length bounds for moment-angle complexes of X(F_p^n) and K(F_p^n).

Lower bounds come from join witnesses: disjoint vertex sets I_1, ..., I_k whose
full subcomplexes are cohomology spheres and whose spans add up,
dim span(I_1) + ... + dim span(I_k) = dim span(I_1 | ... | I_k).
Then the full subcomplex on the union is the join of the parts, and the product
of the k sphere classes is nonzero in H*(Z_K).

Upper bounds count degrees. Every nonzero class of H*(Z_K) coming from a full
subcomplex K_J in cohomological degree d uses at least d + 1 of the dim K + 1
available "slots", and d >= s, where s + 2 is the size of the smallest non-face.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex import SimplicialComplex, reduced_cohomology
from .errors import ConsistencyError, PreconditionError
from .lattice import FpVector, LineLabel, canonical_line, rank_fp
from .universal import UniversalComplex

GREEDY_VERTEX_CAP = 40
GREEDY_PART_SIZE = 4


def _coords(label) -> tuple:
    if isinstance(label, LineLabel):
        return label.representative.coords
    if isinstance(label, FpVector):
        return label.coords
    return tuple(label)


def join_condition(parts, p: int) -> bool:
    """True iff the span dimensions of the parts add up to that of their union."""
    parts = [[_coords(x) for x in part] for part in parts]
    if any(not part for part in parts):
        raise PreconditionError("parts must be nonempty")
    seen = set()
    for part in parts:
        for v in part:
            key = tuple(x % p for x in v)
            if key in seen:
                raise PreconditionError(f"label {v} appears in more than one part")
            seen.add(key)
    if len({len(v) for part in parts for v in part}) != 1:
        raise PreconditionError("all labels must live in the same F_p^n")
    total = sum(rank_fp(part, p) for part in parts)
    return total == rank_fp([v for part in parts for v in part], p)


def full_subcomplex_of(U: UniversalComplex, vertices) -> SimplicialComplex:
    """U restricted to `vertices`, from rank tests; U's facet list is never built."""
    vs = sorted(set(vertices))
    faces = [
        sum(1 << i for i in idx)
        for size in range(len(vs) + 1)
        for idx in itertools.combinations(range(len(vs)), size)
        if U.is_simplex([vs[i] for i in idx])
    ]
    labels = [U.labels[v] for v in vs]
    return SimplicialComplex(len(vs), faces, labels=labels, vertex_map=vs)


def _sphere_degree(K: SimplicialComplex):
    """The single degree carrying reduced rational cohomology, or None."""
    nz = reduced_cohomology(K, "Q").nonzero()
    if len(nz) != 1:
        return None
    return next(iter(nz))


@dataclass(frozen=True)
class JoinWitness:
    """Disjoint vertex sets (indices into the universal complex) with sphere degrees."""

    parts: tuple
    degrees: tuple

    @property
    def k(self) -> int:
        return len(self.parts)

    def labels(self, U: UniversalComplex) -> list[list]:
        return [[list(U.vectors[v]) for v in part] for part in self.parts]

    def validate(self, U: UniversalComplex) -> bool:
        """Disjointness, span condition and the join-of-spheres cohomology, all recomputed."""
        if not self.parts:
            return True
        flat = [v for part in self.parts for v in part]
        if len(flat) != len(set(flat)):
            return False
        if not join_condition([[U.vectors[v] for v in part] for part in self.parts], U.p):
            return False
        for part, r in zip(self.parts, self.degrees):
            if _sphere_degree(full_subcomplex_of(U, part)) != r:
                return False
        union = reduced_cohomology(full_subcomplex_of(U, flat), "Q")
        return union.rank(sum(self.degrees) + self.k - 1) >= 1


def _canonical_witness(U: UniversalComplex) -> JoinWitness:
    p, n = U.p, U.n

    def e(j, c=1):
        v = [0] * n
        v[j] = c % p
        return tuple(v)

    def vertex(coords):
        coords = FpVector(p, coords)
        return U.index_of(coords if U.family == "X" else canonical_line(coords))

    if U.family == "X" and p > 2:
        parts = tuple((vertex(e(j)), vertex(e(j, 2))) for j in range(n))
        return JoinWitness(parts, (0,) * n)
    parts = []
    for j in range(n // 2):
        a, b = e(2 * j), e(2 * j + 1)
        ab = tuple((x + y) % p for x, y in zip(a, b))
        parts.append(tuple(sorted((vertex(a), vertex(b), vertex(ab)))))
    return JoinWitness(tuple(parts), (1,) * len(parts))


def _greedy_witness(U: UniversalComplex, max_part: int = GREEDY_PART_SIZE) -> JoinWitness:
    """Greedy in lexicographic order over sphere-like vertex sets of size <= max_part."""
    chosen: list[tuple] = []
    degrees: list[int] = []
    used: set = set()
    for size in range(2, max_part + 1):
        for part in itertools.combinations(range(U.m), size):
            if used.intersection(part):
                continue
            r = _sphere_degree(full_subcomplex_of(U, part))
            if r is None or r < 0:
                continue
            trial = JoinWitness(tuple(chosen) + (part,), tuple(degrees) + (r,))
            if trial.validate(U):
                chosen.append(part)
                degrees.append(r)
                used.update(part)
    return JoinWitness(tuple(chosen), tuple(degrees))


def cup_length_lower(U: UniversalComplex, greedy: bool = True) -> tuple[int, JoinWitness]:
    """Largest k found with a validated join witness.

    The canonical family is tried first; a bounded greedy search runs only when
    it stops short of the upper bound and the complex is small enough.
    """
    best = _canonical_witness(U)
    if not best.validate(U):
        raise ConsistencyError(f"canonical witness for {U.family}(F_{U.p}^{U.n}) failed validation")
    if greedy and best.k < cup_length_upper(U) and U.m <= GREEDY_VERTEX_CAP:
        other = _greedy_witness(U)
        if other.k > best.k:
            best = other
    return best.k, best


def smallest_nonface_size(K) -> int | None:
    """Size of a smallest non-face among the vertices in use, or None for a simplex."""
    if isinstance(K, UniversalComplex):
        verts = range(K.m)
        test = K.is_simplex
        top = K.n + 1
    else:
        verts = [v for v in range(K.m) if K.vertex_mask >> v & 1]
        test = K.is_simplex
        top = len(verts)
    for size in range(2, top + 1):
        for sigma in itertools.combinations(verts, size):
            if not test(sigma):
                return size
    return None


def cup_length_upper(K) -> int:
    """floor((dim K + 1) / (s + 1)) with s + 2 the smallest non-face size; 0 for a simplex."""
    t = smallest_nonface_size(K)
    if t is None:
        return 0
    return (K.dim + 1) // (t - 1)


@dataclass
class CupLengthReport:
    family: str
    p: int
    n: int
    lower: int
    upper: int
    witness: JoinWitness
    witness_labels: list
    flagged: str = ""

    @property
    def coincide(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "coincide": self.coincide,
            "witness": self.witness_labels,
            "sphere_degrees": list(self.witness.degrees),
            "note": self.flagged,
        }


def cup_length(U: UniversalComplex) -> CupLengthReport:
    lower, w = cup_length_lower(U)
    upper = cup_length_upper(U)
    if lower > upper:
        raise ConsistencyError(f"cup-length lower bound {lower} exceeds upper bound {upper}")
    note = ""
    if U.family == "X" and U.p == 2:
        note = "p = 2: X(F_2^n) equals K(F_2^n), reported value is floor(n/2)"
    return CupLengthReport(U.family, U.p, U.n, lower, upper, w, w.labels(U), note)


def ls_category_interval(U: UniversalComplex) -> tuple[int, int]:
    """[cup length lower bound, dim Z_K / (connectivity + 1)].

    Z_K has dimension m + dim K + 1 and is (2t - 2)-connected for t the smallest
    non-face size, and cat(Y) <= dim Y / (c + 1) for a c-connected CW complex.
    """
    lower, _ = cup_length_lower(U)
    t = smallest_nonface_size(U)
    dim_z = U.m + U.dim + 1
    if t is None:
        return (0, 0)
    return (lower, dim_z // (2 * t - 1))
