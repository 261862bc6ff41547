"""The universal complexes X(F_p^n) and K(F_p^n) and their counting formulas.

X(F_p^n) has the nonzero vectors of F_p^n as vertices and linearly
independent sets as faces; K(F_p^n) has the lines through the origin as
vertices and independent sets of lines as faces. Vertices are numbered by
the lexicographic order of their labels (vectors, or line representatives).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .complex import SimplicialComplex, mask_of, vertices_of
from .errors import ConsistencyError, PreconditionError, ResourceError
from .lattice import (
    FpVector,
    LineLabel,
    canonical_line,
    enumerate_lines,
    enumerate_vectors,
    is_prime,
    rank_fp,
)

DEFAULT_MAX_VERTICES = 200
DEFAULT_MAX_FACETS = 10**7

FAMILIES = ("X", "K")


def _check_family(family: str) -> str:
    family = family.upper()
    if family not in FAMILIES:
        raise PreconditionError(f"family must be X or K, got {family!r}")
    return family


def _reduce(v: list[int], basis: list[tuple[int, list[int]]], p: int) -> list[int]:
    """Reduce v against an echelon basis of (pivot column, normalized row) pairs."""
    v = list(v)
    for col, row in basis:
        f = v[col]
        if f:
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return v


def independent_sets_dfs(vectors: list[tuple], p: int, size: int) -> list[int]:
    """Bitmasks of all `size`-element linearly independent subsets, found by
    depth-first extension in index order with an incrementally reduced basis."""
    out: list[int] = []
    count = len(vectors)

    def extend(start: int, mask: int, basis: list):
        if len(basis) == size:
            out.append(mask)
            return
        for idx in range(start, count - (size - len(basis) - 1)):
            r = _reduce(vectors[idx], basis, p)
            col = next((c for c, x in enumerate(r) if x), None)
            if col is None:
                continue
            inv = pow(r[col], -1, p)
            row = [(x * inv) % p for x in r]
            extend(idx + 1, mask | (1 << idx), basis + [(col, row)])

    extend(0, 0, [])
    return out


@dataclass
class UniversalComplex:
    """X(F_p^n) or K(F_p^n), with the label of every vertex.

    The facet list is materialized on first access to ``base`` and is guarded
    by ``max_facets``; label-level queries work without it.
    """

    family: str
    p: int
    n: int
    labels: tuple
    max_facets: int = DEFAULT_MAX_FACETS
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.n - 1

    @cached_property
    def vectors(self) -> list[tuple]:
        """Coordinates of each vertex (the line representative for K)."""
        if self.family == "X":
            return [v.coords for v in self.labels]
        return [lab.representative.coords for lab in self.labels]

    @cached_property
    def base(self) -> SimplicialComplex:
        expected = f_vector_closed(self.family, self.p, self.n)[-1]
        if expected > self.max_facets:
            raise ResourceError(
                f"{self.family}(F_{self.p}^{self.n}) has {expected} facets, over the cap of {self.max_facets}"
            )
        facets = independent_sets_dfs(self.vectors, self.p, self.n)
        return SimplicialComplex(self.m, facets, labels=self.labels)

    def index_of(self, label) -> int:
        if self.family == "K" and isinstance(label, FpVector):
            label = canonical_line(label)
        return self._index[label]

    def is_simplex(self, vertices) -> bool:
        """Membership by a rank computation on the labels; no facet list needed."""
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        if not vs:
            return True
        return rank_fp([self.vectors[v] for v in vs], self.p) == len(vs)

    def is_simplex_mask(self, mask: int) -> bool:
        return self.is_simplex(vertices_of(mask))

    def label_names(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]

    def to_dict(self) -> dict:
        out = self.base.to_dict()
        out.update({"family": self.family, "p": self.p, "n": self.n, "labels": self.label_names()})
        return out


def _labels_for(family: str, p: int, n: int) -> tuple:
    if family == "X":
        return tuple(enumerate_vectors(p, n))
    return tuple(enumerate_lines(p, n))


def build(family: str, p: int, n: int, max_vertices: int = DEFAULT_MAX_VERTICES,
          max_facets: int = DEFAULT_MAX_FACETS) -> UniversalComplex:
    family = _check_family(family)
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if n < 1:
        raise PreconditionError("n must be at least 1")
    count = p**n - 1 if family == "X" else (p**n - 1) // (p - 1)
    if count > max_vertices:
        raise ResourceError(f"{family}(F_{p}^{n}) has {count} vertices, over the cap of {max_vertices}")
    return UniversalComplex(family, p, n, _labels_for(family, p, n), max_facets=max_facets)


def build_X(p: int, n: int, **caps) -> UniversalComplex:
    return build("X", p, n, **caps)


def build_K(p: int, n: int, **caps) -> UniversalComplex:
    """K(F_p^n) as the full subcomplex of X(F_p^n) on the line representatives."""
    return build("K", p, n, **caps)


# -- structure maps ----------------------------------------------------------


def map_phi(v: FpVector) -> LineLabel:
    """Send a vector to the line through it."""
    return canonical_line(v)


def map_xi(line: LineLabel) -> FpVector:
    """Send a line to its lex-smallest nonzero element."""
    return line.representative


@dataclass
class StructureMapReport:
    p: int
    n: int
    phi_simplicial: bool
    phi_nondegenerate: bool
    xi_simplicial: bool
    xi_nondegenerate: bool
    phi_after_xi_is_identity: bool
    xi_after_phi_is_retraction: bool

    @property
    def ok(self) -> bool:
        return all(
            (
                self.phi_simplicial,
                self.phi_nondegenerate,
                self.xi_simplicial,
                self.xi_nondegenerate,
                self.phi_after_xi_is_identity,
                self.xi_after_phi_is_retraction,
            )
        )


def check_structure_maps(p: int, n: int) -> StructureMapReport:
    """Exhaustively verify the properties of phi: X -> K and xi: K -> X."""
    X = build_X(p, n)
    K = build_K(p, n)
    phi = [K.index_of(map_phi(v)) for v in X.labels]
    xi = [X.index_of(map_xi(l)) for l in K.labels]

    def image(mask, f):
        return [f[v] for v in vertices_of(mask)]

    phi_simp = phi_nondeg = True
    for s in X.base.faces:
        img = image(s, phi)
        if len(set(img)) != len(img):
            phi_nondeg = False
        if not K.base.contains_mask(mask_of(img)):
            phi_simp = False
    xi_simp = xi_nondeg = True
    for s in K.base.faces:
        img = image(s, xi)
        if len(set(img)) != len(img):
            xi_nondeg = False
        if not X.base.contains_mask(mask_of(img)):
            xi_simp = False
    ident = all(phi[xi[l]] == l for l in range(K.m))
    image_of_xi = set(xi)
    retract = all(xi[phi[v]] == v for v in image_of_xi) and all(xi[phi[v]] in image_of_xi for v in range(X.m))
    # the retraction must also be simplicial onto xi(K)
    xi_mask = mask_of(image_of_xi)
    for s in X.base.faces:
        img = mask_of(image(s, [xi[phi[v]] for v in range(X.m)]))
        if img & ~xi_mask or not X.base.contains_mask(img):
            retract = False
            break
    return StructureMapReport(p, n, phi_simp, phi_nondeg, xi_simp, xi_nondeg, ident, retract)


# -- closed forms -------------------------------------------------------------


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"{num} is not divisible by {den}")
    return q


def f_vector_closed(family: str, p: int, n: int) -> tuple:
    """(f_{-1}, ..., f_{n-1}) of X(F_p^n) or K(F_p^n) from the product formula."""
    family = _check_family(family)
    out = [1]
    prod = 1
    for i in range(n):
        prod *= p**n - p**i
        den = math.factorial(i + 1)
        if family == "K":
            den *= (p - 1) ** (i + 1)
        out.append(_exact_div(prod, den))
    return tuple(out)


def link_f_vector_closed(family: str, p: int, n: int, m: int) -> tuple:
    """f-vector of the link of an m-simplex (m + 1 vertices)."""
    family = _check_family(family)
    if not 0 <= m <= n - 1:
        raise PreconditionError("need 0 <= m <= n - 1")
    out = [1]
    prod = 1
    for i in range(n - m - 1):
        prod *= p**n - p ** (m + 1 + i)
        den = math.factorial(i + 1)
        if family == "K":
            den *= (p - 1) ** (i + 1)
        out.append(_exact_div(prod, den))
    return tuple(out)


def wedge_count(family: str, p: int, n: int) -> int:
    """Number of (n-1)-spheres in the wedge decomposition.

    For K with n = 1 the complex is a point; the alternating sum gives 0 there,
    which is what is returned.
    """
    f = f_vector_closed(family, p, n)
    return (-1) ** n + sum((-1) ** (n - 1 - i) * f[i + 1] for i in range(n))


def count_minimal_nonsimplices_closed(p: int, n: int, j: int) -> int:
    """Number of minimal non-faces with j + 1 vertices in X(F_p^n)."""
    if n < 2 or not 1 <= j <= n:
        raise PreconditionError("need n >= 2 and 1 <= j <= n")
    if j == 1:
        return _exact_div((p**n - 1) * (p - 2), 2)
    f = f_vector_closed("X", p, n)
    return _exact_div(f[j] * (p - 1) ** j, j + 1)


def dependency_coefficients(vectors: list[tuple], p: int) -> list[int] | None:
    """Coefficients a_t with vectors[-1] = sum a_t vectors[t], if the first
    len-1 vectors are independent and such a combination exists."""
    *head, last = [list(v) for v in vectors]
    k = len(head)
    n = len(last)
    # augmented system: columns are head vectors, right-hand side is last
    rows = [[head[c][r] % p for c in range(k)] + [last[r] % p] for r in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            return None
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, n)):
        return None
    return [rows[i][k] for i in range(k)]
