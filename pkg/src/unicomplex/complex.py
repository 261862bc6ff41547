"""Finite simplicial complexes on vertices 0, ..., m-1.

Faces are stored as integer bitmasks (bit v set means vertex v is present).
The public methods accept ordinary iterables of vertex indices and return
sorted tuples; the ``*_mask`` helpers are for the hot loops elsewhere in the
package. Python integers are unbounded, so the bitmask encoding has no
64-vertex ceiling, it just gets slower for very wide complexes.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConstructionError, PreconditionError
from .lattice import is_prime, sparse_invariant_factors, sparse_rank_mod_p

JSON_VERSION = 1


def mask_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def vertices_of(mask: int) -> tuple:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def submasks(mask: int):
    """All submasks of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks: Iterable[int]) -> list[int]:
    by_size: dict[int, set[int]] = {}
    for s in masks:
        by_size.setdefault(s.bit_count(), set()).add(s)
    kept: list[int] = []
    for size in sorted(by_size, reverse=True):
        # equal-size sets never contain one another
        larger = list(kept)
        kept.extend(s for s in by_size[size] if not any(s & ~k == 0 for k in larger))
    return kept


def _sort_key(mask: int):
    return vertices_of(mask)


class SimplicialComplex:
    """An abstract simplicial complex given by its facets.

    ``labels`` optionally names each vertex (vectors, lines, ...), and
    ``vertex_map`` records, for complexes produced by :meth:`link` or
    :meth:`full_subcomplex`, the index of each vertex in the parent complex.
    """

    def __init__(self, m: int, facet_masks: Iterable[int], labels=None, vertex_map=None):
        self.m = int(m)
        facets = _maximal(facet_masks)
        if not facets:
            facets = [0]
        limit = 1 << self.m
        for f in facets:
            if f >= limit or f < 0:
                raise ConstructionError(f"facet {vertices_of(f)} uses a vertex outside 0..{self.m - 1}")
        self.facet_masks = tuple(sorted(facets, key=_sort_key))
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.m:
            raise ConstructionError("need exactly one label per vertex")
        self.vertex_map = tuple(vertex_map) if vertex_map is not None else None

    @classmethod
    def from_facets(cls, m: int, facets: Iterable[Iterable[int]], labels=None) -> "SimplicialComplex":
        masks = []
        for f in facets:
            f = list(f)
            if any(v < 0 or v >= m for v in f):
                raise ConstructionError(f"facet {f} uses a vertex outside 0..{m - 1}")
            masks.append(mask_of(f))
        return cls(m, masks, labels=labels)

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={len(self.facet_masks)}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.facet_masks == other.facet_masks

    def __hash__(self):
        return hash((self.m, self.facet_masks))

    @property
    def facets(self) -> list[tuple]:
        return [vertices_of(f) for f in self.facet_masks if f]

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facet_masks) - 1

    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facet_masks}) == 1

    @cached_property
    def faces(self) -> frozenset:
        """Every face as a bitmask, the empty face included."""
        out: set[int] = set()
        for f in self.facet_masks:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    @cached_property
    def faces_by_size(self) -> list[list[int]]:
        """Faces grouped by cardinality, each group in lexicographic vertex order."""
        groups: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for s in self.faces:
            groups[s.bit_count()].append(s)
        for g in groups:
            g.sort(key=_sort_key)
        return groups

    def contains_mask(self, mask: int) -> bool:
        return mask in self.faces

    def is_simplex(self, sigma: Iterable[int]) -> bool:
        return mask_of(sigma) in self.faces

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facet_masks:
            out |= f
        return out

    # -- subcomplexes -----------------------------------------------------

    def full_subcomplex(self, J: Iterable[int]) -> "SimplicialComplex":
        """K_J re-indexed over sorted(J); ``vertex_map`` gives the original indices."""
        J = sorted(set(J))
        if any(v < 0 or v >= self.m for v in J):
            raise PreconditionError("J must be a subset of the vertex set")
        jm = mask_of(J)
        new_index = {v: i for i, v in enumerate(J)}
        facets = _maximal(f & jm for f in self.facet_masks)
        masks = [mask_of(new_index[v] for v in vertices_of(f)) for f in facets]
        labels = [self.labels[v] for v in J] if self.labels is not None else None
        return SimplicialComplex(len(J), masks, labels=labels, vertex_map=J)

    def link(self, sigma: Iterable[int]) -> "SimplicialComplex":
        """Lk(sigma) re-indexed over the vertices it actually uses."""
        sm = mask_of(sigma)
        if not self.contains_mask(sm):
            raise PreconditionError(f"{vertices_of(sm)} is not a simplex")
        parts = [f & ~sm for f in self.facet_masks if f & sm == sm]
        verts = vertices_of(mask_of(v for p in parts for v in vertices_of(p)))
        new_index = {v: i for i, v in enumerate(verts)}
        masks = [mask_of(new_index[v] for v in vertices_of(p)) for p in parts]
        labels = [self.labels[v] for v in verts] if self.labels is not None else None
        return SimplicialComplex(len(verts), masks, labels=labels, vertex_map=verts)

    # -- counting ---------------------------------------------------------

    def f_vector(self) -> tuple:
        """(f_{-1}, f_0, ..., f_dim) counted from the enumerated face set."""
        return tuple(len(g) for g in self.faces_by_size)

    def euler_characteristic(self) -> int:
        f = self.f_vector()
        return sum((-1) ** i * f[i + 1] for i in range(len(f) - 1))

    def reduced_euler(self) -> int:
        return self.euler_characteristic() - 1

    # -- matroids ---------------------------------------------------------

    def is_matroid(self) -> bool:
        """Exhaustive independent-set exchange check.

        Augmentation for |sigma| = |tau| + 1 is equivalent to the general
        statement, since every subset of a face is a face. A face tau fails
        exactly when some face of size |tau| + 1 lies inside tau plus the
        vertices that do not extend tau; those candidates are enumerated
        directly when there are fewer of them than faces of that size.
        """
        groups = self.faces_by_size
        faces = self.faces
        vm = self.vertex_mask
        for size in range(len(groups) - 1):
            bigger = groups[size + 1]
            for tau in groups[size]:
                aug = 0
                free = vm & ~tau
                while free:
                    low = free & -free
                    if (tau | low) in faces:
                        aug |= low
                    free ^= low
                closed = vm & ~aug
                if math.comb(closed.bit_count(), size + 1) < len(bigger):
                    cols = vertices_of(closed)
                    if any(mask_of(c) in faces for c in itertools.combinations(cols, size + 1)):
                        return False
                elif any(not sigma & ~tau & aug for sigma in bigger):
                    return False
        return True

    def matroid_rank(self) -> int:
        if not self.is_pure():
            raise PreconditionError("rank is only defined for pure complexes")
        return self.dim + 1

    def minimal_nonsimplices(self, j: int) -> list[tuple]:
        """All (j+1)-sets that are not faces although every proper subset is."""
        if j < 1:
            raise PreconditionError("j must be at least 1")
        faces = self.faces
        groups = self.faces_by_size
        if j >= len(groups):
            return []
        out = []
        verts = vertices_of(self.vertex_mask)
        for tau in groups[j]:
            top = tau.bit_length() - 1
            for v in verts:
                if v <= top:
                    continue
                s = tau | (1 << v)
                if s in faces:
                    continue
                if all((s & ~(1 << u)) in faces for u in vertices_of(tau)):
                    out.append(s)
        out.sort(key=_sort_key)
        return [vertices_of(s) for s in out]

    # -- cohomology -------------------------------------------------------

    def coboundary_rows(self, d: int) -> list[dict[int, int]]:
        return coboundary_rows(self.faces_by_size, d)

    def reduced_cohomology(self, coefficients="Q") -> "CohomologyRanks":
        return reduced_cohomology(self, coefficients)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        out = {"version": JSON_VERSION, "m": self.m, "facets": [list(f) for f in self.facets]}
        if self.labels is not None:
            out["labels"] = [_label_to_json(x) for x in self.labels]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplex":
        if data.get("version", JSON_VERSION) != JSON_VERSION:
            raise ConstructionError(f"unsupported complex document version {data.get('version')}")
        labels = data.get("labels")
        if labels is not None:
            labels = [tuple(x) if isinstance(x, list) else x for x in labels]
        return cls.from_facets(data["m"], data["facets"], labels=labels)

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_dict(json.loads(text))


def _label_to_json(x):
    coords = getattr(x, "coords", None)
    if coords is None and hasattr(x, "representative"):
        coords = x.representative.coords
    if coords is not None:
        return list(coords)
    if isinstance(x, (tuple, list)):
        return list(x)
    return x


@dataclass
class CohomologyRanks:
    """Reduced cohomology of a complex: rank per degree, plus torsion over Z.

    ``torsion[d]`` lists the invariant factors > 1 of the torsion subgroup of
    the degree-d integral cohomology.
    """

    coefficients: str
    ranks: dict = field(default_factory=dict)
    torsion: dict = field(default_factory=dict)

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    def nonzero(self) -> dict:
        return {d: r for d, r in self.ranks.items() if r}

    def is_torsion_free(self) -> bool:
        return not any(self.torsion.values())


def _parse_coefficients(coefficients) -> tuple[str, int | None]:
    if isinstance(coefficients, int):
        if not is_prime(coefficients):
            raise PreconditionError(f"{coefficients} is not prime")
        return f"F{coefficients}", coefficients
    c = str(coefficients).lower()
    if c in ("q", "rationals", "rational"):
        return "Q", None
    if c in ("z", "integers", "integer"):
        return "Z", None
    if c.startswith("f") and c[1:].isdigit():
        return _parse_coefficients(int(c[1:]))
    raise PreconditionError(f"unknown coefficient ring {coefficients!r}")


def coboundary_rows(groups: list[list[int]], d: int) -> list[dict[int, int]]:
    """Matrix of the coboundary C^d -> C^{d+1}, one sparse row per (d+1)-face.

    `groups[k]` lists the faces with k vertices; columns index d-faces in that
    order. The face obtained by deleting the i-th vertex (0-based, sorted)
    gets sign (-1)^i.
    """
    if d + 2 >= len(groups) or d + 1 < 0:
        return []
    index = {s: i for i, s in enumerate(groups[d + 1])}
    rows = []
    for tau in groups[d + 2]:
        row = {}
        for i, v in enumerate(vertices_of(tau)):
            row[index[tau & ~(1 << v)]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


def reduced_cohomology(K: SimplicialComplex, coefficients="Q") -> CohomologyRanks:
    """Reduced simplicial cohomology ranks from explicit coboundary matrices.

    Over Q and Z the ranks come from exact integer elimination (the number of
    nonzero invariant factors); over F_p from elimination mod p.
    """
    return cohomology_of_face_groups(K.faces_by_size, coefficients)


def cohomology_of_face_groups(groups: list[list[int]], coefficients="Q") -> CohomologyRanks:
    name, p = _parse_coefficients(coefficients)
    top = len(groups) - 2  # dimension
    ranks_of_delta: dict[int, int] = {}
    factors_of_delta: dict[int, list[int]] = {}
    for d in range(-1, top):
        rows = coboundary_rows(groups, d)
        if p is None:
            f = sparse_invariant_factors(rows, len(groups[d + 1]))
            ranks_of_delta[d] = len(f)
            factors_of_delta[d] = [x for x in f if x != 1]
        else:
            ranks_of_delta[d] = sparse_rank_mod_p(rows, p)
    out = CohomologyRanks(name)
    for d in range(-1, top + 1):
        dim_c = len(groups[d + 1])
        out.ranks[d] = dim_c - ranks_of_delta.get(d, 0) - ranks_of_delta.get(d - 1, 0)
        if name == "Z":
            out.torsion[d] = factors_of_delta.get(d - 1, [])
    return out


def skeleton_of_simplex(m: int, k: int) -> SimplicialComplex:
    """The k-skeleton of the m-simplex, on vertices 0..m."""
    if not 0 <= k <= m:
        raise PreconditionError("need 0 <= k <= m")
    return SimplicialComplex(m + 1, [mask_of(c) for c in itertools.combinations(range(m + 1), k + 1)])


def simplex(m: int) -> SimplicialComplex:
    return skeleton_of_simplex(m, m)


def graph_complex(m: int, edges: Sequence[Sequence[int]]) -> SimplicialComplex:
    """A simple graph as a 1-dimensional complex; isolated vertices become facets."""
    used = mask_of(v for e in edges for v in e)
    facets = [mask_of(e) for e in edges] + [1 << v for v in range(m) if not used >> v & 1]
    return SimplicialComplex(m, facets)


def uniform_matroid(r: int, m: int) -> SimplicialComplex:
    """U_{r,m}: every r-subset of an m-set is a basis."""
    return skeleton_of_simplex(m - 1, r - 1) if r >= 1 else SimplicialComplex(m, [0])


def projective_plane_6() -> SimplicialComplex:
    """The minimal 6-vertex triangulation of the real projective plane."""
    tris = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ]
    return SimplicialComplex.from_facets(6, tris)
