"""Koszul cochain complex R*(K) and the Morse matching for matroids.

A basis element u_A v_B is a :class:`KoszulCell` with ``A`` and ``B`` stored
as vertex bitmasks. The complex splits as a direct sum over supports
M = A | B, and so does everything in this module.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable

from ..complex import SimplicialComplex, mask_of, submasks, vertices_of
from ..errors import PreconditionError


@dataclass(frozen=True, order=True)
class KoszulCell:
    A: int
    B: int

    def __post_init__(self):
        if self.A & self.B:
            raise PreconditionError("A and B must be disjoint")

    @classmethod
    def of(cls, A: Iterable[int] = (), B: Iterable[int] = ()) -> "KoszulCell":
        return cls(mask_of(A), mask_of(B))

    @property
    def support(self) -> int:
        return self.A | self.B

    @property
    def bidegree(self) -> tuple[int, int]:
        a = self.A.bit_count()
        return (-a, 2 * (a + self.B.bit_count()))

    def __repr__(self):
        return f"u{list(vertices_of(self.A))}v{list(vertices_of(self.B))}"


def cells_for_support(K: SimplicialComplex, M: int | Iterable[int]) -> list[KoszulCell]:
    """All u_A v_B with A | B = M and B a face of K."""
    if not isinstance(M, int):
        M = mask_of(M)
    faces = K.faces
    out = [KoszulCell(M & ~B, B) for B in submasks(M) if B in faces]
    out.sort()
    return out


def all_cells(K: SimplicialComplex) -> list[KoszulCell]:
    out = []
    for M in range(1 << K.m):
        out.extend(cells_for_support(K, M))
    return out


def differential(K: SimplicialComplex, cell: KoszulCell) -> dict[KoszulCell, int]:
    """d(u_A v_B) = sum_k (-1)^k u_{A - a_k} v_{B + a_k}, k the 1-based position
    of a_k in A, over those a_k with {a_k} | B a face."""
    faces = K.faces
    out = {}
    for k, a in enumerate(vertices_of(cell.A), start=1):
        bit = 1 << a
        if (cell.B | bit) in faces:
            out[KoszulCell(cell.A & ~bit, cell.B | bit)] = -1 if k % 2 else 1
    return out


def morse_sets(K: SimplicialComplex, cell: KoszulCell) -> tuple[tuple, tuple]:
    """The sets M(u_A v_B) and N(u_A v_B), evaluated literally from their definition."""
    faces = K.faces
    A, B = cell.A, cell.B
    avs = vertices_of(A)
    bvs = vertices_of(B)

    def swappable(y):
        # some x in A below y with {x} | B - {y} a face
        return any(x < y and ((B & ~(1 << y)) | (1 << x)) in faces for x in avs)

    Mset = []
    for a in avs:
        if (B | (1 << a)) not in faces:
            continue
        if any(x < a and (B | (1 << x)) in faces for x in avs):
            continue
        if all(swappable(y) for y in bvs if y < a):
            Mset.append(a)
    Nset = []
    for b in bvs:
        rest = B & ~(1 << b)
        if any(x < b and (rest | (1 << x)) in faces for x in avs):
            continue
        if all(swappable(y) for y in bvs if y < b):
            Nset.append(b)
    if len(Mset) + len(Nset) > 1:
        raise AssertionError(f"|M| + |N| > 1 at {cell}")
    return tuple(Mset), tuple(Nset)


def extension_masks(K: SimplicialComplex) -> dict[int, int]:
    """For every face F, the bitmask of vertices x outside F with F | {x} a face."""
    faces = K.faces
    verts = vertices_of(K.vertex_mask)
    ext = {}
    for F in faces:
        e = 0
        for v in verts:
            bit = 1 << v
            if not F & bit and (F | bit) in faces:
                e |= bit
        ext[F] = e
    return ext


def classify(ext: dict[int, int], A: int, B: int) -> tuple[str, int]:
    """Fast equivalent of :func:`morse_sets` for a cell whose B is a face.

    Returns ("M", a), ("N", b) or ("critical", -1). Let a be the least x in A
    with {x} | B a face. The first y in B (below a, if a exists) having no
    x < y in A with {x} | B - {y} a face is the unique element of N; if there
    is none and a exists, a is the unique element of M.
    """
    e = ext[B] & A
    a = (e & -e).bit_length() - 1 if e else -1
    rest = B
    while rest:
        low = rest & -rest
        y = low.bit_length() - 1
        if a >= 0 and y > a:
            break
        if not (ext[B & ~low] & A & (low - 1)):
            return "N", y
        rest ^= low
    if a >= 0:
        return "M", a
    return "critical", -1


@dataclass
class MorseMatchingRecord:
    """Matched edges u_A v_B -> u_{A-a} v_{B+a} keyed by their upper cell, plus criticals."""

    pairs: dict = field(default_factory=dict)
    critical: list = field(default_factory=list)

    def partner(self, cell: KoszulCell):
        if cell in self.pairs:
            return self.pairs[cell]
        return self._lower.get(cell)

    @property
    def _lower(self):
        return {v: u for u, v in self.pairs.items()}


def _require_matroid(K: SimplicialComplex, check: bool):
    if check and not K.is_matroid():
        raise PreconditionError("the Morse matching is only defined here for matroids")


def morse_matching(K: SimplicialComplex, check: bool = True) -> MorseMatchingRecord:
    _require_matroid(K, check)
    rec = MorseMatchingRecord()
    for cell in all_cells(K):
        Ms, Ns = morse_sets(K, cell)
        if Ms:
            a = 1 << Ms[0]
            rec.pairs[cell] = KoszulCell(cell.A & ~a, cell.B | a)
        elif not Ns:
            rec.critical.append(cell)
    return rec


@dataclass
class MatchingReport:
    cells: int
    matched_pairs: int
    critical: int
    no_common_endpoints: bool
    invertible_coefficients: bool
    acyclic: bool
    ordering_certificate: bool
    partition: bool
    pairing_rules: bool
    criticals_maximal: bool
    concentrated: bool
    fast_classifier_agrees: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (
                self.no_common_endpoints,
                self.invertible_coefficients,
                self.acyclic,
                self.ordering_certificate,
                self.partition,
                self.pairing_rules,
                self.criticals_maximal,
                self.concentrated,
                self.fast_classifier_agrees,
            )
        )


def _is_acyclic(nodes, edges) -> bool:
    indeg = {v: 0 for v in nodes}
    for u, vs in edges.items():
        for v in vs:
            indeg[v] += 1
    queue = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in edges.get(u, ()):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == len(indeg)


def _has_cycle_dfs(nodes, edges) -> bool:
    color = dict.fromkeys(nodes, 0)
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(edges.get(root, ())))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[u] = 2
                stack.pop()
            elif color[nxt] == 1:
                return True
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(edges.get(nxt, ()))))
    return False


def verify_matching(K: SimplicialComplex, check: bool = True, dfs_limit: int = 5000) -> MatchingReport:
    """Check the three Morse matching conditions and the structural claims exhaustively.

    Acyclicity of the modified digraph is verified per support by a topological
    sort, by the monotonicity of the matched vertex along M-edge / edge / M-edge
    zig-zags, and, for supports with at most `dfs_limit` cells, by an explicit
    DFS cycle search.
    """
    _require_matroid(K, check)
    faces = K.faces
    ext = extension_masks(K)
    problems: list[str] = []
    n_cells = n_pairs = n_crit = 0
    no_common = invertible = acyclic = ordering = partition = rules = maximal = conc = agrees = True
    for M in range(1 << K.m):
        cells = cells_for_support(K, M)
        if not cells:
            continue
        n_cells += len(cells)
        sets = {c: morse_sets(K, c) for c in cells}
        matched: dict[KoszulCell, KoszulCell] = {}
        endpoint_use: dict[KoszulCell, int] = defaultdict(int)
        for c, (Ms, Ns) in sets.items():
            kind, v = classify(ext, c.A, c.B)
            expected = ("M", Ms[0]) if Ms else ("N", Ns[0]) if Ns else ("critical", -1)
            if (kind, v) != expected:
                agrees = False
                problems.append(f"classifier mismatch at {c}")
            if Ms:
                a = 1 << Ms[0]
                low = KoszulCell(c.A & ~a, c.B | a)
                matched[c] = low
                endpoint_use[c] += 1
                endpoint_use[low] += 1
                coeff = differential(K, c).get(low, 0)
                if coeff not in (1, -1):
                    invertible = False
                    problems.append(f"matched coefficient {coeff} at {c}")
                if sets[low] != ((), Ms):
                    rules = False
                    problems.append(f"pairing rule fails for M at {c}")
            if Ns:
                b = 1 << Ns[0]
                up = KoszulCell(c.A | b, c.B & ~b)
                if sets.get(up) != (Ns, ()):
                    rules = False
                    problems.append(f"pairing rule fails for N at {c}")
        if any(k > 1 for k in endpoint_use.values()):
            no_common = False
            problems.append(f"shared endpoint in support {vertices_of(M)}")
        crit = [c for c in cells if endpoint_use[c] == 0]
        if len(crit) + 2 * len(matched) != len(cells):
            partition = False
            problems.append(f"cells not partitioned in support {vertices_of(M)}")
        for c in crit:
            if ext[c.B] & c.A:
                maximal = False
                problems.append(f"critical {c} has non-maximal B")
        if len({c.B.bit_count() for c in crit}) > 1:
            conc = False
            problems.append(f"criticals of support {vertices_of(M)} in several bidegrees")
        n_pairs += len(matched)
        n_crit += len(crit)

        # modified digraph: differential edges with matched ones reversed
        edges: dict[KoszulCell, list] = defaultdict(list)
        lower_of = matched
        for c in cells:
            for d in differential(K, c):
                if lower_of.get(c) == d:
                    edges[d].append(c)
                else:
                    edges[c].append(d)
        if not _is_acyclic(cells, edges):
            acyclic = False
            problems.append(f"directed cycle in support {vertices_of(M)}")
        elif len(cells) <= dfs_limit and _has_cycle_dfs(cells, edges):
            acyclic = False
            problems.append(f"DFS found a cycle in support {vertices_of(M)}")
        # zig-zag monotonicity: (A - a, B + a) -M-> (A, B) -> (A - x, B + x) -M-> next
        upper_of = {v: u for u, v in matched.items()}
        for top, low in matched.items():
            a = vertices_of(top.A & ~low.A)[0]
            for nxt in differential(K, top):
                if nxt == low or nxt not in upper_of:
                    continue
                b = vertices_of(upper_of[nxt].A & ~nxt.A)[0]
                if not a < b:
                    ordering = False
                    problems.append(f"matched vertex does not increase after {top}")
    return MatchingReport(
        cells=n_cells,
        matched_pairs=n_pairs,
        critical=n_crit,
        no_common_endpoints=no_common,
        invertible_coefficients=invertible,
        acyclic=acyclic,
        ordering_certificate=ordering,
        partition=partition,
        pairing_rules=rules,
        criticals_maximal=maximal,
        concentrated=conc,
        fast_classifier_agrees=agrees,
        problems=problems[:20],
    )
