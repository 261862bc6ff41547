"""Mod-p Buchstaber invariants s_p(K) = m - r, where r is the least rank with a
nondegenerate simplicial map K -> K(F_p^r).

The exact value comes from a depth-first search over line assignments. At every
node the lines used so far span a coordinate subspace W = span(e_{r-d+1}, ..., e_r);
the next vertex either gets a line inside W or the single line e_{r-d}. Any
line outside W can be moved to e_{r-d} by a linear map fixing W pointwise, so
this loses no solutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

from .complex import SimplicialComplex, skeleton_of_simplex, vertices_of
from .errors import PreconditionError
from .lattice import enumerate_lines, is_prime, rank_mod_p
from .universal import UniversalComplex, build_K, f_vector_closed

DEFAULT_NODE_BUDGET = 10**8


def ceil_log(base: int, x: int) -> int:
    """Least k >= 0 with base**k >= x, in exact integer arithmetic."""
    k, power = 0, 1
    while power < x:
        power *= base
        k += 1
    return k


def _as_complex(K) -> SimplicialComplex:
    return K.base if isinstance(K, UniversalComplex) else K


def _edges(K: SimplicialComplex) -> set:
    out = set()
    for f in K.facet_masks:
        out.update(itertools.combinations(vertices_of(f), 2))
    return out


def graph_of(K: SimplicialComplex) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(K.m))
    G.add_edges_from(_edges(K))
    return G


def complex_of_graph(G: nx.Graph) -> SimplicialComplex:
    """A simple graph as a 1-dimensional complex on vertices 0..|G|-1 (in node order)."""
    index = {v: i for i, v in enumerate(G.nodes)}
    masks = [(1 << index[a]) | (1 << index[b]) for a, b in G.edges]
    masks += [1 << index[v] for v in G.nodes]
    return SimplicialComplex(len(index), masks)


# -- chromatic number --------------------------------------------------------


def _greedy_clique(adj: list[set]) -> int:
    best = 0
    for start in range(len(adj)):
        clique = [start]
        for v in sorted(adj[start], key=lambda u: -len(adj[u])):
            if all(v in adj[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _color_with(adj: list[set], k: int) -> list[int] | None:
    """A proper k-coloring by DSATUR-ordered backtracking, or None."""
    n = len(adj)
    colors = [-1] * n

    def pick():
        best, key = -1, None
        for v in range(n):
            if colors[v] < 0:
                sat = len({colors[u] for u in adj[v] if colors[u] >= 0})
                cand = (sat, len(adj[v]))
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def go(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        taken = {colors[u] for u in adj[v]}
        # a fresh color is interchangeable with any other fresh one
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if go(done + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return list(colors) if go(0, 0) else None


def chromatic_coloring(K) -> tuple[int, list[int]]:
    """Exact chromatic number of the 1-skeleton and an optimal coloring.

    Branch and bound: k runs upward from a greedy clique bound until a
    DSATUR backtracking search finds a k-coloring.
    """
    if isinstance(K, nx.Graph):
        K = complex_of_graph(K)
    K = _as_complex(K)
    if K.m == 0:
        return 0, []
    adj = [set() for _ in range(K.m)]
    for a, b in _edges(K):
        adj[a].add(b)
        adj[b].add(a)
    k = max(1, _greedy_clique(adj))
    while True:
        col = _color_with(adj, k)
        if col is not None:
            return k, col
        k += 1


def chromatic_number(K) -> int:
    return chromatic_coloring(K)[0]


# -- nondegenerate maps -------------------------------------------------------


def _line_coords(line) -> tuple:
    if hasattr(line, "representative"):
        return line.representative.coords
    if hasattr(line, "coords"):
        return line.coords
    return tuple(line)


def is_nondegenerate(source, p: int, r: int, assignment) -> bool:
    """Every facet's assigned lines are distinct and independent in F_p^r."""
    K = _as_complex(source)
    if len(assignment) != K.m:
        raise PreconditionError("assignment must give a line for every vertex")
    coords = [tuple(x % p for x in _line_coords(a)) for a in assignment]
    if any(len(c) != r for c in coords):
        raise PreconditionError(f"assigned vectors must lie in F_{p}^{r}")
    for f in K.facet_masks:
        vs = vertices_of(f)
        if vs and rank_mod_p([list(coords[v]) for v in vs], p) != len(vs):
            return False
    return True


@dataclass
class NondegenerateMap:
    source: SimplicialComplex
    p: int
    r: int
    assignment: list  # vertex -> representative tuple of a line in F_p^r

    def is_valid(self) -> bool:
        return is_nondegenerate(self.source, self.p, self.r, self.assignment)

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)


class _Target:
    """Lines of F_p^r, indexed in lexicographic order, with a memoized independence test."""

    def __init__(self, p: int, r: int):
        self.p, self.r = p, r
        self.lines = [l.representative.coords for l in enumerate_lines(p, r)]
        # lines inside span(e_{r-d+1}, ..., e_r), and the canonical new line e_{r-d}
        self.inside = [
            [i for i, c in enumerate(self.lines) if not any(c[: r - d])] for d in range(r + 1)
        ]
        self.fresh = [self.lines.index(tuple(int(t == r - d - 1) for t in range(r))) for d in range(r)]
        self._memo: dict = {}

    def independent(self, idx: frozenset) -> bool:
        got = self._memo.get(idx)
        if got is None:
            got = rank_mod_p([list(self.lines[i]) for i in idx], self.p) == len(idx)
            self._memo[idx] = got
        return got


class BudgetExceeded(Exception):
    pass


def _search_order(K: SimplicialComplex) -> list[int]:
    """Vertices of the lexicographically first facet, then by most connections to those placed."""
    adj = [set() for _ in range(K.m)]
    for a, b in _edges(K):
        adj[a].add(b)
        adj[b].add(a)
    order: list[int] = []
    placed: set = set()
    first = min((f for f in K.facet_masks if f), key=vertices_of, default=0)
    for v in vertices_of(first):
        order.append(v)
        placed.add(v)
    while len(order) < K.m:
        v = max(
            (u for u in range(K.m) if u not in placed),
            key=lambda u: (len(adj[u] & placed), len(adj[u]), -u),
        )
        order.append(v)
        placed.add(v)
    return order


def find_map(K, p: int, r: int, budget: int = DEFAULT_NODE_BUDGET) -> tuple[list | None, int]:
    """A nondegenerate map K -> K(F_p^r) as a list of line tuples, or None; plus nodes used.

    Raises BudgetExceeded when more than `budget` assignments are tried.
    """
    K = _as_complex(K)
    if K.m == 0:
        return [], 0
    if r < K.dim + 1 or r <= 0:
        return None, 0
    T = _Target(p, r)
    order = _search_order(K)
    # facets through each vertex, restricted to vertices placed before it
    pos = {v: i for i, v in enumerate(order)}
    checks: list[list[tuple]] = [[] for _ in order]
    for f in K.facet_masks:
        vs = sorted(vertices_of(f), key=pos.get)
        for t in range(1, len(vs)):
            checks[pos[vs[t]]].append(tuple(pos[u] for u in vs[:t]))
    for lst in checks:
        lst[:] = sorted(set(lst))
    assigned = [-1] * len(order)
    nodes = 0

    def go(t: int, d: int) -> bool:
        nonlocal nodes
        if t == len(order):
            return True
        cands = list(T.inside[d])
        if d < r:
            cands.append(T.fresh[d])
        for line in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            ok = True
            for earlier in checks[t]:
                idx = frozenset(assigned[e] for e in earlier) | {line}
                if len(idx) != len(earlier) + 1 or not T.independent(idx):
                    ok = False
                    break
            if not ok:
                continue
            assigned[t] = line
            if go(t + 1, d + 1 if d < r and line == T.fresh[d] else d):
                return True
        assigned[t] = -1
        return False

    found = go(0, 0)
    if not found:
        return None, nodes
    out = [None] * K.m
    for t, v in enumerate(order):
        out[v] = T.lines[assigned[t]]
    return out, nodes


def iter_nondegenerate_maps(K, p: int, r: int):
    """Every nondegenerate map, no symmetry reduction; for exhaustive checks on tiny cases."""
    K = _as_complex(K)
    lines = [l.representative.coords for l in enumerate_lines(p, r)]
    for choice in itertools.product(range(len(lines)), repeat=K.m):
        assignment = [lines[i] for i in choice]
        if is_nondegenerate(K, p, r, assignment):
            yield assignment


# -- the invariant ----------------------------------------------------------


@dataclass
class InvariantReport:
    p: int
    m: int
    value: int | None  # s_p, when exact
    r: int | None
    assignment: list | None
    r_lower: int
    r_upper: int
    bounds: dict = field(default_factory=dict)  # name -> (value, provenance)
    exact: bool = True
    nodes: int = 0
    status: str = "exact"

    @property
    def s_lower(self) -> int:
        return self.m - self.r_upper

    @property
    def s_upper(self) -> int:
        return self.m - self.r_lower

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "value": self.value,
            "r": self.r,
            "assignment": [list(a) for a in self.assignment] if self.assignment else None,
            "s_p_interval": [self.s_lower, self.s_upper],
            "bounds": {k: {"value": v, "from": why} for k, (v, why) in self.bounds.items()},
            "status": self.status,
            "nodes": self.nodes,
        }


def bounds_report(K, p: int) -> InvariantReport:
    """The chain m - gamma <= s_p <= min(m - dim - 1, m - ceil(log_p((p-1)gamma + 1)))."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    K = _as_complex(K)
    m = K.m
    gamma, coloring = chromatic_coloring(K)
    log_r = ceil_log(p, (p - 1) * gamma + 1)
    dim_r = K.dim + 1
    b = {
        "m - gamma": (m - gamma, "coloring by basis vectors"),
        "m - dim - 1": (m - dim_r, "a facet needs dim + 1 independent lines"),
        "m - ceil(log_p((p-1)gamma+1))": (m - log_r, "gamma <= number of lines of F_p^r"),
    }
    r_lower = max(dim_r, log_r)
    r_upper = max(gamma, r_lower)
    if m - r_upper > m - r_lower:
        raise AssertionError("bound chain violated")
    rep = InvariantReport(p, m, None, None, None, r_lower, r_upper, b, exact=False, status="bounds")
    if r_lower == r_upper:
        rep.value, rep.r, rep.exact, rep.status = m - r_lower, r_lower, True, "bounds coincide"
        rep.assignment = _basis_coloring(coloring, gamma, r_upper) if gamma == r_upper else None
    return rep


def _basis_coloring(coloring: list[int], gamma: int, r: int) -> list[tuple]:
    return [tuple(int(t == c) for t in range(r)) for c in coloring]


def s_p(K, p: int, budget: int = DEFAULT_NODE_BUDGET, use_bounds: bool = True, hints=()) -> InvariantReport:
    """Exact s_p(K) by searching r upward, or certified bounds when the budget runs out.

    With use_bounds=False the search starts at r = dim K + 1 and every smaller
    rank is ruled out by search alone; the coloring map is not used either.
    `hints` are candidate assignments tried (and validated) as upper bounds.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    src = K
    K = _as_complex(K)
    rep = bounds_report(K, p)
    r_lower = rep.r_lower if use_bounds else K.dim + 1
    best_r, best_map = None, None
    if use_bounds:
        gamma, coloring = chromatic_coloring(K)
        best_r, best_map = gamma, _basis_coloring(coloring, gamma, gamma)
    hints = list(hints)
    if use_bounds and isinstance(src, UniversalComplex) and src.p == p:
        hints.append([canonical for canonical in _lines_of_labels(src)])
    for h in hints:
        r = len(_line_coords(h[0])) if h else 0
        if is_nondegenerate(K, p, r, h) and (best_r is None or r < best_r):
            best_r, best_map = r, [tuple(_line_coords(a)) for a in h]
    nodes = 0
    r = r_lower
    while best_r is None or r < best_r:
        try:
            found, used = find_map(K, p, r, budget - nodes)
        except BudgetExceeded:
            rep.r_lower = r
            rep.r_upper = best_r if best_r is not None else K.m
            rep.r, rep.assignment = best_r, best_map
            rep.nodes, rep.status, rep.exact, rep.value = budget, "timeout; resume from r_lower", False, None
            return rep
        nodes += used
        if found is not None:
            best_r, best_map = r, found
            break
        r += 1
    rep.r_lower = rep.r_upper = best_r
    rep.r, rep.assignment, rep.value = best_r, best_map, K.m - best_r
    rep.exact, rep.status, rep.nodes = True, "exact", nodes
    if not is_nondegenerate(K, p, best_r, best_map):
        raise AssertionError("attaining assignment failed revalidation")
    return rep


def _lines_of_labels(U: UniversalComplex) -> list[tuple]:
    from .lattice import FpVector, canonical_line

    return [canonical_line(FpVector(U.p, v)).representative.coords for v in U.vectors]


def min_target_rank(K, p: int, **kw) -> int:
    rep = s_p(K, p, **kw)
    if not rep.exact:
        raise PreconditionError(f"search budget exhausted; r is in [{rep.r_lower}, {rep.r_upper}]")
    return rep.r


def s_p_graph_formula(graph, p: int) -> int:
    """m - ceil(log_p((p-1)gamma + 1)) for a simple graph (nx.Graph or 1-dimensional complex)."""
    K = complex_of_graph(graph) if isinstance(graph, nx.Graph) else _as_complex(graph)
    if K.dim > 1:
        raise PreconditionError("the graph formula needs a complex of dimension at most 1")
    gamma = chromatic_number(K)
    return K.m - ceil_log(p, (p - 1) * gamma + 1)


# -- omega and theta ------------------------------------------------------------


@dataclass
class OmegaResult:
    p: int
    q: int
    n: int
    lower: int
    upper: int
    value: int | None
    assignment: list | None = None
    flagged: str = ""

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "bounds": [self.lower, self.upper],
            "value": self.value,
            "assignment": [list(a) for a in self.assignment] if self.assignment else None,
            "note": self.flagged,
        }


def omega_bounds(p: int, q: int, n: int) -> tuple[int, int]:
    lines = (p**n - 1) // (p - 1)
    return ceil_log(q, (q - 1) * lines + 1), lines


def omega(p: int, q: int, n: int, budget: int = 10**6, max_vertices: int = 40) -> OmegaResult:
    """Least r with a nondegenerate map K(F_p^n) -> K(F_q^r); bounds when too large to search."""
    for x in (p, q):
        if not is_prime(x):
            raise PreconditionError(f"{x} is not prime")
    if n < 1:
        raise PreconditionError("n must be at least 1")
    lo, hi = omega_bounds(p, q, n)
    lo = max(lo, n)
    if hi < lo:
        hi = lo
    out = OmegaResult(p, q, n, lo, hi, None)
    if (p**n - 1) // (p - 1) > max_vertices:
        out.flagged = "too large to search; bounds only"
        return out
    U = build_K(p, n)
    hints = [_lines_of_labels(U)] if p == q else []
    rep = s_p(U.base, q, budget=budget, hints=hints)
    if rep.exact:
        out.value, out.assignment = rep.r, rep.assignment
        out.lower = out.upper = rep.r
    else:
        out.lower, out.upper = max(lo, rep.r_lower), min(hi, rep.r_upper)
        out.flagged = "search budget exhausted; bounds only"
    return out


def theta_bounds(p: int, n: int) -> tuple[int, int]:
    """Bounds only: the target K(Z^r) is infinite, so theta is never searched."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    lines = (p**n - 1) // (p - 1)
    return ceil_log(2, lines + 1), lines


# -- injectivity and skeletons ---------------------------------------------------


def injectivity_check(p: int, q: int, n: int, r: int, assignment) -> bool:
    """For a map K(F_p^n) -> K(F_q^r): nondegenerate implies injective on vertices."""
    K = build_K(p, n).base
    if not is_nondegenerate(K, q, r, assignment):
        return True
    return len({tuple(_line_coords(a)) for a in assignment}) == len(assignment)


def f_vector_monotone(p: int, m: int, q: int, n: int) -> bool:
    a, b = f_vector_closed("K", p, m), f_vector_closed("K", q, n)
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


@dataclass
class SkeletonReport:
    p: int
    m_max: int
    values: dict = field(default_factory=dict)  # (m, k) -> s_p(Delta^m_(k))
    failures: list = field(default_factory=list)
    partial: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures and not self.partial


def skeleton_checks(p: int, m_max: int, budget: int = DEFAULT_NODE_BUDGET) -> SkeletonReport:
    """s_p of every k-skeleton of Delta^m, m <= m_max + 1, and the four-term chain for m <= m_max."""
    rep = SkeletonReport(p, m_max)
    for m in range(m_max + 2):
        for k in range(m + 1):
            res = s_p(skeleton_of_simplex(m, k), p, budget=budget)
            if not res.exact:
                rep.partial = True
                continue
            rep.values[(m, k)] = res.value
    v = rep.values
    for m in range(m_max + 1):
        if v.get((m, 0)) is not None and v[(m, 0)] != m:
            rep.failures.append(f"s_p(Delta^{m}_(0)) = {v[(m, 0)]}, expected {m}")
        for k in range(m + 1):
            chain = [v.get((m + 1, k + 1)), v.get((m, k)), v.get((m + 1, k))]
            if None in chain:
                continue
            a, b, c = chain
            if not (a <= b <= c <= b + 1):
                rep.failures.append(f"chain fails at m={m}, k={k}: {a}, {b}, {c}")
    return rep
