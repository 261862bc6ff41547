"""Published Betti tables of X(F_2^3) and X(F_2^4), in (l, i) layout.

Entry (l, i) is beta^{l-i,2i}; every entry not listed is zero.
"""

from __future__ import annotations

from .tor.betti import BettiTable, betti_recursion_X, betti_via_hochster_euler, betti_via_morse
from .universal import build_X

TABLE_X_2_3 = {(2, 3): 7, (3, 4): 7, (3, 5): 42, (3, 6): 42, (3, 7): 13}

TABLE_X_2_4 = {
    (2, 3): 35,
    (3, 4): 105, (3, 5): 630, (3, 6): 630, (3, 7): 195,
    (4, 5): 168, (4, 6): 4480, (4, 7): 27420, (4, 8): 79695, (4, 9): 140140,
    (4, 10): 163548, (4, 11): 130725, (4, 12): 71225, (4, 13): 25410, (4, 14): 5370,
    (4, 15): 511,
}

EXPECTED = {3: TABLE_X_2_3, 4: TABLE_X_2_4}
SHAPES = {3: (3, 7), 4: (4, 15)}


def layout(table: BettiTable, rows: int, cols: int) -> dict:
    """Nonzero entries in (l, i) layout, leaving out the trivial beta^{0,0}."""
    out = {}
    for l in range(1, rows + 1):
        for i in range(1, cols + 1):
            v = table.layout_entry(l, i)
            if v:
                out[(l, i)] = v
    return out


def extra_nonzero(table: BettiTable, rows: int, cols: int) -> dict:
    """Nonzero entries outside the printed window, other than beta^{0,0}."""
    window = {(i - l, i) for l in range(1, rows + 1) for i in range(1, cols + 1)}
    return {k: v for k, v in table.nonzero().items() if k != (0, 0) and k not in window}


def diff(n: int, table: BettiTable) -> list[str]:
    """Human-readable mismatches against the published table; empty when identical."""
    rows, cols = SHAPES[n]
    got = layout(table, rows, cols)
    want = EXPECTED[n]
    lines = []
    for key in sorted(set(got) | set(want)):
        if got.get(key, 0) != want.get(key, 0):
            lines.append(f"(l={key[0]}, i={key[1]}): expected {want.get(key, 0)}, got {got.get(key, 0)}")
    for key, v in extra_nonzero(table, rows, cols).items():
        lines.append(f"unexpected nonzero beta^(-{key[0]},{2 * key[1]}) = {v}")
    if table[(0, 0)] != 1:
        lines.append(f"beta^(0,0) = {table[(0, 0)]}, expected 1")
    return lines


def compute(n: int, method: str) -> BettiTable:
    if method == "recursion":
        return betti_recursion_X(2, n)
    K = build_X(2, n).base
    if method == "morse":
        return betti_via_morse(K)
    if method == "euler-oracle":
        return betti_via_hochster_euler(K)
    raise ValueError(f"unknown method {method!r}")
