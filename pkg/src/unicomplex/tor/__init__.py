"""Koszul complexes, Morse matchings and bigraded Betti numbers."""

from .betti import (
    METHODS,
    BettiTable,
    betti,
    betti_recursion,
    betti_recursion_K,
    betti_recursion_X,
    betti_via_cohomology,
    betti_via_hochster_euler,
    betti_via_morse,
)
from .koszul import KoszulCell, differential, morse_matching, morse_sets, verify_matching
from .torsion import TorsionReport, torsion_check

__all__ = [
    "METHODS",
    "BettiTable",
    "KoszulCell",
    "TorsionReport",
    "betti",
    "betti_recursion",
    "betti_recursion_K",
    "betti_recursion_X",
    "betti_via_cohomology",
    "betti_via_hochster_euler",
    "betti_via_morse",
    "differential",
    "morse_matching",
    "morse_sets",
    "torsion_check",
    "verify_matching",
]
