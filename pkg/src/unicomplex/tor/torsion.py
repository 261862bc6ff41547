"""Torsion in Tor over Z, detected through integral cohomology of full subcomplexes.

By Hochster's formula Tor_{Z[v]}(Z[K], Z) has torsion exactly when some full
subcomplex K_J has torsion in its integral cohomology, so scanning all 2^m
subsets and reading off Smith invariant factors settles the question.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import SimplicialComplex, vertices_of
from ..errors import ResourceError
from .betti import DEFAULT_COHOMOLOGY_CAP, iter_full_subcomplex_cohomology


@dataclass
class TorsionReport:
    subsets_checked: int
    # (vertex tuple, degree) -> invariant factors > 1
    torsion: dict = field(default_factory=dict)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    def factors(self) -> list[int]:
        return sorted(f for fs in self.torsion.values() for f in fs)

    def to_dict(self) -> dict:
        return {
            "subsets_checked": self.subsets_checked,
            "torsion_free": self.torsion_free,
            "torsion": [
                {"J": list(J), "degree": d, "factors": [str(f) for f in fs]}
                for (J, d), fs in sorted(self.torsion.items())
            ],
        }


def torsion_check(K: SimplicialComplex, cap: int = DEFAULT_COHOMOLOGY_CAP) -> TorsionReport:
    if K.m > cap:
        raise ResourceError(f"{K.m} vertices exceeds the torsion-check cap of {cap}")
    report = TorsionReport(0)
    for J, H in iter_full_subcomplex_cohomology(K, "Z"):
        report.subsets_checked += 1
        for d, fs in H.torsion.items():
            if fs:
                report.torsion[(vertices_of(J), d)] = list(fs)
    return report
