"""Universal complexes over finite fields, their Betti numbers and mod-p Buchstaber invariants."""

from .complex import SimplicialComplex, reduced_cohomology
from .errors import (
    ConsistencyError,
    ConstructionError,
    DimensionMismatchError,
    InvalidVertexError,
    PreconditionError,
    ResourceError,
    UnicomplexError,
)
from .universal import UniversalComplex, build, build_K, build_X, f_vector_closed

__version__ = "0.1.0"
