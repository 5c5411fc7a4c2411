"""Exact-arithmetic toolkit for the rank-2 Nichols algebra of Cartan type A2.

Builds the algebra at a root of unity over exact coefficient fields,
constructs projective resolutions of the trivial module, and computes and
verifies its cohomology ring.
"""

from .qalgebra import (
    MODE_FULL,
    MODE_GRADED,
    BraidingParams,
    make_algebra,
    standard_braiding,
)
from .scalars import make_field

__version__ = "0.1.0"

__all__ = [
    "BraidingParams",
    "MODE_FULL",
    "MODE_GRADED",
    "make_algebra",
    "make_field",
    "standard_braiding",
    "__version__",
]
