"""Exact construction and exhaustive verification of Buekenhout-Tits unitals.

The package builds the Buekenhout-Tits unital in PG(2, q^2) for
q = 2^(2e+1), checks the unital axioms and the ovoidal-cone correspondence
under the Andre/Bruck-Bose model, determines the linear and semilinear
stabiliser groups by exhaustive search, and scans how lines meet the feet
of points, all with exact field arithmetic at desk scale (e = 1, partially
e = 2).
"""

__version__ = "0.1.0"

from .fields import FieldCtx, SubfieldError, build_context
from .unital import UnitalSet, build_bt_unital

__all__ = [
    "FieldCtx",
    "SubfieldError",
    "build_context",
    "UnitalSet",
    "build_bt_unital",
    "__version__",
]
