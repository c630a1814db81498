"""bordx: exact-arithmetic workbench for complex and SU bordism.

Chern numbers of projectivisation towers and quasitoric manifolds, the
Conner-Floyd/Novikov/Stong operation calculus on Chern-number vectors, and
construction/certification of polynomial generators of the SU-bordism ring
with 2 inverted.
"""

from .bordclass import ChernVector
from .cohomring import PresentedRing
from .exactalg import GradedPoly, IntMatrix, KERNEL_BACKEND
from .tower import CharMatrix, Stage, TowerSpec

__version__ = "0.1.0"

__all__ = [
    "ChernVector",
    "PresentedRing",
    "GradedPoly",
    "IntMatrix",
    "CharMatrix",
    "Stage",
    "TowerSpec",
    "KERNEL_BACKEND",
    "__version__",
]
