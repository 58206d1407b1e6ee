"""Controllability of right-invariant control systems on U(n) and SU(n).

Submodules
----------
linalg      dense complex primitives (expm, Hermitian eig, real spans)
words       reduced control words and their group operations
lie         Lie closure and transformation controllability
su          root data, regularity and generator-pair criteria for su(n)
tensor      Kronecker-sum embeddings and one-element extensions
reach       schedule evaluation, local rank of exp-products, dense gates
grassmann   density-matrix orbits and the Grassmannian block criterion
states      spectra of discrete classical mixed states
cli         the ``liectl`` command

The closure and orthonormalization kernels come from a compiled extension
when it is available; ``liectl._backend.BACKEND`` names the one in use.
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import PreconditionError
from .lie import AlgebraBasis, GeneratorSystem, contains, is_transformation_controllable, lie_closure
from .words import ControlWord

__all__ = [
    "BACKEND",
    "AlgebraBasis",
    "ControlWord",
    "GeneratorSystem",
    "PreconditionError",
    "contains",
    "is_transformation_controllable",
    "lie_closure",
]
