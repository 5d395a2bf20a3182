"""comodcheck: exact verification of the categorical laws of comodules
over cocommutative coalgebras.

The package builds finite-dimensional cocommutative coalgebras and their
comodules over Q or F_p as exact structure-constant matrices, implements
the cotensor monoidal structure, the indexed functors Sigma/pullback/
forall, and the LNL hyperdoctrine over tensor powers, and machine-checks
every law (coherence, adjunctions, Beck-Chevalley, Frobenius, strong
monoidal closure, hyperdoctrine conditions) on concrete instances.

The hot elimination kernels run from a compiled extension when available
(``comodcheck._backend.BACKEND`` reports which); the pure-Python fallback
is semantically identical.
"""

from ._backend import BACKEND
from .fields import GF, QQ, Field

__version__ = "0.1.0"

__all__ = ["BACKEND", "Field", "QQ", "GF", "__version__"]
