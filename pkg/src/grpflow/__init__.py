"""Finite-volume compressible-flow toolkit with GRP boundary treatment.

Subpackages: gas-state algebra (gas), exact Riemann solvers (riemann),
GRP time-derivative solvers (grp), 1D/2D finite-volume schemes (fvm1d,
fvm2d), a scalar Burgers solver (burgers), benchmark definitions (cases),
frame I/O (frames), and the command line (cli).
"""

from .gas import ConservedState, Eos, PrimitiveState

__all__ = ["Eos", "PrimitiveState", "ConservedState"]
__version__ = "0.1.0"
