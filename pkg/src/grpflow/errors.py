"""Exception types shared across the solver toolkit."""


class GrpflowError(Exception):
    """Base class for all solver errors."""


class InvalidState(GrpflowError):
    """A gas state left the physical region (rho > 0, p > 0, e > 0)."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"{message} (cell {index})")
        self.index = index


class GeometryError(GrpflowError):
    """Non-positive duct area or otherwise broken geometry."""


class VacuumFormation(GrpflowError):
    """The Riemann problem generates vacuum (psi_L <= phi_R)."""


class NoConvergence(GrpflowError):
    """Iterative star-state solve failed to converge."""


class IllPosedBoundary(GrpflowError):
    """Prescribed boundary data admits no physically admissible solution."""


class UnknownCase(GrpflowError):
    """Requested benchmark case name is not registered."""


class NoRoot(GrpflowError):
    """Algebraic relation (area-Mach, shock position) has no root on the branch."""


class GridMismatch(GrpflowError):
    """Frame comparison requested between incompatible grids."""


class UsageError(GrpflowError):
    """Bad command-line or configuration input."""
