"""Extreme-eigenvalue bounds for symmetric matrices bordered by a column.

Submodules: :mod:`.linalg` (bordered construction, Jacobi oracle),
:mod:`.secular` (exact extremes), :mod:`.bounds` (closed-form bounds),
:mod:`.graph`, :mod:`.pinning` and :mod:`.cs` (applications).
"""

from .bounds import BoundReport, bordered_bounds, lili_two_sided
from .errors import InputError, NumericalError
from .linalg import BorderedSpec, Spectrum, assemble_bordered, jacobi_eigen
from .secular import SecularProblem, largest_eigenvalue, smallest_eigenvalue

__version__ = "0.1.0"

__all__ = [
    "BorderedSpec",
    "BoundReport",
    "InputError",
    "NumericalError",
    "SecularProblem",
    "Spectrum",
    "assemble_bordered",
    "bordered_bounds",
    "jacobi_eigen",
    "largest_eigenvalue",
    "lili_two_sided",
    "smallest_eigenvalue",
]
