"""Exact finite-scale checks of stable finiteness for semigroup, groupoid and
Leavitt path algebras."""

__version__ = "0.1.0"

from .errors import FinitudeError, InputError, SizeError, VerificationError
from .kernels import BACKEND
from .scalars import Gaussian

__all__ = [
    "BACKEND",
    "FinitudeError",
    "Gaussian",
    "InputError",
    "SizeError",
    "VerificationError",
    "__version__",
]
