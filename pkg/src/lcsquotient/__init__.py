"""Second lower central quotients of fundamental groups."""

__all__ = [
    "AbelianGroup",
    "Exactness",
    "GroupPresentation",
    "IntMatrix",
    "SecondQuotientResult",
    "SpaceData",
    "__version__",
    "cokernel",
    "cross_validate",
    "fano_second_quotient",
    "gamma2_mod_gamma3",
    "second_lcs_quotient",
    "snf",
]

from importlib.metadata import PackageNotFoundError, version

from .fano import fano_second_quotient
from .lattice import AbelianGroup, IntMatrix, cokernel, snf
from .nilpotent import GroupPresentation, cross_validate, gamma2_mod_gamma3
from .second_quotient import (
    Exactness,
    SecondQuotientResult,
    SpaceData,
    second_lcs_quotient,
)

__version__: str
"""The package version string (PEP 440 / SemVer compatible)."""

try:
    __version__ = version(__name__)
except PackageNotFoundError:
    # package is not installed
    __version__ = "0.0.0"
