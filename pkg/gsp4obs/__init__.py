"""Local obstruction invariants H^0(G_ell, ad rho(1)) for mod-p GSp4 representations."""

from .errors import (
    ConstraintViolation,
    DescriptorError,
    Gsp4ObsError,
    NotSymplecticError,
    RealizabilityError,
    VerificationFailure,
)
from .localtype import GroupLabel, LocalTypeDescriptor, concretize, load_descriptor, parse_descriptor
from .obstruction import H0Report, adjoint_invariants, is_obstructed, obstruction_invariants, verify_decomposition
from .sieve import SieveReport, WeightData, char_trivial_mod, exceptional_primes, fl_check, ordinary_check
from .symplectic import Parity, euler_defect
from .tamerep import ExtensionKind, SteinbergKind, SymChar

__version__ = "0.3.0"

__all__ = [
    "ConstraintViolation",
    "DescriptorError",
    "ExtensionKind",
    "GroupLabel",
    "Gsp4ObsError",
    "H0Report",
    "LocalTypeDescriptor",
    "NotSymplecticError",
    "Parity",
    "RealizabilityError",
    "SieveReport",
    "SteinbergKind",
    "SymChar",
    "VerificationFailure",
    "WeightData",
    "__version__",
    "adjoint_invariants",
    "char_trivial_mod",
    "concretize",
    "euler_defect",
    "exceptional_primes",
    "fl_check",
    "is_obstructed",
    "load_descriptor",
    "obstruction_invariants",
    "ordinary_check",
    "parse_descriptor",
    "verify_decomposition",
]
