"""Exact computation of projective indecomposable modules, simple modules and their bijection."""

__version__ = "0.1.0"

from .field import FieldDesc, scalar_inv  # noqa: E402
from .algebra import AlgebraData, build_example, validate_algebra  # noqa: E402
from .module import ModuleRep, regular_module  # noqa: E402
from .correspondence import bijection, verify_theorems  # noqa: E402

__all__ = [
    "AlgebraData",
    "FieldDesc",
    "ModuleRep",
    "bijection",
    "build_example",
    "regular_module",
    "scalar_inv",
    "validate_algebra",
    "verify_theorems",
]
