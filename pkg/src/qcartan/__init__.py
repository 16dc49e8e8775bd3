"""Exact calculus on the quantum exterior algebra and the q-deformed Clifford algebra of sl2."""
from .braiding import CONVENTION, sigma, sigma_inv, sigma_tilde
from .expr import parse, parse_element, parse_scalar, render
from .linalg import Matrix
from .qcl import CliffordAlgebra, clifford
from .qext import ExteriorAlgebra, cohomology, exterior
from .repn import ModuleSpec, decompose, tensor, v2pi
from .scalar import SYMBOLIC, PointField, Scalar, q_int, q_power, specialize
from .uq import SlqElement, UqWord, normalize

__all__ = [
    "CONVENTION",
    "CliffordAlgebra",
    "ExteriorAlgebra",
    "Matrix",
    "ModuleSpec",
    "PointField",
    "SYMBOLIC",
    "Scalar",
    "SlqElement",
    "UqWord",
    "clifford",
    "cohomology",
    "decompose",
    "exterior",
    "normalize",
    "parse",
    "parse_element",
    "parse_scalar",
    "q_int",
    "q_power",
    "render",
    "sigma",
    "sigma_inv",
    "sigma_tilde",
    "specialize",
    "tensor",
    "v2pi",
]
