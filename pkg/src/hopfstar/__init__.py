"""Exact verification of finite-dimensional Hopf *-algebras, their modules, stars, inner products and braidings."""

from .braid import RMatrix, braiding, conjugate_braiding, drinfeld_u, r_reality, verify_quasitriangular
from .conj import conjugate_module, natural_isos, tilde_conjugate_module
from .errors import CheckFailed, HopfStarError, ParseError, UnknownFixture
from .fixtures import Bundle, fixture
from .hmod import HModule, ModuleMap, hom_left, left_dual, right_dual, tensor_module, verify_module
from .hopf import HopfStarAlgebra, antipode_inverse, verify_hopf_star
from .inner import adjoint, two_out_of_three, verify_inner_product
from .io import Workspace, parse_document, serialize
from .linalg import Matrix
from .report import Report
from .scalar import Scalar, parse_scalar, scalar_sign
from .staralg import kappa, tensor_algebra_star, verify_star_module

__version__ = "0.1.0"

__all__ = [
    "Bundle",
    "CheckFailed",
    "HModule",
    "HopfStarAlgebra",
    "HopfStarError",
    "Matrix",
    "ModuleMap",
    "ParseError",
    "RMatrix",
    "Report",
    "Scalar",
    "UnknownFixture",
    "Workspace",
    "adjoint",
    "antipode_inverse",
    "braiding",
    "conjugate_braiding",
    "conjugate_module",
    "drinfeld_u",
    "fixture",
    "hom_left",
    "kappa",
    "left_dual",
    "natural_isos",
    "parse_document",
    "parse_scalar",
    "r_reality",
    "right_dual",
    "scalar_sign",
    "serialize",
    "tensor_algebra_star",
    "tensor_module",
    "tilde_conjugate_module",
    "two_out_of_three",
    "verify_hopf_star",
    "verify_inner_product",
    "verify_module",
    "verify_quasitriangular",
    "verify_star_module",
]
