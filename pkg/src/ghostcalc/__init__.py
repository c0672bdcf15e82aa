"""Exact computations with ghost distributions of small Lie superalgebras."""

from .algebra import LieSuperalgebra, validate_algebra
from .automorphism import GradedAutomorphism
from .errors import GhostCalcError
from .families import build_algebra
from .fields import Field, Q, RatFun
from .ghost import (a_phi_element, center_of_even_part, central_subset_sum_element, limit_to_center,
                    product_into_twisted, projectivity_polynomial, semisimplicity_test, solve_in_A_phi,
                    v_g, v_g_closed_form, v_g_generic_solve, vandermonde_decompose)
from .hc import clifford_poly_bH, hc_project_group, hc_project_pair, t_g_polynomial
from .modules import (T_g_action_check, build_kac_module, graded_constant_check,
                      highest_weight_irreducible, twisted_trace_poly)
from .parsing import parse_element, serialize_element
from .pbw import default_uea, twisted_adjoint
from .roots import make_borel

__version__ = "0.1.0"

__all__ = [
    "LieSuperalgebra", "validate_algebra", "GradedAutomorphism", "GhostCalcError", "build_algebra",
    "Field", "Q", "RatFun", "a_phi_element", "center_of_even_part", "central_subset_sum_element",
    "limit_to_center", "product_into_twisted", "projectivity_polynomial", "semisimplicity_test",
    "solve_in_A_phi", "v_g", "v_g_closed_form", "v_g_generic_solve", "vandermonde_decompose",
    "clifford_poly_bH", "hc_project_group", "hc_project_pair", "t_g_polynomial", "T_g_action_check",
    "build_kac_module", "graded_constant_check", "highest_weight_irreducible", "twisted_trace_poly",
    "parse_element", "serialize_element", "default_uea", "twisted_adjoint", "make_borel",
]
