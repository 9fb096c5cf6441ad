"""Quadratic Euler characteristics in GW(k) of cyclic branched covers.

Exact arithmetic over Q and F_p and their extension towers, the
Grothendieck--Witt ring with decidable equality, trace and Scheja--Storch
forms, covering formulas, and a pipeline for double covers of P^2.
"""

from .covering import (
    CoveringLocalInput,
    LocalKind,
    assemble_general,
    branched_contribution,
    chi_blowup,
    chi_curve,
    chi_product,
    chi_projective_space,
    covering_chi,
    d_invariant,
    etale_contribution,
)
from .errors import (
    CapacityError,
    CrossCheckError,
    GWCoverError,
    MNotInvertibleError,
    ParseError,
    ValidationError,
)
from .factor import factor_univariate
from .fields import GF, QQ, Extension, PrimeField, Rationals, TowerElement, field_arith
from .forms import GramForm, agrees_after_extension, cyclic_trace_check, diagonalize, trace_form
from .gw import (
    GWElement,
    display,
    gw_arith,
    gw_display,
    gw_equals,
    gw_equals_real,
    gw_from_diagonal,
    gw_invariants,
)
from .mpoly import MultiPoly, multipoly_calc
from .parsing import parse_config, parse_gw, parse_polynomial
from .pipeline import (
    BranchedCoverInput,
    chi_of_cover,
    compute_beta,
    find_critical_points,
    local_data,
    move_point,
    validate_input,
)
from .scheja_storch import QuotientAlgebra, SSForm, a1_milnor, build_quotient, local_factor_at_origin, ss_form
from .series import TruncatedSeries, hensel_parametrize
from .squares import hilbert_symbol, is_square, square_class
from .upoly import resultant

__all__ = [
    "a1_milnor",
    "agrees_after_extension",
    "assemble_general",
    "branched_contribution",
    "BranchedCoverInput",
    "build_quotient",
    "CapacityError",
    "chi_blowup",
    "chi_curve",
    "chi_of_cover",
    "chi_product",
    "chi_projective_space",
    "compute_beta",
    "covering_chi",
    "CoveringLocalInput",
    "CrossCheckError",
    "cyclic_trace_check",
    "d_invariant",
    "diagonalize",
    "display",
    "etale_contribution",
    "Extension",
    "factor_univariate",
    "field_arith",
    "find_critical_points",
    "GF",
    "GramForm",
    "gw_arith",
    "gw_display",
    "gw_equals",
    "gw_equals_real",
    "gw_from_diagonal",
    "gw_invariants",
    "GWCoverError",
    "GWElement",
    "hensel_parametrize",
    "hilbert_symbol",
    "is_square",
    "local_data",
    "local_factor_at_origin",
    "LocalKind",
    "MNotInvertibleError",
    "move_point",
    "MultiPoly",
    "multipoly_calc",
    "parse_config",
    "parse_gw",
    "parse_polynomial",
    "ParseError",
    "PrimeField",
    "QQ",
    "QuotientAlgebra",
    "Rationals",
    "resultant",
    "square_class",
    "ss_form",
    "SSForm",
    "TowerElement",
    "trace_form",
    "TruncatedSeries",
    "validate_input",
    "ValidationError",
]

__version__ = "0.1.0"
