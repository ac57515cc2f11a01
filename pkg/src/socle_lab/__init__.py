"""Exact algebra for p-socles: fields, function fields, Kummer and Artin-Schreier ranks, finite groups."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.1.0"

from .errors import ParseError, SemanticError, SocleLabError
from .fields import Field, FieldElement, extend, make_cyclotomic, make_finite_field, make_prime_field, make_rationals
from .funcfields import FunctionField, MultiPoly, RatFunc, freshman_check, valuation
from .groups import FiniteGroup, Subgroup, frattini_p, normal_core, relative_frattini, subgroups, verify_socle_equation
from .kummer import as_rank, as_relative_rank, kummer_rank, kummer_relative_rank, pth_root_membership, wp, wp_solve
from .catalog import load_group, named_group
from .parsing import parse_element_list, parse_expression, parse_field

__all__ = [
    "Field",
    "FieldElement",
    "FiniteGroup",
    "FunctionField",
    "MultiPoly",
    "ParseError",
    "RatFunc",
    "SemanticError",
    "SocleLabError",
    "Subgroup",
    "__version__",
    "as_rank",
    "as_relative_rank",
    "extend",
    "frattini_p",
    "freshman_check",
    "kummer_rank",
    "kummer_relative_rank",
    "load_group",
    "make_cyclotomic",
    "make_finite_field",
    "make_prime_field",
    "make_rationals",
    "named_group",
    "normal_core",
    "parse_element_list",
    "parse_expression",
    "parse_field",
    "pth_root_membership",
    "relative_frattini",
    "subgroups",
    "valuation",
    "verify_socle_equation",
    "wp",
    "wp_solve",
]
