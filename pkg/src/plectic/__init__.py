"""Exact Cartan calculus, Lie n-algebras of observables and homotopy moment maps
on polynomial charts and sampled level sets."""

from __future__ import annotations

from .equivariant import ActionData, CartanCochain, check_extension, fundamental_fields_linear
from .errors import (DegreeError, NoPrimitive, NotACocycle, NotClosed, NotInvariant, Obstructed, ParseError,
                     PlecticError, UnsupportedN)
from .forms import Chart, PolyForm, PolyMultiVec, exterior_d, interior, lie_derivative, schouten, wedge
from .levelset import LevelSetChart
from .lie import CECochain, LinearAction, StructLieAlgebra, ce_differential, is_ce_coboundary
from .linfty import BracketTable, GradedSpace, MorphismData, central_extension, check_generalized_jacobi
from .moment import (MomentMap, construct_unobstructed, extension_lift, moment_from_cartan, moment_from_extension,
                     obstruction, verify_moment)
from .parser import parse_expression
from .poly import MultiPoly
from .printer import format_value
from .scenarios import Report, Scenario, list_builtins, load_scenario, run_builtin, run_scenario

__version__ = "0.1.0"

__all__ = [
    "ActionData", "BracketTable", "CECochain", "CartanCochain", "Chart", "DegreeError", "GradedSpace",
    "LevelSetChart", "LinearAction", "MomentMap", "MorphismData", "MultiPoly", "NoPrimitive", "NotACocycle",
    "NotClosed", "NotInvariant", "Obstructed", "ParseError", "PlecticError", "PolyForm", "PolyMultiVec", "Report",
    "Scenario", "StructLieAlgebra", "UnsupportedN", "ce_differential", "central_extension", "check_extension",
    "check_generalized_jacobi", "construct_unobstructed", "exterior_d", "extension_lift", "format_value",
    "fundamental_fields_linear", "interior", "is_ce_coboundary", "lie_derivative", "list_builtins",
    "load_scenario", "moment_from_cartan", "moment_from_extension", "obstruction", "parse_expression",
    "run_builtin", "run_scenario", "schouten", "verify_moment", "wedge",
]
