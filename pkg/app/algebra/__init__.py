# Algebra package for the Tame Langlands Workbench

from .exact import CycInt, ExactValue
from .padic import PadicNumber, sqrt_hensel, teichmuller, v_p
from .finite_fields import FqField, GLnq, residue_field
from .extensions import ExtElement, LevelTag, TameExtension, build_extension

__all__ = [
    "CycInt",
    "ExactValue",
    "PadicNumber",
    "sqrt_hensel",
    "teichmuller",
    "v_p",
    "FqField",
    "GLnq",
    "residue_field",
    "ExtElement",
    "LevelTag",
    "TameExtension",
    "build_extension",
]
