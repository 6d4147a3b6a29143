"""Symbolic engine for Leavitt path algebras of finite ultragraphs."""

from .algebra import (Algebra, Element, Monomial, NotFoundWithinDepth, degree_components, eq,
                      graded_component, inner_inverse, involution, is_zero, mul, normalize, unit)
from .field import QQ, Field, Fp
from .groupoid import Cylinder, GroupoidPoint, SteinbergElement, pi_G
from .kernels import BACKEND
from .ultragraph import InvalidUltragraph, Ultragraph, generate_G0, validate

__version__ = "0.1.0"

__all__ = [
    "Algebra", "BACKEND", "Cylinder", "Element", "Field", "Fp", "InvalidUltragraph", "Monomial",
    "GroupoidPoint", "NotFoundWithinDepth", "QQ", "SteinbergElement", "Ultragraph", "degree_components", "eq", "generate_G0",
    "graded_component", "inner_inverse", "involution", "is_zero", "mul", "normalize", "pi_G", "unit",
    "validate",
]
