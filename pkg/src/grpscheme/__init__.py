"""Exact transfer and norm maps for finite group schemes over finite fields."""

from .scalars import GF, Field, Poly
from .hopf import GroupScheme, HopfAlgebra, SubgroupEmbedding, build_builtin, subgroup_embed
from .repmod import GModule
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "GF", "Field", "Poly", "GroupScheme", "HopfAlgebra", "SubgroupEmbedding", "build_builtin",
    "subgroup_embed", "GModule", "Check", "Report",
]
