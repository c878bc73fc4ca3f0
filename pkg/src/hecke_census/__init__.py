"""Exact census of reciprocal conjugacy classes in the groups Z_2 * Z_p."""

from .words import (
    CyclicWord,
    DomainError,
    GroupParams,
    InvolutionType,
    Syllable,
    UnsupportedParameterError,
    Word,
    make_params,
)
from .reciprocal import Category, ReciprocalInfo, classify, is_reciprocal
from .census import CensusRow, CensusTable, census, enumerate_classes
from .formulas import ClaimLedger, claims_check, recurrence_extend
from .spectral import GrowthReport, IntPoly, analyze_growth, build_growth_poly

__all__ = [
    "Category",
    "CensusRow",
    "CensusTable",
    "ClaimLedger",
    "CyclicWord",
    "DomainError",
    "GroupParams",
    "GrowthReport",
    "IntPoly",
    "InvolutionType",
    "ReciprocalInfo",
    "Syllable",
    "UnsupportedParameterError",
    "Word",
    "analyze_growth",
    "build_growth_poly",
    "census",
    "claims_check",
    "classify",
    "enumerate_classes",
    "is_reciprocal",
    "make_params",
    "recurrence_extend",
]
