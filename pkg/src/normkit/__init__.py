"""Prenorms and subnorms between finite models of first-order theories."""
from .category import (
    CategoryPresentation,
    NormedModel,
    build_pnr,
    build_pnr_over_target,
    check_category_laws,
    check_short_morphism,
    forgetful_restrict,
)
from .prenorm import (
    Prenorm,
    check_prenorm,
    classify,
    compose_prenorms,
    enumerate_prenorms,
    make_prenorm,
)
from .signature import Signature, SignatureHom, check_signature_hom, make_signature
from .structure import FiniteStructure, find_pivot
from .theory import Model, Theory, embodiment, models, standard_theory

__version__ = "0.1.0"

__all__ = [
    "CategoryPresentation", "NormedModel", "build_pnr", "build_pnr_over_target",
    "check_category_laws", "check_short_morphism", "forgetful_restrict",
    "Prenorm", "check_prenorm", "classify", "compose_prenorms", "enumerate_prenorms", "make_prenorm",
    "Signature", "SignatureHom", "check_signature_hom", "make_signature",
    "FiniteStructure", "find_pivot",
    "Model", "Theory", "embodiment", "models", "standard_theory",
]
