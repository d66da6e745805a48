"""Exact representation theory of finite groups over GF(q), char not dividing |G|."""

__version__ = "0.1.0"

from .errors import CertificationError, CharacteristicError, HypothesisError, RepGFError, ValidationError
from .fields import FieldElement, FieldSpec, make_field
from .groups import AbelianGroupSpec, FiniteGroup, SemidirectGroup, group_from_permutations, semidirect, subgroup
from .linalg import MatrixGF
from .littlegroups import classify, completeness_check, field_compat, match_irreducible
from .mackey import induced_isomorphism_test, mackey_sufficient, monomial_criterion, endomorphism_equality_check
from .meataxe import decompose, irreducibles_of_group, is_irreducible
from .representations import Representation, induce, intertwining_number, rep_from_images, restrict

__all__ = [
    "AbelianGroupSpec",
    "CertificationError",
    "CharacteristicError",
    "FieldElement",
    "FieldSpec",
    "FiniteGroup",
    "HypothesisError",
    "MatrixGF",
    "RepGFError",
    "Representation",
    "SemidirectGroup",
    "ValidationError",
    "classify",
    "completeness_check",
    "decompose",
    "field_compat",
    "group_from_permutations",
    "induce",
    "induced_isomorphism_test",
    "intertwining_number",
    "irreducibles_of_group",
    "is_irreducible",
    "mackey_sufficient",
    "make_field",
    "match_irreducible",
    "monomial_criterion",
    "endomorphism_equality_check",
    "rep_from_images",
    "restrict",
    "semidirect",
    "subgroup",
]
