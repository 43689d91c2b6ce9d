"""Indecomposable fusion-invariant characters of p-groups as Hilbert bases."""
from importlib import resources

from .chartab import CharacterTable, ConjClass, parse_table, regular_character, class_function_of
from .cyclotomic import Cyclotomic, parse_cyclo
from .fusion import ConstraintSystem, FusionSpec, constraints_of, k_of, load_fusion, validate_fusion
from .hilbert import HilbertBasis, brute_force_basis, decompose, hilbert_basis_kernel, is_member
from .analysis import (RestrictionMatrix, analyze, constraints_from_restriction, cross_validate,
                       load_restriction, nonuniqueness_witness)

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a shipped fixture, e.g. ``data_path("d16.json")``."""
    return resources.files(__name__).joinpath("data", name)
