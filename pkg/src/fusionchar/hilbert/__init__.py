"""Hilbert bases of kernel monoids {c in N_0^k : Bc = 0}."""
from .oracle import OracleLimitError, brute_force_basis
from .solver import (
    HilbertBasis,
    basis_from_rows,
    decompose,
    hilbert_basis_kernel,
    is_member,
    sort_vectors,
)

__all__ = [
    "HilbertBasis",
    "OracleLimitError",
    "basis_from_rows",
    "brute_force_basis",
    "decompose",
    "hilbert_basis_kernel",
    "is_member",
    "sort_vectors",
]
