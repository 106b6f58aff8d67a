"""Finite quantum B-algebras: upper-set quantales, filters, pseudo-hoops and prime filters."""

from .algebra import (
    ClassReport,
    FiniteAlgebra,
    Poset,
    check_extras,
    check_integral,
    check_join_semilattice,
    check_mtl,
    check_pseudo_hoop,
    check_quantum_b,
    check_residuated,
    check_two_sided,
    check_unital,
    validate_poset,
)
from .catalog import catalog, catalog_entries
from .fileformat import dumps, loads, read_algebra, write_algebra

__all__ = [
    "ClassReport", "FiniteAlgebra", "Poset", "catalog", "catalog_entries",
    "check_extras", "check_integral", "check_join_semilattice", "check_mtl",
    "check_pseudo_hoop", "check_quantum_b", "check_residuated", "check_two_sided",
    "check_unital", "dumps", "loads", "read_algebra", "validate_poset", "write_algebra",
]
__version__ = "0.1.0"
