"""Pauli algebra, exact diagonalization and symmetry audits for the cluster chain."""

from ._core import (
    DimensionError,
    DomainError,
    IndexError,
    NumericalError,
    OperatorSum,
    ParseError,
    PauliString,
    ResourceError,
    anticommutator,
    commutator,
    conjugate_cz,
    conjugate_ucp,
    eig_low,
    forbidden_set,
    global_symmetry,
    hamiltonian,
    manifest,
    protect,
    run_cli,
    scan,
    stabilizer,
    verify,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "IndexError",
    "NumericalError",
    "OperatorSum",
    "ParseError",
    "PauliString",
    "ResourceError",
    "anticommutator",
    "commutator",
    "conjugate_cz",
    "conjugate_ucp",
    "eig_low",
    "forbidden_set",
    "global_symmetry",
    "hamiltonian",
    "manifest",
    "protect",
    "run_cli",
    "scan",
    "stabilizer",
    "verify",
]
