"""Quantum nonlinear Schroedinger model: Bethe equations, wavefunctions and identity suites."""

from ._core import (
    AlcoveFunction,
    ConvergenceError,
    RegularityError,
    bae_residual,
    bethe_wavefunction,
    prewavefunction,
    run_suite,
    solve_bae,
    suite_names,
    transfer_eigenvalue,
)

__all__ = [
    "AlcoveFunction",
    "ConvergenceError",
    "RegularityError",
    "bae_residual",
    "bethe_wavefunction",
    "prewavefunction",
    "run_suite",
    "solve_bae",
    "suite_names",
    "transfer_eigenvalue",
]
