"""Finite volume schemes for the Navier-Stokes-Korteweg equations.

States are flat numpy arrays in component-major order
``[rho | rho u]`` (1D) or ``[rho | rho u | rho v]`` (2D, x fastest).
"""

from ._core import (
    Config,
    ConfigError,
    SolverError,
    cell_centers,
    config_keys,
    initial_state,
    list_presets,
    measure,
    preset,
    preset_names,
    rhs,
    run,
    verify,
)

__all__ = [
    "Config",
    "ConfigError",
    "SolverError",
    "cell_centers",
    "config_keys",
    "initial_state",
    "list_presets",
    "measure",
    "preset",
    "preset_names",
    "rhs",
    "run",
    "verify",
]
