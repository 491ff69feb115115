"""Graph matching with scaled doubly stochastic projections."""

from ._core import (
    FramError,
    brute_force_max,
    dsn_fixed,
    dykstra_project,
    gen_erdos_renyi,
    gen_geometric,
    hungarian_max,
    make_instance,
    mass_excess,
    match,
    matching_error,
    objective,
    project_affine,
    project_nonnegative,
    project_zero_marginals,
    round_to_format,
    sdsn,
)

__all__ = [
    "FramError",
    "brute_force_max",
    "dsn_fixed",
    "dykstra_project",
    "gen_erdos_renyi",
    "gen_geometric",
    "hungarian_max",
    "make_instance",
    "mass_excess",
    "match",
    "matching_error",
    "objective",
    "project_affine",
    "project_nonnegative",
    "project_zero_marginals",
    "round_to_format",
    "sdsn",
]
