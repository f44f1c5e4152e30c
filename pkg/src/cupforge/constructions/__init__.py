"""Code families with explicit pre-orientations."""

from .group_algebra import (
    Splitting,
    bb_example,
    bivariate_bicycle,
    ga_cup_lambda2,
    ga_cup_lambda3,
    group_algebra_balanced,
    group_algebra_code,
    multiplication_action,
    search_splittings,
    splitting_failures,
    validate_splitting,
)
from .lattice import anisotropic_lineon, plaquette_ising, repetition_circle, torus_code
from .sipser_spielman import (
    Graph,
    LocalSystem,
    cayley_graph,
    cayley_local_system,
    sipser_spielman_complex,
    ss_nontriviality,
    ss_preorientation_lambda2,
    ss_preorientation_lambda3,
)

__all__ = [
    "Splitting",
    "bb_example",
    "bivariate_bicycle",
    "ga_cup_lambda2",
    "ga_cup_lambda3",
    "group_algebra_balanced",
    "group_algebra_code",
    "multiplication_action",
    "search_splittings",
    "splitting_failures",
    "validate_splitting",
    "anisotropic_lineon",
    "plaquette_ising",
    "repetition_circle",
    "torus_code",
    "Graph",
    "LocalSystem",
    "cayley_graph",
    "cayley_local_system",
    "sipser_spielman_complex",
    "ss_nontriviality",
    "ss_preorientation_lambda2",
    "ss_preorientation_lambda3",
]
