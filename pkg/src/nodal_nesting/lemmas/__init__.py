"""Deterministic checks of the counting lemmas and Euler identities."""

from nodal_nesting.lemmas.checks import (
    check_component_bound,
    check_euler_identities,
    check_small_component_bound,
)
from nodal_nesting.lemmas.cubes import GridSetPair, InvalidPair, boundary_cube_count
from nodal_nesting.lemmas.suite import run_lemma_suite

__all__ = [
    "GridSetPair",
    "InvalidPair",
    "boundary_cube_count",
    "check_component_bound",
    "check_euler_identities",
    "check_small_component_bound",
    "run_lemma_suite",
]
