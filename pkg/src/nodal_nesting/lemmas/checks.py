"""Checkers for the counting lemmas and the Euler identities."""

import logging
from typing import Any

import numpy as np
import numpy.typing as npt
import yaml

from nodal_nesting.lemmas.cubes import (
    GridSetPair,
    boundary_cube_count,
    complement_components,
    cube_shape,
)
from nodal_nesting.models import CheckResult
from nodal_nesting.nodal import DomainLabeling, NestingTree, count_closure_components

logger = logging.getLogger(__name__)


def grid_rows(array: npt.NDArray[Any], on: str = "#", off: str = ".") -> Any:
    """Text rendering of a boolean grid: one string per row, nested for d=3."""
    if array.ndim == 1:
        return "".join(on if v else off for v in array.tolist())
    return [grid_rows(sub, on, off) for sub in array]


def _reproducer(payload: dict[str, Any]) -> str:
    return yaml.safe_dump(payload, sort_keys=False)


def check_component_bound(pair: GridSetPair) -> CheckResult:
    """Components of the cube minus A that leave B number at most |B| + boundary cubes."""
    labels, _ = complement_components(pair.inner)
    escaping = np.unique(labels[(labels > 0) & ~pair.outer])
    observed = int(escaping.size)
    volume = int(np.count_nonzero(pair.outer))
    bound = volume + boundary_cube_count(pair.radius, pair.dimension)
    passed = observed <= bound
    result = CheckResult(
        check="component_bound",
        observed=observed,
        bound=float(bound),
        passed=passed,
        details={"radius": pair.radius, "volume_b": volume},
    )
    if not passed:
        logger.error("component bound violated: %d > %d", observed, bound)
        result.reproducer = _reproducer(
            {
                "check": result.check,
                "radius": pair.radius,
                "A": grid_rows(pair.inner),
                "B": grid_rows(pair.outer),
            }
        )
    return result


def check_small_component_bound(
    occupied: npt.NDArray[np.bool_], epsilon: float, radius: int
) -> CheckResult:
    """Count components of the cube minus S with volume >= epsilon against their bound.

    The bound is K(S)(1/epsilon + 1) plus the boundary cube count. S is a union
    of lattice cubes, so K(S) is the number of its cubes.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if occupied.shape != cube_shape(radius, occupied.ndim):
        raise ValueError(f"S must have shape {cube_shape(radius, occupied.ndim)}")
    labels, count = complement_components(occupied)
    volumes = np.bincount(labels.ravel(), minlength=count + 1)[1:]
    observed = int(np.count_nonzero(volumes >= epsilon))
    cubes = int(np.count_nonzero(occupied))
    bound = cubes * (1.0 / epsilon + 1.0) + boundary_cube_count(radius, occupied.ndim)
    passed = observed <= bound
    result = CheckResult(
        check="small_component_bound",
        observed=observed,
        bound=bound,
        passed=passed,
        details={"radius": radius, "epsilon": epsilon, "cubes": cubes},
    )
    if not passed:
        logger.error("small-component bound violated: %d > %g", observed, bound)
        result.reproducer = _reproducer(
            {
                "check": result.check,
                "radius": radius,
                "epsilon": epsilon,
                "S": grid_rows(occupied),
            }
        )
    return result


def check_euler_identities(labeling: DomainLabeling, tree: NestingTree) -> CheckResult:
    """Sum of d̄(v) = 2(N̄ - 1) and sum over interior v of d(v) = 2(N - T), exactly."""
    closure = count_closure_components(labeling)
    degree_sum = int(tree.degrees.sum())
    interior_sum = int(tree.interior_degrees[labeling.interior].sum())
    tree_rhs = 2 * (labeling.total_domains - 1)
    interior_rhs = 2 * (labeling.interior_domains - closure)
    observed = abs(degree_sum - tree_rhs) + abs(interior_sum - interior_rhs)
    result = CheckResult(
        check="euler_identities",
        observed=observed,
        bound=0.0,
        passed=observed == 0,
        details={
            "degree_sum": degree_sum,
            "tree_rhs": tree_rhs,
            "interior_degree_sum": interior_sum,
            "interior_rhs": interior_rhs,
        },
    )
    if observed:
        logger.error("Euler identities violated: %s", result.details)
        result.reproducer = signs_reproducer(result.check, labeling.cell_values)
    return result


def signs_reproducer(check: str, cell_values: npt.NDArray[np.float64]) -> str:
    """YAML reproducer holding a sign grid."""
    return _reproducer({"check": check, "signs": grid_rows(cell_values > 0, "+", "-")})
