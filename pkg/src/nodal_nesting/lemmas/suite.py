"""Randomized property suite over the lemma and identity checkers."""

import logging
from collections import Counter
from pathlib import Path

import numpy as np
import numpy.typing as npt

from nodal_nesting.lemmas.checks import (
    check_component_bound,
    check_euler_identities,
    check_small_component_bound,
    signs_reproducer,
)
from nodal_nesting.lemmas.cubes import GridSetPair, cube_shape
from nodal_nesting.models import CheckResult, LemmaSuiteReport
from nodal_nesting.nodal import TopologyInconsistency, build_nesting_tree, label_cells

logger = logging.getLogger(__name__)

MAX_RADIUS = 12
MAX_SIGN_GRID = 20
DENSITIES = np.round(np.arange(0.1, 1.0, 0.1), 1)
EPSILONS = (0.5, 1.0, 2.0, 4.0)


def _random_pair(rng: np.random.Generator) -> GridSetPair:
    radius = int(rng.integers(1, MAX_RADIUS + 1))
    shape = cube_shape(radius, 2)
    outer = rng.random(shape) < rng.choice(DENSITIES)
    inner = outer & (rng.random(shape) < rng.choice(DENSITIES))
    return GridSetPair(radius, inner, outer)


def _random_set(rng: np.random.Generator) -> tuple[npt.NDArray[np.bool_], float, int]:
    radius = int(rng.integers(1, MAX_RADIUS + 1))
    occupied = rng.random(cube_shape(radius, 2)) < rng.choice(DENSITIES)
    return occupied, float(rng.choice(EPSILONS)), radius


def _euler_case(rng: np.random.Generator) -> CheckResult:
    side = int(rng.integers(2, MAX_SIGN_GRID + 1))
    values = np.where(rng.random((side, side)) < 0.5, 1.0, -1.0)
    # Random magnitudes so saddle centres are not all ties
    values *= rng.uniform(0.5, 1.5, size=values.shape)
    labeling = label_cells(values)
    try:
        tree = build_nesting_tree(labeling)
    except TopologyInconsistency as exc:
        logger.error("nesting tree failed on a %dx%d grid: %s", side, side, exc)
        return CheckResult(
            check="euler_identities",
            observed=1,
            bound=0.0,
            passed=False,
            details={"side": side},
            reproducer=signs_reproducer("euler_identities", labeling.cell_values),
        )
    return check_euler_identities(labeling, tree)


def run_lemma_suite(cases: int, seed: int, output_dir: Path | None = None) -> LemmaSuiteReport:
    """Run every checker on ``cases`` random configurations each.

    Failing configurations are kept in the report and, with an output
    directory, written as one YAML reproducer per failure.
    """
    rng = np.random.default_rng(seed)
    checked: Counter[str] = Counter()
    failures: list[CheckResult] = []
    for _ in range(cases):
        occupied, epsilon, radius = _random_set(rng)
        for result in (
            check_component_bound(_random_pair(rng)),
            check_small_component_bound(occupied, epsilon, radius),
            _euler_case(rng),
        ):
            checked[result.check] += 1
            if not result.passed:
                failures.append(result)

    if output_dir is not None and failures:
        output_dir.mkdir(parents=True, exist_ok=True)
        for index, failure in enumerate(failures):
            path = output_dir / f"reproducer_{index:04d}_{failure.check}.yaml"
            path.write_text(failure.reproducer or "")
        logger.warning("Wrote %d reproducers to %s", len(failures), output_dir)

    logger.info("lemma suite: %d cases, %d violations", cases, len(failures))
    return LemmaSuiteReport(
        cases=cases,
        seed=seed,
        checked=dict(checked),
        violations=len(failures),
        failures=failures,
    )
