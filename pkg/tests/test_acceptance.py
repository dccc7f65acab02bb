"""Monte Carlo acceptance runs at desk scale. Deselect with ``-m "not slow"``."""

import math
import warnings
from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from oracles import (
    adjacent_pairs,
    closure_components,
    flood_fill_labels,
    same_partition,
    touches_boundary,
)

from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.harness import ExperimentConfig, run_experiment
from nodal_nesting.lemmas import run_lemma_suite
from nodal_nesting.models import Estimate, MonteCarloReport, RadiusReport
from nodal_nesting.nodal import (
    build_nesting_tree,
    count_closure_components,
    label_cells,
    label_domains,
    origin_to_boundary,
)
from nodal_nesting.sampler import (
    GridSpec,
    auto_spacing,
    default_lags,
    sample_field,
    validate_covariance,
)
from nodal_nesting.stats import mean_volume_identity

pytestmark = pytest.mark.slow


def _joint_se(a: Estimate, b: Estimate) -> float:
    return math.hypot(a.se, b.se)


def _decreasing_beyond_noise(estimates: list[Estimate]) -> bool:
    return all(
        a.value - b.value > 2.0 * _joint_se(a, b)
        for a, b in zip(estimates, estimates[1:], strict=False)
    )


@pytest.fixture(scope="module")
def planar_run(tmp_path_factory: pytest.TempPathFactory) -> MonteCarloReport:
    config = ExperimentConfig.model_validate(
        {
            "ensemble": "bargmann_fock",
            "R": [16.0, 32.0, 64.0, 128.0],
            "replicates": 2000,
            "seed": 20240601,
            "output_dir": tmp_path_factory.mktemp("planar"),
        }
    )
    return run_experiment(config).report


def test_arithmetic_n1_has_two_domains() -> None:
    # f reduces to A cos(2 pi (x - a)) + B cos(2 pi (y - b)): two bands on the torus
    spec = EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE, arithmetic_n=1)
    grid = GridSpec(half_width=0.5, spacing=1.0 / 128, periodic=True)
    counts = [label_domains(sample_field(spec, grid, seed)).total_domains for seed in range(1000)]
    two = sum(count == 2 for count in counts)
    assert two >= 990


@pytest.mark.parametrize(
    ("kind", "replicates"),
    [(EnsembleKind.BARGMANN_FOCK, 2000), (EnsembleKind.RANDOM_PLANE_WAVE, 500)],
)
def test_covariance_gate(kind: EnsembleKind, replicates: int) -> None:
    spec = EnsembleSpec(kind=kind)
    grid = GridSpec(half_width=16.0, spacing=0.25)
    report = validate_covariance(spec, grid, replicates, default_lags(spec, grid), 0.02)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert [1.0, 1.0] in [c.lag for c in report.checks]


class TestPlanarBargmannFock:
    def test_identities_hold_on_every_replicate(self, planar_run: MonteCarloReport) -> None:
        for entry in planar_run.radii:
            assert entry.replicates == 2000
            assert entry.residuals.all_zero

    def test_shared_spacing(self, planar_run: MonteCarloReport) -> None:
        assert {entry.spacing for entry in planar_run.radii} == {16.0 / 62.0}

    def test_domain_density_settles(self, planar_run: MonteCarloReport) -> None:
        c64 = planar_run.radii[2].nazarov_sodin.value
        c128 = planar_run.radii[3].nazarov_sodin.value
        assert abs(c64 - c128) / c128 <= 0.05

    def test_closure_ratio_decreases(self, planar_run: MonteCarloReport) -> None:
        ratios = [entry.closure_ratio for entry in planar_run.radii[1:]]
        assert all(ratio is not None for ratio in ratios)
        assert _decreasing_beyond_noise([r for r in ratios if r is not None])
        connectivity = [entry.mean_connectivity for entry in planar_run.radii[1:]]
        values = [m.value for m in connectivity if m is not None]
        assert values == sorted(values) and all(v < 2.0 for v in values)

    def test_boundary_volume_decreases(self, planar_run: MonteCarloReport) -> None:
        fractions = [entry.boundary_volume_fraction for entry in planar_run.radii]
        assert all(0.0 < f.value < 1.0 for f in fractions)
        assert _decreasing_beyond_noise(fractions)

    def test_scaled_mean_volume(self, planar_run: MonteCarloReport) -> None:
        identity = mean_volume_identity(planar_run)
        tail_terms = [record.tail_term for record in identity]
        for record in identity:
            assert record.tail_term == pytest.approx(record.boundary_term, abs=1e-9)
        assert tail_terms == sorted(tail_terms)
        final = tail_terms[-1]
        if not 0.85 <= final <= 1.0:
            warnings.warn(
                f"c_NS * int(1 - Psi) at R=128 is {final:.3f}, outside [0.85, 1.00]",
                stacklevel=1,
            )

    def test_percolation_decays(self, planar_run: MonteCarloReport) -> None:
        probabilities = [entry.percolation.value for entry in planar_run.radii]
        assert all(a > b for a, b in zip(probabilities, probabilities[1:], strict=False))
        decay = planar_run.percolation_decay
        assert decay is not None
        assert decay.beta > 0.0
        assert decay.ci_low > 0.0

    def test_connectivity_tail_exponent(self, planar_run: MonteCarloReport) -> None:
        tail = planar_run.radii[-1].tail
        assert tail is not None
        assert 1.5 <= tail.alpha <= 2.6


def test_three_dimensions_keep_a_giant_domain(tmp_path: Path) -> None:
    config = ExperimentConfig.model_validate(
        {
            "ensemble": "bargmann_fock",
            "dimension": 3,
            "R": [8.0, 16.0, 24.0],
            "spacing": 0.4,
            "resolution_factor": 5.0,
            "replicates": 100,
            "seed": 7,
            "output_dir": tmp_path,
        }
    )
    report = run_experiment(config).report
    for entry in report.radii:
        assert entry.residuals.all_zero
        assert entry.connectivity is None
        low = min(entry.boundary_volume_fraction.value, entry.percolation.value)
        if low <= 0.1:
            warnings.warn(
                f"d=3 R={entry.radius:g}: V/Vol={entry.boundary_volume_fraction.value:.3f}, "
                f"P={entry.percolation.value:.3f}",
                stacklevel=1,
            )


def test_lemma_suite_has_no_violations() -> None:
    report = run_lemma_suite(10_000, seed=2024)
    assert report.violations == 0, report.failures[:5]
    assert report.checked["component_bound"] == 10_000
    assert report.checked["small_component_bound"] == 10_000


def test_labeling_matches_flood_fill_on_random_grids() -> None:
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        shape = (int(rng.integers(2, 21)), int(rng.integers(2, 21)))
        values = np.where(rng.random(shape) < 0.5, 1.0, -1.0) * rng.uniform(0.5, 1.5, shape)
        labeling = label_cells(values)
        expected = flood_fill_labels(values)

        assert same_partition(labeling.labels, expected)
        assert labeling.total_domains == int(expected.max()) + 1
        renamed = dict(
            zip(labeling.labels.ravel().tolist(), expected.ravel().tolist(), strict=True)
        )
        assert count_closure_components(labeling) == closure_components(expected)
        centre = tuple(s // 2 for s in shape)
        assert origin_to_boundary(labeling) == (int(expected[centre]) in touches_boundary(expected))

        tree = build_nesting_tree(labeling)
        degrees: Counter[int] = Counter()
        for a, b in adjacent_pairs(expected):
            degrees[a] += 1
            degrees[b] += 1
        for label, degree in enumerate(tree.degrees.tolist()):
            assert degree == degrees[renamed[label]]


def test_refinement_keeps_the_domain_count() -> None:
    spec = EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE)
    coarse = GridSpec(half_width=32.0, spacing=auto_spacing(spec, 32.0))
    fine = coarse.refined()
    before = after = 0
    for seed in range(100):
        before += label_domains(sample_field(spec, coarse, seed)).interior_domains
        after += label_domains(sample_field(spec, fine, seed)).interior_domains
    assert abs(after - before) / before < 0.01


def test_doubling_replicates_shrinks_the_error(tmp_path: Path) -> None:
    def run(replicates: int) -> RadiusReport:
        config = ExperimentConfig.model_validate(
            {
                "ensemble": "bargmann_fock",
                "R": [6.0],
                "replicates": replicates,
                "seed": 5,
                "output_dir": tmp_path / str(replicates),
            }
        )
        return run_experiment(config).report.radii[0]

    small, large = run(200), run(400)
    for name in ("nazarov_sodin", "closure_density", "boundary_volume_fraction"):
        ratio = getattr(small, name).se / getattr(large, name).se
        assert abs(ratio / math.sqrt(2.0) - 1.0) < 0.2, name


def test_results_do_not_depend_on_threads(tmp_path: Path) -> None:
    def run(name: str, threads: int) -> Path:
        config = ExperimentConfig.model_validate(
            {
                "ensemble": "bargmann_fock",
                "R": [8.0, 16.0],
                "replicates": 50,
                "seed": 99,
                "threads": threads,
                "output_dir": tmp_path / name,
            }
        )
        return run_experiment(config).output_dir

    outputs = [run("first", 1), run("again", 1), run("parallel", 8)]
    for name in ("stats.csv", "mu.csv", "psi.csv"):
        texts = {(path / name).read_text() for path in outputs}
        assert len(texts) == 1
