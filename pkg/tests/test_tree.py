"""Tests for the nesting tree and the Euler identities."""

from collections import Counter

import numpy as np
import pytest
from oracles import adjacent_pairs

from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.nodal import (
    DomainLabeling,
    TopologyInconsistency,
    build_nesting_tree,
    count_closure_components,
    label_cells,
    label_domains,
)
from nodal_nesting.sampler import GridSpec, sample_field


def _assert_identities(labeling: DomainLabeling) -> None:
    tree = build_nesting_tree(labeling)
    closure = count_closure_components(labeling)
    assert tree.num_edges == labeling.total_domains - 1
    assert int(tree.degrees.sum()) == 2 * (labeling.total_domains - 1)
    interior_sum = int(tree.interior_degrees[labeling.interior].sum())
    assert interior_sum == 2 * (labeling.interior_domains - closure)
    assert np.all(labeling.positive[tree.edges[:, 0]] != labeling.positive[tree.edges[:, 1]])
    assert {tuple(edge) for edge in tree.edges.tolist()} == adjacent_pairs(labeling.labels)


def test_rings(ring_labeling: DomainLabeling) -> None:
    tree = build_nesting_tree(ring_labeling)
    assert tree.num_vertices == 4
    assert sorted(tree.degrees.tolist()) == [1, 1, 2, 2]
    assert tree.interior_degree_counts() == Counter({1: 2, 2: 1})
    _assert_identities(ring_labeling)


def test_islands(island_labeling: DomainLabeling) -> None:
    tree = build_nesting_tree(island_labeling)
    assert tree.num_edges == 2
    assert tree.interior_degree_counts() == Counter({0: 2})
    sea = int(np.flatnonzero(island_labeling.touches_boundary)[0])
    assert tree.degrees[sea] == 2


def test_single_domain() -> None:
    tree = build_nesting_tree(label_cells(np.ones((3, 3))))
    assert tree.num_edges == 0
    assert tree.degrees.tolist() == [0]
    assert tree.interior_degree_counts() == Counter()


def test_saddle_block() -> None:
    labeling = label_cells([[1.0, -1.0], [-1.0, 1.0]])
    tree = build_nesting_tree(labeling)
    positive = int(np.flatnonzero(labeling.positive)[0])
    assert tree.degrees[positive] == 2


@pytest.mark.parametrize("side", [2, 5, 9, 16, 20])
def test_random_sign_grids(rng: np.random.Generator, side: int) -> None:
    for _ in range(60):
        values = np.where(rng.random((side, side)) < 0.5, 1.0, -1.0)
        values *= rng.uniform(0.5, 1.5, size=values.shape)
        _assert_identities(label_cells(values))


def test_unit_magnitude_ties(rng: np.random.Generator) -> None:
    for _ in range(200):
        _assert_identities(label_cells(np.where(rng.random((8, 8)) < 0.5, 1.0, -1.0)))


@pytest.mark.parametrize("kind", [EnsembleKind.BARGMANN_FOCK, EnsembleKind.RANDOM_PLANE_WAVE])
def test_sampled_fields(kind: EnsembleKind) -> None:
    spec = EnsembleSpec(kind=kind)
    grid = GridSpec(half_width=6.0, spacing=0.25)
    for seed in range(3):
        _assert_identities(label_domains(sample_field(spec, grid, seed)))


def test_rejects_three_dimensions() -> None:
    with pytest.raises(ValueError):
        build_nesting_tree(label_cells(np.ones((3, 3, 3))))


def test_rejects_torus() -> None:
    with pytest.raises(ValueError):
        build_nesting_tree(label_cells(np.ones((4, 4)), periodic=True))


def test_inconsistent_labeling_is_detected() -> None:
    # One positive region split into two labels
    values = np.ones((2, 2))
    labeling = DomainLabeling(
        labels=np.array([[0, 1], [0, 1]], dtype=np.int64),
        positive=np.array([True, True]),
        cell_counts=np.array([2, 2], dtype=np.int64),
        touches_boundary=np.array([True, True]),
        origin_label=1,
        spacing=1.0,
        periodic=False,
        cell_values=values,
    )
    with pytest.raises(TopologyInconsistency):
        build_nesting_tree(labeling)
