"""Tests for nodal-domain labeling and the boundary functionals."""

import numpy as np
import pytest
from oracles import closure_components, flood_fill_labels, same_partition, touches_boundary

from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.nodal import (
    DomainLabeling,
    UnionFind,
    boundary_volume,
    count_closure_components,
    count_T,
    label_cells,
    label_domains,
    origin_to_boundary,
    saddle_blocks,
)
from nodal_nesting.sampler import GridSpec, sample_field


def _random_signs(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    signs = np.where(rng.random(shape) < 0.5, 1.0, -1.0)
    return signs * rng.uniform(0.5, 1.5, size=shape)


class TestUnionFind:
    def test_union_and_components(self) -> None:
        forest = UnionFind(5)
        assert forest.union(0, 1)
        assert forest.union(3, 4)
        assert not forest.union(1, 0)
        assert forest.num_components == 3
        assert forest.find(0) == forest.find(1)
        assert forest.find(2) != forest.find(3)

    def test_union_pairs_counts_redundant(self) -> None:
        forest = UnionFind(4)
        assert forest.union_pairs([0, 1, 2, 0], [1, 2, 0, 3]) == 1
        assert forest.num_components == 1
        assert len(set(forest.roots().tolist())) == 1

    def test_find_points_the_whole_path_at_the_root(self) -> None:
        forest = UnionFind(5)
        forest._parents = [0, 0, 1, 2, 3]
        assert forest.find(4) == 0
        assert forest._parents == [0, 0, 0, 0, 0]


class TestSmallGrids:
    def test_constant_sign(self) -> None:
        labeling = label_cells(np.ones((4, 4)))
        assert labeling.total_domains == 1
        assert labeling.interior_domains == 0
        assert count_closure_components(labeling) == 0
        assert origin_to_boundary(labeling)

    def test_tied_saddle_counts_as_positive(self) -> None:
        labeling = label_cells([[1.0, -1.0], [-1.0, 1.0]])
        assert labeling.total_domains == 3
        assert int(labeling.positive.sum()) == 1
        assert labeling.labels[0, 0] == labeling.labels[1, 1]

    def test_saddle_centre_sign_picks_the_diagonal(self) -> None:
        negative_centre = label_cells([[1.0, -2.0], [-2.0, 1.0]])
        assert negative_centre.labels[0, 1] == negative_centre.labels[1, 0]
        assert negative_centre.labels[0, 0] != negative_centre.labels[1, 1]
        rows, cols, main = saddle_blocks(np.array([[1.0, -2.0], [-2.0, 1.0]]))
        assert rows.tolist() == [0] and cols.tolist() == [0]
        assert main.tolist() == [False]

    def test_rings(self, ring_labeling: DomainLabeling) -> None:
        assert ring_labeling.total_domains == 4
        assert ring_labeling.interior_domains == 3
        assert count_closure_components(ring_labeling) == 1
        assert not origin_to_boundary(ring_labeling)
        assert ring_labeling.boundary_cells == 24
        assert ring_labeling.interior_cells == 25

    def test_islands(self, island_labeling: DomainLabeling) -> None:
        assert island_labeling.total_domains == 3
        assert island_labeling.interior_domains == 2
        assert count_T(island_labeling) == 2
        assert origin_to_boundary(island_labeling)
        assert sorted(island_labeling.interior_cell_counts().tolist()) == [1, 1]

    def test_boundary_volume_scales_with_spacing(self) -> None:
        labeling = label_cells(-np.ones((6, 6)), spacing=0.5)
        assert boundary_volume(labeling) == pytest.approx(9.0)
        assert labeling.volumes.tolist() == [9.0]

    def test_periodic_wrap_joins_stripes(self) -> None:
        values = np.array([1.0, -1.0, -1.0, 1.0])[:, None] * np.ones((4, 4))
        assert label_cells(values).total_domains == 3
        torus = label_cells(values, periodic=True)
        assert torus.total_domains == 2
        assert not torus.touches_boundary.any()
        assert torus.interior_domains == 2

    def test_periodic_closure_is_one_component(self) -> None:
        values = np.array([1.0, -1.0, -1.0, 1.0])[:, None] * np.ones((4, 4))
        assert count_closure_components(label_cells(values, periodic=True)) == 1

    def test_rejects_zeros(self) -> None:
        with pytest.raises(ValueError):
            label_cells([[1.0, 0.0], [1.0, 1.0]])

    def test_rejects_one_dimension(self) -> None:
        with pytest.raises(ValueError):
            label_cells([1.0, -1.0])

    def test_input_is_not_modified(self) -> None:
        values = np.array([[1.0, -1.0], [-1.0, 1.0]])
        labeling = label_cells(values)
        assert values.flags.writeable
        assert not labeling.cell_values.flags.writeable


class TestAgainstFloodFill:
    @pytest.mark.parametrize("side", [2, 3, 6, 11, 20])
    def test_planar(self, rng: np.random.Generator, side: int) -> None:
        for _ in range(40):
            values = _random_signs(rng, (side, side))
            labeling = label_cells(values)
            expected = flood_fill_labels(values)
            assert same_partition(labeling.labels, expected)
            assert labeling.total_domains == int(expected.max()) + 1

            boundary = touches_boundary(expected)
            assert labeling.interior_domains == labeling.total_domains - len(boundary)
            assert count_closure_components(labeling) == closure_components(expected)
            centre = (side // 2, side // 2)
            assert origin_to_boundary(labeling) == (int(expected[centre]) in boundary)

    def test_unit_magnitudes(self, rng: np.random.Generator) -> None:
        for _ in range(200):
            values = np.where(rng.random((6, 6)) < 0.5, 1.0, -1.0)
            assert same_partition(label_cells(values).labels, flood_fill_labels(values))

    @pytest.mark.parametrize("side", [3, 5, 8])
    def test_torus(self, rng: np.random.Generator, side: int) -> None:
        for _ in range(30):
            values = _random_signs(rng, (side, side))
            labeling = label_cells(values, periodic=True)
            assert same_partition(labeling.labels, flood_fill_labels(values, periodic=True))

    def test_three_dimensions(self, rng: np.random.Generator) -> None:
        for _ in range(20):
            values = _random_signs(rng, (5, 6, 4))
            labeling = label_cells(values)
            expected = flood_fill_labels(values)
            assert same_partition(labeling.labels, expected)
            assert count_closure_components(labeling) == closure_components(expected)

    def test_three_dimensional_torus(self, rng: np.random.Generator) -> None:
        for _ in range(10):
            values = _random_signs(rng, (4, 4, 4))
            labeling = label_cells(values, periodic=True)
            assert same_partition(labeling.labels, flood_fill_labels(values, periodic=True))


class TestSampledFields:
    def test_volumes_partition_the_cube(self) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK)
        grid = GridSpec(half_width=4.0, spacing=0.25)
        labeling = label_domains(sample_field(spec, grid, seed=11))
        assert labeling.labels.shape == grid.cell_shape
        assert labeling.interior_cells + labeling.boundary_cells == labeling.total_cells
        assert labeling.volumes.sum() == pytest.approx(grid.volume)

    def test_negation_keeps_the_partition(self) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK)
        sample = sample_field(spec, GridSpec(half_width=4.0, spacing=0.25), seed=12)
        a = label_domains(sample)
        b = label_domains(sample.negated())
        assert same_partition(a.labels, b.labels)
        assert a.positive.sum() == (~b.positive).sum()

    @pytest.mark.parametrize("seed", range(5))
    def test_negation_keeps_the_counts(self, seed: int) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK)
        sample = sample_field(spec, GridSpec(half_width=6.0, spacing=0.25), seed=seed)
        a = label_domains(sample)
        b = label_domains(sample.negated())
        assert b.total_domains == a.total_domains
        assert b.interior_domains == a.interior_domains
        assert count_closure_components(b) == count_closure_components(a)
        np.testing.assert_array_equal(np.sort(b.volumes), np.sort(a.volumes))
