"""Nodal domains as connected sets of same-sign grid cells."""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import ndimage

from nodal_nesting.nodal.unionfind import UnionFind
from nodal_nesting.sampler import FieldSample

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]
FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class DomainLabeling:
    """Partition of the cells of B(R) into nodal domains.

    Labels run over 0..N̄-1; every per-domain array is indexed by label.
    """

    labels: IntArray
    positive: BoolArray
    cell_counts: IntArray
    touches_boundary: BoolArray
    origin_label: int
    spacing: float
    periodic: bool
    cell_values: FloatArray

    @property
    def dimension(self) -> int:
        return int(self.labels.ndim)

    @property
    def total_domains(self) -> int:
        """N̄: every domain of F restricted to the cube."""
        return int(self.cell_counts.size)

    @property
    def interior_domains(self) -> int:
        """N: domains that do not meet the boundary."""
        return int(np.count_nonzero(~self.touches_boundary))

    @property
    def interior(self) -> BoolArray:
        return ~self.touches_boundary

    @property
    def cell_volume(self) -> float:
        return float(self.spacing**self.dimension)

    @property
    def volumes(self) -> FloatArray:
        return self.cell_counts * self.cell_volume

    @property
    def total_cells(self) -> int:
        return int(self.labels.size)

    @property
    def boundary_cells(self) -> int:
        """Cells belonging to boundary-touching domains."""
        return int(self.cell_counts[self.touches_boundary].sum())

    @property
    def interior_cells(self) -> int:
        return int(self.cell_counts[self.interior].sum())

    def interior_cell_counts(self) -> IntArray:
        """Cell counts of the interior domains, in label order."""
        return self.cell_counts[self.interior]


def _structure(dimension: int) -> npt.NDArray[np.bool_]:
    # Face adjacency: 4 neighbours in d=2, 6 in d=3
    return ndimage.generate_binary_structure(dimension, 1)


def saddle_blocks(
    cell_values: FloatArray, periodic: bool = False
) -> tuple[IntArray, IntArray, BoolArray]:
    """Locate 2x2 checkerboard blocks of cells in a d=2 grid and resolve them.

    A block anchored at (i, j) holds the cells (i, j), (i+1, j), (i, j+1) and
    (i+1, j+1). The bilinear interpolant at the centre of the four anchor
    vertices is their mean; the diagonal whose sign matches it is connected.
    A centre value of exactly 0 counts as positive.

    Returns:
        Block rows, block columns, and for each block whether the (i, j)-(i+1, j+1)
        diagonal is the connected one
    """
    if periodic:
        c00 = cell_values
        c10 = np.roll(cell_values, -1, axis=0)
        c01 = np.roll(cell_values, -1, axis=1)
        c11 = np.roll(c10, -1, axis=1)
    else:
        c00 = cell_values[:-1, :-1]
        c10 = cell_values[1:, :-1]
        c01 = cell_values[:-1, 1:]
        c11 = cell_values[1:, 1:]
    p00, p10, p01, p11 = c00 > 0, c10 > 0, c01 > 0, c11 > 0
    checkerboard = (p00 == p11) & (p10 == p01) & (p00 != p10)
    rows, cols = np.nonzero(checkerboard)
    centre_positive = (c00 + c10 + c01 + c11)[rows, cols] >= 0.0
    return rows.astype(np.int64), cols.astype(np.int64), centre_positive == p00[rows, cols]


def _merge_saddles(
    forest: UnionFind, raw: IntArray, cell_values: FloatArray, periodic: bool
) -> None:
    rows, cols, main = saddle_blocks(cell_values, periodic)
    n0, n1 = raw.shape
    below = (rows + 1) % n0
    right = (cols + 1) % n1
    first = np.where(main, raw[rows, cols], raw[below, cols])
    second = np.where(main, raw[below, right], raw[rows, right])
    forest.union_pairs(first, second)


def _merge_across_wrap(forest: UnionFind, raw: IntArray, mask: BoolArray) -> None:
    """Join components that meet across each periodic face."""
    for axis in range(raw.ndim):
        low = np.take(raw, 0, axis=axis)
        high = np.take(raw, -1, axis=axis)
        joined = np.take(mask, 0, axis=axis) & np.take(mask, -1, axis=axis)
        forest.union_pairs(low[joined], high[joined])


def _compact(forest: UnionFind, raw: IntArray) -> IntArray:
    _, compact = np.unique(forest.roots(), return_inverse=True)
    return compact.astype(np.int64).reshape(-1)[raw]


def label_cells(
    cell_values: npt.ArrayLike, spacing: float = 1.0, periodic: bool = False
) -> DomainLabeling:
    """Label nodal domains from the anchor value of every cell.

    Same-sign cells sharing a face belong to one domain. In d=2 the ambiguous
    checkerboard block is resolved by the centre rule of ``saddle_blocks``;
    d=3 uses plain 6-adjacency. On a periodic grid adjacency wraps around
    every axis and no domain touches the boundary.

    Args:
        cell_values: Array of shape (n,)*d with no zero entries
        spacing: Cell side h
        periodic: Whether the grid is a torus

    Returns:
        DomainLabeling
    """
    values = np.array(cell_values, dtype=np.float64)
    if values.ndim not in (2, 3):
        raise ValueError(f"cell grids must be 2- or 3-dimensional, got {values.ndim}")
    if not np.all(values != 0.0):
        raise ValueError("cell values must be nonzero")

    structure = _structure(values.ndim)
    positive = values > 0
    positive_raw, positive_count = ndimage.label(positive, structure)
    negative_raw, negative_count = ndimage.label(~positive, structure)
    raw = np.where(positive, positive_raw - 1, negative_raw - 1 + positive_count).astype(np.int64)

    forest = UnionFind(positive_count + negative_count)
    if periodic:
        # Same-sign cells across the wrap; each sign class only joins itself
        for sign_mask in (positive, ~positive):
            _merge_across_wrap(forest, raw, sign_mask)
    if values.ndim == 2:
        _merge_saddles(forest, raw, values, periodic)
    labels = _compact(forest, raw)

    total = forest.num_components
    domain_positive = np.zeros(total, dtype=bool)
    domain_positive[labels[positive]] = True
    cell_counts = np.bincount(labels.ravel(), minlength=total).astype(np.int64)

    touches = np.zeros(total, dtype=bool)
    if not periodic:
        for axis in range(values.ndim):
            touches[np.take(labels, 0, axis=axis)] = True
            touches[np.take(labels, -1, axis=axis)] = True

    origin = tuple(size // 2 for size in values.shape)
    values.setflags(write=False)
    labels.setflags(write=False)
    return DomainLabeling(
        labels=labels,
        positive=domain_positive,
        cell_counts=cell_counts,
        touches_boundary=touches,
        origin_label=int(labels[origin]),
        spacing=spacing,
        periodic=periodic,
        cell_values=values,
    )


def label_domains(sample: FieldSample) -> DomainLabeling:
    """Label the nodal domains of a sample restricted to its cube."""
    labeling = label_cells(sample.cell_values(), sample.grid.spacing, sample.grid.periodic)
    logger.debug(
        "seed %d: %d domains, %d interior",
        sample.seed,
        labeling.total_domains,
        labeling.interior_domains,
    )
    return labeling


def boundary_volume(labeling: DomainLabeling) -> float:
    """V(R): total volume of the domains meeting the boundary."""
    return labeling.boundary_cells * labeling.cell_volume


def count_closure_components(labeling: DomainLabeling) -> int:
    """T(R): components of the union of closures of the interior domains.

    Interior cells are joined across faces regardless of sign, so two interior
    domains sharing an interface fall into one component. Returns 0 when
    there are no interior domains.
    """
    if labeling.interior_domains == 0:
        return 0
    mask = labeling.interior[labeling.labels]
    raw, count = ndimage.label(mask, _structure(labeling.dimension))
    if not labeling.periodic:
        return int(count)
    forest = UnionFind(count)
    zero_based = np.where(mask, raw - 1, 0).astype(np.int64)
    _merge_across_wrap(forest, zero_based, mask)
    return forest.num_components


count_T = count_closure_components


def origin_to_boundary(labeling: DomainLabeling) -> bool:
    """Whether the domain containing the origin meets the boundary."""
    return bool(labeling.touches_boundary[labeling.origin_label])
