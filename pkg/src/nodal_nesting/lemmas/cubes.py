"""Unit-cube configurations inside [-R, R]^d."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import ndimage

from nodal_nesting.errors import NodalNestingError

BoolArray = npt.NDArray[np.bool_]


class InvalidPair(NodalNestingError):
    """A is not a subset of B, or the masks do not tile the cube."""

    pass


def boundary_cube_count(radius: int, dimension: int) -> int:
    """Number of unit cubes of [-R, R]^d that meet its boundary."""
    if radius < 1:
        raise ValueError(f"radius must be a positive integer, got {radius}")
    return (2 * radius) ** dimension - (2 * radius - 2) ** dimension


def boundary_mask(shape: tuple[int, ...]) -> BoolArray:
    """Cubes with at least one face on the boundary of the box."""
    mask = np.zeros(shape, dtype=bool)
    for axis in range(len(shape)):
        index: list[slice | int] = [slice(None)] * len(shape)
        index[axis] = 0
        mask[tuple(index)] = True
        index[axis] = -1
        mask[tuple(index)] = True
    return mask


def cube_shape(radius: int, dimension: int) -> tuple[int, ...]:
    return (2 * radius,) * dimension


def complement_components(occupied: BoolArray) -> tuple[npt.NDArray[np.int32], int]:
    """Face-connected components of the unoccupied cubes."""
    structure = ndimage.generate_binary_structure(occupied.ndim, 1)
    labels, count = ndimage.label(~occupied, structure)
    return labels, int(count)


@dataclass(frozen=True)
class GridSetPair:
    """Cube sets A ⊆ B inside [-R, R]^d, as boolean masks of shape (2R,)*d.

    Cube index i stands for the lattice cube (i - R) + [0, 1]^d.
    """

    radius: int
    inner: BoolArray
    outer: BoolArray

    def __post_init__(self) -> None:
        expected = cube_shape(self.radius, self.inner.ndim)
        if self.inner.shape != expected or self.outer.shape != expected:
            raise InvalidPair(
                f"masks must have shape {expected}, got {self.inner.shape} and {self.outer.shape}"
            )
        if np.any(self.inner & ~self.outer):
            raise InvalidPair("A is not contained in B")

    @property
    def dimension(self) -> int:
        return int(self.inner.ndim)

    @classmethod
    def empty(cls, radius: int, dimension: int = 2) -> "GridSetPair":
        blank = np.zeros(cube_shape(radius, dimension), dtype=bool)
        return cls(radius, blank, blank.copy())
