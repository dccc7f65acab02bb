"""Lattice points of fixed norm, the frequency set of arithmetic random waves."""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from nodal_nesting.errors import NodalNestingError


class UnsupportedParameter(NodalNestingError):
    """An ensemble parameter is outside the range its kind supports."""

    pass


class NoRepresentation(UnsupportedParameter):
    """n is not a sum of d squares, so the arithmetic ensemble is undefined."""

    pass


@dataclass(frozen=True)
class LatticePointSet:
    """All λ in Z^d with |λ|^2 = n, sorted lexicographically."""

    n: int
    dimension: int
    points: npt.NDArray[np.int64]

    @property
    def multiplicity(self) -> int:
        """r_d(n), the number of lattice points."""
        return int(self.points.shape[0])

    def half(self) -> npt.NDArray[np.int64]:
        """One representative of every pair {λ, -λ} (first nonzero coordinate positive)."""
        keep = [_first_nonzero(p) > 0 for p in self.points]
        return self.points[np.array(keep, dtype=bool)]


def _first_nonzero(point: npt.NDArray[np.int64]) -> int:
    for value in point:
        if value != 0:
            return int(value)
    return 0


@lru_cache(maxsize=256)
def enumerate_lattice_points(n: int, d: int) -> LatticePointSet:
    """Enumerate every integer vector of squared norm n.

    The first d-1 coordinates range over [-isqrt(n), isqrt(n)]; the last is
    solved exactly with integer square roots.

    Args:
        n: Squared norm, n >= 1
        d: Dimension, 2 or 3

    Returns:
        LatticePointSet with r_d(n) points

    Raises:
        UnsupportedParameter: If n < 1 or d is not 2 or 3
        NoRepresentation: If no lattice point has squared norm n
    """
    if n < 1:
        raise UnsupportedParameter(f"arithmetic_n must be a positive integer, got {n}")
    if d not in (2, 3):
        raise UnsupportedParameter(f"dimension must be 2 or 3, got {d}")

    bound = math.isqrt(n)
    found: list[tuple[int, ...]] = []
    for head in itertools.product(range(-bound, bound + 1), repeat=d - 1):
        rest = n - sum(c * c for c in head)
        if rest < 0:
            continue
        last = math.isqrt(rest)
        if last * last != rest:
            continue
        found.append((*head, last))
        if last != 0:
            found.append((*head, -last))

    if not found:
        raise NoRepresentation(f"{n} is not a sum of {d} squares")

    points = np.array(sorted(found), dtype=np.int64)
    points.setflags(write=False)
    return LatticePointSet(n=n, dimension=d, points=points)
