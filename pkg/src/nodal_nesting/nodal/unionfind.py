"""Disjoint-set forest over integer ids."""

import numpy as np
import numpy.typing as npt


class UnionFind:
    """Union-find with path compression and union by size.

    Ids are 0..size-1. ``union`` reports whether two distinct sets were
    merged, which doubles as a cycle test when edges are added one by one.
    """

    def __init__(self, size: int) -> None:
        self._parents = list(range(size))
        self._sizes = [1] * size
        self.num_components = size

    def __len__(self) -> int:
        return len(self._parents)

    def find(self, element: int) -> int:
        parents = self._parents
        root = element
        while root != parents[root]:
            root = parents[root]
        while element != root:
            parents[element], element = root, parents[element]
        return root

    def union(self, a: int, b: int) -> bool:
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return False
        if self._sizes[root_a] < self._sizes[root_b]:
            root_a, root_b = root_b, root_a
        self._parents[root_b] = root_a
        self._sizes[root_a] += self._sizes[root_b]
        self.num_components -= 1
        return True

    def union_pairs(self, a: npt.ArrayLike, b: npt.ArrayLike) -> int:
        """Union each a[i] with b[i]; returns how many pairs were already joined."""
        redundant = 0
        for x, y in zip(np.asarray(a).tolist(), np.asarray(b).tolist(), strict=True):
            if not self.union(x, y):
                redundant += 1
        return redundant

    def roots(self) -> npt.NDArray[np.int64]:
        """Root id of every element."""
        size = len(self)
        return np.fromiter((self.find(i) for i in range(size)), dtype=np.int64, count=size)
