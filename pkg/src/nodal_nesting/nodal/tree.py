"""Nesting tree of the nodal domains of a planar sample."""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import numpy.typing as npt
from scipy import sparse
from scipy.sparse import csgraph

from nodal_nesting.errors import NodalNestingError
from nodal_nesting.nodal.labeling import DomainLabeling, saddle_blocks
from nodal_nesting.nodal.unionfind import UnionFind

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]


class TopologyInconsistency(NodalNestingError):
    """The interface graph is not a tree; the labeling and curve tracing disagree."""

    pass


@dataclass(frozen=True)
class NestingTree:
    """Domains as vertices, nodal components as edges.

    ``edges`` has one row (lo, hi) per interface component, lo < hi.
    """

    edges: IntArray
    degrees: IntArray
    interior_degrees: IntArray
    interior: BoolArray

    @property
    def num_vertices(self) -> int:
        return int(self.degrees.size)

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def interior_degree_counts(self) -> Counter[int]:
        """Histogram k -> number of interior domains with d(v) = k."""
        values = self.interior_degrees[self.interior]
        degrees, counts = np.unique(values, return_counts=True)
        return Counter(dict(zip(degrees.tolist(), counts.tolist(), strict=True)))


def _face_graph(
    labels: IntArray, cell_values: npt.NDArray[np.float64]
) -> tuple[IntArray, IntArray, IntArray, IntArray]:
    """Trace interface curves through the interior grid vertices.

    Faces between rows i and i+1 get ids 0..(n0-1)*n1-1, faces between
    columns follow. At a grid vertex with two active faces they continue one
    curve; at a checkerboard vertex the faces are paired so that the curves
    go around the disconnected diagonal.

    Returns:
        Face ids linked at vertices (src, dst), and the two labels of every face
    """
    across_rows = labels[:-1, :] != labels[1:, :]
    across_cols = labels[:, :-1] != labels[:, 1:]
    row_ids = np.arange(across_rows.size).reshape(across_rows.shape)
    col_ids = across_rows.size + np.arange(across_cols.size).reshape(across_cols.shape)

    # The four faces meeting at the vertex shared by cells (i, j) .. (i+1, j+1)
    ends = [
        (row_ids[:, :-1], across_rows[:, :-1]),
        (row_ids[:, 1:], across_rows[:, 1:]),
        (col_ids[:-1, :], across_cols[:-1, :]),
        (col_ids[1:, :], across_cols[1:, :]),
    ]
    active = sum(mask.astype(np.int64) for _, mask in ends)

    sources: list[IntArray] = []
    targets: list[IntArray] = []
    simple = active == 2
    for (ids_a, mask_a), (ids_b, mask_b) in combinations(ends, 2):
        linked = simple & mask_a & mask_b
        sources.append(ids_a[linked])
        targets.append(ids_b[linked])

    rows, cols, main = saddle_blocks(cell_values)
    main_diagonal = np.zeros(active.shape, dtype=bool)
    main_diagonal[rows, cols] = main
    saddle = active == 4
    (qm, _), (qp, _), (pm, _), (pp, _) = ends
    for linked, pairs in (
        (saddle & main_diagonal, ((qm, pp), (qp, pm))),
        (saddle & ~main_diagonal, ((qm, pm), (qp, pp))),
    ):
        for ids_a, ids_b in pairs:
            sources.append(ids_a[linked])
            targets.append(ids_b[linked])

    first = np.concatenate([labels[:-1, :].ravel(), labels[:, :-1].ravel()])
    second = np.concatenate([labels[1:, :].ravel(), labels[:, 1:].ravel()])
    return np.concatenate(sources), np.concatenate(targets), first, second


def build_nesting_tree(labeling: DomainLabeling) -> NestingTree:
    """Build the nesting tree of a d=2 labeling on the closed square.

    Every connected component of the interface (faces between cells of
    different domains) becomes one edge between the two domains it separates.

    Raises:
        ValueError: If the labeling is not planar or lives on a torus
        TopologyInconsistency: If an interface separates more than two domains,
            the edge count is not N̄ - 1, an edge joins two domains of the same
            sign, or the graph has a cycle
    """
    if labeling.dimension != 2:
        raise ValueError("nesting trees are built for d=2 only")
    if labeling.periodic:
        raise ValueError("nesting trees are not defined on the torus")

    total = labeling.total_domains
    sources, targets, first, second = _face_graph(labeling.labels, labeling.cell_values)
    face_count = first.size
    faces = np.flatnonzero(first != second)

    if faces.size:
        adjacency = sparse.coo_matrix(
            (np.ones(sources.size, dtype=np.int8), (sources, targets)),
            shape=(face_count, face_count),
        )
        _, component = csgraph.connected_components(adjacency, directed=False)
        lo = np.minimum(first[faces], second[faces])
        hi = np.maximum(first[faces], second[faces])
        triples = np.unique(np.column_stack([component[faces], lo, hi]), axis=0)
        if np.unique(triples[:, 0]).size != triples.shape[0]:
            raise TopologyInconsistency("an interface component separates more than two domains")
        edges = triples[:, 1:].astype(np.int64)
    else:
        edges = np.empty((0, 2), dtype=np.int64)

    if edges.shape[0] != total - 1:
        raise TopologyInconsistency(f"{edges.shape[0]} interface components for {total} domains")
    if np.any(labeling.positive[edges[:, 0]] == labeling.positive[edges[:, 1]]):
        raise TopologyInconsistency("an interface joins two domains of the same sign")
    if UnionFind(total).union_pairs(edges[:, 0], edges[:, 1]):
        raise TopologyInconsistency("the domain graph has a cycle")

    interior = labeling.interior
    degrees = np.bincount(edges.ravel(), minlength=total).astype(np.int64)
    inner = edges[interior[edges[:, 0]] & interior[edges[:, 1]]]
    interior_degrees = np.bincount(inner.ravel(), minlength=total).astype(np.int64)

    logger.debug("nesting tree: %d vertices, %d interior edges", total, inner.shape[0])
    return NestingTree(
        edges=edges, degrees=degrees, interior_degrees=interior_degrees, interior=interior
    )
