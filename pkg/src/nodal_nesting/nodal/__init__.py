"""Nodal domains, their boundary classification and the nesting tree."""

from nodal_nesting.nodal.export import write_domain_csv
from nodal_nesting.nodal.labeling import (
    DomainLabeling,
    boundary_volume,
    count_closure_components,
    count_T,
    label_cells,
    label_domains,
    origin_to_boundary,
    saddle_blocks,
)
from nodal_nesting.nodal.tree import NestingTree, TopologyInconsistency, build_nesting_tree
from nodal_nesting.nodal.unionfind import UnionFind

__all__ = [
    "DomainLabeling",
    "NestingTree",
    "TopologyInconsistency",
    "UnionFind",
    "boundary_volume",
    "build_nesting_tree",
    "count_T",
    "count_closure_components",
    "label_cells",
    "label_domains",
    "origin_to_boundary",
    "saddle_blocks",
    "write_domain_csv",
]
