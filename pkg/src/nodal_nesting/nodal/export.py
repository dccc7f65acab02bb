"""Per-sample domain dumps."""

import logging
from collections.abc import Iterator
from pathlib import Path

from nodal_nesting.csvio import Cell, write_rows
from nodal_nesting.nodal.labeling import DomainLabeling
from nodal_nesting.nodal.tree import NestingTree

logger = logging.getLogger(__name__)

DOMAIN_COLUMNS = (
    "domain_id",
    "sign",
    "cell_count",
    "volume",
    "touches_boundary",
    "contains_origin",
    "degree_full",
    "degree_interior",
)


def _domain_rows(labeling: DomainLabeling, tree: NestingTree | None) -> Iterator[list[Cell]]:
    volumes = labeling.volumes
    for label in range(labeling.total_domains):
        touches = bool(labeling.touches_boundary[label])
        degree_full: int | None = None
        degree_interior: int | None = None
        if tree is not None:
            degree_full = int(tree.degrees[label])
            # d(v) is only defined on interior domains
            if not touches:
                degree_interior = int(tree.interior_degrees[label])
        yield [
            label,
            "+" if labeling.positive[label] else "-",
            int(labeling.cell_counts[label]),
            float(volumes[label]),
            touches,
            label == labeling.origin_label,
            degree_full,
            degree_interior,
        ]


def write_domain_csv(labeling: DomainLabeling, tree: NestingTree | None, path: Path) -> int:
    """Write one row per domain; degree columns stay empty without a tree (d=3, torus)."""
    count = write_rows(path, DOMAIN_COLUMNS, _domain_rows(labeling, tree))
    logger.debug("Wrote %d domains to %s", count, path)
    return count
