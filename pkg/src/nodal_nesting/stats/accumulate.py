"""Per-replicate observables and their order-independent aggregation."""

import logging
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field

from nodal_nesting.nodal import (
    DomainLabeling,
    NestingTree,
    TopologyInconsistency,
    count_closure_components,
    origin_to_boundary,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplicateSummary:
    """Integer observables of one labeled sample.

    ``interior_volume_counts`` maps a cell count to the number of interior
    domains of that size; degree fields are None when no tree was built.
    """

    seed: int
    total_domains: int
    interior_domains: int
    closure_components: int
    boundary_cells: int
    interior_cells: int
    total_cells: int
    origin_to_boundary: bool
    boundary_connectivity: int
    degree_sum: int | None = None
    interior_degree_sum: int | None = None
    interior_degree_counts: Counter[int] = field(default_factory=Counter)
    interior_volume_counts: Counter[int] = field(default_factory=Counter)
    zero_perturbations: int = 0

    @property
    def tree_residual(self) -> int:
        if self.degree_sum is None:
            return 0
        return abs(self.degree_sum - 2 * (self.total_domains - 1))

    @property
    def interior_residual(self) -> int:
        if self.interior_degree_sum is None:
            return 0
        return abs(
            self.interior_degree_sum - 2 * (self.interior_domains - self.closure_components)
        )

    @property
    def volume_residual(self) -> int:
        return abs(self.interior_cells - (self.total_cells - self.boundary_cells))

    @property
    def literal_form(self) -> int:
        """2(T - 1) - 2(N̄ - N); kept for comparison, not an identity on small configurations."""
        return 2 * (self.closure_components - 1) - 2 * (
            self.total_domains - self.interior_domains
        )


def boundary_connectivity(
    labeling: DomainLabeling, tree: NestingTree | None, closure_components: int
) -> int:
    """C(R) = sum of d̄(v) minus the sum of d(v) over interior domains.

    With a tree the direct form is checked against 2(N̄ - 1) - 2(N - T); without
    one (d=3, torus) only the latter is returned.

    Raises:
        TopologyInconsistency: If the two forms disagree
    """
    euler = 2 * (labeling.total_domains - 1) - 2 * (
        labeling.interior_domains - closure_components
    )
    if tree is None:
        return euler
    direct = int(tree.degrees.sum()) - int(tree.interior_degrees[tree.interior].sum())
    if direct != euler:
        raise TopologyInconsistency(
            f"boundary connectivity {direct} differs from its Euler form {euler}"
        )
    return direct


def summarize_replicate(
    labeling: DomainLabeling,
    tree: NestingTree | None,
    seed: int,
    zero_perturbations: int = 0,
) -> ReplicateSummary:
    """Reduce a labeling (and its tree, when built) to integer observables."""
    closure = count_closure_components(labeling)
    interior_counts = labeling.interior_cell_counts()
    summary = ReplicateSummary(
        seed=seed,
        total_domains=labeling.total_domains,
        interior_domains=labeling.interior_domains,
        closure_components=closure,
        boundary_cells=labeling.boundary_cells,
        interior_cells=int(interior_counts.sum()),
        total_cells=labeling.total_cells,
        origin_to_boundary=origin_to_boundary(labeling),
        boundary_connectivity=boundary_connectivity(labeling, tree, closure),
        degree_sum=int(tree.degrees.sum()) if tree is not None else None,
        interior_degree_sum=(
            int(tree.interior_degrees[tree.interior].sum()) if tree is not None else None
        ),
        interior_degree_counts=tree.interior_degree_counts() if tree is not None else Counter(),
        interior_volume_counts=Counter(interior_counts.tolist()),
        zero_perturbations=zero_perturbations,
    )
    if summary.interior_degree_sum is not None and summary.interior_domains:
        # Sum of k mu_rep(k) never exceeds 2 - 2/N
        if summary.interior_degree_sum > 2 * summary.interior_domains - 2:
            raise TopologyInconsistency(
                f"seed {seed}: interior degree sum {summary.interior_degree_sum} "
                f"exceeds 2N - 2 for N={summary.interior_domains}"
            )
    return summary


# Integer moments kept per radius; products feed the ratio and joint standard errors
_MOMENTS: dict[str, Callable[[ReplicateSummary], int]] = {
    "N": lambda s: s.interior_domains,
    "Nbar": lambda s: s.total_domains,
    "T": lambda s: s.closure_components,
    "C": lambda s: s.boundary_connectivity,
    "Vb": lambda s: s.boundary_cells,
    "I": lambda s: s.interior_cells,
    "O": lambda s: int(s.origin_to_boundary),
    "gap": lambda s: s.boundary_cells - s.total_cells * int(s.origin_to_boundary),
}
_PRODUCTS = (("N", "T"), ("N", "I"))


def _combined(a: Counter[str], b: Counter[str]) -> Counter[str]:
    # Counter.__add__ drops non-positive totals; update keeps them
    total = Counter(a)
    total.update(b)
    return total


@dataclass
class RadiusAccumulator:
    """Exact integer sums over the replicates of one radius.

    Every field is a sum, a max or a Counter of integers, so ``add`` and
    ``merge`` commute and any reduction order yields identical totals.
    """

    total_cells: int
    replicates: int = 0
    excluded: int = 0
    first: Counter[str] = field(default_factory=Counter)
    second: Counter[str] = field(default_factory=Counter)
    mixed: Counter[str] = field(default_factory=Counter)
    degree_counts: Counter[int] = field(default_factory=Counter)
    volume_counts: Counter[int] = field(default_factory=Counter)
    has_tree: bool = False
    tree_residual: int = 0
    interior_residual: int = 0
    volume_residual: int = 0
    zero_perturbations: int = 0

    def add(self, summary: ReplicateSummary) -> None:
        if summary.total_cells != self.total_cells:
            raise ValueError(
                f"replicate with {summary.total_cells} cells added to a "
                f"{self.total_cells}-cell accumulator"
            )
        values = {name: get(summary) for name, get in _MOMENTS.items()}
        self.replicates += 1
        self.excluded += int(summary.interior_domains == 0)
        for name, value in values.items():
            self.first[name] += value
            self.second[name] += value * value
        for a, b in _PRODUCTS:
            self.mixed[f"{a}*{b}"] += values[a] * values[b]
        self.degree_counts.update(summary.interior_degree_counts)
        self.volume_counts.update(summary.interior_volume_counts)
        self.has_tree = self.has_tree or summary.degree_sum is not None
        self.tree_residual = max(self.tree_residual, summary.tree_residual)
        self.interior_residual = max(self.interior_residual, summary.interior_residual)
        self.volume_residual = max(self.volume_residual, summary.volume_residual)
        self.zero_perturbations += summary.zero_perturbations

    def merge(self, other: "RadiusAccumulator") -> "RadiusAccumulator":
        """Combine two disjoint sets of replicates into a new accumulator."""
        if other.total_cells != self.total_cells:
            raise ValueError("cannot merge accumulators over different grids")
        return RadiusAccumulator(
            total_cells=self.total_cells,
            replicates=self.replicates + other.replicates,
            excluded=self.excluded + other.excluded,
            first=_combined(self.first, other.first),
            second=_combined(self.second, other.second),
            mixed=_combined(self.mixed, other.mixed),
            degree_counts=self.degree_counts + other.degree_counts,
            volume_counts=self.volume_counts + other.volume_counts,
            has_tree=self.has_tree or other.has_tree,
            tree_residual=max(self.tree_residual, other.tree_residual),
            interior_residual=max(self.interior_residual, other.interior_residual),
            volume_residual=max(self.volume_residual, other.volume_residual),
            zero_perturbations=self.zero_perturbations + other.zero_perturbations,
        )

    def product(self, a: str, b: str) -> int:
        if a == b:
            return self.second[a]
        key = f"{a}*{b}" if f"{a}*{b}" in self.mixed else f"{b}*{a}"
        return self.mixed[key]
