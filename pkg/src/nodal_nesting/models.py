"""Pydantic models for nodal-nesting results."""

from pydantic import BaseModel, Field

from nodal_nesting.ensembles import EnsembleSpec


class Estimate(BaseModel):
    """A Monte Carlo estimate with its standard error."""

    value: float
    se: float = Field(description="Standard error of the estimate")


class ConnectivityMeasure(BaseModel):
    """Pooled histogram of interior degrees in G(R)."""

    counts: dict[int, int] = Field(description="k -> number of interior domains of degree k")
    total: int = Field(description="Pooled |V(R)| over the included replicates")
    mu: dict[int, float] = Field(default_factory=dict)
    se: dict[int, float] = Field(default_factory=dict, description="Binomial standard errors")
    excluded_replicates: int = Field(
        default=0, description="Replicates with no interior domain (N = 0)"
    )

    @property
    def mean(self) -> float:
        """Mean connectivity sum_k k mu(k)."""
        return sum(k * p for k, p in self.mu.items())


class VolumeCDF(BaseModel):
    """Empirical volume distribution on a logarithmic t-grid."""

    t: list[float]
    psi: list[float]
    normalization: float = Field(description="c_NS * Vol B(R) * replicates")
    tail_integral: float = Field(
        description="Integral over t of (psi(inf) - psi(t)), exact for the step function"
    )


class TailFit(BaseModel):
    """Power-law fit of the connectivity tail mu(k) ~ k^(-alpha)."""

    alpha: float
    se: float
    k_min: int
    k_max: int
    bins: int = Field(description="Histogram bins used by the fit")
    curvature: float = Field(description="Quadratic coefficient of log mu in log k")
    curvature_se: float
    curved: bool = Field(description="True when the log-log relation is visibly not straight")


class PercolationDecay(BaseModel):
    """Descriptive log-log fit P(R) ~ R^(-beta)."""

    beta: float
    se: float
    ci_low: float
    ci_high: float
    radii: list[float] = Field(description="Radii with positive P used by the fit")

    @property
    def excludes_zero(self) -> bool:
        return self.ci_low > 0.0 or self.ci_high < 0.0


class IdentityResiduals(BaseModel):
    """Largest per-replicate violation of the exact identities (all must be 0)."""

    tree: int = Field(default=0, description="max |sum dbar(v) - 2(Nbar - 1)|")
    interior: int = Field(default=0, description="max |sum_interior d(v) - 2(N - T)|")
    volume: int = Field(
        default=0, description="max |interior cells - (total cells - boundary cells)|"
    )

    @property
    def all_zero(self) -> bool:
        return self.tree == 0 and self.interior == 0 and self.volume == 0


class RadiusReport(BaseModel):
    """All estimators for one radius R."""

    radius: float
    spacing: float
    replicates: int
    excluded_replicates: int = 0
    nazarov_sodin: Estimate = Field(description="N(F;R)/Vol B(R)")
    percolation: Estimate = Field(description="Probability the origin domain meets the boundary")
    closure_density: Estimate = Field(description="T(R)/Vol B(R)")
    boundary_connectivity_density: Estimate = Field(description="C(R)/Vol B(R)")
    boundary_volume_fraction: Estimate = Field(description="V(R)/Vol B(R)")
    boundary_minus_percolation: Estimate = Field(
        description="V(R)/Vol B(R) - P(R) with its joint standard error"
    )
    closure_ratio: Estimate | None = Field(
        default=None, description="2T/N, pooled ratio over replicates"
    )
    mean_connectivity: Estimate | None = Field(default=None, description="2 - 2T/N")
    mean_interior_volume: Estimate | None = None
    connectivity: ConnectivityMeasure | None = None
    volume_cdf: VolumeCDF | None = None
    tail: TailFit | None = None
    tail_note: str | None = None
    tv_to_previous: float | None = Field(
        default=None,
        description="Total variation distance to the connectivity measure of the previous R",
    )
    residuals: IdentityResiduals = Field(default_factory=IdentityResiduals)
    zero_perturbations: int = 0


class MonteCarloReport(BaseModel):
    """Aggregated estimators over a sweep of radii."""

    ensemble: EnsembleSpec
    base_seed: int
    radii: list[RadiusReport] = Field(default_factory=list)
    percolation_decay: PercolationDecay | None = None


class VolumeIdentity(BaseModel):
    """Mean-volume consistency record for one radius."""

    radius: float
    per_sample_residual: int = Field(description="Must be 0")
    tail_term: float = Field(description="c_NS * integral of (1 - psi)")
    boundary_term: float = Field(description="1 - V(R)/Vol B(R)")
    discrepancy: float
    discrepancy_se: float
    boundary_minus_percolation: Estimate = Field(
        description="V(R)/Vol B(R) - P(R) with its joint standard error"
    )
    empirical_mean_volume: float | None = None
    scaled_mean_volume: float | None = Field(
        default=None, description="c_NS times the empirical mean interior volume"
    )
    one_minus_percolation: float


class CheckResult(BaseModel):
    """Outcome of one deterministic lemma or identity check."""

    check: str
    observed: int
    bound: float
    passed: bool
    details: dict[str, float] = Field(default_factory=dict)
    reproducer: str | None = Field(
        default=None, description="Serialized configuration when the check failed"
    )


class LemmaSuiteReport(BaseModel):
    """Summary of a randomized lemma suite run."""

    cases: int
    seed: int
    checked: dict[str, int] = Field(default_factory=dict)
    violations: int = 0
    failures: list[CheckResult] = Field(default_factory=list)


class SweepPoint(BaseModel):
    """Torus domain count for one eigenvalue parameter n."""

    n: int
    multiplicity: int | None = None
    ratio: Estimate | None = Field(default=None, description="N(f_n) / n^(d/2)")
    planar_equivalent: Estimate | None = Field(
        default=None, description="ratio / (2 pi)^d, comparable with the planar c_NS"
    )
    planar_relative_difference: float | None = Field(
        default=None, description="(planar_equivalent - planar c_NS) / planar c_NS"
    )
    skipped: str | None = None


class SweepReport(BaseModel):
    """Arithmetic random wave sweep over n."""

    dimension: int
    replicates: int
    base_seed: int
    points: list[SweepPoint] = Field(default_factory=list)
    planar_radius: float | None = None
    planar_c_ns: Estimate | None = Field(
        default=None, description="c_NS of random_plane_wave at planar_radius"
    )


class RunManifest(BaseModel):
    """Everything needed to reproduce a run."""

    version: str
    command: str
    config: dict[str, object]
    started_at: str
    wall_clock_seconds: float
    files: list[str] = Field(default_factory=list)
    percolation_decay: PercolationDecay | None = None
    volume_identity: list[VolumeIdentity] = Field(default_factory=list)
    lemma_suite: LemmaSuiteReport | None = None
