"""Tests for ensemble specs, covariances, lattice sets and wavevector draws."""

import math

import numpy as np
import pytest
from oracles import series_j0

from nodal_nesting.ensembles import (
    EnsembleKind,
    EnsembleSpec,
    NoRepresentation,
    UnsupportedParameter,
    covariance,
    draw_wavevectors,
    enumerate_lattice_points,
)
from nodal_nesting.ensembles.covariance import annulus_covariance

J0_FIRST_ZERO = 2.404825557695773


class TestLatticePoints:
    @pytest.mark.parametrize(
        ("n", "d", "multiplicity"),
        [(1, 2, 4), (2, 2, 4), (5, 2, 8), (25, 2, 12), (1, 3, 6), (3, 3, 8)],
    )
    def test_multiplicity(self, n: int, d: int, multiplicity: int) -> None:
        lattice = enumerate_lattice_points(n, d)
        assert lattice.multiplicity == multiplicity
        assert np.all((lattice.points**2).sum(axis=1) == n)

    def test_n5_points(self) -> None:
        points = {tuple(p) for p in enumerate_lattice_points(5, 2).points.tolist()}
        expected = {(a * x, b * y) for x, y in ((1, 2), (2, 1)) for a in (1, -1) for b in (1, -1)}
        assert points == expected

    def test_half_keeps_one_of_each_pair(self) -> None:
        lattice = enumerate_lattice_points(5, 2)
        half = lattice.half()
        assert half.shape[0] == lattice.multiplicity // 2
        as_set = {tuple(p) for p in half.tolist()}
        assert not any(tuple(-np.array(p)) in as_set for p in as_set)

    @pytest.mark.parametrize(("n", "d"), [(3, 2), (7, 3), (21, 2)])
    def test_no_representation(self, n: int, d: int) -> None:
        with pytest.raises(NoRepresentation):
            enumerate_lattice_points(n, d)

    def test_invalid_parameters(self) -> None:
        with pytest.raises(UnsupportedParameter):
            enumerate_lattice_points(0, 2)
        with pytest.raises(UnsupportedParameter):
            enumerate_lattice_points(1, 4)


class TestEnsembleSpec:
    def test_band_limited_requires_alpha(self) -> None:
        with pytest.raises(UnsupportedParameter):
            EnsembleSpec(kind=EnsembleKind.BAND_LIMITED)

    def test_alpha_range(self) -> None:
        with pytest.raises(UnsupportedParameter):
            EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=1.5)

    def test_alpha_rejected_elsewhere(self) -> None:
        with pytest.raises(UnsupportedParameter):
            EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK, band_alpha=0.5)

    def test_arithmetic_requires_representable_n(self) -> None:
        with pytest.raises(UnsupportedParameter):
            EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE)
        with pytest.raises(NoRepresentation):
            EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE, arithmetic_n=3)

    def test_thin_shell(self) -> None:
        assert EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=1.0).is_thin_shell
        assert not EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=0.5).is_thin_shell

    def test_default_waves(self) -> None:
        assert EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE).waves == 256
        assert EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE, dimension=3).waves == 512

    def test_label(self) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE, arithmetic_n=5)
        assert spec.label() == "arithmetic_random_wave-d2-n5"


class TestCovariance:
    @pytest.mark.parametrize(
        "spec",
        [
            EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK),
            EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE),
            EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE, dimension=3),
            EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=0.3),
            EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=0.3, dimension=3),
            EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE, arithmetic_n=5),
        ],
        ids=lambda spec: spec.label(),
    )
    def test_unit_variance(self, spec: EnsembleSpec) -> None:
        assert covariance(spec, [0.0] * spec.dimension) == pytest.approx(1.0, abs=1e-12)

    def test_bargmann_fock(self, bargmann_fock: EnsembleSpec) -> None:
        assert covariance(bargmann_fock, [1.0, 1.0]) == pytest.approx(math.exp(-1.0))

    def test_plane_wave_matches_series(self, plane_wave: EnsembleSpec) -> None:
        for r in (0.001, 0.5, 1.0, 2.0, 3.7, 6.0, 9.5):
            assert covariance(plane_wave, [r, 0.0]) == pytest.approx(series_j0(r), abs=1e-10)

    def test_plane_wave_first_zero(self, plane_wave: EnsembleSpec) -> None:
        assert abs(covariance(plane_wave, [J0_FIRST_ZERO, 0.0])) < 1e-9

    def test_plane_wave_3d(self) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE, dimension=3)
        assert covariance(spec, [0.0, 2.0, 0.0]) == pytest.approx(math.sin(2.0) / 2.0)

    def test_thin_band_equals_plane_wave(self, plane_wave: EnsembleSpec) -> None:
        shell = EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=1.0)
        lags = np.array([[0.3, 0.4], [2.0, 1.0], [5.0, 0.0]])
        np.testing.assert_allclose(covariance(shell, lags), covariance(plane_wave, lags))

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_annulus_continuous_across_series_cutoff(self, dimension: int) -> None:
        r = np.array([0.0099, 0.0101])
        values = annulus_covariance(r, 0.4, dimension)
        assert abs(values[0] - values[1]) < 1e-6
        assert np.all(values <= 1.0)

    def test_arithmetic_n1(self) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.ARITHMETIC_RANDOM_WAVE, arithmetic_n=1)
        assert covariance(spec, [0.5, 0.0]) == pytest.approx(0.0, abs=1e-12)
        assert covariance(spec, [0.25, 0.0]) == pytest.approx(0.5, abs=1e-12)

    def test_vectorized_shape(self, bargmann_fock: EnsembleSpec) -> None:
        lags = np.zeros((3, 4, 2))
        assert covariance(bargmann_fock, lags).shape == (3, 4)

    def test_wrong_lag_dimension(self, bargmann_fock: EnsembleSpec) -> None:
        with pytest.raises(ValueError):
            covariance(bargmann_fock, [1.0, 0.0, 0.0])


class TestWavevectors:
    def test_plane_wave_directions(
        self, plane_wave: EnsembleSpec, rng: np.random.Generator
    ) -> None:
        waves = draw_wavevectors(plane_wave, rng, rotation=0.0)
        assert waves.shape == (256, 2)
        np.testing.assert_allclose(np.linalg.norm(waves, axis=1), 1.0)
        np.testing.assert_allclose(waves[0], [1.0, 0.0])

    def test_equispaced_quadrature_matches_j0(
        self, plane_wave: EnsembleSpec, rng: np.random.Generator
    ) -> None:
        waves = draw_wavevectors(plane_wave, rng)
        for x in ([0.5, 0.0], [2.0, 3.0], [3.0, -4.0], [0.0, 5.0]):
            empirical = float(np.cos(waves @ np.array(x)).mean())
            assert empirical == pytest.approx(series_j0(float(np.hypot(*x))), abs=1e-3)

    def test_band_radii(self, rng: np.random.Generator) -> None:
        spec = EnsembleSpec(kind=EnsembleKind.BAND_LIMITED, band_alpha=0.5, dimension=3)
        norms = np.linalg.norm(draw_wavevectors(spec, rng), axis=1)
        assert norms.shape == (512,)
        assert norms.min() >= 0.5 - 1e-12
        assert norms.max() <= 1.0 + 1e-12

    def test_same_generator_state_same_draw(self, plane_wave: EnsembleSpec) -> None:
        a = draw_wavevectors(plane_wave, np.random.default_rng(9))
        b = draw_wavevectors(plane_wave, np.random.default_rng(9))
        np.testing.assert_array_equal(a, b)

    def test_rejects_other_kinds(
        self, bargmann_fock: EnsembleSpec, rng: np.random.Generator
    ) -> None:
        with pytest.raises(UnsupportedParameter):
            draw_wavevectors(bargmann_fock, rng)
