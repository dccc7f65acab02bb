"""Shared fixtures."""

import numpy as np
import pytest
from oracles import islands, rings

from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.nodal import DomainLabeling, label_cells


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def ring_labeling() -> DomainLabeling:
    """7x7 grid: centre cell plus three nested square rings, the outer one on the boundary."""
    return label_cells(rings(7))


@pytest.fixture
def island_labeling() -> DomainLabeling:
    """7x7 negative sea holding two isolated positive cells."""
    return label_cells(islands(7, [(1, 1), (5, 5)]))


@pytest.fixture
def bargmann_fock() -> EnsembleSpec:
    return EnsembleSpec(kind=EnsembleKind.BARGMANN_FOCK)


@pytest.fixture
def plane_wave() -> EnsembleSpec:
    return EnsembleSpec(kind=EnsembleKind.RANDOM_PLANE_WAVE)
