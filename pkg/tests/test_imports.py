"""Every subpackage imports on its own in a fresh interpreter."""

import subprocess
import sys

import pytest

MODULES = [
    "nodal_nesting",
    "nodal_nesting.config",
    "nodal_nesting.csvio",
    "nodal_nesting.errors",
    "nodal_nesting.models",
    "nodal_nesting.ensembles",
    "nodal_nesting.sampler",
    "nodal_nesting.sampler.validation",
    "nodal_nesting.nodal",
    "nodal_nesting.stats",
    "nodal_nesting.lemmas",
    "nodal_nesting.harness",
    "nodal_nesting.cli",
]


@pytest.mark.parametrize("module", MODULES)
def test_imports_in_isolation(module: str) -> None:
    result = subprocess.run(
        [sys.executable, "-c", f"import {module}"], capture_output=True, text=True, check=False
    )
    assert result.returncode == 0, result.stderr
