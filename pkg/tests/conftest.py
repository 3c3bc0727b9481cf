"""Pytest fixtures for indep-census tests."""

from pathlib import Path

import pytest

from indep_census import SampleSpace, product_space, uniform_space


@pytest.fixture
def uniform12() -> SampleSpace:
    """The uniform twelve-point space."""
    return uniform_space(12)


@pytest.fixture
def uniform6() -> SampleSpace:
    """The uniform six-point space."""
    return uniform_space(6)


@pytest.fixture
def coin_die() -> SampleSpace:
    """A fair coin times a fair die; outcome 6*c + d for coin c and die d."""
    return product_space([[1, 1], [1] * 6])


@pytest.fixture
def weights_file(tmp_path: Path) -> Path:
    """A weights file describing a biased four-point space."""
    path = tmp_path / "weights.txt"
    path.write_text("# biased coin squared\n1\n2\n\n2\n4\n", encoding="utf-8")
    return path
