"""Shared pytest fixtures."""

from collections.abc import Iterator

import pytest

from lrckit.config import use_settings
from lrckit.core.code import LinearCode
from lrckit.core.field import FieldSpec, field_new


@pytest.fixture(autouse=True)
def _reset_settings() -> Iterator[None]:
    """Every test starts from the environment-loaded settings."""
    use_settings(None)
    yield
    use_settings(None)


@pytest.fixture
def gf2() -> FieldSpec:
    return field_new(2)


@pytest.fixture
def gf3() -> FieldSpec:
    return field_new(3)


@pytest.fixture
def gf4() -> FieldSpec:
    return field_new(2, 2)


@pytest.fixture
def gf7() -> FieldSpec:
    return field_new(7)


@pytest.fixture
def gf13() -> FieldSpec:
    return field_new(13)


@pytest.fixture
def replication_gf3(gf3: FieldSpec) -> LinearCode:
    """[4, 2, 2] over GF(3): each message symbol stored twice."""
    return LinearCode.from_ints(gf3, [[1, 1, 0, 0], [0, 0, 1, 1]])
