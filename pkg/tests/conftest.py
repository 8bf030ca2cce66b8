"""Pytest configuration and fixtures for gsp4obs tests."""

import pytest

from gsp4obs.config import FULL_SUITE_ENV, full_suite_enabled
from gsp4obs.ff import ExtField, field_make
from gsp4obs.localtype import LocalTypeDescriptor, load_descriptor, packaged_descriptors


def pytest_collection_modifyitems(items: list[pytest.Item]) -> None:
    """Skip the tests marked full_suite unless the full suite is switched on."""
    if full_suite_enabled():
        return
    skip = pytest.mark.skip(reason=f"Only run if {FULL_SUITE_ENV}=1")
    for item in items:
        if "full_suite" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def f7() -> ExtField:
    """The prime field F_7."""
    return field_make(7, 1)


@pytest.fixture
def f49() -> ExtField:
    """F_49, which holds a square root of 3."""
    return field_make(7, 2)


@pytest.fixture(scope="session")
def corpus() -> dict[str, LocalTypeDescriptor]:
    """Every packaged descriptor, by name."""
    return {name: load_descriptor(name) for name in packaged_descriptors()}


@pytest.fixture
def group_iv() -> LocalTypeDescriptor:
    """Steinberg at ell = 3."""
    return load_descriptor("groupIV_ell3")
