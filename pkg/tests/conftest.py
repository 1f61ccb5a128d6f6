from __future__ import annotations

import pytest

from blowup_lab.benchmarks import broad24, extended100, focused71
from blowup_lab.core import VariableSet
from blowup_lab.harness import HarnessConfig


@pytest.fixture(scope="session")
def vars4() -> VariableSet:
    return VariableSet.standard(4, 3)


@pytest.fixture(scope="session")
def default_cfg() -> HarnessConfig:
    return HarnessConfig()


@pytest.fixture(scope="session")
def suite_focused71():
    return focused71()


@pytest.fixture(scope="session")
def suite_extended100():
    return extended100()


@pytest.fixture(scope="session")
def suite_broad24():
    return broad24()
