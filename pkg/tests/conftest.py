from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from modrep.corpus import group_file_text, named_group

settings.register_profile(
    "modrep", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "modrep"))


@pytest.fixture(scope="session")
def group():
    return named_group


@pytest.fixture
def group_file(tmp_path):
    def make(name: str) -> str:
        path = tmp_path / f"{name.replace('(', '').replace(')', '').replace(',', '_')}.grp"
        path.write_text(group_file_text(name))
        return str(path)

    return make


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    ws = tmp_path / "ws"
    monkeypatch.setenv("MODREP_WORKSPACE", str(ws))
    return ws


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
