import shutil
from pathlib import Path

import pytest

import capelli

PACKAGED_LEDGER = Path(capelli.__file__).with_name("conventions.json")


@pytest.fixture(autouse=True)
def isolated_ledger(tmp_path, monkeypatch):
    """Each test sees a private copy of the checked-in convention ledger."""
    path = tmp_path / "conventions.json"
    shutil.copy(PACKAGED_LEDGER, path)
    monkeypatch.setenv("CAPELLI_LEDGER", str(path))
    return path


@pytest.fixture
def empty_ledger(tmp_path, monkeypatch):
    path = tmp_path / "fresh" / "conventions.json"
    monkeypatch.setenv("CAPELLI_LEDGER", str(path))
    return path
