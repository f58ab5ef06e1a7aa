from pathlib import Path

import pytest

from lfphillips import ingest

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "japan"


@pytest.fixture(scope="session")
def japan_manifest():
    return ingest.load_manifest(DATA_DIR / "manifest.json")


@pytest.fixture(scope="session")
def japan(japan_manifest):
    """Bundled Japan series in internal units, plus derived labor-force growth."""
    return ingest.load_all(japan_manifest)


@pytest.fixture(scope="session")
def japan_scenario_path():
    return DATA_DIR / "scenario_2005.json"
