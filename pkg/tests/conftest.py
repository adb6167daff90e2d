import json
from pathlib import Path

import pytest

from hextet.catalog import catalog_from_json
from hextet.pipeline import OutputStore, realization_from_dict

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def store():
    if not (DATA / "manifest.json").exists():
        pytest.skip("shipped data/ artifacts not present; run the pipeline first")
    return OutputStore(DATA)


@pytest.fixture(scope="session")
def catalog(store):
    return catalog_from_json(store.get("catalog").read_text())


@pytest.fixture(scope="session")
def catalog_by_id(catalog):
    return {e.id: e for e in catalog}


@pytest.fixture(scope="session")
def witnesses(store):
    return [
        realization_from_dict(d)
        for d in json.loads(store.get("witnesses").read_text())
    ]


@pytest.fixture(scope="session")
def plain_summary(store):
    return json.loads(store.get("realize-plain-summary").read_text())


@pytest.fixture(scope="session")
def convex_summary(store):
    return json.loads(store.get("realize-convex-summary").read_text())
