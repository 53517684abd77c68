import json
from pathlib import Path

import pytest


def pytest_addoption(parser):
    parser.addoption("--bbc", required=True, help="path to the bbc executable")
    parser.addoption("--schemas", required=True, help="directory holding *.schema.json")


@pytest.fixture(scope="session")
def bbc(request):
    return request.config.getoption("--bbc")


@pytest.fixture(scope="session")
def schemas(request):
    root = Path(request.config.getoption("--schemas"))
    return {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in root.glob("*.schema.json")}
