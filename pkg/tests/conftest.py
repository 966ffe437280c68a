import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from varkit import parse_model, parse_product_model
from varkit.data import ACTIVITY_PRODUCT, VARIANT_MODEL, load


@pytest.fixture(scope="session")
def model_bytes() -> bytes:
    return load(VARIANT_MODEL)


@pytest.fixture()
def model(model_bytes):
    return parse_model(model_bytes)


@pytest.fixture(scope="session")
def product_bytes() -> bytes:
    return load(ACTIVITY_PRODUCT)


@pytest.fixture()
def product(product_bytes):
    return parse_product_model(product_bytes)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys

    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
