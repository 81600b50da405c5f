import json

import pytest
from hypothesis import HealthCheck, settings

from algebra.codes import characteristic_pair
from utils.serialization import CodeInput, fixture_code, load_fixture

settings.register_profile(
    "tailbiter",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("tailbiter")


@pytest.fixture
def selfdual() -> CodeInput:
    """Self-dual binary [4,2] code, rows 1001 and 0110."""
    return fixture_code("selfdual_bcjr_b")


@pytest.fixture
def selfdual_pair(selfdual):
    return characteristic_pair(selfdual.code)


@pytest.fixture
def bcjr_example() -> CodeInput:
    return fixture_code("selfdual_bcjr_a")


@pytest.fixture
def ternary() -> CodeInput:
    return fixture_code("f3_many_charmat")


@pytest.fixture
def hamming() -> CodeInput:
    return fixture_code("hamming_8_4_4")


@pytest.fixture
def improper_product() -> CodeInput:
    return fixture_code("localdual_product")


@pytest.fixture
def expected():
    """Expected values recorded in a fixture file."""
    return lambda name: load_fixture(name)["expected"]


@pytest.fixture
def code_file(tmp_path):
    """Write the code of a fixture (or a raw dict) to a JSON file and return its path."""
    def write(source, filename="code.json"):
        data = load_fixture(source)["code"] if isinstance(source, str) else source
        path = tmp_path / filename
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write
