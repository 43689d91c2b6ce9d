import json

import pytest

from fusionchar import data_path, load_fusion, load_restriction, parse_table


def fixture_json(name):
    return json.loads(data_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def d16():
    return parse_table(data_path("d16.json"))


@pytest.fixture(scope="session")
def d16_fusion():
    return load_fusion(data_path("d16_pgl27.json"))


@pytest.fixture(scope="session")
def d8():
    return parse_table(data_path("d8.json"))


@pytest.fixture(scope="session")
def d8_fusion():
    return load_fusion(data_path("s4_on_d8_fusion.json"))


@pytest.fixture(scope="session")
def autm22():
    return load_restriction(data_path("autm22_restriction.json"))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
