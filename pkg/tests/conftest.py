"""Shared fixtures: the bundled reference problems, parsed once per session."""

from __future__ import annotations

from importlib import resources

import pytest

from hammerstein.config import load_toml, parse_elliptic, parse_plan, parse_problem
from hammerstein.elliptic import transform
from hammerstein.settings import Settings


def bundled(name: str) -> dict:
    base = resources.files("hammerstein") / "configs" / f"{name}.toml"
    with resources.as_file(base) as path:
        return load_toml(path)


@pytest.fixture(scope="session")
def reactor_problem():
    return parse_problem(bundled("reactor"))


@pytest.fixture(scope="session")
def reactor_plan():
    return parse_plan(bundled("reactor"), system=False)


@pytest.fixture(scope="session")
def beam_problem():
    return parse_problem(bundled("beam"))


@pytest.fixture(scope="session")
def beam_plan():
    return parse_plan(bundled("beam"), system=False)


@pytest.fixture(scope="session")
def thermostat_problem():
    return parse_problem(bundled("thermostat"))


@pytest.fixture(scope="session")
def thermostat_plan():
    return parse_plan(bundled("thermostat"), system=False)


@pytest.fixture(scope="session")
def elliptic_result():
    return transform(parse_elliptic(bundled("elliptic")))


@pytest.fixture(scope="session")
def elliptic_system(elliptic_result):
    return elliptic_result.system


@pytest.fixture(scope="session")
def elliptic_plan():
    return parse_plan(bundled("elliptic"), system=True)


@pytest.fixture(scope="session")
def settings():
    return Settings()
