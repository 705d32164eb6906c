"""
Shared fixtures: the worked presentations and module specs under data/,
and services built from default configuration.
"""

import json
import os

import pytest

from src.config.settings import EngineConfig
from src.services.groebner_service import GroebnerEngine
from src.services.pbasis_service import PBasisService
from src.services.dedekind_service import DedekindService
from src.utils.validators import ModuleSpecValidator, PresentationValidator

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def load_presentation(name: str):
    with open(data_path(name), encoding="utf-8") as handle:
        presentation, error = PresentationValidator.validate(json.load(handle))
    assert error is None, error
    return presentation


def load_spec(name: str):
    with open(data_path(name), encoding="utf-8") as handle:
        spec, error = ModuleSpecValidator.validate(json.load(handle))
    assert error is None, error
    return spec


@pytest.fixture
def engine():
    return GroebnerEngine(EngineConfig())


@pytest.fixture
def pbasis_service():
    return PBasisService(EngineConfig())


@pytest.fixture
def dedekind_service(pbasis_service):
    return DedekindService(pbasis=pbasis_service)


@pytest.fixture
def p5_group():
    return load_presentation("p5_group.json")


@pytest.fixture
def zc3_block():
    return load_presentation("zc3_block.json")


@pytest.fixture
def zc3_block_cycle():
    return load_presentation("zc3_block_cycle.json")


@pytest.fixture
def pullback_cycle():
    return load_presentation("pullback_cycle.json")


@pytest.fixture
def zc3_block_cycle_spec():
    return load_spec("zc3_block_cycle_spec.json")


@pytest.fixture
def pullback_cycle_spec():
    return load_spec("pullback_cycle_spec.json")
