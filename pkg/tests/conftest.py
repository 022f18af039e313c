"""Shared fixtures: flat modules from the repository root, algebras cached per session."""

import os
import sys
from functools import lru_cache

os.environ.setdefault("HECKELAB_LOG_LEVEL", "quiet")
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import HealthCheck, settings

from exact_linalg import CoefficientField
from finite_group import build_group, parse_group
from hecke_affine import affine_algebra
from hecke_core import UnipotentHeckeAlgebra

settings.register_profile("heckelab", max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("heckelab")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: heavy grids (GL3, SL2 over F3, full suites)")


@lru_cache(maxsize=None)
def _group(descriptor: str):
    return build_group(*parse_group(descriptor))


@lru_cache(maxsize=None)
def _finite(descriptor: str, coeff: str) -> UnipotentHeckeAlgebra:
    return UnipotentHeckeAlgebra.from_presentation(_group(descriptor), CoefficientField.parse(coeff))


@pytest.fixture(scope="session")
def group():
    """group("gl:2:3") -> FiniteReductiveGroup, enumerated once."""
    return _group


@pytest.fixture(scope="session")
def finite_algebra():
    """finite_algebra("gl:2:3", "fp:3") -> presented unipotent Hecke algebra."""
    return _finite


@pytest.fixture(scope="session")
def affine():
    """affine("gl2", 3, "q") -> pro-p Iwahori Hecke algebra of the whole group."""
    return lambda kind, p, coeff: affine_algebra(kind, p, CoefficientField.parse(coeff))
