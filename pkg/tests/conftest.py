"""Shared fixtures.

The sp6 basis is expensive to compute from scratch, so every test run
shares one disk cache directory inside the repository.  The first run
pays the computation once; later runs load the cached basis in well
under a second.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from sp6kit.groebner import group_basis
from sp6kit.relations import build_relations

REPO_CACHE = Path(__file__).resolve().parent.parent / ".gb-cache"


@pytest.fixture(scope="session")
def cache_dir() -> str:
    REPO_CACHE.mkdir(exist_ok=True)
    return str(REPO_CACHE)


@pytest.fixture(scope="session", autouse=True)
def _cache_env(cache_dir):
    """Point the default cache location at the repo cache for subprocesses."""
    old = os.environ.get("SP6KIT_CACHE_DIR")
    os.environ["SP6KIT_CACHE_DIR"] = cache_dir
    yield
    if old is None:
        os.environ.pop("SP6KIT_CACHE_DIR", None)
    else:
        os.environ["SP6KIT_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def sp2_basis(cache_dir):
    return group_basis("sp2", cache_dir=cache_dir)


@pytest.fixture(scope="session")
def sp4_basis(cache_dir):
    return group_basis("sp4", cache_dir=cache_dir)


@pytest.fixture(scope="session")
def sp6_basis(cache_dir):
    return group_basis("sp6", cache_dir=cache_dir)


@pytest.fixture(scope="session")
def catalog():
    return build_relations()
