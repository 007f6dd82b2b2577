"""Cached per-fixture builders shared across test modules."""

from functools import lru_cache

from cubemill.dual import build_dual
from cubemill.fixtures import fixture
from cubemill.folding import mirrors


@lru_cache(maxsize=None)
def dual_of(name):
    return build_dual(fixture(name).complex)


@lru_cache(maxsize=None)
def mirror_list(name):
    f = fixture(name)
    return tuple(mirrors(f.complex, f.labels))
