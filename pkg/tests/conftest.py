import functools

import pytest

from graphminor.families import enumerate_graphs


@functools.lru_cache(maxsize=None)
def corpus(max_edges: int, simple_only: bool = False, include_empty: bool = False):
    return tuple(enumerate_graphs(max_edges, simple_only, include_empty))


@pytest.fixture(scope="session")
def small_graphs():
    """Every connected graph with at most 3 edges, plus the one-vertex graph."""
    return corpus(3, include_empty=True)
