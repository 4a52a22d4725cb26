import pytest

from sheafharmonics import build_graph
from sheafharmonics.cli import fig4_triple


@pytest.fixture
def fig2():
    """Four nodes u, v, w, x joined by edges (u,w), (v,w), (w,x)."""
    return build_graph(["u", "v", "w", "x"], [("u", "w"), ("v", "w"), ("w", "x")])


@pytest.fixture
def fig4():
    """The star demo triple with features (1, 4, 4, 4, 8)."""
    return fig4_triple()


@pytest.fixture
def path_abc():
    return build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def triangle():
    return build_graph(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")])
