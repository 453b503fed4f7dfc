import numpy as np
import pytest

from graphprox import WeightedGraph, build_matrices, builtin_graph

from oracles import random_connected_graph


@pytest.fixture(scope="session")
def path4():
    return builtin_graph("paper:path4")


@pytest.fixture(scope="session")
def path4_gm(path4):
    return build_matrices(path4)


@pytest.fixture(scope="session")
def path5():
    return builtin_graph("paper:path5")


@pytest.fixture(scope="session")
def path5_gm(path5):
    return build_matrices(path5)


@pytest.fixture(scope="session")
def triangle():
    w = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
    return WeightedGraph(3, w, name="triangle")


@pytest.fixture(scope="session")
def triangle_gm(triangle):
    return build_matrices(triangle)


@pytest.fixture(scope="session")
def corpus(path4, path5, triangle):
    """path4, path5, the unit triangle, and 20 seeded random connected
    graphs with n <= 7 and weights in (0, 3]."""
    rng = np.random.default_rng(20260808)
    graphs = [path4, path5, triangle]
    for idx in range(20):
        n = 3 + idx % 5  # sizes 3..7
        graphs.append(random_connected_graph(rng, n, name=f"random{idx}"))
    return [(g, build_matrices(g)) for g in graphs]
