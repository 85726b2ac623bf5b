import os
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from fracture.graph import Graph, parse_edge_list, read_graph

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

POWERGRID_CANDIDATES = ("power.gml", "power.net", "USpowerGrid.net", "power.txt", "power.edges")


def find_power_grid() -> Path | None:
    env = os.environ.get("FRACTURE_POWERGRID")
    if env:
        return Path(env)
    for name in POWERGRID_CANDIDATES:
        if (DATA / name).exists():
            return DATA / name
    return None


@pytest.fixture(scope="session")
def power_grid():
    path = find_power_grid()
    if path is None or not path.exists():
        pytest.fail(
            "western-US power-grid dataset not found: set FRACTURE_POWERGRID or place "
            f"one of {', '.join(POWERGRID_CANDIDATES)} in {DATA}"
        )
    return read_graph(path)


@pytest.fixture
def path3():
    return parse_edge_list("0 1\n1 2")


@pytest.fixture
def triangle():
    return parse_edge_list("0 1\n1 2\n0 2")


@pytest.fixture
def star3():
    return parse_edge_list("0 1\n0 2\n0 3")


@pytest.fixture
def four_node():
    """Four nodes, one edge between the first two."""
    return read_graph(DATA / "four_node.net")


@pytest.fixture
def two_triangles():
    return parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3")


@st.composite
def graphs(draw, min_nodes=0, max_nodes=12):
    """Simple graphs with possibly non-contiguous ids."""
    n = draw(st.integers(min_nodes, max_nodes))
    ids = draw(st.lists(st.integers(0, 10_000), min_size=n, max_size=n, unique=True))
    pairs = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(ids, [p for p, keep in zip(pairs, chosen) if keep])
