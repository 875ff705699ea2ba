"""Pytest configuration and fixtures."""
import pytest
import sys
from pathlib import Path

# Add src directory to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale test, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def patch_73():
    """(7,3)-regular triangulation, balls up to radius 2 complete."""
    from src.core.generators import regular_patch

    return regular_patch(7, 3, 3, core="vertex")


@pytest.fixture(scope="session")
def patch_73_tall():
    """(7,3) patch with balls up to radius 3 complete."""
    from src.core.generators import regular_patch

    return regular_patch(7, 3, 4, core="vertex")


@pytest.fixture(scope="session")
def patch_63():
    """(6,3) triangular lattice, balls up to radius 3 complete."""
    from src.core.generators import regular_patch

    return regular_patch(6, 3, 4, core="vertex")


@pytest.fixture(scope="session")
def patch_63_wide():
    """(6,3) lattice whose search region holds the ball of radius 6."""
    from src.core.generators import regular_patch

    return regular_patch(6, 3, 8, core="vertex")


@pytest.fixture(scope="session")
def regular_patches():
    """Height-4 vertex-core patches of seven regular tilings, keyed by (p, q)."""
    from src.core.generators import regular_patch

    degrees = [(6, 3), (4, 4), (3, 6), (7, 3), (3, 7), (4, 5), (5, 4)]
    return {(p, q): regular_patch(p, q, 4, core="vertex") for p, q in degrees}


@pytest.fixture(scope="session")
def patch_44():
    """(4,4) square grid around a vertex."""
    from src.core.generators import regular_patch

    return regular_patch(4, 4, 3, core="vertex")


def embed_drawing(points, edges, complete, outer):
    """Plane graph of a straight-line drawing; rotations sorted by angle."""
    import math

    from src.core.graph import build_plane_graph

    nbrs = {v: [] for v in range(len(points))}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rotations = []
    for v, (x, y) in enumerate(points):
        angle = {u: math.atan2(points[u][1] - y, points[u][0] - x) for u in nbrs[v]}
        rotations.append(sorted(nbrs[v], key=angle.__getitem__))
    return build_plane_graph(rotations, complete, outer=[outer])


def square_grid(width, height):
    """Square grid on [0, width] x [0, height]; border vertices incomplete.

    Vertex ``(x, y)`` has id ``y * (width + 1) + x``.
    """
    points = [(x, y) for y in range(height + 1) for x in range(width + 1)]
    index = {p: i for i, p in enumerate(points)}
    edges = [(index[(x, y)], index[(x + 1, y)]) for y in range(height + 1) for x in range(width)]
    edges += [(index[(x, y)], index[(x, y + 1)]) for y in range(height) for x in range(width + 1)]
    complete = [0 < x < width and 0 < y < height for x, y in points]
    return embed_drawing(points, edges, complete, (index[(0, 0)], index[(0, 1)]))


def grid_squares(g, width, cells):
    """Subgraph made of the unit squares with lower-left corners ``cells``."""
    from src.core.graph import face_graph

    def vid(x, y):
        return y * (width + 1) + x

    faces = [
        g.face_from_cycle([vid(x, y), vid(x + 1, y), vid(x + 1, y + 1), vid(x, y + 1)])
        for x, y in cells
    ]
    return face_graph(g, faces)


@pytest.fixture(scope="session")
def pinched_subgraph():
    """Three disks on 21 boundary vertices with a pendant tree, a bridge and a pinched hole.

    Vertices 0-20 form S; 21-26 are an incomplete frame joined to 15 and 5.
    The walks are bS = [0..5, 4, 6, 4, 3, 7..11, 8, 7, 12, 0, 13..17, 0]
    and [15, 18, 19, 20, 15]; b_iS = [0..3, 7, 12, 0],
    [0, 13, 14, 15, 18, 19, 20, 15, 16, 17, 0] and [8..11, 8].
    """
    from src.core.graph import Subgraph

    points = [
        (0, 0), (-1.5, -1), (-1.5, -3), (0, -4), (0, -5), (-0.5, -6), (0.5, -6),
        (1.5, -3), (3, -3), (4, -4), (5, -3), (4, -2), (1.5, -1),
        (1.5, 1), (1.5, 3), (0, 4), (-1.5, 3), (-1.5, 1),
        (0.5, 3.5), (0, 3), (-0.5, 3.5),
        (0, 6), (7, 6), (7, -8), (0, -8), (-3, -8), (-3, 6),
    ]
    s_edges = [
        (0, 1), (1, 2), (2, 3), (3, 7), (7, 12), (12, 0),
        (3, 4), (4, 5), (4, 6), (7, 8),
        (8, 9), (9, 10), (10, 11), (11, 8),
        (0, 13), (13, 14), (14, 15), (15, 16), (16, 17), (17, 0),
        (15, 18), (18, 19), (19, 20), (20, 15), (14, 18), (16, 20), (19, 0),
    ]
    frame = [(21, 22), (22, 23), (23, 24), (24, 25), (25, 26), (26, 21), (15, 21), (5, 24)]
    g = embed_drawing(points, s_edges + frame, [v < 21 for v in range(27)], (21, 22))
    cycles = [
        [0, 1, 2, 3, 7, 12], [8, 9, 10, 11],
        [14, 15, 18], [15, 16, 20], [0, 13, 14, 18, 19], [0, 19, 20, 16, 17],
    ]
    faces = [g.face_from_cycle(c) for c in cycles]
    return g, Subgraph.build(g, range(21), s_edges, faces)


@pytest.fixture(scope="session")
def dumbbell():
    """Two 2x2 blocks of squares joined by one square, in a square grid."""
    g = square_grid(7, 4)
    cells = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (4, 1), (5, 1), (4, 2), (5, 2)]
    return g, grid_squares(g, 7, cells)


@pytest.fixture(scope="session")
def square_annulus():
    """Ring of eight squares around a missing square."""
    g = square_grid(5, 5)
    cells = [(x, y) for x in (1, 2, 3) for y in (1, 2, 3) if (x, y) != (2, 2)]
    return g, grid_squares(g, 5, cells)


@pytest.fixture
def ball():
    """Factory for combinatorial balls around the root."""
    from src.core.graph import combinatorial_ball

    def make(g, radius):
        return combinatorial_ball(g, g.root, radius)

    return make


@pytest.fixture
def single_triangle():
    """One triangle whose vertices are all incomplete."""
    from src.core.graph import build_plane_graph

    return build_plane_graph([[1, 2], [2, 0], [0, 1]], [False] * 3, outer=[(1, 0)])


@pytest.fixture
def graph_file(tmp_path, patch_73):
    """patch_73 written as a tessera-graph-v1 file."""
    from src.core.serialization import write_graph

    path = tmp_path / "graph.json"
    write_graph(patch_73, path)
    return path


@pytest.fixture
def temp_config():
    """Fixture providing a temporary configuration."""
    from src.core.config import RunConfig

    return RunConfig(
        command="generate",
        params={"p": 7, "q": 3, "height": 2},
        seed=1,
        threads=1,
    )


@pytest.fixture
def temp_logger():
    """Fixture providing a temporary logger."""
    from src.utils.logger import Logger

    return Logger(verbose=False)
