import numpy as np
import pytest

from discrete_yamabe import meshes


@pytest.fixture
def tet():
    return meshes.unit_metric(meshes.tetrahedron())


@pytest.fixture
def octa():
    return meshes.unit_metric(meshes.octahedron())


@pytest.fixture
def bipyramid():
    return meshes.unit_metric(meshes.double_pyramid(8))


@pytest.fixture(params=["tetrahedron", "octahedron", "double_pyramid"])
def mesh(request):
    return meshes.unit_metric(getattr(meshes, request.param)())


@pytest.fixture
def rng():
    return np.random.default_rng(20161015)


FAR_START = np.array([4.0, 4.0, 0.0, 0.0]) * np.log(2.0)


# Verdict lines collected by the acceptance suite, shown after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
