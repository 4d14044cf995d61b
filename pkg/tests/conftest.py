import numpy as np
import pytest

from graph_frames import Frame

# explicit frames from the worked examples
C4_FRAME = [(1, 1, 0), (-1, 0, 1), (1, -1, 0), (-1, 0, -1)]
STAR_FRAME = [(1, 1, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]

C4_LAPLACIAN = np.array([[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]], dtype=float)
STAR_LAPLACIAN = np.array([[3, -1, -1, -1], [-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1]], dtype=float)


@pytest.fixture
def c4_frame():
    return Frame(C4_FRAME)


@pytest.fixture
def star_frame():
    return Frame(STAR_FRAME)


_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
