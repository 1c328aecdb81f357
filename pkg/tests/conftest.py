from __future__ import annotations

import numpy as np
import pytest

from hdxkit.complex import FaceFunction, build_product
from hdxkit.harness.sources import cube

from helpers import ACCEPTANCE_LINES


@pytest.fixture
def square():
    return build_product([[0.5, 0.5]] * 2)


@pytest.fixture
def cube3():
    return cube(3)


@pytest.fixture
def maj3(cube3):
    return FaceFunction(cube3, np.sign((1.0 - 2.0 * cube3.faces).sum(axis=1)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
