import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import GAMMA0, GAMMA1  # noqa: E402

from matchlet import DataSequence, MeyerTargetSequence, design_matched, design_meyer  # noqa: E402


@pytest.fixture(scope="session")
def psi_half():
    return design_matched(DataSequence.finite([1.0, 0.5]))


@pytest.fixture(scope="session")
def psi_unit():
    return design_matched(DataSequence.finite([1.0]))


@pytest.fixture(scope="session")
def meyer_two():
    return design_meyer(MeyerTargetSequence([GAMMA0, GAMMA1]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for lines in mod.RESULTS:
        for line in lines:
            terminalreporter.write_line(line)
