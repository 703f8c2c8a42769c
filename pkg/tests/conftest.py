import os

import pytest

from ratcybe.algebra import LieAlgebra, killing_form
from ratcybe.constructors import heisenberg_algebra
from ratcybe.ooperator import OOperator

SAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "samples")


def make_sl2():
    # basis e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h
    return LieAlgebra.from_brackets(("e", "f", "h"), [(2, 0, 0, 2), (2, 1, 1, -2), (0, 1, 2, 1)])


def make_aff1():
    return LieAlgebra.from_brackets(("x", "y"), [(0, 1, 1, 1)])


def jordanian_mu():
    # mu(h u^-1) = 8e, mu(f u^-1) = -4h
    return OOperator.from_entries("adjoint", 3, 3, [(2, 0, 0, 0, 8), (1, 0, 2, 0, -4)])


@pytest.fixture
def sl2():
    return make_sl2()


@pytest.fixture
def heis():
    return heisenberg_algebra()


@pytest.fixture
def aff1():
    return make_aff1()


@pytest.fixture
def sl2_killing(sl2):
    return killing_form(sl2)


@pytest.fixture
def samples():
    return os.path.abspath(SAMPLES)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
