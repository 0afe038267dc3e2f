import sys

import pytest

from twistdet import (
    GroupAlgebra,
    IntegersMod,
    RationalField,
    RationalMatrixRing,
    SeriesRing,
    TruncatedFreeAlgebra,
    cyclic_group,
)


@pytest.fixture
def qq():
    return RationalField()


@pytest.fixture
def z6():
    return IntegersMod(6)


@pytest.fixture
def m2():
    ring = RationalMatrixRing(2)
    ring.register_conjugation("swap", [[0, 1], [1, 0]])
    return ring


@pytest.fixture
def qc2():
    return GroupAlgebra(cyclic_group(2))


@pytest.fixture
def qc4():
    ring = GroupAlgebra(cyclic_group(4))
    ring.register_group_automorphism("inv", [0, 3, 2, 1])
    return ring


@pytest.fixture
def free_yz():
    ring = TruncatedFreeAlgebra(("y", "z"), 2)
    ring.register_generator_permutation("flip", [1, 0])
    return ring


def one_letter(coeff, order, twist=None):
    tw = {"x": twist} if twist else None
    return SeriesRing(coeff, alphabet=("x",), twist=tw, order=order)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and getattr(mod, "VERDICTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.VERDICTS:
            terminalreporter.write_line(line)
