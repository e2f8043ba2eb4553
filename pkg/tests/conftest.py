import random

import pytest

from leafforge.distributions import foliated_genus_manifold, product_manifold
from leafforge.documents import load_document


@pytest.fixture
def foliated():
    return foliated_genus_manifold()


@pytest.fixture
def t2_sigma3():
    return product_manifold(3)


@pytest.fixture
def rng():
    return random.Random(20241015)


@pytest.fixture
def leaf_doc():
    return load_document("fixture:leaf_minimise")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
