import random

import pytest
from hypothesis import strategies as st

from matlength.fields import GF, QQ
from matlength.matrix import Matrix

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def matrices(n, field, lo=-3, hi=3):
    if field.p is None:
        elems = st.integers(lo, hi)
    else:
        elems = st.integers(0, field.p - 1)
    return st.lists(elems, min_size=n * n, max_size=n * n).map(lambda e: Matrix(n, field, e))


@st.composite
def generator_sets(draw, field=GF(5), max_n=3, max_size=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_size))
    return [draw(matrices(n, field)) for _ in range(k)]


def rand_matrix(rng, n, field, bound=3):
    if field.p is None:
        return Matrix(n, field, [rng.randint(-bound, bound) for _ in range(n * n)])
    return Matrix(n, field, [rng.randrange(field.p) for _ in range(n * n)])


@pytest.fixture
def rng():
    return random.Random(20240917)
