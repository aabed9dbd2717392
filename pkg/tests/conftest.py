import itertools
from functools import lru_cache

import pytest

from finsemi import catalog
from finsemi.enumeration import enumerate_semigroups
from finsemi.table import CayleyTable

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def corpus(n: int) -> tuple:
    """One table per isomorphism class of order n."""
    return tuple(enumerate_semigroups(n))


@lru_cache(maxsize=None)
def labeled(n: int) -> tuple:
    return tuple(enumerate_semigroups(n, up_to_iso=False))


def corpus_upto(n: int):
    for k in range(1, n + 1):
        yield from corpus(k)


def brute_force_associative(rows) -> bool:
    n = len(rows)
    return all(
        rows[rows[a][b]][c] == rows[a][rows[b][c]]
        for a, b, c in itertools.product(range(n), repeat=3)
    )


def all_binary_tables(n: int):
    for flat in itertools.product(range(n), repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]


def near_miss_order5() -> CayleyTable:
    """S1 = {3, 4} right zero, S0 = N3 on {0, 1, 2} (1*1 = 2), every S0/S1 product 0."""
    rows = [[0] * 5 for _ in range(5)]
    rows[1][1] = 2
    rows[3][3], rows[3][4], rows[4][3], rows[4][4] = 3, 4, 3, 4
    return CayleyTable.from_rows(rows)


@pytest.fixture
def z4():
    return catalog.cyclic_group(4)


@pytest.fixture
def rz2():
    return catalog.right_zero(2)


@pytest.fixture
def lz2():
    return catalog.left_zero(2)


@pytest.fixture
def n3():
    return catalog.n3()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
