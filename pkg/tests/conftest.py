import functools

import pytest
from hypothesis import strategies as st

from dtsize.dataset import Dataset, parse_csv
from dtsize.generate import random_corpus

CORPUS_SEED = 2024
CORPUS_SIZE = 240


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(random_corpus(CORPUS_SEED, CORPUS_SIZE))


@pytest.fixture
def ds_pair():
    return parse_csv("1,red\n2,blue")


@pytest.fixture
def ds_uniform():
    return parse_csv("1,red\n2,red")


@pytest.fixture
def ds_xor():
    return parse_csv("0,0,r\n1,1,r\n0,1,b\n1,0,b")


@pytest.fixture
def ds_3class():
    return parse_csv("1,c1\n2,c2\n3,c3")


@st.composite
def small_datasets(draw, max_n=7, max_d=3, max_k=3, max_coord=4):
    d = draw(st.integers(1, max_d))
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    points = draw(st.lists(st.tuples(*[st.integers(0, max_coord)] * d), min_size=n, max_size=n))
    labels = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    first = {}
    for p, lab in zip(points, labels):
        first.setdefault(p, lab)
    return Dataset.from_rows(points, [f"c{first[p]}" for p in points])


ACCEPTANCE = []  # (criterion, passed, detail), filled by test_acceptance


def record(criterion: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.append((criterion, passed, detail))
    print(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")
