import random
from pathlib import Path

import pytest

from scripts.corpus import generate_corpus
from scripts.exact_linalg import Mat

FIXTURE_DIR = Path(__file__).resolve().parent.parent / 'data' / 'fixtures'

CORPUS_SEED = 20240611


def mat(rows):
    return Mat.from_rows(rows)


@pytest.fixture
def jordan_block():
    return mat([[1, 1], [0, 1]])


@pytest.fixture
def rotation():
    return mat([[0, -1], [1, 0]])


@pytest.fixture
def scalar_two():
    return mat([[2, 0], [0, 2]])


@pytest.fixture
def zero_two():
    return Mat.zeros(2, 2)


@pytest.fixture
def shift_three_plus_zero():
    return mat([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


@pytest.fixture
def mixed_parts():
    """S = diag(0, 0, 3) with a length-2 chain inside ker S."""
    return mat([[0, 1, 0], [0, 0, 0], [0, 0, 3]])


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope='session')
def corpus():
    return generate_corpus(seed=CORPUS_SEED, count=200, max_dim=6, bound=3)


@pytest.fixture
def fixture_path():
    def _path(name):
        return str(FIXTURE_DIR / name)
    return _path
