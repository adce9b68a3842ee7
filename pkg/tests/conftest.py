from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ogkit import fixtures
from ogkit.enumeration import random_optiongraph

PROBABILITIES = (Fraction(1, 5), Fraction(1, 3), Fraction(1, 2))


def random_corpus(count: int, max_n: int = 7, seed: int = 0):
    """Seeded random optiongraphs with 1..max_n positions and mixed densities."""
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(1, max_n)
        prob = rng.choice(PROBABILITIES)
        yield random_optiongraph(n, prob, seed=seed * 100_003 + k)


@pytest.fixture(scope="session")
def figs():
    return fixtures.load_all()


@pytest.fixture(scope="session")
def corpus():
    return list(random_corpus(500))
