import random

import pytest

from grtilt.bott import GrBundle


def random_weight(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> tuple:
    return tuple(sorted((rng.randint(lo, hi) for _ in range(n)), reverse=True))


def random_gr_bundle(rng: random.Random, N: int, max_terms: int = 2) -> GrBundle:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        alpha = random_weight(rng, 2)
        beta = random_weight(rng, N - 2, -2, 2)
        terms.append((alpha, beta, rng.randint(1, 2)))
    return GrBundle.make(2, N, terms)


@pytest.fixture
def rng():
    return random.Random(20240817)
