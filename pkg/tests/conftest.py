import random
from fractions import Fraction

import pytest

from wblow.ring import Poly

V2 = ("x", "y")
V3 = ("x", "y", "z")


def random_poly(rng: random.Random, variables, max_degree: int = 3,
                max_terms: int = 4, allow_zero: bool = True) -> Poly:
    terms = {}
    lower = 0 if allow_zero else 1
    for _ in range(rng.randint(lower, max_terms)):
        exponent = [0] * len(variables)
        for _ in range(rng.randint(0, max_degree)):
            exponent[rng.randrange(len(variables))] += 1
        key = tuple(exponent)
        terms[key] = terms.get(key, 0) + Fraction(rng.randint(-4, 4))
    return Poly(variables, {k: v for k, v in terms.items() if v})


def random_nonzero_poly(rng, variables, max_degree=3, max_terms=4) -> Poly:
    while True:
        f = random_poly(rng, variables, max_degree, max_terms, allow_zero=False)
        if not f.is_zero():
            return f


@pytest.fixture
def rng():
    return random.Random(987654321)
