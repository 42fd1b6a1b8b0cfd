"""Shared helpers: seeded random element generators.

Sparse random inputs keep the exact-arithmetic property tests fast while
still exercising generic coefficients.
"""

import random
from fractions import Fraction

from kvtower import LieElt, TAutElt, TDer, lyndon_words


def rng_for(name):
    return random.Random(f"kvtower:{name}")


def random_fraction(rng):
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 2, 3])
    return Fraction(num, den)


def random_lie(rng, cap, terms=3, min_degree=1):
    pool = [w for d in range(min_degree, cap + 1) for w in lyndon_words(d)]
    coeffs = {}
    for w in rng.sample(pool, min(terms, len(pool))):
        coeffs[w] = random_fraction(rng)
    return LieElt(cap, coeffs)


def random_tder(rng, cap, terms=2, min_degree=1):
    return TDer(
        random_lie(rng, cap, terms, min_degree),
        random_lie(rng, cap, terms, min_degree),
    )


def random_taut(rng, cap, terms=2, min_degree=1):
    return TAutElt(
        random_lie(rng, cap, terms, min_degree),
        random_lie(rng, cap, terms, min_degree),
    )
