"""Shared helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from flatcheck.rings import PolyRing


@pytest.fixture
def qxy():
    return PolyRing(("x", "y"))


@pytest.fixture
def qxyz():
    return PolyRing(("x", "y", "z"))


def random_poly(ring, rng, max_terms=4, max_deg=3, max_coeff=5):
    """Small random polynomial; may be zero."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
        coeff = Fraction(rng.randint(-max_coeff, max_coeff))
        if coeff:
            terms[exps] = coeff
    f = ring.zero()
    for exps, c in terms.items():
        f = f + ring.monomial(exps, c)
    return f


def nonzero_random_poly(ring, rng, **kw):
    while True:
        f = random_poly(ring, rng, **kw)
        if not f.is_zero():
            return f


def seeded(seed):
    return random.Random(seed)
