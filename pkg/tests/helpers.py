"""Random inputs shared by the property tests and the acceptance suite."""

import random

from hypothesis import strategies as st

from capelli.polynomial import Polynomial, mono_from, xvar
from capelli.weyl import WeylElement

GRID2 = [xvar(i, j) for i in (1, 2) for j in (1, 2)]


def _random_mono(rng, variables, degree):
    exps = {}
    for _ in range(degree):
        v = rng.choice(variables)
        exps[v] = exps.get(v, 0) + 1
    return mono_from(exps)


def random_polynomial(rng, variables=GRID2, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = _random_mono(rng, variables, rng.randint(0, max_degree))
        terms[mono] = rng.randint(-5, 5)
    return Polynomial(terms)


def random_weyl(rng, variables=GRID2, max_degree=3, max_terms=3):
    """Terms c * x^a d^b with total degree |a| + |b| <= max_degree."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0, max_degree)
        k = rng.randint(0, total)
        key = (_random_mono(rng, variables, k), _random_mono(rng, variables, total - k))
        terms[key] = rng.randint(-4, 4)
    return WeylElement(terms)


def seeded(seed):
    return random.Random(seed)


@st.composite
def polynomials(draw, variables=GRID2, max_degree=3):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_polynomial(rng, variables, max_degree)


@st.composite
def weyl_elements(draw, variables=GRID2, max_degree=3):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_weyl(rng, variables, max_degree)

