import random

import pytest

from planecurves.curve import PlaneCurve, monomials
from planecurves.field import FiniteField

FIELD_PARAMS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1),
                7: (7, 1), 8: (2, 3), 9: (3, 2)}


def field_for(q: int) -> FiniteField:
    p, k = FIELD_PARAMS[q]
    return FiniteField(p, k)


def random_curve(ctx, degree: int, rng: random.Random) -> PlaneCurve:
    """A uniformly random nonzero curve of the given degree."""
    while True:
        terms = {m: rng.randrange(ctx.q) for m in monomials(degree)}
        terms = {m: c for m, c in terms.items() if c}
        if terms:
            return PlaneCurve(ctx, degree, terms)


@pytest.fixture
def gf4():
    return field_for(4)


@pytest.fixture
def gf5():
    return field_for(5)
