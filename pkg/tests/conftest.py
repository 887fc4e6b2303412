import os
from fractions import Fraction

import pytest
from hypothesis import settings

from hypermatch import Hypergraph

settings.register_profile("suite", deadline=None, max_examples=40)
settings.register_profile("intense", deadline=None, max_examples=300)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "suite"))

FANO_LINES = [
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
]


@pytest.fixture
def fano():
    return Hypergraph(7, 3, FANO_LINES, name="fano")


HALF = Fraction(1, 2)
