import random

import pytest
from hypothesis import strategies as st

from chowlam.polyengine import Polynomial, VarTable

XYZ = VarTable(["x", "y", "z"])


@st.composite
def polys(draw, table=XYZ, max_terms=5, max_deg=3):
    n = len(table)
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * n),
        st.fractions(min_value=-20, max_value=20, max_denominator=6),
        max_size=max_terms,
    ))
    return Polynomial(table, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)
