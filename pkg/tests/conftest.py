from fractions import Fraction

from hypothesis import assume, settings, strategies as st

from g2homog import linalg
from g2homog.exterior import Form

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def forms(draw, dim=5, degree=None, max_terms=4):
    k = draw(st.integers(0, dim)) if degree is None else degree
    masks = [m for m in range(1 << dim) if bin(m).count("1") == k]
    chosen = draw(st.lists(st.sampled_from(masks), max_size=max_terms, unique=True)) if masks else []
    return Form(dim, {m: draw(small_fractions) for m in chosen})


@st.composite
def invertible_matrices(draw, n):
    m = [[Fraction(draw(st.integers(-2, 2))) for _ in range(n)] for _ in range(n)]
    assume(linalg.det(m) != 0)
    return m
