"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=7),
)
nonzero_rationals = rationals.filter(lambda x: x != 0)
