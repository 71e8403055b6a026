"""Hypothesis strategies for random class sets on a twelfth-of-pi lattice."""
from fractions import Fraction

from hypothesis import strategies as st

from sl2classes.class_algebra import Atom, ClassSet, HypSet

_PAR = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
_POS = [Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(7)]


@st.composite
def atoms(draw):
    a = Fraction(draw(st.integers(0, 24)), 12)
    b = Fraction(draw(st.integers(0, 24)), 12)
    lo, hi = min(a, b), max(a, b)
    return Atom(lo, draw(st.booleans()), hi, draw(st.booleans()))


@st.composite
def hypsets(draw, sign):
    vals = frozenset(sign * v for v in draw(st.sets(st.sampled_from(_POS), max_size=3)))
    return HypSet(draw(st.booleans()), vals)


@st.composite
def class_sets(draw):
    return ClassSet(
        draw(st.booleans()),
        draw(st.booleans()),
        frozenset(draw(st.sets(st.sampled_from(_PAR)))),
        tuple(draw(st.lists(atoms(), max_size=4))),
        draw(hypsets(1)),
        draw(hypsets(-1)),
    )
