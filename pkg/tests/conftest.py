from fractions import Fraction

import sympy
from hypothesis import strategies as st

from sl2hodge.scalars import FieldElement

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@st.composite
def field_elements(draw, nonzero=False):
    x = FieldElement(*(draw(small_fractions) for _ in range(4)))
    if nonzero and x.is_zero():
        x = FieldElement(1)
    return x


def to_sympy(x: FieldElement):
    a, b, c, d = (sympy.Rational(f.numerator, f.denominator) for f in x.coords)
    r2 = sympy.sqrt(2)
    return a + b * r2 + c * sympy.I + d * sympy.I * r2


def sympy_matrix(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.rows])


def as_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))
