import sympy
import pytest
from hypothesis import given

from conftest import field_elements, to_sympy
from sl2hodge.scalars import I, INV_SQRT2, ONE, SQRT2, ZERO, FieldElement, fe, format_scalar, parse_scalar


def same(x: FieldElement, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


@given(field_elements(), field_elements(), field_elements())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO and x * ONE == x


@given(field_elements(nonzero=True))
def test_inverse(x):
    assert x * x.inv() == ONE
    assert (ONE / x) == x.inv()


@given(field_elements(), field_elements())
def test_products_agree_with_symbolic_algebra(x, y):
    assert same(x * y, sympy.expand(to_sympy(x) * to_sympy(y)))
    assert same(x + y, to_sympy(x) + to_sympy(y))


@given(field_elements(), field_elements())
def test_conjugations_are_automorphisms(x, y):
    for conj in (FieldElement.conj_sqrt2, FieldElement.conj_i):
        assert conj(x * y) == conj(x) * conj(y)
        assert conj(x + y) == conj(x) + conj(y)
        assert conj(conj(x)) == x


@given(field_elements())
def test_norm_is_rational_and_multiplicative_with_conjugates(x):
    n = x.norm()
    prod = x * x.conj_i() * x.conj_sqrt2() * x.conj_i().conj_sqrt2()
    assert prod == fe(n)


@given(field_elements())
def test_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(field_elements())
def test_sqrt_of_a_square(x):
    sq = x * x
    if sq.is_rational():
        r = sq.sqrt()
        assert r * r == sq


def test_named_constants():
    assert SQRT2 * SQRT2 == fe(2)
    assert I * I == fe(-1)
    assert INV_SQRT2 * SQRT2 == ONE
    assert parse_scalar("-1 + 2*i*r2") == FieldElement(-1, 0, 0, 2)
    assert parse_scalar(" 1/2 * r2 ") == INV_SQRT2


def test_sqrt_outside_field_raises():
    with pytest.raises(ValueError):
        fe(3).sqrt()


@pytest.mark.parametrize("text", ["", "1/", "x", "2**r2", "i*i"])
def test_malformed_scalars(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
