from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2hodge.assembly import (Block, Coefficient, SpectrumError, SpectrumTable, assembled_dims,
                               assembly_crosscheck, classify_lambda, crosscheck_coefficients,
                               foliation_cohomology_dims, l2_multiplicities, parse_coefficient,
                               parse_spectrum, projection_image_dims, quotient_weight,
                               restriction_report, spectral_lambdas, spectral_parameter,
                               synthetic_spectrum, table_checks)
from sl2hodge.cohomology import euler_characteristic
from sl2hodge.scalars import I, INV_SQRT2, SQRT2, fe

EMPTY2 = SpectrumTable(2)


def dims(coeff: str, st_=EMPTY2):
    return list(foliation_cohomology_dims(parse_coefficient(coeff), st_).dims)


def test_multiplicities_of_the_regular_representation():
    blocks = dict((b.label, m) for b, m in l2_multiplicities(SpectrumTable(3), max_n=3))
    assert blocks == {"trivial": 1, "D_1^+": 3, "D_1^-": 3, "D_2^+": 6, "D_2^-": 6,
                      "D_3^+": 10, "D_3^-": 10}


def test_spectral_blocks_follow_the_table():
    st_ = synthetic_spectrum(2)
    spectral = [(b.nu, m) for b, m in l2_multiplicities(st_) if b.kind == "spectral"]
    assert spectral == list(st_.eigenvalues)
    assert Block("spectral", nu=Fraction(1, 4)).casimir() == Fraction(-1, 8)
    assert Block("discrete", 3, 1).casimir() == 3


@pytest.mark.parametrize("lam, kind", [
    (0, "trivial"), (INV_SQRT2, "integral"), (-INV_SQRT2, "integral"), (-3 * INV_SQRT2, "integral"),
    (3 * INV_SQRT2, "zero"), (1, "zero"), (I, "zero"),
])
def test_classification_without_spectrum(lam, kind):
    assert classify_lambda(lam, EMPTY2).kind == kind


def test_spectral_classification():
    st_ = synthetic_spectrum(2)
    for nu, m in st_.eigenvalues:
        for lam in spectral_lambdas(nu):
            c = classify_lambda(lam, st_)
            assert (c.kind, c.nu, c.multiplicity) == ("spectral", nu, m)
            assert c.decided_exactly


def test_spectral_lambdas():
    assert spectral_lambdas(Fraction(2, 9)) == [SQRT2 / 3, SQRT2 / 6]
    assert spectral_lambdas(Fraction(1, 4)) == [INV_SQRT2 / 2]
    assert len(spectral_lambdas(Fraction(5, 2))) == 2
    assert spectral_lambdas(Fraction(7)) == []


@given(st.fractions(min_value=Fraction(1, 30), max_value=20, max_denominator=30))
@settings(max_examples=60, deadline=None)
def test_spectral_parameter_inverts_the_roots(nu):
    for lam in spectral_lambdas(nu):
        assert spectral_parameter(lam) == fe(nu)


@pytest.mark.parametrize("coeff, want", [
    ("c:0", [1, 5, 4]), ("c:1/2*r2", [0, 1, 1]), ("c:-1/2*r2", [0, 6, 6]),
    ("c:-r2", [0, 10, 10]), ("an", [0, 4, 4]), ("sl2", [0, 10, 10]), ("c:1", [0, 0, 0]),
])
def test_genus_two_table(coeff, want):
    assert dims(coeff) == want


def test_spectral_coefficient_carries_a_note():
    st_ = synthetic_spectrum(2)
    t = foliation_cohomology_dims(parse_coefficient("c:1/3*r2"), st_)
    assert t.dims == (0, 1, 1)
    assert t.notes and t.synthetic_spectrum


@given(st.integers(2, 12))
def test_tables_have_zero_euler_characteristic_away_from_trivial(g):
    st_ = SpectrumTable(g)
    for coeff in ("c:1/2*r2", "c:-1/2*r2", "an", "sl2"):
        assert euler_characteristic(dims(coeff, st_)) == 0
    assert euler_characteristic(dims("c:0", st_)) == 0


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_block_sums_match_closed_forms(g):
    st_ = synthetic_spectrum(g)
    for tag in crosscheck_coefficients(st_):
        assert assembled_dims(tag, st_) == list(foliation_cohomology_dims(tag, st_).dims), tag.label
    assert assembly_crosscheck(st_).passed


def test_projection_image_and_quotient_weight():
    assert projection_image_dims(1) == (0, 1, 1)
    assert projection_image_dims(-1) == (0, 1, 1)
    assert quotient_weight() == -INV_SQRT2


@pytest.mark.parametrize("g", [2, 3, 7])
def test_restriction_report(g):
    r = restriction_report(g)
    assert r.bundle_dims[2] == 2 * g
    assert r.foliation_dims[2] == 2 * g
    assert r.surjective_in_degree_two


def test_table_checks_pass():
    assert all(r.passed for r in table_checks())


def test_parse_spectrum():
    st_ = parse_spectrum("# nu m\n2/9 1\n\n5/2 3  # complex pair\n", 3)
    assert st_.eigenvalues == ((Fraction(2, 9), 1), (Fraction(5, 2), 3))
    assert not st_.synthetic


@pytest.mark.parametrize("text, fragment", [
    ("1/4", "line 1"), ("1/4 two", "line 1"), ("x 1", "line 1"), ("1 1\nr2 1", "line 2"),
    ("-1 1", "not positive"), ("1 0", "not positive"), ("1 1\n1 2", "twice"),
])
def test_parse_spectrum_errors(text, fragment):
    with pytest.raises(SpectrumError, match=fragment):
        parse_spectrum(text, 2)


def test_genus_must_be_at_least_two():
    with pytest.raises(SpectrumError):
        SpectrumTable(1)


@pytest.mark.parametrize("text", ["x", "c", "c:", "ad"])
def test_parse_coefficient_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_coefficient(text)


def test_coefficient_labels():
    assert parse_coefficient("an") == Coefficient("an")
    assert parse_coefficient("c:0").label == "c:0"
