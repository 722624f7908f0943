import pytest

from sl2hodge.cohomology import build_complex, cohomology_dims
from sl2hodge.lie import an_in_sl2, n_in_an, sl2
from sl2hodge.modules import character, restrict, standard_sl2, tensor, trivial
from sl2hodge.scalars import INV_SQRT2
from sl2hodge.spectral import (build_filtration, check_convergence, check_e1_isomorphism,
                               check_page_homology, e1_expected, ideal_e2_dims, limit_sheet,
                               random_modules, sheet, totals)


@pytest.fixture(scope="module")
def trivial_filtration():
    return build_filtration(an_in_sl2(), trivial(sl2()))


def test_first_sheet_of_trivial_coefficients(trivial_filtration):
    s = sheet(trivial_filtration, 1)
    assert s.dims == {(0, 0): 1, (0, 1): 1, (0, 2): 0, (1, 0): 0, (1, 1): 1, (1, 2): 1}


def test_only_possible_differential_is_nonzero(trivial_filtration):
    s = sheet(trivial_filtration, 1)
    assert s.rank(0, 1) == 1
    assert sum(s.rank(p, q) for (p, q) in s.dims) == 1


def test_limit_totals_of_trivial_coefficients(trivial_filtration):
    assert totals(limit_sheet(trivial_filtration), 3) == [1, 0, 0, 1]


def test_filtration_is_decreasing_and_exhaustive(trivial_filtration):
    fc = trivial_filtration
    for n in range(4):
        sizes = [len(fc.F(p, n)) for p in range(n + 2)]
        assert sizes[0] == fc.dim(n)
        assert sizes == sorted(sizes, reverse=True)
        assert sizes[-1] == 0


def test_render_draws_q_upwards(trivial_filtration):
    text = sheet(trivial_filtration, 1).render()
    lines = text.splitlines()
    assert lines[0].startswith("q=2")
    assert lines[2].startswith("q=0")


def test_sheet_index_must_be_positive(trivial_filtration):
    with pytest.raises(ValueError):
        sheet(trivial_filtration, 0)


@pytest.mark.parametrize("v", [trivial(sl2()), standard_sl2(), tensor(standard_sl2(), standard_sl2())],
                         ids=["C", "C2", "C2xC2"])
def test_e1_matches_subalgebra_cohomology(v):
    got = sheet(build_filtration(an_in_sl2(), v), 1).dims
    assert got == e1_expected(an_in_sl2(), v)


@pytest.mark.parametrize("k", range(10))
def test_random_modules_converge(k):
    sub, v = random_modules()[k]
    r = check_convergence(sub, v)
    assert r.passed, r.details


def test_random_modules_are_reproducible():
    a = [(s.algebra.name, m.matrices) for s, m in random_modules(3)]
    b = [(s.algebra.name, m.matrices) for s, m in random_modules(3)]
    assert a == b
    assert len(a) == 10


def test_page_homology_for_a_nontrivial_module():
    assert check_page_homology(an_in_sl2(), standard_sl2()).passed
    assert check_e1_isomorphism(n_in_an(), character(INV_SQRT2)).passed


@pytest.mark.parametrize("lam", [0, INV_SQRT2, 1])
def test_ideal_second_sheet_totals_match_cohomology(lam):
    sub = n_in_an()
    v = tensor(character(lam), restrict(standard_sl2(), an_in_sl2()))
    e2 = ideal_e2_dims(sub, v)
    want = cohomology_dims(build_complex(sub.parent, v))
    got = [sum(e2.get((p, n - p), 0) for p in (0, 1)) for n in range(3)]
    assert got == want
