"""Acceptance criteria, one test each.

Every test starts from cold caches, computes an exact integer residual
(zero means pass), times itself against a fixed budget and prints one
summary line.  Expected values are frozen here rather than taken from the
package.
"""

import sys
import time

import pytest

from sl2hodge.scalars import I, INV_SQRT2, SQRT2, ZERO, fe


def _clear_caches():
    for name, mod in list(sys.modules.items()):
        if not name.startswith("sl2hodge"):
            continue
        for obj in list(vars(mod).values()):
            clear = getattr(obj, "cache_clear", None)
            if callable(clear) and getattr(obj, "__module__", None) == name:
                clear()


def _criterion(number, title, limit, compute, capsys):
    _clear_caches()
    start = time.perf_counter()
    residual, detail = compute()
    elapsed = time.perf_counter() - start
    ok = residual == 0 and elapsed < limit
    line = (f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {title}  residual={residual}"
            f"  time={elapsed:.3f}s (limit {limit}s)")
    if detail:
        line += f"  {detail}"
    with capsys.disabled():
        print("\n" + line)
    assert residual == 0, line
    assert elapsed < limit, line


def _size(x):
    return x.support_size()


# --- 1 -----------------------------------------------------------------------------

def _fake_hodge():
    from sl2hodge.algebra.core import anticommutator
    from sl2hodge.algebra.standard import ambient_an, casimir
    from sl2hodge.identities import an_elements

    amb = ambient_an()
    _, u, v = amb.factors
    e = an_elements()
    h = v["H"]
    rhs = amb.tensor(1, casimir(u), 1) + amb.tensor(1, 1, -(h * h) + h.scale(INV_SQRT2))
    main = _size(anticommutator(e["d_fake"], e["delta_fake"]) - rhs)
    square = _size(e["delta_fake"] * e["delta_fake"])
    return main + square, f"main={main} square={square}"


def test_criterion_01_fake_hodge_identity(capsys):
    _criterion(1, "an-ambient Hodge identity and square-zero codifferential", 1.0, _fake_hodge, capsys)


# --- 2 -----------------------------------------------------------------------------

def _clifford_laplacian():
    from sl2hodge.algebra.clifford import lie_derivative_hat
    from sl2hodge.algebra.core import anticommutator
    from sl2hodge.algebra.standard import clifford_an, dstar_an

    cl = clifford_an()
    ds = dstar_an()
    res = anticommutator(ds, cl.transpose(ds)) + lie_derivative_hat(cl, "H").scale(INV_SQRT2)
    return _size(res), f"clifford_dim={len(cl.spin(cl.unit()).rows) ** 2}"


def test_criterion_02_clifford_laplacian(capsys):
    _criterion(2, "d*d*^T + d*^T d* + L_H/sqrt2 = 0 in Cl(an + an*)", 1.0, _clifford_laplacian, capsys)


# --- 3 -----------------------------------------------------------------------------

def _sl2_ambient():
    from sl2hodge.algebra.core import anticommutator
    from sl2hodge.algebra.standard import ad_R, ambient_sl2, casimir
    from sl2hodge.identities import sl2_elements

    amb = ambient_sl2()
    cl, u, v = amb.factors
    t = amb.tensor
    e = sl2_elements()
    d, delta = e["d"], e["delta"]
    main = _size(anticommutator(d, delta) - (t(1, casimir(u), 1) - t(1, 1, casimir(v))))

    def both(x):
        return t(1, u[x], 1) + t(1, 1, v[x])
    expected_sq = (t(cl["E"] * cl["H"], 1, 1) * both("F") + t(cl["H"] * cl["F"], 1, 1) * both("E")
                   + t(cl["F"] * cl["E"], 1, 1) * both("H")).scale(INV_SQRT2)
    sq = delta * delta
    square = _size(sq - expected_sq) + (0 if _size(sq) else 1)
    rot = t(cl["E"] - cl["F"], 1, 1)
    invariance = _size(ad_R(delta))
    anti = _size(anticommutator(delta, rot))
    total = main + square + invariance + anti
    return total, f"main={main} delta_sq={square} adR={invariance} anticommute_R={anti}"


def test_criterion_03_sl2_ambient(capsys):
    _criterion(3, "sl2-ambient Hodge identity, codifferential square, rotation invariance", 5.0,
               _sl2_ambient, capsys)


# --- 4 -----------------------------------------------------------------------------

def _quotient_ambient():
    from sl2hodge.algebra.core import anticommutator
    from sl2hodge.algebra.standard import ambient_an_adjoint, casimir
    from sl2hodge.identities import an_adjoint_elements

    amb = ambient_an_adjoint()
    om = casimir(amb.factors[1])
    e = an_adjoint_elements()
    main = _size(anticommutator(e["d"], e["delta"]) - amb.tensor(1, om * om, 1))
    square = _size(e["delta"] * e["delta"])
    return main + square, f"main={main} square={square}"


def test_criterion_04_adjoint_quotient_ambient(capsys):
    _criterion(4, "Hodge identity with squared Casimir in the U(an)/I ambient", 5.0,
               _quotient_ambient, capsys)


# --- 5 -----------------------------------------------------------------------------

def _rewrite_identities():
    from sl2hodge.rewrite import d1_elements

    parts = {}
    for sign in (1, -1):
        e = d1_elements(sign)
        d, delta, p = e["d"], e["delta"], e["proj"]
        one = d.alg.unit()
        s = "+" if sign > 0 else "-"
        parts[f"hodge{s}"] = _size(d * delta + delta * d - (one - p))
        parts[f"idempotent{s}"] = _size(p * p - p)
        parts[f"kills{s}"] = sum(_size(x) for x in (p * d, p * delta, d * p, delta * p))
    return sum(parts.values()), " ".join(f"{k}={v}" for k, v in parts.items())


def test_criterion_05_rewrite_verification(capsys):
    _criterion(5, "discrete-series Hodge identity and projection relations, both signs", 5.0,
               _rewrite_identities, capsys)


# --- 6 -----------------------------------------------------------------------------

def _m(rows):
    from sl2hodge.linalg import Matrix
    return Matrix([[fe(x) for x in row] for row in rows])


def _displayed(lam, a):
    """Frozen differentials and the (delta, p) family for the two small complexes."""
    a = fe(a)
    if lam == 0:
        ds = {0: _m([[0], [0]]), 1: _m([[0, -INV_SQRT2]])}
        deltas = {1: _m([[0, 0]]), 2: _m([[a], [-SQRT2]])}
        ps = {0: _m([[1]]), 1: _m([[1, a * INV_SQRT2], [0, 0]]), 2: _m([[0]])}
    else:
        ds = {0: _m([[INV_SQRT2], [0]]), 1: _m([[0, 0]])}
        deltas = {1: _m([[SQRT2, a]]), 2: _m([[0], [0]])}
        ps = {0: _m([[0]]), 1: _m([[0, -a * INV_SQRT2], [0, 1]]), 2: _m([[1]])}
    return ds, deltas, ps


def _small_complexes():
    from sl2hodge.cohomology import build_complex, hodge_residual, solve_hodge_family
    from sl2hodge.lie import an
    from sl2hodge.modules import character

    bad = 0
    notes = []
    for lam in (ZERO, INV_SQRT2):
        c = build_complex(an(), character(lam))
        fam = solve_hodge_family(c)
        ds, _, _ = _displayed(lam, 0)
        bad += sum((c.d(i) - ds[i]).nonzero_count() for i in ds)
        bad += int(fam.nparams != 1) + len(fam.remaining)
        for a in (0, 1, I):
            _, deltas, ps = _displayed(lam, a)
            bad += hodge_residual(c, deltas, ps)
            bad += 0 if fam.contains(deltas, ps) else 1
        notes.append(f"lambda={lam}:params={fam.nparams}")
    return bad, " ".join(notes)


def test_criterion_06_small_complexes(capsys):
    _criterion(6, "displayed differentials and one-parameter Hodge families (a = 0, 1, i)", 1.0,
               _small_complexes, capsys)


# --- 7 -----------------------------------------------------------------------------

def _cohomology_dims():
    from sl2hodge.cohomology import build_complex, cohomology_dims
    from sl2hodge.lie import an, sl2
    from sl2hodge.modules import adjoint, character, tensor, trivial

    cases = [
        (an(), character(0), [1, 1, 0]),
        (an(), character(INV_SQRT2), [0, 1, 1]),
        (sl2(), trivial(sl2()), [1, 0, 0, 1]),
        (an(), tensor(trivial(an()), adjoint(an())), [0, 0, 0]),
    ]
    for lam in (1, -INV_SQRT2, I, fe("1/3"), SQRT2, 1 + I, fe("-5/7") * SQRT2, fe("1/2") * INV_SQRT2):
        cases.append((an(), character(lam), [0, 0, 0]))
    bad = 0
    for g, v, want in cases:
        got = cohomology_dims(build_complex(g, v))
        bad += sum(x != y for x, y in zip(got, want)) + abs(len(got) - len(want))
    return bad, f"cases={len(cases)}"


def test_criterion_07_cohomology_dimensions(capsys):
    _criterion(7, "cohomology dimensions of the basic complexes and sampled characters", 1.0,
               _cohomology_dims, capsys)


# --- 8 -----------------------------------------------------------------------------

def _spectral():
    from sl2hodge.lie import an_in_sl2, sl2
    from sl2hodge.modules import trivial
    from sl2hodge.spectral import build_filtration, check_convergence, limit_sheet, random_modules, sheet, totals

    fc = build_filtration(an_in_sl2(), trivial(sl2()))
    e1 = sheet(fc, 1)
    drawn = {(0, 0): 1, (1, 0): 0, (0, 1): 1, (1, 1): 1, (0, 2): 0, (1, 2): 1}
    sheet_bad = sum(e1.dims.get(k, 0) != v for k, v in drawn.items()) + len(set(e1.dims) - set(drawn))
    rank_bad = int(e1.rank(0, 1) != 1)
    total_bad = sum(x != y for x, y in zip(totals(limit_sheet(fc), 3), [1, 0, 0, 1]))
    mods = random_modules()
    conv_bad = sum(check_convergence(s, m).residual_terms for s, m in mods) + abs(len(mods) - 10)
    total = sheet_bad + rank_bad + total_bad + conv_bad
    return total, f"e1={sheet_bad} rank={rank_bad} totals={total_bad} random={conv_bad}"


def test_criterion_08_spectral_sequence(capsys):
    _criterion(8, "first sheet, its differential, limit totals, ten random convergence checks", 10.0,
               _spectral, capsys)


# --- 9 -----------------------------------------------------------------------------

def _lh_instances():
    from sl2hodge.modules import ff_natural, lh_kernel_cokernel, lh_sample_parameters, nilpotent_h1_module

    q = INV_SQRT2 / 2
    cases = [(nilpotent_h1_module(n), {fe(1 - n) * INV_SQRT2}) for n in range(1, 5)]
    cases.append((ff_natural(), {q}))
    samples = lh_sample_parameters()
    bad = 0
    for v, special in cases:
        assert special <= set(samples)
        for lam in samples:
            k, c = lh_kernel_cokernel(v, lam)
            want = (1, 1) if lam in special else (0, 0)
            bad += (k != want[0]) + (c != want[1])
    return bad, f"samples={len(samples)}"


def test_criterion_09_kernel_cokernel_instances(capsys):
    _criterion(9, "L_H + lambda kernel/cokernel vanishing sets", 1.0, _lh_instances, capsys)


# --- 10 ----------------------------------------------------------------------------

def _weight_models():
    from sl2hodge.weights import (build_model, casimir_value, functional_space, invariant_functionals,
                                  model_report, sign_of)

    n_top = 20
    frozen = [
        ("D+", 1, 0, 1, {fe(1) * INV_SQRT2}, 1),
        ("D+", 2, 1, 1, {fe(2) * INV_SQRT2}, 1),
        ("D+", 3, 3, 1, {fe(3) * INV_SQRT2}, 1),
        ("H", "-1/9", "-1/9", 2, {SQRT2 / 3, SQRT2 / 6}, None),
    ]
    bad = 0
    signs = []
    for tag, param, cas, fdim, eigen, sign in frozen:
        report = model_report(tag, param, n_top)
        bad += sum(r.residual_terms for r in report)
        m = build_model(tag, param, n_top)
        bad += int(casimir_value(m) != fe(cas))
        bad += abs(len(functional_space(m)) - fdim)
        bad += int({e for _, e in invariant_functionals(m)} != eigen)
        if sign is not None:
            s = sign_of(m)
            signs.append(s)
            bad += int(s != sign)
    return bad, f"signs={signs}"


def test_criterion_10_weight_models(capsys):
    _criterion(10, "Casimir scalars, invariant functionals, extreme vectors, window stability", 5.0,
               _weight_models, capsys)


# --- 11 ----------------------------------------------------------------------------

def _tables():
    from sl2hodge.assembly import (SpectrumTable, assembly_crosscheck, foliation_cohomology_dims,
                                   parse_coefficient, restriction_report, synthetic_spectrum)

    st2 = SpectrumTable(2)
    frozen = {"c:0": [1, 5, 4], "c:1/2*r2": [0, 1, 1], "c:-1/2*r2": [0, 6, 6],
              "an": [0, 4, 4], "sl2": [0, 10, 10]}
    bad = 0
    for coeff, want in frozen.items():
        got = list(foliation_cohomology_dims(parse_coefficient(coeff), st2).dims)
        bad += sum(x != y for x, y in zip(got, want))
    cross = sum(assembly_crosscheck(synthetic_spectrum(g)).residual_terms for g in range(2, 7))
    restr = 0
    for g in range(2, 7):
        r = restriction_report(g)
        restr += int(r.bundle_dims[2] != 2 * g) + int(r.foliation_dims[2] != 2 * g)
    return bad + cross + restr, f"genus2={bad} crosscheck={cross} restriction={restr}"


def test_criterion_11_dimension_tables(capsys):
    _criterion(11, "genus-2 tables, block-sum crosscheck g = 2..6, restriction in degree 2", 1.0,
               _tables, capsys)


# --- 12 ----------------------------------------------------------------------------

def _compact_comparison():
    from sl2hodge.identities import compact_restriction_residual

    stacked, details = compact_restriction_residual()
    res = stacked.nonzero_count()
    essential = 0 if details["full_space_differs"] else 1
    return res + essential, f"kernel_dim={details['kernel_dim']} symbols={details['symbol_pairs']}"


def test_criterion_12_compact_codifferential(capsys):
    _criterion(12, "codifferential agrees with the compact one on the rotation-annihilated subspace", 2.0,
               _compact_comparison, capsys)
