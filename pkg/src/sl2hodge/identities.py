"""Exact verification of the Hodge-type operator identities.

Each canonical operator is assembled from its defining formula in one of
three ambient algebras

* ``ambient_an``:         Cl(an) (x) U(sl2) (x) U(an)
* ``ambient_sl2``:        Cl(sl2) (x) U(sl2) (x) U(sl2)
* ``ambient_an_adjoint``: Cl(an) (x) U(sl2) (x) U(an)/I

and every check computes ``lhs - rhs`` in normal form.  A check passes
exactly when that residual has empty support.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra.clifford import CliffordAlgebra, dual_name, lie_derivative_hat
from .algebra.core import Element, anticommutator
from .algebra.standard import (
    ad_R,
    ambient_an,
    ambient_an_adjoint,
    ambient_sl2,
    casimir,
    clifford_an,
    clifford_sl2,
    dstar_an,
    dstar_sl2,
    enveloping_sl2,
)
from .lie import full_ce_differential
from .linalg import Matrix
from .results import VerificationResult, combine, timed
from .scalars import INV_SQRT2, SQRT2, fe

HALF = fe("1/2")


# --- canonical elements ------------------------------------------------------

def _sum(alg, items) -> Element:
    out = alg.zero()
    for x in items:
        out = out + x
    return out


@lru_cache(maxsize=None)
def an_elements() -> dict[str, Element]:
    """Differential and the fake differential/codifferential pair over an."""
    amb = ambient_an()
    cl, u, v = amb.factors
    t = amb.tensor
    ds = dstar_an()
    dst = cl.transpose(ds)
    d = (t(ds, 1, 1)
         + t(cl["θ_H"], u["H"], 1) + t(cl["θ_H"], 1, v["H"])
         + t(cl["θ_E"], u["E"], 1) + t(cl["θ_E"], 1, v["E"]))
    d_fake = (t(ds, 1, 1) + t(cl["θ_H"], u["H"], 1) + t(cl["θ_H"], 1, v["H"])
              + t(cl["θ_E"], u["E"], 1))
    delta_fake = (t(dst, 1, 1)
                  + t(cl["H"], u["H"] + INV_SQRT2, 1)
                  + t(cl["H"], 1, -v["H"])
                  + t(cl["E"], u["F"].scale(2), 1))
    return {"d": d, "d_fake": d_fake, "delta_fake": delta_fake}


@lru_cache(maxsize=None)
def sl2_elements() -> dict[str, Element]:
    amb = ambient_sl2()
    cl, u, v = amb.factors
    t = amb.tensor
    names = ("E", "H", "F")
    d = t(dstar_sl2(), 1, 1) + _sum(amb, (
        t(cl[dual_name(x)], u[x], 1) + t(cl[dual_name(x)], 1, v[x]) for x in names))
    # the trace form pairs E with F and H with itself
    partner = {"E": "F", "H": "H", "F": "E"}
    delta = _sum(amb, (t(cl[x], u[partner[x]], 1) - t(cl[x], 1, v[partner[x]]) for x in names))
    ef = cl["E"] + cl["F"]
    uef, vef = u["E"] + u["F"], v["E"] + v["F"]
    delta_compact = (t(cl["H"], u["H"], 1) + t(ef, uef, 1).scale(HALF)
                     - t(cl["H"], 1, v["H"]) - t(ef, 1, vef).scale(HALF))
    return {"d": d, "delta": delta, "delta_compact": delta_compact}


@lru_cache(maxsize=None)
def an_adjoint_elements() -> dict[str, Element]:
    amb = ambient_an_adjoint()
    cl, u, q = amb.factors
    t = amb.tensor
    ds = dstar_an()
    dst = cl.transpose(ds)
    om = casimir(u)
    F, H = u["F"], u["H"]
    d = (t(ds, 1, 1) + t(cl["θ_H"], H, 1) + t(cl["θ_H"], 1, q["H"])
         + t(cl["θ_E"], u["E"], 1) + t(cl["θ_E"], 1, q["E"]))
    delta = (t(dst, om, 1)
             - t(dst, F, q["E"]).scale(6)
             + t(cl["H"], H * om, 1)
             - t(cl["H"], F, q["E"]).scale(SQRT2)
             - t(cl["H"], F * H, q["E"]).scale(2)
             + t(cl["H"], om, 1).scale(INV_SQRT2)
             - t(cl["H"], om, q["H"])
             + t(cl["E"], F * om, 1).scale(2)
             - t(cl["E"], F * F, q["E"]).scale(4))
    return {"d": d, "delta": delta}


def canonical_elements() -> dict[str, Element]:
    """Every canonical operator, keyed by ``<ambient>.<name>``."""
    out = {}
    for prefix, table in (("an", an_elements()), ("sl2", sl2_elements()),
                          ("an_adjoint", an_adjoint_elements())):
        for key, val in table.items():
            out[f"{prefix}.{key}"] = val
    return out


# --- Clifford-level ingredients -----------------------------------------------

def wedge_to_clifford(cl: CliffordAlgebra, vector) -> Element:
    """Map an exterior form (wedge-basis coordinates) to the matching product of covectors."""
    out = cl.zero()
    g = cl.lie
    for mono, c in zip(g.wedge_basis, vector):
        if c:
            word = [cl.rank[dual_name(g.basis[i])] for i in mono]
            out = out + cl.word(word).scale(c)
    return out


def _clifford_checks(prefix: str, cl: CliffordAlgebra, ds: Element) -> list[VerificationResult]:
    g = cl.lie
    ce = full_ce_differential(g)
    checks = [
        timed(f"{prefix}.dstar.spin_equals_ce_differential", lambda: cl.spin(ds) - ce),
        timed(f"{prefix}.dstar.square", lambda: ds * ds),
    ]
    for x in g.basis:
        def lie_der(x=x):
            return anticommutator(ds, cl[x]) - lie_derivative_hat(cl, x)
        checks.append(timed(f"{prefix}.cartan_formula[{x}]", lie_der))

    basis = g.wedge_basis
    for i, x in enumerate(g.basis):
        def covector(i=i):
            col = basis.index((i,))
            image = wedge_to_clifford(cl, ce.column(col))
            phi = cl[dual_name(g.basis[i])]
            return anticommutator(ds, phi) - image
        checks.append(timed(f"{prefix}.dstar_on_covector[{dual_name(x)}]", covector))
    return checks


# --- verification entry points ----------------------------------------------

def verify_fake_hodge() -> VerificationResult:
    """Fake Hodge identity over an, with its Clifford-level ingredients."""
    amb = ambient_an()
    cl, u, v = amb.factors
    parts = _clifford_checks("an", cl, dstar_an())

    def laplacian():
        ds = dstar_an()
        dst = cl.transpose(ds)
        return anticommutator(ds, dst) + lie_derivative_hat(cl, "H").scale(INV_SQRT2)

    def main():
        e = an_elements()
        lhs = anticommutator(e["d_fake"], e["delta_fake"])
        h = v["H"]
        rhs = amb.tensor(1, casimir(u), 1) + amb.tensor(1, 1, -(h * h) + h.scale(INV_SQRT2))
        return lhs - rhs

    parts += [
        timed("an.dstar_laplacian", laplacian),
        timed("an.fake_hodge", main),
        timed("an.fake_codifferential.square", lambda: an_elements()["delta_fake"] ** 2),
        timed("an.differential.square", lambda: an_elements()["d"] ** 2),
    ]
    return combine("fake_hodge", parts)


def sl2_codifferential_square_expected() -> Element:
    amb = ambient_sl2()
    cl, u, v = amb.factors
    t = amb.tensor

    def both(x):
        return t(1, u[x], 1) + t(1, 1, v[x])

    inner = (t(cl["E"] * cl["H"], 1, 1) * both("F")
             + t(cl["H"] * cl["F"], 1, 1) * both("E")
             + t(cl["F"] * cl["E"], 1, 1) * both("H"))
    return inner.scale(INV_SQRT2)


def verify_sl2_hodge() -> VerificationResult:
    amb = ambient_sl2()
    cl, u, v = amb.factors
    parts = _clifford_checks("sl2", cl, dstar_sl2())

    def main():
        e = sl2_elements()
        lhs = anticommutator(e["d"], e["delta"])
        return lhs - (amb.tensor(1, casimir(u), 1) - amb.tensor(1, 1, casimir(v)))

    def delta_sq():
        delta = sl2_elements()["delta"]
        return delta * delta - sl2_codifferential_square_expected()

    parts += [
        timed("sl2.hodge", main),
        timed("sl2.codifferential.square", delta_sq),
        timed("sl2.differential.square", lambda: sl2_elements()["d"] ** 2),
    ]
    return combine("sl2_hodge", parts)


def verify_so2_invariance() -> VerificationResult:
    amb = ambient_sl2()
    cl = amb.factors[0]
    r = amb.tensor(cl["E"] - cl["F"], 1, 1)
    parts = [
        timed("sl2.rotation_invariance.codifferential", lambda: ad_R(sl2_elements()["delta"])),
        timed("sl2.rotation_anticommutes.codifferential",
              lambda: anticommutator(sl2_elements()["delta"], r)),
        timed("sl2.rotation_invariance.differential", lambda: ad_R(sl2_elements()["d"])),
    ]
    return combine("so2_invariance", parts)


def _by_symbol(x: Element) -> dict[tuple, Element]:
    """Group a Cl (x) U (x) U element by its enveloping-algebra symbol pair."""
    cl = x.alg.factors[0]
    groups: dict[tuple, dict] = {}
    for (c, a, b), coeff in x.terms.items():
        groups.setdefault((a, b), {})[c] = coeff
    return {k: Element(cl, terms) for k, terms in groups.items()}


def compact_restriction_residual() -> tuple[Matrix, dict]:
    """Stacked difference of spin matrices restricted to ker iota(R), one block per symbol pair."""
    cl = clifford_sl2()
    e = sl2_elements()
    full = _by_symbol(e["delta"])
    compact = _by_symbol(e["delta_compact"])
    kernel = cl.spin(cl["E"] - cl["F"]).nullspace()
    k = Matrix.from_columns(kernel)
    blocks = []
    full_diff_nonzero = False
    for key in sorted(set(full) | set(compact)):
        diff = full.get(key, cl.zero()) - compact.get(key, cl.zero())
        m = cl.spin(diff)
        full_diff_nonzero |= not m.is_zero()
        blocks.append(m @ k)
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return stacked, {"kernel_dim": len(kernel), "symbol_pairs": len(blocks),
                     "full_space_differs": full_diff_nonzero}


def verify_delta_mm_restriction() -> VerificationResult:
    main = timed("sl2.compact_codifferential.restricted_agreement", compact_restriction_residual)

    def differs():
        # the agreement must genuinely need the restriction
        return 0 if main.details["full_space_differs"] else 1

    parts = [main, timed("sl2.compact_codifferential.full_space_differs", differs)]
    return combine("compact_restriction", parts)


def verify_an_adjoint_hodge() -> VerificationResult:
    amb = ambient_an_adjoint()
    u = amb.factors[1]

    def main():
        e = an_adjoint_elements()
        om = casimir(u)
        return anticommutator(e["d"], e["delta"]) - amb.tensor(1, om * om, 1)

    def casimir_two_ways():
        F, H, E = u["F"], u["H"], u["E"]
        alt = F * E.scale(2) + H * H + H.scale(INV_SQRT2)
        om = casimir(u)
        return om * om - alt * alt

    def quotient_table():
        # the table must agree with the adjoint matrices of an
        from .lie import an
        g = an()
        q = amb.factors[2]
        mats = {"1": Matrix.identity(2), "H": g.ad_matrix(0), "E": g.ad_matrix(1)}
        bad = 0
        for x in q.basis:
            for y in q.basis:
                prod = q.gen(x) * q.gen(y)
                m = Matrix.zeros(2, 2)
                for mono, c in prod.terms.items():
                    m = m + mats[mono].scale(c)
                bad += (m - mats[x] @ mats[y]).nonzero_count()
        return bad

    parts = [
        timed("an_adjoint.hodge", main),
        timed("an_adjoint.codifferential.square", lambda: an_adjoint_elements()["delta"] ** 2),
        timed("an_adjoint.casimir_square_two_ways", casimir_two_ways),
        timed("an_adjoint.quotient_table_is_adjoint", quotient_table),
    ]
    return combine("an_adjoint_hodge", parts)


def verify_round_trip() -> VerificationResult:
    parts = []
    for name, x in canonical_elements().items():
        parts.append(timed(f"round_trip.{name}", lambda x=x: x.alg.parse(str(x)) - x))
    return combine("round_trip", parts)


def run_identity_suite() -> list[VerificationResult]:
    """All identity checks, flattened and sorted by name."""
    groups = [verify_fake_hodge(), verify_sl2_hodge(), verify_so2_invariance(),
              verify_delta_mm_restriction(), verify_an_adjoint_hodge(), verify_round_trip()]
    leaves = [leaf for g in groups for leaf in g.flatten()]
    return sorted(leaves, key=lambda r: r.name)


__all__ = [
    "an_elements", "sl2_elements", "an_adjoint_elements", "canonical_elements",
    "wedge_to_clifford", "verify_fake_hodge", "verify_sl2_hodge", "verify_so2_invariance",
    "verify_delta_mm_restriction", "verify_an_adjoint_hodge", "verify_round_trip",
    "run_identity_suite", "compact_restriction_residual", "sl2_codifferential_square_expected",
]
