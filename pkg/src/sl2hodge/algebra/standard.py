"""The concrete algebras used by the identity checks, built once and shared."""

from __future__ import annotations

from functools import lru_cache

from ..lie import an, sl2
from ..scalars import INV_SQRT2
from .clifford import CliffordAlgebra, dstar, lie_derivative_hat
from .core import Element, TensorAlgebra
from .pbw import EnvelopingAlgebra, TableAlgebra

# covectors first so that expressions such as theta_H theta_E E are already normal
AN_CLIFFORD_ORDER = ("θ_H", "θ_E", "H", "E")
SL2_CLIFFORD_ORDER = ("θ_E", "θ_H", "θ_F", "E", "H", "F")


@lru_cache(maxsize=None)
def clifford_an() -> CliffordAlgebra:
    return CliffordAlgebra(an(), AN_CLIFFORD_ORDER)


@lru_cache(maxsize=None)
def clifford_sl2() -> CliffordAlgebra:
    return CliffordAlgebra(sl2(), SL2_CLIFFORD_ORDER)


@lru_cache(maxsize=None)
def enveloping_sl2() -> EnvelopingAlgebra:
    return EnvelopingAlgebra(sl2(), ("F", "H", "E"))


@lru_cache(maxsize=None)
def enveloping_an() -> EnvelopingAlgebra:
    return EnvelopingAlgebra(an(), ("H", "E"))


@lru_cache(maxsize=None)
def an_adjoint_quotient() -> TableAlgebra:
    """Image of U(an) in End(an) under the adjoint action: basis 1, H, E."""
    return TableAlgebra("U(an)/I", ("1", "H", "E"), {
        ("H", "H"): {"H": INV_SQRT2},
        ("E", "E"): {},
        ("H", "E"): {"E": INV_SQRT2},
        ("E", "H"): {},
    })


def casimir(u: EnvelopingAlgebra | None = None) -> Element:
    """Omega = FE + H^2 + EF."""
    u = u or enveloping_sl2()
    F, H, E = u["F"], u["H"], u["E"]
    return F * E + H * H + E * F


@lru_cache(maxsize=None)
def ambient_an() -> TensorAlgebra:
    return TensorAlgebra("A[an]", (clifford_an(), enveloping_sl2(), enveloping_an()))


@lru_cache(maxsize=None)
def ambient_sl2() -> TensorAlgebra:
    return TensorAlgebra("A[sl2]", (clifford_sl2(), enveloping_sl2(), enveloping_sl2()))


@lru_cache(maxsize=None)
def ambient_an_adjoint() -> TensorAlgebra:
    return TensorAlgebra("A[an,ad]", (clifford_an(), enveloping_sl2(), an_adjoint_quotient()))


@lru_cache(maxsize=None)
def dstar_an() -> Element:
    return dstar(clifford_an())


@lru_cache(maxsize=None)
def dstar_sl2() -> Element:
    return dstar(clifford_sl2())


def rotation_generator(amb: TensorAlgebra | None = None) -> Element:
    """L^_R (x) 1 (x) 1 + 1 (x) R (x) 1 + 1 (x) 1 (x) R for R = E - F."""
    amb = amb or ambient_sl2()
    cl, u, v = amb.factors
    lr = lie_derivative_hat(cl, "E") - lie_derivative_hat(cl, "F")
    return (amb.tensor(lr, 1, 1) + amb.tensor(1, u["E"] - u["F"], 1)
            + amb.tensor(1, 1, v["E"] - v["F"]))


def ad_R(x: Element) -> Element:
    """Derivation action of R = E - F on the sl2 ambient algebra."""
    amb = x.alg
    if amb is not ambient_sl2():
        raise TypeError("ad_R acts on the sl2 ambient algebra only")
    r = rotation_generator(amb)
    return r * x - x * r
