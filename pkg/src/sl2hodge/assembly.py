"""Dimension bookkeeping for leafwise cohomology of the weak stable foliation.

Closed-form tables are recomputed independently by summing per-block
cohomology (each block computed from a finite module) over the irreducible
decomposition of L^2 of the unit tangent bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cohomology import build_complex, cohomology_dims
from .lie import an, an_in_sl2, sl2
from .linalg import Matrix, kron
from .modules import (adjoint, character, companion_module, lh_kernel_cokernel,
                      nilpotent_h1_module, quotient_module, trivial)
from .results import VerificationResult, combine, timed
from .scalars import INV_SQRT2, SQRT2, FieldElement, fe, format_scalar, parse_scalar

DEFAULT_MAX_N = 12


class SpectrumError(ValueError):
    pass


# --- inputs ------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumTable:
    """Genus plus the positive Laplace eigenvalues nu with multiplicities."""

    genus: int
    eigenvalues: tuple[tuple[Fraction, int], ...] = ()
    synthetic: bool = False

    def __post_init__(self):
        if self.genus < 2:
            raise SpectrumError(f"genus must be at least 2, got {self.genus}")
        seen = set()
        for nu, m in self.eigenvalues:
            if nu <= 0:
                raise SpectrumError(f"eigenvalue {nu} is not positive")
            if m < 1:
                raise SpectrumError(f"multiplicity {m} of eigenvalue {nu} is not positive")
            if nu in seen:
                raise SpectrumError(f"eigenvalue {nu} listed twice")
            seen.add(nu)

    def multiplicity(self, nu: Fraction) -> int:
        return dict(self.eigenvalues).get(nu, 0)

    def with_genus(self, genus: int) -> SpectrumTable:
        return SpectrumTable(genus, self.eigenvalues, self.synthetic)


_SYNTHETIC = ((Fraction(2, 9), 1), (Fraction(1, 4), 2), (Fraction(5, 2), 3), (Fraction(7), 1))


def synthetic_spectrum(genus: int = 2) -> SpectrumTable:
    """Made-up eigenvalues chosen to exercise real, repeated, complex and
    non-representable spectral parameters.  Not the spectrum of any surface."""
    return SpectrumTable(genus, _SYNTHETIC, synthetic=True)


def parse_spectrum(text: str, genus: int) -> SpectrumTable:
    """Lines of ``nu multiplicity``; ``#`` starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise SpectrumError(f"line {lineno}: expected 'nu multiplicity', got {raw.strip()!r}")
        try:
            nu = parse_scalar(fields[0])
        except ValueError as exc:
            raise SpectrumError(f"line {lineno}: {exc}") from None
        if not nu.is_rational():
            raise SpectrumError(f"line {lineno}: eigenvalue {fields[0]} is not rational")
        try:
            m = int(fields[1])
        except ValueError:
            raise SpectrumError(f"line {lineno}: multiplicity {fields[1]!r} is not an integer") from None
        pairs.append((nu.a, m))
    try:
        return SpectrumTable(genus, tuple(pairs))
    except SpectrumError as exc:
        raise SpectrumError(f"spectrum: {exc}") from None


@dataclass(frozen=True)
class Coefficient:
    """Coefficient module of the foliated complex: C_lam, ad an or ad sl2."""

    kind: str
    lam: FieldElement | None = None
    real: bool = False

    @property
    def label(self) -> str:
        if self.kind == "character":
            return f"c:{format_scalar(self.lam)}"
        return self.kind


def parse_coefficient(text: str) -> Coefficient:
    text = text.strip()
    if text in ("an", "sl2"):
        return Coefficient(text)
    if text.startswith("c:"):
        return Coefficient("character", parse_scalar(text[2:]))
    raise ValueError(f"coefficient must be c:<scalar>, an or sl2; got {text!r}")


# --- irreducible decomposition ----------------------------------------------------

@dataclass(frozen=True)
class Block:
    """An irreducible summand: trivial, discrete series D_n^sign, or spectral H_{-nu/2}."""

    kind: str
    n: int = 0
    sign: int = 0
    nu: Fraction | None = None

    @property
    def label(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "discrete":
            return f"D_{self.n}^{'+' if self.sign > 0 else '-'}"
        return f"H_{{{-self.nu / 2}}}"

    def casimir(self) -> Fraction:
        if self.kind == "trivial":
            return Fraction(0)
        if self.kind == "discrete":
            return Fraction(self.n * (self.n - 1), 2)
        return -self.nu / 2


def l2_multiplicities(st: SpectrumTable, max_n: int = DEFAULT_MAX_N) -> list[tuple[Block, int]]:
    g = st.genus
    out = [(Block("trivial"), 1)]
    for n in range(1, max_n + 1):
        mult = g if n == 1 else (2 * n - 1) * (g - 1)
        out += [(Block("discrete", n, 1), mult), (Block("discrete", n, -1), mult)]
    out += [(Block("spectral", nu=nu), m) for nu, m in st.eigenvalues]
    return out


# --- classification of the character parameter -------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str  # "zero", "trivial", "integral", "spectral"
    k: int | None = None  # lam = k/sqrt2 for the integral kind
    nu: Fraction | None = None
    branch: str | None = None
    multiplicity: int = 0
    decided_exactly: bool = True

    def describe(self) -> str:
        if self.kind == "trivial":
            return "trivial-type (lambda = 0)"
        if self.kind == "integral":
            return f"integral-type (lambda = {self.k}/sqrt2)"
        if self.kind == "spectral":
            return f"spectral-type (nu = {self.nu}, branch {self.branch}, multiplicity {self.multiplicity})"
        return "zero cohomology"


def _integral_index(lam: FieldElement) -> int | None:
    k = lam * SQRT2
    if k.is_rational() and k.a.denominator == 1:
        return int(k.a)
    return None


def spectral_parameter(lam: FieldElement) -> FieldElement:
    """The nu with (2 sqrt2 lam - 1)^2 = 1 - 4 nu."""
    r = SQRT2 * lam * 2 - 1
    return (1 - r * r) / 4


def spectral_lambdas(nu: Fraction) -> list[FieldElement]:
    """Both roots (1 +- sqrt(1 - 4 nu)) / (2 sqrt2), when they lie in the field."""
    try:
        s = fe(1 - 4 * nu).sqrt()
    except ValueError:
        return []
    roots = [(1 + s) * INV_SQRT2 / 2, (1 - s) * INV_SQRT2 / 2]
    return roots[:1] if roots[0] == roots[1] else roots


def classify_lambda(lam, st: SpectrumTable) -> Classification:
    lam = fe(lam)
    if not lam:
        return Classification("trivial")
    k = _integral_index(lam)
    if k is not None and k <= 1:
        return Classification("integral", k=k)
    nu = spectral_parameter(lam)
    if nu.is_rational() and nu.a > 0:
        m = st.multiplicity(nu.a)
        if m:
            r = SQRT2 * lam * 2 - 1
            branch = "+" if r == fe(1 - 4 * nu.a).sqrt() else "-"
            return Classification("spectral", nu=nu.a, branch=branch, multiplicity=m)
    return Classification("zero")


# --- closed forms ------------------------------------------------------------------

@dataclass(frozen=True)
class FoliationTable:
    coefficient: Coefficient
    genus: int
    dims: tuple[int, ...]
    classification: Classification | None = None
    notes: tuple[str, ...] = ()
    synthetic_spectrum: bool = False


def foliation_cohomology_dims(tag: Coefficient, st: SpectrumTable) -> FoliationTable:
    """dim H^i of the leafwise complex with the given coefficients, i = 0, 1, 2.

    Real coefficients give the same numbers as their complexifications.
    """
    g = st.genus
    notes: list[str] = []
    cls = None
    if tag.kind == "an":
        dims = (0, 2 * g, 2 * g)
    elif tag.kind == "sl2":
        dims = (0, 8 * g - 6, 8 * g - 6)
    elif tag.kind == "character":
        cls = classify_lambda(tag.lam, st)
        if cls.kind == "trivial":
            dims = (1, 2 * g + 1, 2 * g)
        elif cls.kind == "integral":
            n = 1 - cls.k
            dims = (0, 1, 1) if n == 0 else (0, 2 * (2 * n - 1) * (g - 1), 2 * (2 * n - 1) * (g - 1))
        elif cls.kind == "spectral":
            dims = (0, cls.multiplicity, cls.multiplicity)
            notes.append("no Hodge decomposition is available for this coefficient; dimensions only")
        else:
            dims = (0, 0, 0)
    else:
        raise ValueError(f"unknown coefficient kind {tag.kind!r}")
    uses_spectrum = cls is not None and cls.kind in ("spectral", "zero")
    return FoliationTable(tag, g, dims, cls, tuple(notes), st.synthetic and uses_spectrum)


# --- per-block cohomology from finite modules ---------------------------------------

def _add(a: Sequence[int], b: Sequence[int], scale: int = 1) -> list[int]:
    return [x + scale * y for x, y in zip(a, b)]


@lru_cache(maxsize=None)
def _trivial_block_complex(lam: FieldElement) -> tuple[int, ...]:
    return tuple(cohomology_dims(build_complex(an(), character(lam))))


@lru_cache(maxsize=None)
def _discrete_h1(n: int):
    return nilpotent_h1_module(n)


@lru_cache(maxsize=None)
def _spectral_h1(nu: Fraction):
    return companion_module(fe(-nu / 2))


@lru_cache(maxsize=None)
def block_cohomology(block: Block, lam: FieldElement) -> tuple[int, int, int]:
    """dim H^i(an; block (x) C_lam), from the n-cohomology of the block.

    H^i(an; V) = ker(L_H + lam on H^i(n; V)) + coker(L_H + lam on H^{i-1}(n; V)).
    Only the trivial block has n-invariants; there the CE complex of an is used directly.
    """
    if block.kind == "trivial":
        return _trivial_block_complex(lam)
    h1 = _discrete_h1(block.n) if block.kind == "discrete" else _spectral_h1(block.nu)
    k, c = lh_kernel_cokernel(h1, lam)
    return (0, k, c)


def projection_matrix(sign: int) -> Matrix:
    """The D_1 projection with its rank-one middle factor evaluated to 1,
    as an operator on (exterior algebra of an*) (x) an."""
    from .algebra.standard import clifford_an
    from .rewrite import d1_elements

    proj = d1_elements(sign)["proj"]
    cl = clifford_an()
    ad = {"1": Matrix.identity(2), "H": an().ad_matrix(0), "E": an().ad_matrix(1)}
    size = len(an().wedge_basis) * 2
    out = Matrix.zeros(size, size)
    for (cm, wm, qm), c in proj.terms.items():
        if wm != ("Kh",):
            raise ValueError(f"projection has unexpected middle factor {wm}")
        out = out + kron(cl.spin_mono(cm), ad[qm]).scale(c)
    return out


@lru_cache(maxsize=None)
def projection_image_dims(sign: int) -> tuple[int, int, int]:
    """Rank of the D_1 projection in each form degree."""
    m = projection_matrix(sign)
    degrees = [len(t) for t in an().wedge_basis for _ in range(2)]
    out = []
    for deg in range(3):
        cols = [j for j, d in enumerate(degrees) if d == deg]
        out.append(Matrix.from_columns([m.column(j) for j in cols]).rank())
    return tuple(out)


@lru_cache(maxsize=None)
def adjoint_block_cohomology(block: Block) -> tuple[int, int, int]:
    """dim H^i(an; block (x) an)."""
    if block.kind == "trivial":
        return tuple(cohomology_dims(build_complex(an(), adjoint(an()))))
    if block.casimir() != 0:
        # the Casimir acts invertibly, so the homotopy d delta + delta d = Omega^2 kills cohomology
        return (0, 0, 0)
    return projection_image_dims(block.sign)


@lru_cache(maxsize=None)
def quotient_weight() -> FieldElement:
    """The scalar by which H acts on sl2/an."""
    q = quotient_module(an_in_sl2())
    if q.dim != 1 or q.action("E").rows[0][0]:
        raise ValueError("sl2/an is not a character of an")
    return q.action("H").rows[0][0]


def _sl2_block(block: Block) -> tuple[int, int, int]:
    """Long exact sequence for an -> sl2 -> sl2/an with vanishing connecting maps."""
    sub = adjoint_block_cohomology(block)
    quo = block_cohomology(block, quotient_weight())
    for i in range(2):
        if quo[i] and sub[i + 1]:
            raise ValueError(f"{block.label}: connecting map in degree {i} is not forced to vanish")
    return tuple(_add(sub, quo))


def assembled_dims(tag: Coefficient, st: SpectrumTable, max_n: int = DEFAULT_MAX_N) -> list[int]:
    total = [0, 0, 0]
    for block, mult in l2_multiplicities(st, max_n):
        if tag.kind == "character":
            part = block_cohomology(block, tag.lam)
        elif tag.kind == "an":
            part = adjoint_block_cohomology(block)
        else:
            part = _sl2_block(block)
        total = _add(total, part, mult)
    return total


def crosscheck_coefficients(st: SpectrumTable, max_n: int = DEFAULT_MAX_N) -> list[Coefficient]:
    lams = [fe(0), INV_SQRT2]
    lams += [fe(1 - n) * INV_SQRT2 for n in range(2, max_n + 1)]
    lams += [fe(3) * INV_SQRT2, fe(2), fe("i"), INV_SQRT2 / 2, fe("1/3")]
    for nu, _ in st.eigenvalues:
        lams += spectral_lambdas(nu)
    coeffs = [Coefficient("character", lam) for lam in lams]
    return coeffs + [Coefficient("an"), Coefficient("sl2")]


def assembly_crosscheck(st: SpectrumTable, max_n: int = DEFAULT_MAX_N) -> VerificationResult:
    """Block sums agree with the closed forms for every tested coefficient."""
    parts = []
    for tag in crosscheck_coefficients(st, max_n):
        def compute(tag=tag):
            closed = foliation_cohomology_dims(tag, st).dims
            summed = assembled_dims(tag, st, max_n)
            bad = sum(1 for x, y in zip(closed, summed) if x != y)
            return bad, {"closed_form": list(closed), "block_sum": summed}
        parts.append(timed(f"assembly[g={st.genus},{tag.label}]", compute))
    return combine(f"assembly[g={st.genus}]", parts)


# --- restriction from the unit tangent bundle to the foliation ------------------------

@dataclass(frozen=True)
class RestrictionReport:
    genus: int
    bundle_dims: tuple[int, ...]
    foliation_dims: tuple[int, ...]
    matching_degrees: tuple[int, ...]
    surjective_in_degree_two: bool = field(default=False)


DISCRETE_ONE_SL2_COHOMOLOGY = (0, 1, 1, 0)


def restriction_report(genus: int) -> RestrictionReport:
    """dim H^i of the bundle versus the foliation, for trivial coefficients.

    Bundle side: H^*(sl2; C) from its CE complex plus 2g copies of the D_1 contribution;
    every other block has invertible Casimir and contributes nothing.
    """
    if genus < 2:
        raise SpectrumError(f"genus must be at least 2, got {genus}")
    bundle = cohomology_dims(build_complex(sl2(), trivial(sl2())))
    bundle = _add(bundle, DISCRETE_ONE_SL2_COHOMOLOGY, 2 * genus)
    fol = foliation_cohomology_dims(Coefficient("character", fe(0)), SpectrumTable(genus)).dims
    matching = tuple(i for i in range(3) if bundle[i] == fol[i])
    return RestrictionReport(genus, tuple(bundle), fol, matching, 2 in matching)


def table_checks(genus_range: Sequence[int] = range(2, 7)) -> list[VerificationResult]:
    st = synthetic_spectrum()
    out = [assembly_crosscheck(st.with_genus(g)) for g in genus_range]

    def restriction():
        bad = 0
        for g in genus_range:
            r = restriction_report(g)
            bad += (r.bundle_dims[2] != 2 * g) + (r.foliation_dims[2] != 2 * g)
            bad += not r.surjective_in_degree_two
        return bad
    out.append(timed("restriction.degree_two", restriction))
    return out


__all__ = [
    "SpectrumTable", "SpectrumError", "synthetic_spectrum", "parse_spectrum", "Coefficient",
    "parse_coefficient", "Block", "l2_multiplicities", "Classification", "classify_lambda",
    "spectral_parameter", "spectral_lambdas", "FoliationTable", "foliation_cohomology_dims",
    "block_cohomology", "projection_matrix", "projection_image_dims", "adjoint_block_cohomology",
    "quotient_weight", "assembled_dims", "assembly_crosscheck", "RestrictionReport",
    "restriction_report", "table_checks", "DEFAULT_MAX_N",
]
