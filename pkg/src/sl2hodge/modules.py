"""Finite-dimensional representations of the small Lie algebras, and ways to build new ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Mapping, Sequence

from .lie import LieAlgebra, Subalgebra, an, sl2, sort_with_sign
from .linalg import Matrix, as_matrix, coordinates, independent_subset, kron
from .scalars import INV_SQRT2, ONE, ZERO, fe


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSpec:
    """A representation given by one matrix per Lie algebra basis vector."""

    name: str
    algebra: LieAlgebra
    matrices: tuple[Matrix, ...]
    basis_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        g = self.algebra
        if len(self.matrices) != g.dim:
            raise ModuleError(f"{self.name}: need {g.dim} matrices, got {len(self.matrices)}")
        n = self.matrices[0].nrows if self.matrices else 0
        for name, m in zip(g.basis, self.matrices):
            if m.shape != (n, n):
                raise ModuleError(f"{self.name}: matrix for {name} is {m.shape}, expected {(n, n)}")
        for i, j in combinations(range(g.dim), 2):
            a, b = self.matrices[i], self.matrices[j]
            lhs = a @ b - b @ a
            rhs = Matrix.zeros(n, n)
            for k, c in g.bracket(i, j).items():
                rhs = rhs + self.matrices[k].scale(c)
            if lhs != rhs:
                raise ModuleError(
                    f"{self.name}: [rho({g.basis[i]}), rho({g.basis[j]})] != rho([{g.basis[i]},{g.basis[j]}])")
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"v{k}" for k in range(n)))

    @property
    def dim(self) -> int:
        return self.matrices[0].nrows if self.matrices else 0

    def action(self, name: str) -> Matrix:
        return self.matrices[self.algebra.index(name)]

    def action_of(self, vec: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for m, c in zip(self.matrices, vec):
            if fe(c):
                out = out + m.scale(c)
        return out


def module(name: str, g: LieAlgebra, matrices: Mapping[str, object],
           labels: Sequence[str] = ()) -> ModuleSpec:
    """Build from a name -> matrix mapping; missing generators act by zero."""
    given = {k: as_matrix(v) if isinstance(v, Matrix) else Matrix(v) for k, v in matrices.items()}
    unknown = set(given) - set(g.basis)
    if unknown:
        raise ModuleError(f"{name}: {sorted(unknown)} are not generators of {g.name}")
    dims = {m.nrows for m in given.values()}
    if len(dims) > 1:
        raise ModuleError(f"{name}: matrices of different sizes")
    n = dims.pop() if dims else len(labels)
    mats = tuple(given.get(x, Matrix.zeros(n, n)) for x in g.basis)
    return ModuleSpec(name, g, mats, tuple(labels))


# --- constructions -------------------------------------------------------------

def trivial(g: LieAlgebra, dim: int = 1) -> ModuleSpec:
    return ModuleSpec(f"C^{dim}" if dim != 1 else "C", g,
                      tuple(Matrix.zeros(dim, dim) for _ in g.basis))


def character(lam, g: LieAlgebra | None = None) -> ModuleSpec:
    """C_lam for an: H acts by lam and E by zero."""
    g = g or an()
    lam = fe(lam)
    mats = [Matrix([[lam if x == "H" else ZERO]]) for x in g.basis]
    return ModuleSpec(f"C_{{{lam}}}", g, tuple(mats))


def adjoint(g: LieAlgebra) -> ModuleSpec:
    return ModuleSpec(f"ad {g.name}", g, tuple(g.ad_matrix(i) for i in range(g.dim)), g.basis)


def dual(v: ModuleSpec) -> ModuleSpec:
    return ModuleSpec(f"({v.name})*", v.algebra, tuple(-m.T for m in v.matrices),
                      tuple(f"{x}*" for x in v.basis_labels))


def tensor(v: ModuleSpec, w: ModuleSpec) -> ModuleSpec:
    if v.algebra != w.algebra:
        raise ModuleError("tensor product of modules over different algebras")
    iv, iw = Matrix.identity(v.dim), Matrix.identity(w.dim)
    mats = tuple(kron(a, iw) + kron(iv, b) for a, b in zip(v.matrices, w.matrices))
    labels = tuple(f"{x}⊗{y}" for x in v.basis_labels for y in w.basis_labels)
    return ModuleSpec(f"{v.name}⊗{w.name}", v.algebra, mats, labels)


def direct_sum(*mods: ModuleSpec) -> ModuleSpec:
    g = mods[0].algebra
    n = sum(m.dim for m in mods)
    mats = []
    for i in range(g.dim):
        out = Matrix.zeros(n, n)
        off = 0
        for m in mods:
            a = m.matrices[i]
            for r in range(m.dim):
                for c in range(m.dim):
                    out.rows[off + r][off + c] = a.rows[r][c]
            off += m.dim
        mats.append(out)
    labels = tuple(l for m in mods for l in m.basis_labels)
    return ModuleSpec("⊕".join(m.name for m in mods), g, tuple(mats), labels)


def exterior_power(v: ModuleSpec, p: int) -> ModuleSpec:
    basis = list(combinations(range(v.dim), p))
    index = {t: k for k, t in enumerate(basis)}
    mats = []
    for a in v.matrices:
        out = Matrix.zeros(len(basis), len(basis))
        for col, t in enumerate(basis):
            for pos, i in enumerate(t):
                for j in range(v.dim):
                    x = a.rows[j][i]
                    if not x:
                        continue
                    s, key = sort_with_sign(t[:pos] + (j,) + t[pos + 1:])
                    if s:
                        r = index[key]
                        out.rows[r][col] = out.rows[r][col] + (x if s > 0 else -x)
        mats.append(out)
    labels = tuple("∧".join(v.basis_labels[i] for i in t) or "1" for t in basis)
    return ModuleSpec(f"∧^{p}{v.name}", v.algebra, tuple(mats), labels)


def symmetric_power(v: ModuleSpec, k: int) -> ModuleSpec:
    basis = list(combinations_with_replacement(range(v.dim), k))
    index = {t: n for n, t in enumerate(basis)}
    mats = []
    for a in v.matrices:
        out = Matrix.zeros(len(basis), len(basis))
        for col, t in enumerate(basis):
            for pos, i in enumerate(t):
                for j in range(v.dim):
                    x = a.rows[j][i]
                    if x:
                        key = tuple(sorted(t[:pos] + (j,) + t[pos + 1:]))
                        r = index[key]
                        out.rows[r][col] = out.rows[r][col] + x
        mats.append(out)
    return ModuleSpec(f"Sym^{k}{v.name}", v.algebra, tuple(mats))


def restrict(v: ModuleSpec, sub: Subalgebra) -> ModuleSpec:
    if sub.parent != v.algebra:
        raise ModuleError(f"{sub.algebra.name} is not a subalgebra of {v.algebra.name}")
    mats = tuple(v.action_of(vec) for vec in sub.vectors)
    return ModuleSpec(f"{v.name}|{sub.algebra.name}", sub.algebra, mats, v.basis_labels)


def conjugate(v: ModuleSpec, p: Matrix) -> ModuleSpec:
    """Same representation in the basis given by the columns of p."""
    pinv = p.inverse()
    return ModuleSpec(v.name, v.algebra, tuple(pinv @ m @ p for m in v.matrices))


def quotient_module(sub: Subalgebra) -> ModuleSpec:
    """g/h as a representation of h under the adjoint action."""
    g, h = sub.parent, sub.algebra
    hv = [list(x) for x in sub.vectors]
    units = [[ONE if k == i else ZERO for k in range(g.dim)] for i in range(g.dim)]
    comp = independent_subset(units, g.dim, start=hv)
    full = hv + comp
    mats = []
    for y in sub.vectors:
        out = Matrix.zeros(len(comp), len(comp))
        for c, z in enumerate(comp):
            coords = coordinates(g.bracket_vectors(list(y), z), full, g.dim)
            for r in range(len(comp)):
                out.rows[r][c] = coords[len(hv) + r]
        mats.append(out)
    labels = tuple(g.basis[v.index(ONE)] if sum(1 for x in v if x) == 1 else f"u{k}"
                   for k, v in enumerate(comp))
    return ModuleSpec(f"{g.name}/{h.name}", h, tuple(mats), labels)


def annihilator_module(sub: Subalgebra) -> ModuleSpec:
    """(g/h)*, the annihilator of h in g*, as an h-module."""
    return dual(quotient_module(sub))


# --- named modules over an ----------------------------------------------------

_Q = INV_SQRT2 / 2  # 1/(2 sqrt2)


def ff_sharp() -> ModuleSpec:
    return module("C2_sharp", an(), {"H": Matrix([[-_Q, ZERO], [-_Q, -_Q]])})


def ff_flat() -> ModuleSpec:
    return module("C2_flat", an(), {"H": Matrix([[_Q, _Q], [ZERO, _Q]])})


def ff_natural() -> ModuleSpec:
    return module("C2_natural", an(), {"H": Matrix([[-_Q, _Q], [ZERO, -_Q]])})


def companion_module(mu) -> ModuleSpec:
    """Two-dimensional an-module whose H-eigenvalues solve x^2 + x/sqrt2 = mu."""
    mu = fe(mu)
    return module(f"M_{{{mu}}}", an(), {"H": Matrix([[ZERO, mu], [ONE, -INV_SQRT2]])})


def invariant_functional_module(n: int) -> ModuleSpec:
    """Line of invariant functionals on D_n: H acts by -n/sqrt2."""
    return character(fe(-n) * INV_SQRT2)


def nilpotent_h1_module(n: int) -> ModuleSpec:
    """H^1(n; D_n) as an-module: dual of the functional line, twisted by n*."""
    return tensor(dual(invariant_functional_module(n)), character(-INV_SQRT2))


def standard_sl2() -> ModuleSpec:
    from .lie import SL2_MATRICES
    g = sl2()
    return ModuleSpec("C^2", g, tuple(SL2_MATRICES[x] for x in g.basis), ("e1", "e2"))


def lh_kernel_cokernel(v: ModuleSpec, lam) -> tuple[int, int]:
    """Dimensions of kernel and cokernel of L_H + lam on v."""
    m = v.action("H") + Matrix.scalar(v.dim, fe(lam))
    r = m.rank()
    return v.dim - r, v.dim - r


def lh_sample_parameters() -> list:
    """Parameters probed by the kernel/cokernel checks: every candidate from the
    discrete-series and Jordan-block cases plus a few generic values."""
    lams = [fe(1 - n) * INV_SQRT2 for n in range(-2, 7)]
    return lams + [_Q, fe(2), fe("i"), fe("1/3"), fe("1 + i*r2")]


def lh_kernel_cokernel_checks() -> list:
    """L_H + lam is singular on the n-cohomology of D_n exactly at lam = (1-n)/sqrt2,
    and on the Jordan-block module exactly at lam = 1/(2 sqrt2)."""
    from .results import timed

    cases = [(f"D_{n}", nilpotent_h1_module(n), fe(1 - n) * INV_SQRT2) for n in range(1, 5)]
    cases.append(("C2_natural", ff_natural(), _Q))
    out = []
    for label, v, special in cases:
        def compute(v=v, special=special):
            bad, hits = 0, []
            for lam in lh_sample_parameters():
                k, c = lh_kernel_cokernel(v, lam)
                if k or c:
                    hits.append(str(lam))
                bad += (bool(k) != (lam == special)) + (bool(c) != (lam == special))
            return bad, {"nonvanishing_at": hits}
        out.append(timed(f"lh_kernel_cokernel[{label}]", compute))
    return out


__all__ = [
    "ModuleSpec", "ModuleError", "module", "trivial", "character", "adjoint", "dual", "tensor",
    "direct_sum", "exterior_power", "symmetric_power", "restrict", "conjugate",
    "quotient_module", "annihilator_module", "ff_sharp", "ff_flat", "ff_natural",
    "companion_module", "invariant_functional_module", "nilpotent_h1_module",
    "standard_sl2", "lh_kernel_cokernel", "lh_kernel_cokernel_checks", "lh_sample_parameters",
]
