"""Hochschild-Serre spectral sequence of a pair h in g with coefficients in V.

Everything is computed from the filtration by exact linear algebra:

    F^p C^n    = cochains killed by any n-p+1 contractions with vectors of h
    Z_r^{p,q}  = {x in F^p C^{p+q} : dx in F^{p+r} C^{p+q+1}}
    B_r^{p,q}  = d(F^{p-r+1} C^{p+q-1}) intersected with F^p C^{p+q}
    E_r^{p,q}  = Z_r^{p,q} / (B_r^{p,q} + Z_{r-1}^{p+1,q-1})
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .cohomology import ChainComplex, build_complex, cohomology_dims
from .lie import LieAlgebra, Subalgebra, contraction_matrix
from .linalg import Matrix, basis_of_span, coordinates, independent_subset, intersect, kron, preimage
from .modules import (ModuleSpec, annihilator_module, character, conjugate, direct_sum,
                      exterior_power, restrict, standard_sl2, symmetric_power, tensor, trivial)
from .results import VerificationResult, timed
from .scalars import FieldElement, fe

Vectors = list[list[FieldElement]]


@dataclass
class FilteredComplex:
    complex: ChainComplex
    sub: Subalgebra
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def g(self) -> LieAlgebra:
        return self.complex.algebra

    @cached_property
    def _contractions(self) -> list[Matrix]:
        """Contraction by each basis vector of h on the whole exterior algebra (tensor V)."""
        ident = Matrix.identity(self.complex.module.dim)
        return [kron(contraction_matrix(self.g, vec), ident) for vec in self.sub.vectors]

    def _block(self, m: Matrix, src: int, tgt: int) -> Matrix:
        dv = self.complex.module.dim
        offs = [0]
        for deg in self.g.wedge_degrees:
            offs.append(offs[-1] + len(deg) * dv)
        rows = range(offs[tgt], offs[tgt + 1])
        cols = range(offs[src], offs[src + 1])
        return m.submatrix(list(rows), list(cols))

    def dim(self, n: int) -> int:
        return self.complex.dims[n] if 0 <= n <= self.complex.top else 0

    def F(self, p: int, n: int) -> Vectors:
        """Basis of F^p C^n."""
        key = (p, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        size = self.dim(n)
        if size == 0 or p > n:
            out: Vectors = []
        elif p <= 0 or n - p + 1 > self.sub.dim:
            out = Matrix.identity(size).columns()
        else:
            k = n - p + 1
            blocks = []
            for combo in combinations(range(self.sub.dim), k):
                m = Matrix.identity(size)
                deg = n
                for j in combo:
                    m = self._block(self._contractions[j], deg, deg - 1) @ m
                    deg -= 1
                blocks.append(m)
            stacked = blocks[0]
            for b in blocks[1:]:
                stacked = stacked.vstack(b)
            out = stacked.nullspace()
        self._cache[key] = out
        return out

    def Z(self, r: int, p: int, q: int) -> Vectors:
        n = p + q
        dom = self.F(p, n)
        if not dom:
            return []
        d = self.complex.d(n)
        return preimage(d, self.F(p + r, n + 1), dom) if d.nrows else basis_of_span(dom, self.dim(n))

    def B(self, r: int, p: int, q: int) -> Vectors:
        n = p + q
        src = self.F(p - r + 1, n - 1)
        if not src or not self.dim(n):
            return []
        d = self.complex.d(n - 1)
        image = basis_of_span([d.apply(v) for v in src], self.dim(n))
        return intersect(image, self.F(p, n), self.dim(n))


def build_filtration(sub: Subalgebra, v: ModuleSpec) -> FilteredComplex:
    return FilteredComplex(build_complex(sub.parent, v), sub)


@dataclass
class SpectralSheet:
    r: int
    dims: dict[tuple[int, int], int]
    reps: dict[tuple[int, int], Vectors]
    differentials: dict[tuple[int, int], Matrix]  # d_r out of (p, q)
    pmax: int
    qmax: int

    def render(self) -> str:
        """Sheet drawn with q increasing upward and p to the right."""
        width = max(3, *(len(str(x)) for x in self.dims.values()))
        lines = []
        for q in range(self.qmax, -1, -1):
            cells = [str(self.dims.get((p, q), 0)).rjust(width) for p in range(self.pmax + 1)]
            lines.append(f"q={q} | " + " ".join(cells))
        lines.append("      " + "-" * ((width + 1) * (self.pmax + 1) + 1))
        lines.append("      " + " ".join(f"p={p}".rjust(width) for p in range(self.pmax + 1)))
        return "\n".join(lines)

    def rank(self, p: int, q: int) -> int:
        m = self.differentials.get((p, q))
        return m.rank() if m is not None else 0


def sheet(fc: FilteredComplex, r: int) -> SpectralSheet:
    if r < 1:
        raise ValueError("sheets are indexed from r = 1")
    pmax = fc.g.dim - fc.sub.dim
    qmax = fc.sub.dim
    dims, reps, denoms = {}, {}, {}
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            n = p + q
            size = fc.dim(n)
            z = fc.Z(r, p, q)
            lower = fc.Z(r - 1, p + 1, q - 1) if r >= 1 else []
            den = basis_of_span(fc.B(r, p, q) + lower, size) if size else []
            rep = independent_subset(z, size, start=den)
            dims[(p, q)], reps[(p, q)], denoms[(p, q)] = len(rep), rep, den
    diffs = {}
    for (p, q), rep in reps.items():
        tgt = (p + r, q - r + 1)
        if tgt not in reps:
            continue
        trep, tden = reps[tgt], denoms[tgt]
        m = Matrix.zeros(len(trep), len(rep))
        if rep and trep:
            d = fc.complex.d(p + q)
            for col, v in enumerate(rep):
                coords = coordinates(d.apply(v), tden + trep, fc.dim(p + q + 1))
                if coords is None:
                    raise ArithmeticError(f"d_{r} image at {(p, q)} leaves the target page")
                for row in range(len(trep)):
                    m.rows[row][col] = coords[len(tden) + row]
        diffs[(p, q)] = m
    return SpectralSheet(r, dims, reps, diffs, pmax, qmax)


def limit_sheet(fc: FilteredComplex) -> SpectralSheet:
    return sheet(fc, fc.g.dim + 1)


def totals(sh: SpectralSheet, top: int) -> list[int]:
    return [sum(sh.dims.get((p, n - p), 0) for p in range(sh.pmax + 1)) for n in range(top + 1)]


def e1_expected(sub: Subalgebra, v: ModuleSpec) -> dict[tuple[int, int], int]:
    """dim H^q(h; wedge^p (g/h)* tensor V) for every (p, q)."""
    ann = annihilator_module(sub)
    vh = restrict(v, sub)
    out = {}
    for p in range(ann.dim + 1):
        coeff = tensor(exterior_power(ann, p), vh)
        for q, x in enumerate(cohomology_dims(build_complex(sub.algebra, coeff))):
            out[(p, q)] = x
    return out


def check_e1_isomorphism(sub: Subalgebra, v: ModuleSpec) -> VerificationResult:
    def compute():
        got = sheet(build_filtration(sub, v), 1).dims
        want = e1_expected(sub, v)
        bad = sum(1 for k in set(got) | set(want) if got.get(k, 0) != want.get(k, 0))
        return bad, {"e1": _fmt_dims(got)}
    return timed(f"e1_matches_subalgebra_cohomology[{sub.parent.name}>{sub.algebra.name};{v.name}]", compute)


def check_convergence(sub: Subalgebra, v: ModuleSpec) -> VerificationResult:
    def compute():
        fc = build_filtration(sub, v)
        got = totals(limit_sheet(fc), fc.complex.top)
        want = cohomology_dims(fc.complex)
        return sum(1 for a, b in zip(got, want) if a != b), {"totals": got, "cohomology": want}
    return timed(f"converges[{sub.parent.name}>{sub.algebra.name};{v.name}]", compute)


def check_page_homology(sub: Subalgebra, v: ModuleSpec) -> VerificationResult:
    """dim E_{r+1} = dim H(E_r, d_r) at every spot, and d_r squares to zero, until stable."""
    def compute():
        fc = build_filtration(sub, v)
        bad = 0
        prev = sheet(fc, 1)
        for r in range(1, fc.g.dim + 1):
            nxt = sheet(fc, r + 1)
            for (p, q), dim in prev.dims.items():
                out_rank = prev.rank(p, q)
                src = (p - r, q + r - 1)
                in_rank = prev.rank(*src) if src in prev.dims else 0
                if nxt.dims[(p, q)] != dim - out_rank - in_rank:
                    bad += 1
                m = prev.differentials.get((p, q))
                tgt = (p + r, q - r + 1)
                m2 = prev.differentials.get(tgt)
                if m is not None and m2 is not None and m.ncols and m2.nrows:
                    bad += (m2 @ m).nonzero_count()
            prev = nxt
        return bad
    return timed(f"page_homology[{sub.parent.name}>{sub.algebra.name};{v.name}]", compute)


def ideal_e2_dims(sub: Subalgebra, v: ModuleSpec) -> dict[tuple[int, int], int]:
    """E_2 of a codimension-one ideal: kernel and cokernel of L_X on H^q(h; V)."""
    g, h = sub.parent, sub.algebra
    if g.dim - h.dim != 1:
        raise ValueError("only codimension-one ideals are supported")
    units = [[fe(int(k == i)) for k in range(g.dim)] for i in range(g.dim)]
    x = independent_subset(units, g.dim, start=[list(w) for w in sub.vectors])[0]
    hv = [list(w) for w in sub.vectors]
    # restricted adjoint of x on h, in the basis of h
    adx = Matrix.zeros(h.dim, h.dim)
    for c, y in enumerate(hv):
        coords = coordinates(g.bracket_vectors(x, y), hv, g.dim)
        if coords is None:
            raise ValueError(f"{h.name} is not an ideal of {g.name}")
        for r in range(h.dim):
            adx.rows[r][c] = coords[r]
    line = LieAlgebra("x", ("X",))
    co = ModuleSpec("h*", line, (-adx.T,))
    cx = build_complex(h, restrict(v, sub))
    rho_x = v.action_of(x)
    out = {}
    for q in range(h.dim + 1):
        wedge = exterior_power(co, q).matrices[0]
        lx = kron(wedge, Matrix.identity(v.dim)) + kron(Matrix.identity(wedge.nrows), rho_x)
        reps = cx.cohomology_basis(q)
        bnd = cx.coboundaries(q)
        induced = Matrix.zeros(len(reps), len(reps))
        for col, vec in enumerate(reps):
            coords = coordinates(lx.apply(vec), bnd + reps, cx.dims[q])
            for r in range(len(reps)):
                induced.rows[r][col] = coords[len(bnd) + r]
        rank = induced.rank()
        out[(0, q)] = len(reps) - rank
        out[(1, q)] = len(reps) - rank
    return out


def random_modules(seed: int = 0) -> list[tuple[Subalgebra, ModuleSpec]]:
    """Ten small modules for the pairs an in sl2 and n in an, reproducible from the seed."""
    from .lie import an, an_in_sl2, n_in_an, sl2
    rng = random.Random(seed)

    def rand_invertible(k: int) -> Matrix:
        while True:
            m = Matrix([[fe(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)])
            if m.rank() == k:
                return m

    std = standard_sl2()
    a, n_sub = an_in_sl2(), n_in_an()
    out: list[tuple[Subalgebra, ModuleSpec]] = []
    k = rng.randint(2, 3)
    out.append((a, conjugate(symmetric_power(std, k), rand_invertible(k + 1))))
    out.append((a, direct_sum(trivial(sl2()), std)))
    out.append((a, conjugate(std, rand_invertible(2))))
    out.append((a, symmetric_power(std, 2)))
    out.append((a, tensor(std, std)))
    lam = fe(rng.choice(["0", "1/2*r2", "-1/2*r2", "1", "1/3", "i"]))
    out.append((n_sub, character(lam)))
    out.append((n_sub, restrict(std, a)))
    out.append((n_sub, conjugate(restrict(symmetric_power(std, 2), a), rand_invertible(3))))
    out.append((n_sub, tensor(character(fe(rng.randint(-2, 2)) / 2), restrict(std, a))))
    out.append((n_sub, direct_sum(character("1/2*r2"), character(lam))))
    assert all(m.algebra == (sl2() if s is a else an()) for s, m in out)
    return out


def _fmt_dims(d: dict[tuple[int, int], int]) -> dict[str, int]:
    return {f"{p},{q}": v for (p, q), v in sorted(d.items())}


__all__ = [
    "FilteredComplex", "SpectralSheet", "build_filtration", "sheet", "limit_sheet", "totals",
    "e1_expected", "check_e1_isomorphism", "check_convergence", "check_page_homology",
    "ideal_e2_dims", "random_modules",
]
