"""Chevalley-Eilenberg complexes, their cohomology, and finite Hodge decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .lie import LieAlgebra, Subalgebra, ce_differential, restriction_matrix
from .linalg import Matrix, basis_of_span, coordinates, independent_subset
from .modules import ModuleSpec, restrict
from .scalars import ONE, ZERO, FieldElement, fe


@dataclass
class ChainComplex:
    algebra: LieAlgebra
    module: ModuleSpec
    dims: list[int]
    diffs: list[Matrix]  # diffs[i] : C^i -> C^{i+1}
    labels: list[list[str]] = field(default_factory=list)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, i: int) -> Matrix:
        """Differential out of degree i; zero outside the complex."""
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        src = self.dims[i] if 0 <= i <= self.top else 0
        tgt = self.dims[i + 1] if 0 <= i + 1 <= self.top else 0
        return Matrix.zeros(tgt, src)

    def cocycles(self, i: int) -> list[list[FieldElement]]:
        return self.d(i).nullspace()

    def coboundaries(self, i: int) -> list[list[FieldElement]]:
        prev = self.d(i - 1)
        return basis_of_span(prev.columns(), self.dims[i]) if prev.ncols else []

    def cohomology_basis(self, i: int) -> list[list[FieldElement]]:
        """First cocycles (in elimination order) independent modulo coboundaries."""
        return independent_subset(self.cocycles(i), self.dims[i], start=self.coboundaries(i))

    def square_zero_residual(self) -> int:
        return sum((self.d(i + 1) @ self.d(i)).nonzero_count() for i in range(self.top))


def build_complex(g: LieAlgebra, v: ModuleSpec) -> ChainComplex:
    if v.algebra != g:
        raise ValueError(f"module {v.name} is over {v.algebra.name}, not {g.name}")
    dims, diffs, labels = [], [], []
    for p, monos in enumerate(g.wedge_degrees):
        dims.append(len(monos) * v.dim)
        labels.append([f"{g.wedge_label(t)}⊗{b}" for t in monos for b in v.basis_labels])
        if p < g.dim:
            diffs.append(ce_differential(g, v.matrices, p))
    return ChainComplex(g, v, dims, diffs, labels)


def cohomology_dims(c: ChainComplex) -> list[int]:
    return [c.dims[i] - c.d(i).rank() - c.d(i - 1).rank() for i in range(c.top + 1)]


def euler_characteristic(values: Sequence[int]) -> int:
    return sum(x if i % 2 == 0 else -x for i, x in enumerate(values))


def restriction_map(sub: Subalgebra, v: ModuleSpec) -> list[Matrix]:
    """Matrices of H^i(g; v) -> H^i(h; v|h) in the chosen cohomology bases."""
    big = build_complex(sub.parent, v)
    small = build_complex(sub.algebra, restrict(v, sub))
    out = []
    for i in range(big.top + 1):
        src = big.cohomology_basis(i)
        if i > small.top:
            out.append(Matrix.zeros(0, len(src)))
            continue
        tgt = small.cohomology_basis(i)
        bnd = small.coboundaries(i)
        res = restriction_matrix(sub, i, v.dim)
        m = Matrix.zeros(len(tgt), len(src))
        for col, vec in enumerate(src):
            image = res.apply(vec)
            coords = coordinates(image, bnd + tgt, small.dims[i]) if small.dims[i] else []
            for r in range(len(tgt)):
                m.rows[r][col] = coords[len(bnd) + r]
        out.append(m)
    return out


# --- Hodge families ----------------------------------------------------------

Poly = dict  # monomial (sorted tuple of parameter indices) -> FieldElement


def _padd(a: Poly, b: Poly, scale: FieldElement = ONE) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, ZERO) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _degree(p: Poly) -> int:
    return max((len(m) for m in p), default=-1)


class InfeasibleHodgeSystem(ValueError):
    pass


@dataclass
class HodgeFamily:
    """All (delta, p) of the form base + directions . params meeting the Hodge identities.

    ``remaining`` lists polynomial constraints on the parameters that could
    not be reduced to linear ones; it is empty for every complex used here.
    """

    complex: ChainComplex
    layout: list[tuple[str, int, int, int]]  # (kind, degree, row, col) per unknown
    base: list[FieldElement]
    directions: list[list[FieldElement]]
    remaining: list[Poly]
    p_fixed_zero: bool

    @property
    def nparams(self) -> int:
        return len(self.directions)

    def values(self, params: Sequence) -> list[FieldElement]:
        params = [fe(x) for x in params]
        if len(params) != self.nparams:
            raise ValueError(f"family has {self.nparams} parameters, got {len(params)}")
        out = list(self.base)
        for t, col in zip(params, self.directions):
            if t:
                out = [x + t * y for x, y in zip(out, col)]
        return out

    def instantiate(self, params: Sequence) -> tuple[dict[int, Matrix], dict[int, Matrix]]:
        return _unpack(self.complex, self.layout, self.values(params))

    def contains(self, deltas: dict[int, Matrix], projections: dict[int, Matrix]) -> bool:
        target = _pack(self.complex, self.layout, deltas, projections)
        rhs = [t - b for t, b in zip(target, self.base)]
        if not self.directions:
            return all(not x for x in rhs)
        sol = Matrix.from_columns(self.directions).solve(Matrix.from_columns([rhs]))
        if sol is None:
            return False
        params = sol.column(0)
        return all(not _evaluate(p, params) for p in self.remaining)


def _evaluate(p: Poly, params: Sequence[FieldElement]) -> FieldElement:
    out = ZERO
    for m, c in p.items():
        term = c
        for k in m:
            term = term * params[k]
        out = out + term
    return out


def _layout(c: ChainComplex, with_p: bool) -> list[tuple[str, int, int, int]]:
    out = []
    for i in range(1, c.top + 1):
        out += [("delta", i, r, k) for r in range(c.dims[i - 1]) for k in range(c.dims[i])]
    if with_p:
        for i in range(c.top + 1):
            out += [("p", i, r, k) for r in range(c.dims[i]) for k in range(c.dims[i])]
    return out


def _unpack(c: ChainComplex, layout, values) -> tuple[dict[int, Matrix], dict[int, Matrix]]:
    deltas = {i: Matrix.zeros(c.dims[i - 1], c.dims[i]) for i in range(1, c.top + 1)}
    ps = {i: Matrix.zeros(c.dims[i], c.dims[i]) for i in range(c.top + 1)}
    for (kind, i, r, k), x in zip(layout, values):
        (deltas if kind == "delta" else ps)[i].rows[r][k] = x
    return deltas, ps


def _pack(c: ChainComplex, layout, deltas, ps) -> list[FieldElement]:
    out = []
    for kind, i, r, k in layout:
        src = deltas if kind == "delta" else ps
        out.append(src[i].rows[r][k] if i in src else ZERO)
    return out


def hodge_residual(c: ChainComplex, deltas: dict[int, Matrix], ps: dict[int, Matrix]) -> int:
    """Number of nonzero entries over all seven Hodge identities."""
    def dl(i):
        return deltas.get(i, Matrix.zeros(c.dims[i - 1] if i >= 1 else 0, c.dims[i] if i <= c.top else 0))

    def pr(i):
        return ps.get(i, Matrix.zeros(c.dims[i], c.dims[i]))

    bad = 0
    for i in range(c.top + 1):
        lap = Matrix.zeros(c.dims[i], c.dims[i])
        if i >= 1:
            lap = lap + c.d(i - 1) @ dl(i)
        if i < c.top:
            lap = lap + dl(i + 1) @ c.d(i)
        bad += (lap + pr(i) - Matrix.identity(c.dims[i])).nonzero_count()
        bad += (pr(i) @ pr(i) - pr(i)).nonzero_count()
        if i < c.top:
            bad += (c.d(i) @ pr(i)).nonzero_count()
            bad += (pr(i + 1) @ c.d(i)).nonzero_count()
        if i >= 1:
            bad += (dl(i) @ pr(i)).nonzero_count()
            bad += (pr(i - 1) @ dl(i)).nonzero_count()
        if i >= 2:
            bad += (dl(i - 1) @ dl(i)).nonzero_count()
    return bad


def solve_hodge_family(c: ChainComplex, max_dim: int = 64, p_zero: bool | None = None) -> HodgeFamily:
    """Every (delta, p) with d delta + delta d = 1 - p and the six companion identities.

    The linear identities are solved first.  The quadratic ones are then
    evaluated on the affine solution; those that turn out linear in the
    parameters are solved and substituted, until none is left.  When the
    cohomology vanishes ``p`` is fixed to zero unless told otherwise.
    """
    total = sum(c.dims)
    if total > max_dim:
        raise ValueError(f"complex has total dimension {total} > {max_dim}")
    if p_zero is None:
        p_zero = not any(cohomology_dims(c))
    layout = _layout(c, not p_zero)
    index = {key: n for n, key in enumerate(layout)}
    nvar = len(layout)

    rows: list[list[FieldElement]] = []
    rhs: list[FieldElement] = []

    def equation(coeffs: dict[int, FieldElement], const: FieldElement) -> None:
        row = [ZERO] * nvar
        for k, v in coeffs.items():
            row[k] = row[k] + v
        rows.append(row)
        rhs.append(const)

    n = c.top
    for i in range(n + 1):
        dim = c.dims[i]
        din, dout = c.d(i - 1), c.d(i)
        for r, k in product(range(dim), range(dim)):
            coeffs: dict[int, FieldElement] = {}
            if i >= 1:  # (d_{i-1} delta_i)[r][k]
                for m in range(c.dims[i - 1]):
                    if din.rows[r][m]:
                        key = index[("delta", i, m, k)]
                        coeffs[key] = coeffs.get(key, ZERO) + din.rows[r][m]
            if i < n:  # (delta_{i+1} d_i)[r][k]
                for m in range(c.dims[i + 1]):
                    if dout.rows[m][k]:
                        key = index[("delta", i + 1, r, m)]
                        coeffs[key] = coeffs.get(key, ZERO) + dout.rows[m][k]
            if not p_zero:
                key = index[("p", i, r, k)]
                coeffs[key] = coeffs.get(key, ZERO) + ONE
            equation(coeffs, ONE if r == k else ZERO)
        if not p_zero and i < n:
            for r, k in product(range(c.dims[i + 1]), range(dim)):
                # (d_i p_i)[r][k] = 0 and (p_{i+1} d_i)[r][k] = 0
                equation({index[("p", i, m, k)]: dout.rows[r][m]
                          for m in range(dim) if dout.rows[r][m]}, ZERO)
                equation({index[("p", i + 1, r, m)]: dout.rows[m][k]
                          for m in range(c.dims[i + 1]) if dout.rows[m][k]}, ZERO)

    system = Matrix(rows, ncols=nvar) if rows else Matrix.zeros(0, nvar)
    sol = system.solve(Matrix.from_columns([rhs], nrows=len(rhs)) if rhs else Matrix.zeros(0, 1))
    if sol is None:
        raise InfeasibleHodgeSystem("the linear Hodge identities have no solution")
    base = sol.column(0)
    directions = system.nullspace()

    while True:
        quad = _quadratic_constraints(c, layout, base, directions)
        linear = [q for q in quad if _degree(q) <= 1]
        rest = [q for q in quad if _degree(q) > 1]
        if not linear:
            break
        k = len(directions)
        a = Matrix([[q.get((j,), ZERO) for j in range(k)] for q in linear], ncols=k)
        b = Matrix.from_columns([[-q.get((), ZERO) for q in linear]])
        tsol = a.solve(b)
        if tsol is None:
            raise InfeasibleHodgeSystem("quadratic Hodge identities are inconsistent with the linear ones")
        t0 = tsol.column(0)
        kernel = a.nullspace()
        new_base = list(base)
        for t, col in zip(t0, directions):
            if t:
                new_base = [x + t * y for x, y in zip(new_base, col)]
        new_dirs = []
        for kv in kernel:
            col = [ZERO] * nvar
            for t, d in zip(kv, directions):
                if t:
                    col = [x + t * y for x, y in zip(col, d)]
            new_dirs.append(col)
        if len(new_dirs) == len(directions) and new_base == base:
            break
        base, directions = new_base, new_dirs
    return HodgeFamily(c, layout, base, directions, rest, p_zero)


def _quadratic_constraints(c: ChainComplex, layout, base, directions) -> list[Poly]:
    def entry(n: int) -> Poly:
        p: Poly = {}
        if base[n]:
            p[()] = base[n]
        for j, col in enumerate(directions):
            if col[n]:
                p[(j,)] = col[n]
        return p

    polys = [entry(n) for n in range(len(layout))]
    mats: dict[tuple[str, int], list[list[Poly]]] = {}
    for (kind, i, r, k), p in zip(layout, polys):
        shape = (c.dims[i - 1], c.dims[i]) if kind == "delta" else (c.dims[i], c.dims[i])
        m = mats.setdefault((kind, i), [[{} for _ in range(shape[1])] for _ in range(shape[0])])
        m[r][k] = p

    def mul(a, b):
        out = []
        for r in range(len(a)):
            row = []
            for k in range(len(b[0]) if b else 0):
                acc: Poly = {}
                for m in range(len(b)):
                    if a[r][m] and b[m][k]:
                        acc = _padd(acc, _pmul(a[r][m], b[m][k]))
                row.append(acc)
            out.append(row)
        return out

    out: list[Poly] = []

    def collect(m, minus=None):
        for r, row in enumerate(m):
            for k, p in enumerate(row):
                q = p if minus is None else _padd(p, minus[r][k], -ONE)
                if q:
                    out.append(q)

    n = c.top
    for i in range(2, n + 1):
        collect(mul(mats[("delta", i - 1)], mats[("delta", i)]))
    if ("p", 0) in mats:
        for i in range(n + 1):
            p = mats[("p", i)]
            collect(mul(p, p), p)
            if i >= 1:
                collect(mul(mats[("delta", i)], p))
                collect(mul(mats[("p", i - 1)], mats[("delta", i)]))
    return out


__all__ = [
    "ChainComplex", "build_complex", "cohomology_dims", "euler_characteristic",
    "restriction_map", "HodgeFamily", "InfeasibleHodgeSystem", "solve_hodge_family",
    "hodge_residual",
]
