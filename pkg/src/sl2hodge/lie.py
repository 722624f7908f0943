"""Finite-dimensional Lie algebras by structure constants, and cochains on them.

Alternating forms use the determinant convention: the wedge monomial
theta_I evaluates on basis vectors X_J to det[theta_i(X_j)].  A p-cochain
with values in V is stored in the basis theta_I (x) v_a with I running over
increasing p-tuples in lexicographic order, wedge index major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import Matrix
from .scalars import INV_SQRT2, ONE, ZERO, FieldElement, fe

Bracket = dict[int, FieldElement]


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    basis: tuple[str, ...]
    # brackets[(i, j)] for i < j, as a sparse combination of basis indices
    brackets: Mapping[tuple[int, int], Mapping[int, FieldElement]] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise LieAlgebraError(f"repeated generator in {self.basis}")
        clean = {}
        for (i, j), comb in self.brackets.items():
            comb = {k: fe(c) for k, c in comb.items() if fe(c)}
            if i == j:
                if comb:
                    raise LieAlgebraError(f"[{self.basis[i]},{self.basis[i]}] must vanish")
                continue
            if i > j:
                i, j = j, i
                comb = {k: -c for k, c in comb.items()}
            if (i, j) in clean and clean[(i, j)] != comb:
                raise LieAlgebraError(
                    f"conflicting brackets for [{self.basis[i]},{self.basis[j]}]")
            clean[(i, j)] = comb
        object.__setattr__(self, "brackets", clean)
        self.check_jacobi()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise LieAlgebraError(f"unknown generator {name!r} of {self.name}") from None

    def bracket(self, i: int, j: int) -> Bracket:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vectors(self, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> list[FieldElement]:
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.bracket(i, j).items():
                    out[k] = out[k] + a * b * c
        return out

    def check_jacobi(self) -> None:
        n = self.dim
        unit = [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
        for i, j, k in combinations(range(n), 3):
            x, y, z = unit[i], unit[j], unit[k]
            total = [ZERO] * n
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                term = self.bracket_vectors(a, self.bracket_vectors(b, c))
                total = [s + t for s, t in zip(total, term)]
            if any(total):
                raise LieAlgebraError(
                    f"Jacobi identity fails on {self.basis[i]}, {self.basis[j]}, {self.basis[k]}")

    def ad_matrix(self, i: int) -> Matrix:
        """Matrix of ad(X_i) in the basis."""
        m = Matrix.zeros(self.dim, self.dim)
        for j in range(self.dim):
            for k, c in self.bracket(i, j).items():
                m.rows[k][j] = c
        return m

    def is_subalgebra(self, vectors: Sequence[Sequence[FieldElement]]) -> bool:
        from .linalg import in_span
        for x, y in combinations(vectors, 2):
            if not in_span(self.bracket_vectors(x, y), vectors, self.dim):
                return False
        return True

    def subalgebra(self, name: str, names: Sequence[str],
                   vectors: Sequence[Sequence] | None = None) -> "Subalgebra":
        if vectors is None:
            vectors = [[ONE if k == self.index(n) else ZERO for k in range(self.dim)] for n in names]
        vectors = [[fe(c) for c in v] for v in vectors]
        if not self.is_subalgebra(vectors):
            raise LieAlgebraError(f"{list(names)} do not span a subalgebra of {self.name}")
        # structure constants of the subalgebra in its own basis
        from .linalg import coordinates
        brackets = {}
        for i, j in combinations(range(len(vectors)), 2):
            coords = coordinates(self.bracket_vectors(vectors[i], vectors[j]), vectors, self.dim)
            brackets[(i, j)] = {k: c for k, c in enumerate(coords) if c}
        alg = LieAlgebra(name, tuple(names), brackets)
        return Subalgebra(alg, self, tuple(tuple(v) for v in vectors))

    # --- cochains ---------------------------------------------------------

    @cached_property
    def wedge_degrees(self) -> list[list[tuple[int, ...]]]:
        return [list(combinations(range(self.dim), p)) for p in range(self.dim + 1)]

    @cached_property
    def wedge_basis(self) -> list[tuple[int, ...]]:
        """All wedge monomials, ordered by degree then lexicographically."""
        return [t for deg in self.wedge_degrees for t in deg]

    def wedge_label(self, mono: tuple[int, ...]) -> str:
        if not mono:
            return "1"
        return "∧".join(f"θ_{self.basis[i]}" for i in mono)


@dataclass(frozen=True)
class Subalgebra:
    algebra: LieAlgebra
    parent: LieAlgebra
    vectors: tuple[tuple[FieldElement, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


# --- sorting helpers ---------------------------------------------------------

def sort_with_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 on repeats) and the sorted tuple."""
    s = list(seq)
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(s, s[1:]):
        if a == b:
            return 0, tuple(s)
    return sign, tuple(s)


def ce_differential(g: LieAlgebra, rho: Sequence[Matrix], p: int) -> Matrix:
    """Chevalley-Eilenberg differential C^p(g;V) -> C^{p+1}(g;V) from its defining formula.

    d phi(X_0..X_p) = sum_k (-1)^k X_k . phi(..^k..)
                      + sum_{k<l} (-1)^{k+l} phi([X_k,X_l], ..^k..^l..)
    """
    dv = rho[0].nrows if rho else 1
    n = g.dim
    src = g.wedge_degrees[p] if 0 <= p <= n else []
    tgt = g.wedge_degrees[p + 1] if 0 <= p + 1 <= n else []
    src_index = {t: i for i, t in enumerate(src)}
    d = Matrix.zeros(len(tgt) * dv, len(src) * dv)
    for row, J in enumerate(tgt):
        # module-action terms
        for k, jk in enumerate(J):
            rest = J[:k] + J[k + 1:]
            col = src_index.get(rest)
            if col is None:
                continue
            sgn = ONE if k % 2 == 0 else -ONE
            act = rho[jk]
            for b in range(dv):
                for a in range(dv):
                    x = act.rows[b][a]
                    if x:
                        r, c = row * dv + b, col * dv + a
                        d.rows[r][c] = d.rows[r][c] + sgn * x
        # bracket terms
        for k, l in combinations(range(len(J)), 2):
            rest = tuple(J[m] for m in range(len(J)) if m not in (k, l))
            sgn = ONE if (k + l) % 2 == 0 else -ONE
            for m, c in g.bracket(J[k], J[l]).items():
                s, key = sort_with_sign((m,) + rest)
                if s == 0:
                    continue
                col = src_index[key]
                coef = sgn * c * s
                for a in range(dv):
                    r, cc = row * dv + a, col * dv + a
                    d.rows[r][cc] = d.rows[r][cc] + coef
    return d


def restriction_matrix(sub: Subalgebra, p: int, module_dim: int = 1) -> Matrix:
    """Pull back p-cochains on the parent algebra to the subalgebra.

    Entries are the p x p minors det[theta_i(Y_j)] of the inclusion.
    """
    g, h = sub.parent, sub.algebra
    src, tgt = g.wedge_degrees[p], (h.wedge_degrees[p] if p <= h.dim else [])
    m = Matrix.zeros(len(tgt) * module_dim, len(src) * module_dim)
    for r, J in enumerate(tgt):
        for c, I in enumerate(src):
            minor = Matrix([[sub.vectors[j][i] for i in I] for j in J]) if p else None
            val = minor.det() if p else ONE
            if val:
                for a in range(module_dim):
                    m.rows[r * module_dim + a][c * module_dim + a] = val
    return m


def contraction_matrix(g: LieAlgebra, vec: Sequence[FieldElement]) -> Matrix:
    """iota(vec) on the full exterior algebra, in the wedge_basis order."""
    basis = g.wedge_basis
    index = {t: i for i, t in enumerate(basis)}
    m = Matrix.zeros(len(basis), len(basis))
    for c, I in enumerate(basis):
        for pos, i in enumerate(I):
            x = fe(vec[i])
            if not x:
                continue
            rest = I[:pos] + I[pos + 1:]
            r = index[rest]
            m.rows[r][c] = m.rows[r][c] + (x if pos % 2 == 0 else -x)
    return m


def wedge_matrix(g: LieAlgebra, i: int) -> Matrix:
    """Left exterior multiplication by theta_i on the full exterior algebra."""
    basis = g.wedge_basis
    index = {t: k for k, t in enumerate(basis)}
    m = Matrix.zeros(len(basis), len(basis))
    for c, I in enumerate(basis):
        s, key = sort_with_sign((i,) + I)
        if s:
            m.rows[index[key]][c] = ONE if s > 0 else -ONE
    return m


def full_ce_differential(g: LieAlgebra) -> Matrix:
    """Trivial-coefficient differential on the whole exterior algebra."""
    basis = g.wedge_basis
    n = len(basis)
    out = Matrix.zeros(n, n)
    offsets = [0]
    for deg in g.wedge_degrees:
        offsets.append(offsets[-1] + len(deg))
    triv = [Matrix.zeros(1, 1) for _ in range(g.dim)]
    for p in range(g.dim):
        d = ce_differential(g, triv, p)
        for r in range(d.nrows):
            for c in range(d.ncols):
                if d.rows[r][c]:
                    out.rows[offsets[p + 1] + r][offsets[p] + c] = d.rows[r][c]
    return out


# --- the algebras used throughout ------------------------------------------

def sl2() -> LieAlgebra:
    """sl(2,R) with basis E, H, F: [H,E]=E/sqrt2, [H,F]=-F/sqrt2, [E,F]=H/sqrt2."""
    E, H, F = 0, 1, 2
    return LieAlgebra("sl2", ("E", "H", "F"), {
        (H, E): {E: INV_SQRT2},
        (H, F): {F: -INV_SQRT2},
        (E, F): {H: INV_SQRT2},
    })


def an() -> LieAlgebra:
    H, E = 0, 1
    return LieAlgebra("an", ("H", "E"), {(H, E): {E: INV_SQRT2}})


def nilpotent() -> LieAlgebra:
    return LieAlgebra("n", ("E",), {})


def an_in_sl2() -> Subalgebra:
    return sl2().subalgebra("an", ("H", "E"))


def n_in_an() -> Subalgebra:
    return an().subalgebra("n", ("E",))


SL2_MATRICES = {
    "H": Matrix([[INV_SQRT2 / 2, 0], [0, -INV_SQRT2 / 2]]),
    "E": Matrix([[0, fe("1/2")], [0, 0]]),
    "F": Matrix([[0, 0], [fe("1/2"), 0]]),
}
