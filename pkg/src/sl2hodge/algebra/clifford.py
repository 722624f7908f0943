"""Clifford algebra C(g + g*) for the duality pairing, with its spin representation.

The bilinear form is (X+phi | Y+psi) = (psi(X) + phi(Y))/2, so vectors and
covectors square to zero and X_i theta_j + theta_j X_i = delta_ij.  A
monomial is a strictly increasing tuple of generator positions in a fixed
total order of the 2n generators.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..lie import LieAlgebra, contraction_matrix, full_ce_differential, wedge_matrix
from ..linalg import Matrix
from ..scalars import ONE, ZERO, FieldElement, fe
from .core import Algebra, Element


def dual_name(name: str) -> str:
    return f"θ_{name}"


class CliffordAlgebra(Algebra):
    def __init__(self, lie: LieAlgebra, order: Sequence[str] | None = None):
        super().__init__()
        self.lie = lie
        self.name = f"Cl({lie.name})"
        vec_names = list(lie.basis)
        all_names = vec_names + [dual_name(v) for v in vec_names]
        if order is None:
            order = all_names
        order = list(order)
        if sorted(order) != sorted(all_names):
            raise ValueError(f"generator order {order} must list exactly {all_names}")
        self.order = tuple(order)
        self.rank = {name: r for r, name in enumerate(order)}
        n = lie.dim
        # generator position -> ("vec" | "cov", lie index)
        self.kind: list[tuple[str, int]] = []
        for name in order:
            if name in vec_names:
                self.kind.append(("vec", vec_names.index(name)))
            else:
                self.kind.append(("cov", vec_names.index(name[2:])))
        self.dual = [self.rank[dual_name(vec_names[i])] if k == "vec" else self.rank[vec_names[i]]
                     for k, i in self.kind]
        self.one = ()
        self._normal = lru_cache(maxsize=None)(self._normal_word)
        self._spin_cache: dict[tuple[int, ...], Matrix] = {}
        self.dim = 4 ** n

    # --- products -----------------------------------------------------------

    def _normal_word(self, word: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a == b:
                return ()
            if a > b:
                res: dict[tuple[int, ...], int] = {}
                for m, c in self._normal(word[:i] + (b, a) + word[i + 2:]):
                    res[m] = res.get(m, 0) - c
                if self.dual[a] == b:
                    for m, c in self._normal(word[:i] + word[i + 2:]):
                        res[m] = res.get(m, 0) + c
                return tuple((m, c) for m, c in res.items() if c)
        return ((word, 1),)

    def _mul_mono(self, m1, m2):
        return {m: fe(c) for m, c in self._normal(m1 + m2)}

    def word(self, word: Sequence[int]) -> Element:
        return Element(self, {m: fe(c) for m, c in self._normal(tuple(word))})

    def monomials(self) -> list[tuple[int, ...]]:
        k = len(self.order)
        return [c for d in range(k + 1) for c in combinations(range(k), d)]

    def mono_key(self, m):
        return (len(m), m)

    def fmt_mono(self, m) -> str:
        return " ".join(self.order[g] for g in m) if m else "1"

    def parse_mono(self, text: str) -> Element:
        text = text.strip()
        if text in ("", "1"):
            return self.unit()
        try:
            return self.word([self.rank[t] for t in text.split()])
        except KeyError as exc:
            raise ValueError(f"unknown Clifford generator {exc.args[0]!r} in {self.name}") from None

    # --- named generators ----------------------------------------------------

    def gen(self, name: str) -> Element:
        return Element(self, {(self.rank[name],): ONE})

    def vector(self, coords: Sequence) -> Element:
        """The Clifford image of a Lie algebra vector given in Lie-basis coordinates."""
        out = self.zero()
        for i, c in enumerate(coords):
            if fe(c):
                out = out + self.gen(self.lie.basis[i]).scale(c)
        return out

    def covector(self, coords: Sequence) -> Element:
        out = self.zero()
        for i, c in enumerate(coords):
            if fe(c):
                out = out + self.gen(dual_name(self.lie.basis[i])).scale(c)
        return out

    def __getitem__(self, name: str) -> Element:
        return self.gen(name)

    # --- spin representation -------------------------------------------------

    def _gen_matrix(self, g: int) -> Matrix:
        kind, i = self.kind[g]
        if kind == "vec":
            unit = [ONE if k == i else ZERO for k in range(self.lie.dim)]
            return contraction_matrix(self.lie, unit)
        return wedge_matrix(self.lie, i)

    def spin_mono(self, m: tuple[int, ...]) -> Matrix:
        hit = self._spin_cache.get(m)
        if hit is None:
            size = len(self.lie.wedge_basis)
            hit = Matrix.identity(size)
            for g in m:
                hit = hit @ self._gen_matrix(g)
            self._spin_cache[m] = hit
        return hit

    def spin(self, x: Element) -> Matrix:
        """Matrix of sigma(x) on the exterior algebra in the wedge-monomial basis."""
        if x.alg is not self:
            raise TypeError("element of a different Clifford algebra")
        size = len(self.lie.wedge_basis)
        out = Matrix.zeros(size, size)
        for m, c in x.terms.items():
            out = out + self.spin_mono(m).scale(c)
        return out

    def from_matrix(self, target: Matrix) -> Element:
        """The unique x with sigma(x) = target (sigma is bijective)."""
        monos = self.monomials()
        cols = []
        for m in monos:
            sm = self.spin_mono(m)
            cols.append([x for row in sm.rows for x in row])
        system = Matrix.from_columns(cols)
        rhs = Matrix.from_columns([[x for row in target.rows for x in row]])
        sol = system.solve(rhs)
        if sol is None:
            raise ValueError("matrix is not in the image of the spin representation")
        return Element(self, {m: c for m, c in zip(monos, sol.column(0)) if c})

    def spin_rank(self) -> int:
        monos = self.monomials()
        cols = [[x for row in self.spin_mono(m).rows for x in row] for m in monos]
        return Matrix.from_columns(cols).rank()

    # --- antiautomorphism ----------------------------------------------------

    def transpose(self, x: Element) -> Element:
        out: dict = {}
        for m, c in x.terms.items():
            word = tuple(self.dual[g] for g in reversed(m))
            for mm, cc in self._normal(word):
                out[mm] = out.get(mm, ZERO) + c * cc
        return Element(self, out)


def clifford_mul(x: Element, y: Element) -> Element:
    return x * y


def spin(x: Element) -> Matrix:
    return x.alg.spin(x)


def transpose(x: Element) -> Element:
    return x.alg.transpose(x)


def dstar(cl: CliffordAlgebra) -> Element:
    """Clifford element acting as the Chevalley-Eilenberg differential on the exterior algebra."""
    return cl.from_matrix(full_ce_differential(cl.lie))


def lie_derivative_hat(cl: CliffordAlgebra, name: str) -> Element:
    """L^_X = - sum_i theta_i [X, X_i]."""
    g = cl.lie
    x = g.index(name)
    out = cl.zero()
    for i in range(g.dim):
        br = g.bracket(x, i)
        if not br:
            continue
        vec = [br.get(k, ZERO) for k in range(g.dim)]
        out = out - cl.gen(dual_name(g.basis[i])) * cl.vector(vec)
    return out


def coadjoint_form(cl: CliffordAlgebra, name: str, form: Sequence) -> Element:
    """The covector theta -> -theta o ad(X) applied to a covector, as a Clifford element."""
    g = cl.lie
    x = g.index(name)
    out = [ZERO] * g.dim
    for j in range(g.dim):
        for k, c in g.bracket(x, j).items():
            out[j] = out[j] - fe(form[k]) * c
    return cl.covector(out)
