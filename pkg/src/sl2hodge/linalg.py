"""Dense exact matrices over Q(i, sqrt2) with Gauss-Jordan elimination.

Pivots are always the first nonzero entry of a column, so every result
(ranks, kernel bases, complements) is deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, FieldElement, fe


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows = [[fe(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")

    # --- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        m = cls.__new__(cls)
        m.rows = [[ZERO] * ncols for _ in range(nrows)]
        m.nrows, m.ncols = nrows, ncols
        return m

    @classmethod
    def identity(cls, n: int) -> Matrix:
        m = cls.zeros(n, n)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        if not cols:
            return cls.zeros(nrows or 0, 0)
        n = len(cols[0])
        return cls([[fe(col[i]) for col in cols] for i in range(n)], ncols=len(cols))

    @classmethod
    def scalar(cls, n: int, c) -> Matrix:
        m = cls.zeros(n, n)
        c = fe(c)
        for i in range(n):
            m.rows[i][i] = c
        return m

    # --- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[FieldElement]:
        return [row[j] for row in self.rows]

    def columns(self) -> list[list[FieldElement]]:
        return [self.column(j) for j in range(self.ncols)]

    def copy(self) -> Matrix:
        m = Matrix.zeros(self.nrows, self.ncols)
        m.rows = [list(r) for r in self.rows]
        return m

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def nonzero_count(self) -> int:
        return sum(1 for row in self.rows for x in row if x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        m = Matrix.zeros(self.nrows, self.ncols)
        m.rows = [[(x + y if x else y) if y else x for x, y in zip(r, s)]
                  for r, s in zip(self.rows, other.rows)]
        return m

    def __sub__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        m = Matrix.zeros(self.nrows, self.ncols)
        m.rows = [[x - y if y else x for x, y in zip(r, s)]
                  for r, s in zip(self.rows, other.rows)]
        return m

    def __neg__(self) -> Matrix:
        return self.scale(-ONE)

    def scale(self, c) -> Matrix:
        c = fe(c)
        m = Matrix.zeros(self.nrows, self.ncols)
        m.rows = [[c * x for x in r] for r in self.rows]
        return m

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix.zeros(self.nrows, other.ncols)
        ocols = other.ncols
        for i, row in enumerate(self.rows):
            acc = [ZERO] * ocols
            for k, x in enumerate(row):
                if not x:
                    continue
                orow = other.rows[k]
                for j in range(ocols):
                    y = orow[j]
                    if y:
                        acc[j] = acc[j] + x * y
            out.rows[i] = acc
        return out

    def apply(self, vec: Sequence[FieldElement]) -> list[FieldElement]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            acc = ZERO
            for x, y in zip(row, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def transpose(self) -> Matrix:
        m = Matrix.zeros(self.ncols, self.nrows)
        m.rows = [list(col) for col in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)]
        return m

    T = property(transpose)

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        m = Matrix.zeros(self.nrows, self.ncols + other.ncols)
        m.rows = [r + s for r, s in zip(self.rows, other.rows)]
        return m

    def vstack(self, other: Matrix) -> Matrix:
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        m = Matrix.zeros(self.nrows + other.nrows, self.ncols)
        m.rows = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        return m

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        m = Matrix.zeros(len(rows), len(cols))
        m.rows = [[self.rows[i][j] for j in cols] for i in rows]
        return m

    # --- elimination ------------------------------------------------------

    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form and the pivot columns."""
        m = self.copy()
        rows = m.rows
        pivots: list[int] = []
        r = 0
        for c in range(m.ncols):
            if r >= m.nrows:
                break
            p = next((i for i in range(r, m.nrows) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            piv = rows[r][c]
            if piv != ONE:
                inv = piv.inv()
                rows[r] = [x * inv if x else x for x in rows[r]]
            prow = rows[r]
            for i in range(m.nrows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[FieldElement]]:
        """Kernel basis, one vector per free column, in column order."""
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for r, pc in enumerate(pivots):
                x = red.rows[r][f]
                if x:
                    v[pc] = -x
            basis.append(v)
        return basis

    def solve(self, rhs: Matrix) -> Matrix | None:
        """One solution X of self @ X = rhs, or None when inconsistent."""
        aug = self.hstack(rhs)
        red, pivots = aug.rref()
        if any(p >= self.ncols for p in pivots):
            return None
        x = Matrix.zeros(self.ncols, rhs.ncols)
        for r, pc in enumerate(pivots):
            x.rows[pc] = red.rows[r][self.ncols:]
        return x

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise ValueError("not square")
        x = self.solve(Matrix.identity(self.nrows))
        if x is None or self.rank() != self.nrows:
            raise ZeroDivisionError("singular matrix")
        return x

    def det(self) -> FieldElement:
        if self.nrows != self.ncols:
            raise ValueError("not square")
        m = [list(r) for r in self.rows]
        n = self.nrows
        out = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                out = -out
            piv = m[c][c]
            out = out * piv
            inv = piv.inv()
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return out


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


# --- subspace helpers (subspaces given as lists of column vectors) -----------

Vector = list


def span_matrix(vectors: Sequence[Sequence[FieldElement]], dim: int) -> Matrix:
    if not vectors:
        return Matrix.zeros(dim, 0)
    return Matrix.from_columns(vectors)


def independent_subset(vectors: Sequence[Sequence[FieldElement]], dim: int,
                       start: Sequence[Sequence[FieldElement]] = ()) -> list[list[FieldElement]]:
    """Greedily keep each vector that enlarges span(start + kept)."""
    kept: list[list[FieldElement]] = []
    base = list(start)
    r = span_matrix(base, dim).rank() if base else 0
    for v in vectors:
        trial = span_matrix(base + kept + [list(v)], dim).rank()
        if trial > r:
            kept.append(list(v))
            r = trial
    return kept


def basis_of_span(vectors: Sequence[Sequence[FieldElement]], dim: int) -> list[list[FieldElement]]:
    if not vectors:
        return []
    m = span_matrix(vectors, dim)
    _, pivots = m.rref()
    return [m.column(j) for j in pivots]


def intersect(a: Sequence[Sequence[FieldElement]], b: Sequence[Sequence[FieldElement]],
              dim: int) -> list[list[FieldElement]]:
    """Basis of span(a) intersected with span(b)."""
    if not a or not b:
        return []
    ma, mb = span_matrix(a, dim), span_matrix(b, dim)
    ker = ma.hstack(-mb).nullspace()
    vecs = [ma.apply(k[: ma.ncols]) for k in ker]
    return basis_of_span(vecs, dim)


def in_span(v: Sequence[FieldElement], vectors: Sequence[Sequence[FieldElement]], dim: int) -> bool:
    if all(not x for x in v):
        return True
    if not vectors:
        return False
    m = span_matrix(vectors, dim)
    return m.rank() == m.hstack(Matrix.from_columns([list(v)])).rank()


def coordinates(v: Sequence[FieldElement], vectors: Sequence[Sequence[FieldElement]],
                dim: int) -> list[FieldElement] | None:
    """Coefficients expressing v in the (independent) vectors, or None."""
    m = span_matrix(vectors, dim)
    sol = m.solve(Matrix.from_columns([list(v)]) if dim else Matrix.zeros(0, 1))
    if sol is None:
        return None
    return sol.column(0)


def preimage(m: Matrix, target: Sequence[Sequence[FieldElement]],
             domain: Sequence[Sequence[FieldElement]]) -> list[list[FieldElement]]:
    """Basis of {x in span(domain) : m x in span(target)}."""
    if not domain:
        return []
    dmat = span_matrix(domain, m.ncols)
    image = m @ dmat
    if target:
        tmat = span_matrix(target, m.nrows)
        system = image.hstack(-tmat)
    else:
        system = image
    ker = system.nullspace()
    vecs = [dmat.apply(k[: dmat.ncols]) for k in ker]
    return basis_of_span(vecs, m.ncols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = Matrix.zeros(a.nrows * b.nrows, a.ncols * b.ncols)
    for i in range(a.nrows):
        for j in range(a.ncols):
            x = a.rows[i][j]
            if not x:
                continue
            for k in range(b.nrows):
                brow = b.rows[k]
                orow = out.rows[i * b.nrows + k]
                for l in range(b.ncols):
                    if brow[l]:
                        orow[j * b.ncols + l] = x * brow[l]
    return out


def as_matrix(obj: Iterable[Iterable]) -> Matrix:
    return obj if isinstance(obj, Matrix) else Matrix(list(obj))
