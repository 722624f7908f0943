"""Enveloping algebras in PBW normal form, and small algebras given by a table."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Mapping, Sequence

from ..lie import LieAlgebra
from ..scalars import ONE, FieldElement, fe
from .core import Algebra, Element


class EnvelopingAlgebra(Algebra):
    """U(g) with monomials x_1^a1 ... x_k^ak in a fixed variable order.

    A monomial is a non-decreasing tuple of positions in ``order``.
    Straightening uses yx = xy + [y, x] on the first descent.
    """

    def __init__(self, lie: LieAlgebra, order: Sequence[str] | None = None):
        super().__init__()
        self.lie = lie
        self.name = f"U({lie.name})"
        self.order = tuple(order) if order is not None else tuple(lie.basis)
        if sorted(self.order) != sorted(lie.basis):
            raise ValueError(f"PBW order {self.order} must list {lie.basis}")
        self.pos = {name: p for p, name in enumerate(self.order)}
        self._lie_of_pos = [lie.index(n) for n in self.order]
        self._pos_of_lie = {li: p for p, li in enumerate(self._lie_of_pos)}
        self.one = ()
        self._normal = lru_cache(maxsize=None)(self._normal_word)

    def _normal_word(self, word: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], FieldElement], ...]:
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b:
                res: dict[tuple[int, ...], FieldElement] = {}
                for m, c in self._normal(word[:i] + (b, a) + word[i + 2:]):
                    res[m] = res[m] + c if m in res else c
                br = self.lie.bracket(self._lie_of_pos[a], self._lie_of_pos[b])
                for k, ck in br.items():
                    mid = (self._pos_of_lie[k],)
                    for m, c in self._normal(word[:i] + mid + word[i + 2:]):
                        v = ck * c
                        res[m] = res[m] + v if m in res else v
                return tuple((m, c) for m, c in res.items() if c)
        return ((word, ONE),)

    def _mul_mono(self, m1, m2):
        return dict(self._normal(m1 + m2))

    def word(self, names: Sequence[str]) -> Element:
        return Element(self, dict(self._normal(tuple(self.pos[n] for n in names))))

    def gen(self, name: str) -> Element:
        return Element(self, {(self.pos[name],): ONE})

    def __getitem__(self, name: str) -> Element:
        return self.gen(name)

    def mono_key(self, m):
        return (len(m), m)

    def fmt_mono(self, m) -> str:
        if not m:
            return "1"
        out, i = [], 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            name = self.order[m[i]]
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return " ".join(out)

    def parse_mono(self, text: str) -> Element:
        text = text.strip()
        if text in ("", "1"):
            return self.unit()
        names: list[str] = []
        for tok in text.split():
            m = re.fullmatch(r"([A-Za-z_0-9θ]+)(?:\^(\d+))?", tok)
            if m is None or m.group(1) not in self.pos:
                raise ValueError(f"bad PBW token {tok!r} for {self.name}")
            names.extend([m.group(1)] * int(m.group(2) or 1))
        return self.word(names)


class TableAlgebra(Algebra):
    """Finite-dimensional algebra from a multiplication table on named basis elements."""

    def __init__(self, name: str, basis: Sequence[str],
                 table: Mapping[tuple[str, str], Mapping[str, object]], one: str = "1"):
        super().__init__()
        self.name = name
        self.basis = tuple(basis)
        self.one = one
        self.table = {}
        for x in self.basis:
            for y in self.basis:
                if x == one:
                    self.table[(x, y)] = {y: ONE}
                elif y == one:
                    self.table[(x, y)] = {x: ONE}
                else:
                    entry = table[(x, y)]
                    self.table[(x, y)] = {k: fe(v) for k, v in entry.items() if fe(v)}

    def _mul_mono(self, m1, m2):
        return dict(self.table[(m1, m2)])

    def gen(self, name: str) -> Element:
        if name not in self.basis:
            raise ValueError(f"{name!r} is not a basis element of {self.name}")
        return Element(self, {name: ONE})

    def __getitem__(self, name: str) -> Element:
        return self.gen(name)

    def mono_key(self, m):
        return self.basis.index(m)

    def fmt_mono(self, m) -> str:
        return m

    def parse_mono(self, text: str) -> Element:
        text = text.strip()
        out = self.unit()
        if text in ("", self.one):
            return out
        for tok in text.split():
            out = out * self.gen(tok)
        return out

    def check_associative(self) -> bool:
        for x in self.basis:
            for y in self.basis:
                for z in self.basis:
                    a, b, c = self.gen(x), self.gen(y), self.gen(z)
                    if (a * b) * c != a * (b * c):
                        return False
        return True


def pbw_mul(x: Element, y: Element) -> Element:
    return x * y
